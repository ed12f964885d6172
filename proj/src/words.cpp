#include "fgstates/words.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace fgstates {

namespace {

void check_rank(int rank) {
  if (rank < 2) throw Error("rank must be at least 2, got " + std::to_string(rank));
}

void check_letter(int rank, Letter x) {
  if (x.gen < 1 || x.gen > rank) {
    throw InvalidGenerator("generator index " + std::to_string(int(x.gen)) +
                           " outside 1.." + std::to_string(rank));
  }
  if (x.sign != 1 && x.sign != -1) {
    throw InvalidGenerator("letter sign must be +1 or -1");
  }
}

}  // namespace

ReducedWord::ReducedWord(int rank, std::vector<Letter> letters)
    : rank_(rank), letters_(std::move(letters)) {}

ReducedWord ReducedWord::identity(int rank) {
  check_rank(rank);
  return ReducedWord(rank, {});
}

ReducedWord ReducedWord::from_letters(int rank, std::span<const Letter> raw) {
  check_rank(rank);
  std::vector<Letter> out;
  out.reserve(raw.size());
  for (Letter x : raw) {
    check_letter(rank, x);
    if (!out.empty() && out.back() == x.inverse()) {
      out.pop_back();
    } else {
      out.push_back(x);
    }
  }
  return ReducedWord(rank, std::move(out));
}

ReducedWord ReducedWord::from_reduced(int rank, std::vector<Letter> letters) {
  check_rank(rank);
  for (std::size_t i = 0; i < letters.size(); ++i) {
    check_letter(rank, letters[i]);
    if (i > 0 && letters[i] == letters[i - 1].inverse()) {
      throw Error("letter sequence is not freely reduced");
    }
  }
  return ReducedWord(rank, std::move(letters));
}

ReducedWord ReducedWord::generator(int rank, int gen, int sign) {
  check_rank(rank);
  Letter x(gen, sign);
  check_letter(rank, x);
  return ReducedWord(rank, {x});
}

ReducedWord ReducedWord::parse(int rank, std::string_view text) {
  check_rank(rank);
  std::istringstream in{std::string(text)};
  std::vector<std::string> tokens;
  for (std::string tok; in >> tok;) tokens.push_back(tok);
  if (tokens.empty()) throw Error("empty word text; use \"e\" for the identity");
  if (tokens.size() == 1 && tokens[0] == "e") return identity(rank);

  std::vector<Letter> raw;
  raw.reserve(tokens.size());
  for (const std::string& tok : tokens) {
    std::string_view sv = tok;
    if (!sv.empty() && sv.front() == '+') sv.remove_prefix(1);
    int v = 0;
    auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), v);
    if (ec != std::errc() || ptr != sv.data() + sv.size()) {
      throw Error("unparseable word token \"" + tok + "\"");
    }
    if (v == 0) throw InvalidGenerator("0 is not a generator index");
    if (v > rank || v < -rank) {
      throw InvalidGenerator("generator index " + std::to_string(v) +
                             " outside 1.." + std::to_string(rank));
    }
    raw.emplace_back(v > 0 ? v : -v, v > 0 ? +1 : -1);
  }
  return from_letters(rank, raw);
}

ReducedWord ReducedWord::inverse() const {
  std::vector<Letter> out;
  out.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.push_back(it->inverse());
  return ReducedWord(rank_, std::move(out));
}

ReducedWord ReducedWord::appended(Letter x) const {
  check_letter(rank_, x);
  std::vector<Letter> out = letters_;
  if (!out.empty() && out.back() == x.inverse()) {
    out.pop_back();
  } else {
    out.push_back(x);
  }
  return ReducedWord(rank_, std::move(out));
}

ReducedWord ReducedWord::prepended(Letter x) const {
  check_letter(rank_, x);
  if (!letters_.empty() && letters_.front() == x.inverse()) {
    return ReducedWord(rank_, {letters_.begin() + 1, letters_.end()});
  }
  std::vector<Letter> out;
  out.reserve(letters_.size() + 1);
  out.push_back(x);
  out.insert(out.end(), letters_.begin(), letters_.end());
  return ReducedWord(rank_, std::move(out));
}

std::string ReducedWord::str() const {
  if (letters_.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i > 0) out += ' ';
    out += std::to_string(letters_[i].sign < 0 ? -int(letters_[i].gen) : int(letters_[i].gen));
  }
  return out;
}

ReducedWord operator*(const ReducedWord& a, const ReducedWord& b) {
  if (a.rank_ != b.rank_) {
    throw RankMismatch("cannot multiply words of rank " + std::to_string(a.rank_) +
                       " and " + std::to_string(b.rank_));
  }
  std::vector<Letter> out = a.letters_;
  for (Letter x : b.letters_) {
    if (!out.empty() && out.back() == x.inverse()) {
      out.pop_back();
    } else {
      out.push_back(x);
    }
  }
  return ReducedWord(a.rank_, std::move(out));
}

bool operator<(const ReducedWord& a, const ReducedWord& b) {
  if (a.letters_.size() != b.letters_.size()) return a.letters_.size() < b.letters_.size();
  for (std::size_t i = 0; i < a.letters_.size(); ++i) {
    const int ca = a.letters_[i].code();
    const int cb = b.letters_[i].code();
    if (ca != cb) return ca < cb;
  }
  return false;
}

ReducedWord generator_power(int rank, int gen, std::int64_t e) {
  std::vector<Letter> out;
  const int sign = e >= 0 ? +1 : -1;
  for (std::int64_t i = 0; i < (e >= 0 ? e : -e); ++i) out.emplace_back(gen, sign);
  return ReducedWord::from_reduced(rank, std::move(out));
}

WordStats stats(const ReducedWord& s) {
  WordStats st{s.length(), 0, 0, 0};
  const auto& ls = s.letters();
  for (std::size_t i = 0; i < ls.size(); ++i) {
    st.tau += ls[i].sign;
    if (ls[i].gen == 1) ++st.u1_length;
    if (i > 0 && ls[i - 1].sign < 0 && ls[i].sign > 0) ++st.gamma;
  }
  return st;
}

ReducedWord beta(const ReducedWord& s) {
  std::vector<Letter> out;
  out.reserve(2 * s.letters().size());
  for (Letter x : s.letters()) {
    if (x.gen == 1) {
      out.push_back(x);
    } else if (x.sign > 0) {
      out.emplace_back(1, +1);
      out.push_back(x);
    } else {
      out.push_back(x);
      out.emplace_back(1, -1);
    }
  }
  return ReducedWord::from_letters(s.rank(), out);
}

ReducedWord sigma(const ReducedWord& s) {
  std::vector<Letter> out;
  out.reserve(s.letters().size());
  for (Letter x : s.letters()) out.push_back(x.inverse());
  // sign flips preserve reducedness
  return ReducedWord::from_reduced(s.rank(), std::move(out));
}

bool in_plus_minus(const ReducedWord& s) { return stats(s).gamma == 0; }

double sphere_cardinality(int rank, int radius) {
  if (radius <= 0) return 1.0;
  return 2.0 * rank * std::pow(2.0 * rank - 1.0, radius - 1);
}

namespace {

bool leaf_passes(const SphereConstraint& c, const std::vector<Letter>& path) {
  if (c.kind != SphereConstraint::EndingNegativeIn) return true;
  if (path.empty()) return false;
  return path.back().gen == c.gen && path.back().sign < 0;
}

void sphere_dfs(int rank, int radius, const SphereConstraint& c, std::vector<Letter>& path,
                const std::function<void(const ReducedWord&)>& fn) {
  if (static_cast<int>(path.size()) == radius) {
    if (leaf_passes(c, path)) fn(ReducedWord::from_reduced(rank, path));
    return;
  }
  const int ncodes = 2 * rank;
  for (int code = 0; code < ncodes; ++code) {
    Letter x = Letter::from_code(code);
    if (c.kind == SphereConstraint::PositiveOnly && x.sign < 0) continue;
    if (!path.empty() && x == path.back().inverse()) continue;
    path.push_back(x);
    sphere_dfs(rank, radius, c, path, fn);
    path.pop_back();
  }
}

}  // namespace

void for_each_sphere_word(int rank, int radius, SphereConstraint c,
                          const std::function<void(const ReducedWord&)>& fn) {
  if (rank < 2) throw Error("rank must be at least 2");
  if (radius < 0) throw Error("radius must be non-negative");
  std::vector<Letter> path;
  path.reserve(radius);
  sphere_dfs(rank, radius, c, path, fn);
}

std::vector<ReducedWord> enumerate_sphere(int rank, int radius, SphereConstraint c) {
  if (sphere_cardinality(rank, radius) > 1e7) {
    throw SphereTooLarge("sphere of radius " + std::to_string(radius) + " at rank " +
                         std::to_string(rank) + " exceeds 10^7 words");
  }
  std::vector<ReducedWord> out;
  for_each_sphere_word(rank, radius, c, [&](const ReducedWord& w) { out.push_back(w); });
  return out;
}

std::vector<ReducedWord> ball(int rank, int radius) {
  double total = 0;
  for (int k = 0; k <= radius; ++k) total += sphere_cardinality(rank, k);
  if (total > 1e7) {
    throw SphereTooLarge("ball of radius " + std::to_string(radius) + " at rank " +
                         std::to_string(rank) + " exceeds 10^7 words");
  }
  std::vector<ReducedWord> out;
  for_each_ball_word(rank, radius, [&](const ReducedWord& w) { out.push_back(w); });
  return out;
}

void for_each_ball_word(int rank, int radius,
                        const std::function<void(const ReducedWord&)>& fn) {
  for (int k = 0; k <= radius; ++k) {
    for_each_sphere_word(rank, k, SphereConstraint::all(), fn);
  }
}

}  // namespace fgstates
