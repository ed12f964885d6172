#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fgstates/errors.hpp"

namespace fgstates {

/// Documented desk-scale bounds.  Not enforced by the types.
inline constexpr int kMaxRank = 64;
inline constexpr std::int64_t kMaxWordLength = 1000000;

/// One generator power u_g^{+1} or u_g^{-1} of the free group F_n.
struct Letter {
  std::int8_t gen;   // 1..n
  std::int8_t sign;  // +1 or -1

  Letter(int g, int s) : gen(static_cast<std::int8_t>(g)), sign(static_cast<std::int8_t>(s)) {}

  Letter inverse() const { return Letter(gen, -sign); }

  /// Enumeration order: u_1 < u_1^-1 < u_2 < u_2^-1 < ...
  int code() const { return 2 * (gen - 1) + (sign < 0 ? 1 : 0); }
  static Letter from_code(int c) { return Letter(c / 2 + 1, (c % 2) ? -1 : +1); }

  friend bool operator==(Letter a, Letter b) { return a.gen == b.gen && a.sign == b.sign; }
  friend bool operator!=(Letter a, Letter b) { return !(a == b); }
};

/// Freely reduced word over F_n.  The rank n travels with the word; words of
/// different rank never interoperate.  Letter sequences are canonical: two
/// words are equal iff rank and letters agree.
class ReducedWord {
 public:
  static ReducedWord identity(int rank);

  /// Free reduction of an arbitrary letter sequence (stack cancellation).
  static ReducedWord from_letters(int rank, std::span<const Letter> raw);

  /// Wraps a sequence that is already reduced; throws Error if it is not.
  static ReducedWord from_reduced(int rank, std::vector<Letter> letters);

  static ReducedWord generator(int rank, int gen, int sign = +1);

  /// Whitespace-separated signed generator indices; "e" is the identity.
  /// Rejects 0 and |i| > rank with InvalidGenerator.
  static ReducedWord parse(int rank, std::string_view text);

  int rank() const { return rank_; }
  const std::vector<Letter>& letters() const { return letters_; }
  std::int64_t length() const { return static_cast<std::int64_t>(letters_.size()); }
  bool is_identity() const { return letters_.empty(); }

  ReducedWord inverse() const;
  ReducedWord appended(Letter x) const;   // this * x, reduced
  ReducedWord prepended(Letter x) const;  // x * this, reduced

  /// Inverse of the word syntax accepted by parse().
  std::string str() const;

  friend ReducedWord operator*(const ReducedWord& a, const ReducedWord& b);

  friend bool operator==(const ReducedWord& a, const ReducedWord& b) {
    return a.rank_ == b.rank_ && a.letters_ == b.letters_;
  }
  friend bool operator!=(const ReducedWord& a, const ReducedWord& b) { return !(a == b); }

  /// Shortlex: by length, then letterwise by Letter::code().
  friend bool operator<(const ReducedWord& a, const ReducedWord& b);

 private:
  ReducedWord(int rank, std::vector<Letter> letters);

  int rank_;
  std::vector<Letter> letters_;
};

/// u_g^e (e may be negative or zero).
ReducedWord generator_power(int rank, int gen, std::int64_t e);

struct WordStats {
  std::int64_t length;     // |s|
  std::int64_t gamma;      // adjacent (negative, positive) sign pairs, read left to right
  std::int64_t u1_length;  // letters with generator index 1, either sign
  std::int64_t tau;        // sum of letter signs
};

WordStats stats(const ReducedWord& s);

/// Endomorphism u_1 -> u_1, u_j -> u_1 u_j (j >= 2), extended to words.
ReducedWord beta(const ReducedWord& s);

/// Sign flip on every letter: u_j^eps -> u_j^-eps.
ReducedWord sigma(const ReducedWord& s);

/// Membership in the positive-times-negative cone: s = p * q^-1 with p, q
/// positive words, equivalently gamma(s) == 0.
bool in_plus_minus(const ReducedWord& s);

struct SphereConstraint {
  enum Kind { All, PositiveOnly, EndingNegativeIn };
  Kind kind = All;
  int gen = 0;  // used by EndingNegativeIn

  static SphereConstraint all() { return {All, 0}; }
  static SphereConstraint positive_only() { return {PositiveOnly, 0}; }
  static SphereConstraint ending_negative_in(int g) { return {EndingNegativeIn, g}; }
};

/// Number of reduced words of length exactly k (constraint All), as a double
/// so guard comparisons never overflow: 2n(2n-1)^(k-1) for k >= 1.
double sphere_cardinality(int rank, int radius);

/// Streams the words of length exactly `radius` in lexicographic order.
void for_each_sphere_word(int rank, int radius, SphereConstraint c,
                          const std::function<void(const ReducedWord&)>& fn);

/// Materialized sphere, lexicographic order.  Guards against spheres larger
/// than 10^7 words with SphereTooLarge.
std::vector<ReducedWord> enumerate_sphere(int rank, int radius,
                                          SphereConstraint c = SphereConstraint::all());

/// Words of length <= radius in shortlex order.
std::vector<ReducedWord> ball(int rank, int radius);
void for_each_ball_word(int rank, int radius,
                        const std::function<void(const ReducedWord&)>& fn);

}  // namespace fgstates
