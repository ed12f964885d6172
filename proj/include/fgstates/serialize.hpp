#pragma once

#include <nlohmann/json.hpp>

#include "fgstates/algebra.hpp"
#include "fgstates/boundary.hpp"
#include "fgstates/gram.hpp"
#include "fgstates/states.hpp"

// JSON views of every report type the CLI can emit.  Complex numbers are
// [re, im] pairs and words appear in their text syntax, so the output is
// self-describing without any binary baggage.  StateSpec is the one type
// that also reads back in; parsing funnels through the factory functions so
// file input obeys the same invariants as programmatic construction.

namespace nlohmann {
template <>
struct adl_serializer<std::complex<double>> {
  static void to_json(json& j, const std::complex<double>& z) { j = json{z.real(), z.imag()}; }
  static void from_json(const json& j, std::complex<double>& z) {
    z = std::complex<double>(j.at(0).get<double>(), j.at(1).get<double>());
  }
};
}  // namespace nlohmann

namespace fgstates {

void to_json(nlohmann::json& j, const StateSpec& s);
void from_json(const nlohmann::json& j, StateSpec& s);

void to_json(nlohmann::json& j, const Classification& c);
void to_json(nlohmann::json& j, const ObsViolation& v);
void to_json(nlohmann::json& j, const ObsReport& r);
void to_json(nlohmann::json& j, const GrowthSeries& g);
void to_json(nlohmann::json& j, const PolyKernelRow& r);
void to_json(nlohmann::json& j, const PolyKernelReport& r);
void to_json(nlohmann::json& j, const PsdCertificate& c);
void to_json(nlohmann::json& j, const LayerStructureReport& r);
void to_json(nlohmann::json& j, const IntegerPdReport& r);
void to_json(nlohmann::json& j, const AlphaParams& a);
void to_json(nlohmann::json& j, const ExperimentResult& r);

}  // namespace fgstates
