#pragma once

// Machine-readable reports. Every document carries "schema": "mixconc/1" and
// keys in a fixed order; numbers use the shortest round-trip representation.

#include <ostream>
#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "mixconc/bar.hpp"
#include "mixconc/certificate.hpp"
#include "mixconc/mixing.hpp"
#include "mixconc/montecarlo.hpp"
#include "mixconc/phi_norm.hpp"
#include "mixconc/process.hpp"

namespace mixconc::report {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "mixconc/1";

/// {"schema": ..., "kind": kind}
Json document(const std::string& kind);

Json to_json(const MixingProfile& profile);
Json to_json(const ContractionProfile& profile);
Json to_json(const Certificate& certificate, std::span<const double> t_grid);
Json to_json(const PhiNormResult& result, const Alphabet& alphabet);
Json to_json(const BarFunction& bar, const Alphabet& alphabet);
Json to_json(const ExtremalReport& report, const Alphabet& alphabet);
Json to_json(const TailEstimate& estimate);
Json to_json(const TailComparison& comparison);

/// Columns: t, empirical, upper_conf, bound, effective_bound, verdict.
void write_tsv(std::ostream& out, const TailComparison& comparison);

/// Serialized with a trailing newline.
std::string dump(const Json& doc);

}  // namespace mixconc::report
