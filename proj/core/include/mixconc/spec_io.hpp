#pragma once

// JSON process specifications:
//   {"type": "markov" | "hmm" | "joint", "alphabet": [...], "n": int, ...}
// markov: "p0", "kernels" (n-1 matrices, or one with "homogeneous": true)
// hmm:    the hidden chain's "hidden_alphabet", "p0", "kernels", plus
//         "emissions" (n matrices, or one with "homogeneous_emissions": true)
// joint:  a flat row-major "mass" array over S^n

#include <filesystem>
#include <variant>

#include <nlohmann/json.hpp>

#include "mixconc/process.hpp"

namespace mixconc {

using ProcessSpec = std::variant<JointDist, MarkovSpec, HmmSpec>;

ProcessSpec parse_process_spec(const nlohmann::json& doc);
ProcessSpec load_process_spec(const std::filesystem::path& path);
nlohmann::ordered_json to_json(const ProcessSpec& spec);

std::size_t sequence_length(const ProcessSpec& spec);
/// The alphabet of the observed sequence.
const Alphabet& observed_alphabet(const ProcessSpec& spec);
/// The law of the observed sequence on S^n.
JointDist observed_joint(const ProcessSpec& spec, std::uint64_t cell_budget = kDefaultCellBudget);

}  // namespace mixconc
