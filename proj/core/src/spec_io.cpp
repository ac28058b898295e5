#include "mixconc/spec_io.hpp"

#include <fstream>
#include <string>

#include "mixconc/error.hpp"

namespace mixconc {
namespace {

using nlohmann::json;

const json& field(const json& doc, const char* key) {
  if (!doc.contains(key)) throw ValidationError(std::string("process spec: missing field '") + key + "'");
  return doc.at(key);
}

std::vector<std::string> labels(const json& value, const char* key) {
  if (!value.is_array()) throw ValidationError(std::string("process spec: '") + key + "' must be an array");
  std::vector<std::string> out;
  for (const json& item : value) {
    if (!item.is_string()) throw ValidationError(std::string("process spec: '") + key + "' entries must be strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

std::vector<double> reals(const json& value, const std::string& what) {
  if (!value.is_array()) throw ValidationError("process spec: " + what + " must be an array of numbers");
  std::vector<double> out;
  out.reserve(value.size());
  for (const json& item : value) {
    if (!item.is_number()) throw ValidationError("process spec: " + what + " must contain numbers only");
    out.push_back(item.get<double>());
  }
  return out;
}

std::vector<StochasticMatrix> matrices(const json& value, const std::string& what) {
  if (!value.is_array()) throw ValidationError("process spec: " + what + " must be a list of matrices");
  std::vector<StochasticMatrix> out;
  for (std::size_t k = 0; k < value.size(); ++k) {
    const json& m = value[k];
    if (!m.is_array() || m.empty()) throw ValidationError("process spec: " + what + " entries must be matrices");
    std::vector<std::vector<double>> rows;
    for (const json& row : m) rows.push_back(reals(row, what + " row"));
    out.push_back(StochasticMatrix::from_rows(rows));
  }
  return out;
}

std::size_t length(const json& doc) {
  const json& n = field(doc, "n");
  if (!n.is_number_integer() || n.get<long long>() < 1) {
    throw ValidationError("process spec: 'n' must be a positive integer");
  }
  return static_cast<std::size_t>(n.get<long long>());
}

bool flag(const json& doc, const char* key) {
  if (!doc.contains(key)) return false;
  if (!doc.at(key).is_boolean()) throw ValidationError(std::string("process spec: '") + key + "' must be boolean");
  return doc.at(key).get<bool>();
}

MarkovSpec markov_from(const json& doc, Alphabet alphabet) {
  MarkovSpec spec;
  spec.alphabet = std::move(alphabet);
  spec.n = length(doc);
  spec.p0 = reals(field(doc, "p0"), "p0");
  spec.homogeneous = flag(doc, "homogeneous");
  if (spec.n > 1 || doc.contains("kernels")) spec.kernels = matrices(field(doc, "kernels"), "kernels");
  if (spec.n == 1 && spec.homogeneous && spec.kernels.empty()) {
    throw ValidationError("process spec: homogeneous chains need one kernel");
  }
  spec.validate();
  return spec;
}

nlohmann::ordered_json matrix_json(const StochasticMatrix& m) {
  auto rows = nlohmann::ordered_json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto row = m.row(r);
    rows.push_back(std::vector<double>(row.begin(), row.end()));
  }
  return rows;
}

}  // namespace

ProcessSpec parse_process_spec(const json& doc) {
  if (!doc.is_object()) throw ValidationError("process spec must be a JSON object");
  const json& type = field(doc, "type");
  if (!type.is_string()) throw ValidationError("process spec: 'type' must be a string");
  const std::string kind = type.get<std::string>();
  Alphabet alphabet(labels(field(doc, "alphabet"), "alphabet"));
  if (kind == "markov") return markov_from(doc, std::move(alphabet));
  if (kind == "hmm") {
    HmmSpec spec;
    spec.hidden = markov_from(doc, Alphabet(labels(field(doc, "hidden_alphabet"), "hidden_alphabet")));
    spec.observed = std::move(alphabet);
    spec.emissions = matrices(field(doc, "emissions"), "emissions");
    spec.homogeneous_emissions = flag(doc, "homogeneous_emissions");
    spec.validate();
    return spec;
  }
  if (kind == "joint") {
    const std::size_t n = length(doc);
    checked_cell_count(alphabet.size(), n, kDefaultCellBudget, "joint mass array");
    return JointDist(std::move(alphabet), n, reals(field(doc, "mass"), "mass"));
  }
  throw ValidationError("process spec: unknown type '" + kind + "'");
}

ProcessSpec load_process_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open process spec '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ValidationError("process spec '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return parse_process_spec(doc);
}

nlohmann::ordered_json to_json(const ProcessSpec& spec) {
  using ojson = nlohmann::ordered_json;
  ojson out;
  auto put_chain = [&](const MarkovSpec& m) {
    out["p0"] = m.p0;
    ojson kernels = ojson::array();
    for (const auto& k : m.kernels) kernels.push_back(matrix_json(k));
    out["kernels"] = kernels;
    if (m.homogeneous) out["homogeneous"] = true;
  };
  if (const auto* joint = std::get_if<JointDist>(&spec)) {
    out["type"] = "joint";
    out["alphabet"] = joint->alphabet().symbols();
    out["n"] = joint->n();
    out["mass"] = std::vector<double>(joint->mass().begin(), joint->mass().end());
  } else if (const auto* markov = std::get_if<MarkovSpec>(&spec)) {
    out["type"] = "markov";
    out["alphabet"] = markov->alphabet.symbols();
    out["n"] = markov->n;
    put_chain(*markov);
  } else {
    const auto& hmm = std::get<HmmSpec>(spec);
    out["type"] = "hmm";
    out["alphabet"] = hmm.observed.symbols();
    out["hidden_alphabet"] = hmm.hidden.alphabet.symbols();
    out["n"] = hmm.n();
    put_chain(hmm.hidden);
    ojson emissions = ojson::array();
    for (const auto& q : hmm.emissions) emissions.push_back(matrix_json(q));
    out["emissions"] = emissions;
    if (hmm.homogeneous_emissions) out["homogeneous_emissions"] = true;
  }
  return out;
}

std::size_t sequence_length(const ProcessSpec& spec) {
  if (const auto* joint = std::get_if<JointDist>(&spec)) return joint->n();
  if (const auto* markov = std::get_if<MarkovSpec>(&spec)) return markov->n;
  return std::get<HmmSpec>(spec).n();
}

const Alphabet& observed_alphabet(const ProcessSpec& spec) {
  if (const auto* joint = std::get_if<JointDist>(&spec)) return joint->alphabet();
  if (const auto* markov = std::get_if<MarkovSpec>(&spec)) return markov->alphabet;
  return std::get<HmmSpec>(spec).observed;
}

JointDist observed_joint(const ProcessSpec& spec, std::uint64_t cell_budget) {
  if (const auto* joint = std::get_if<JointDist>(&spec)) {
    checked_cell_count(joint->radix(), joint->n(), cell_budget, "joint distribution");
    return *joint;
  }
  if (const auto* markov = std::get_if<MarkovSpec>(&spec)) return build_markov_joint(*markov, cell_budget);
  return build_hmm_joint(std::get<HmmSpec>(spec), cell_budget).observed;
}

}  // namespace mixconc
