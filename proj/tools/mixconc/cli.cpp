#include "mixconc/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "mixconc/bar.hpp"
#include "mixconc/certificate.hpp"
#include "mixconc/error.hpp"
#include "mixconc/functional.hpp"
#include "mixconc/kernel.hpp"
#include "mixconc/martingale.hpp"
#include "mixconc/mixing.hpp"
#include "mixconc/montecarlo.hpp"
#include "mixconc/phi_norm.hpp"
#include "mixconc/report.hpp"
#include "mixconc/spec_io.hpp"
#include "mixconc/verification.hpp"

namespace mixconc::cli {
namespace {

using report::Json;

constexpr int kExitValidation = 1;
constexpr int kExitCapacity = 2;
constexpr int kExitChecksFailed = 3;

std::uint64_t parse_budget(const std::string& text, const std::string& source) {
  std::uint64_t value = 0;
  std::size_t used = 0;
  try {
    value = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty() || value == 0 || text.front() == '-') {
    throw ValidationError(source + " must be a positive integer, got '" + text + "'");
  }
  return value;
}

std::uint64_t cell_budget(const RunConfig& config) {
  if (config.cell_budget) return *config.cell_budget;
  if (const char* env = std::getenv("MIXCONC_BUDGET"); env && *env) {
    return parse_budget(env, "MIXCONC_BUDGET");
  }
  return kDefaultCellBudget;
}

std::uint64_t oracle_budget(const RunConfig& config) {
  return config.oracle_budget ? *config.oracle_budget : kDefaultCellBudget;
}

ProcessSpec load_spec(const RunConfig& config) {
  if (config.spec_path.empty()) throw ValidationError("--spec is required for '" + config.command + "'");
  return load_process_spec(config.spec_path);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  if (text.empty()) return out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, sep)) out.push_back(item);
  if (text.back() == sep) out.emplace_back();
  return out;
}

std::vector<std::size_t> symbols(const Alphabet& alphabet, const std::string& text) {
  std::vector<std::size_t> out;
  for (const std::string& label : split(text, ',')) out.push_back(alphabet.index_of(label));
  return out;
}

Json sequence_json(const Alphabet& alphabet, std::span<const std::size_t> z) {
  Json out = Json::array();
  for (std::size_t s : z) out.push_back(alphabet.label(s));
  return out;
}

const MarkovSpec& chain_of(const ProcessSpec& spec, const std::string& what) {
  if (const auto* m = std::get_if<MarkovSpec>(&spec)) return *m;
  if (const auto* h = std::get_if<HmmSpec>(&spec)) return h->hidden;
  throw ValidationError(what + " needs a markov or hmm spec");
}

Certificate certificate_for(const RunConfig& config, const ProcessSpec& spec, double c) {
  const Metric metric = parse_metric(config.metric);
  if (config.constant == "delta") {
    return make_general_certificate(mixing_profile(observed_joint(spec, cell_budget(config))), c, metric);
  }
  if (config.constant == "mn") {
    return make_markov_certificate(contraction_profile(chain_of(spec, "--constant mn")), c, metric);
  }
  throw ValidationError("--constant must be 'delta' or 'mn'");
}

// The kernel selected by --i with --prefix (kappa[z^i]) or --prefix/--pair
// (the pairwise kernel), plus the prefix used for reduction.
struct SelectedKernel {
  KernelFn full;
  KernelFn reduced;
  Json description;
};

SelectedKernel select_kernel(const RunConfig& config, const JointDist& joint) {
  const Alphabet& alphabet = joint.alphabet();
  const auto prefix = symbols(alphabet, config.prefix);
  Json description;
  description["i"] = config.i;
  if (!config.pair.empty()) {
    const auto pair = symbols(alphabet, config.pair);
    if (pair.size() != 2) throw ValidationError("--pair expects two symbols 'w,w_hat'");
    if (prefix.size() + 1 != config.i) throw ValidationError("--pair needs a --prefix of length i-1");
    KernelFn full = kappa_pair(joint, config.i, prefix, pair[0], pair[1]);
    KernelFn reduced = prefix_reduce(full, prefix);
    description["kernel"] = "pair";
    description["prefix"] = sequence_json(alphabet, prefix);
    description["w"] = alphabet.label(pair[0]);
    description["w_hat"] = alphabet.label(pair[1]);
    return {std::move(full), std::move(reduced), description};
  }
  if (prefix.size() != config.i) throw ValidationError("--prefix must list exactly i symbols");
  KernelFn full = kappa_prefix(joint, prefix);
  KernelFn reduced = prefix_reduce(full, std::span<const std::size_t>(prefix).first(config.i - 1));
  description["kernel"] = "prefix";
  description["z"] = sequence_json(alphabet, prefix);
  return {std::move(full), std::move(reduced), description};
}

void emit(const RunConfig& config, std::ostream& out, const std::string& text) {
  if (config.output_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(config.output_path, std::ios::binary);
  if (!file) throw ValidationError("cannot write '" + config.output_path + "'");
  file << text;
}

int cmd_mixing(const RunConfig& config, std::ostream& out) {
  const ProcessSpec spec = load_spec(config);
  emit(config, out, report::dump(report::to_json(mixing_profile(observed_joint(spec, cell_budget(config))))));
  return 0;
}

int cmd_contraction(const RunConfig& config, std::ostream& out) {
  const ProcessSpec spec = load_spec(config);
  Json doc = report::to_json(contraction_profile(chain_of(spec, "contraction")));
  if (std::holds_alternative<HmmSpec>(spec)) doc["chain"] = "hidden";
  emit(config, out, report::dump(doc));
  return 0;
}

int cmd_certify(const RunConfig& config, std::ostream& out) {
  const ProcessSpec spec = load_spec(config);
  const auto grid = parse_t_grid(config.t_grid);
  emit(config, out, report::dump(report::to_json(certificate_for(config, spec, config.c), grid)));
  return 0;
}

int cmd_psi(const RunConfig& config, std::ostream& out) {
  const ProcessSpec spec = load_spec(config);
  const JointDist joint = observed_joint(spec, cell_budget(config));
  const SelectedKernel k = select_kernel(config, joint);
  Json doc = report::document("psi");
  doc["kernel"] = k.description;
  doc["levels"] = psi_levels(k.reduced);
  doc["psi_plus"] = psi(k.reduced);
  doc["psi_minus"] = psi(-k.reduced);
  doc["psi_norm"] = psi_norm(k.reduced);
  doc["psi_norm_unreduced"] = psi_norm(k.full);
  emit(config, out, report::dump(doc));
  return 0;
}

int cmd_phi_oracle(const RunConfig& config, std::ostream& out) {
  const ProcessSpec spec = load_spec(config);
  const JointDist joint = observed_joint(spec, cell_budget(config));
  const SelectedKernel k = select_kernel(config, joint);
  std::string route = config.route;
  if (route == "auto") {
    route = oracle_candidate_count(joint.radix(), k.reduced.length()) <= oracle_budget(config) ? "enumeration"
                                                                                                : "max-flow";
  }
  PhiNormResult result = [&] {
    if (route == "enumeration") return phi_norm_oracle(k.reduced, oracle_budget(config));
    if (route == "max-flow") return phi_norm_maxflow(k.reduced, cell_budget(config));
    throw ValidationError("--route must be auto, enumeration or max-flow");
  }();
  Json doc = report::to_json(result, joint.alphabet());
  doc["kernel"] = k.description;
  doc["route"] = route;
  doc["psi_norm"] = psi_norm(k.reduced);
  emit(config, out, report::dump(doc));
  return 0;
}

int cmd_bar(const RunConfig& config, std::ostream& out) {
  const ProcessSpec spec = load_spec(config);
  const auto* markov = std::get_if<MarkovSpec>(&spec);
  if (!markov) throw ValidationError("bar needs a markov spec");
  const ExtremalReport r = verify_extremal(*markov, config.i, {cell_budget(config), oracle_budget(config)});
  Json doc = report::to_json(r, markov->alphabet);
  if (!config.z.empty()) {
    const auto z = symbols(markov->alphabet, config.z);
    doc["bar_for_z"] = report::to_json(build_bar(*markov, z), markov->alphabet);
    doc["bar_for_z"]["z"] = sequence_json(markov->alphabet, z);
  }
  emit(config, out, report::dump(doc));
  return 0;
}

Functional functional_for(const RunConfig& config, const Alphabet& alphabet, std::size_t n) {
  std::string text = config.functional;
  if (text == "hamming-weight") text += ":" + alphabet.label(0);
  if (text != "table") return Functional::parse(text, alphabet, n);
  if (config.table_path.empty()) throw ValidationError("--phi table needs --table FILE");
  std::ifstream in(config.table_path);
  if (!in) throw ValidationError("cannot open '" + config.table_path + "'");
  std::vector<double> values;
  try {
    values = nlohmann::json::parse(in).get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("--table must hold a JSON array of numbers: " + std::string(e.what()));
  }
  checked_cell_count(alphabet.size(), n, cell_budget(config), "functional table");
  return Functional::table(alphabet, n, std::move(values));
}

int cmd_simulate(const RunConfig& config, std::ostream& out) {
  const ProcessSpec spec = load_spec(config);
  if (std::holds_alternative<JointDist>(spec)) throw ValidationError("simulate needs a markov or hmm spec");
  const std::size_t n = sequence_length(spec);
  const Functional phi = functional_for(config, observed_alphabet(spec), n);
  const auto grid = parse_t_grid(config.t_grid);
  if (config.samples == 0) throw ValidationError("--samples must be positive");

  MeanSpec mean;
  if (config.mean == "exact") {
    const double value = std::holds_alternative<MarkovSpec>(spec)
                             ? exact_mean(std::get<MarkovSpec>(spec), phi, cell_budget(config))
                             : exact_mean(std::get<HmmSpec>(spec), phi, cell_budget(config));
    mean = MeanSpec::exact(value);
  } else if (config.mean == "plug-in") {
    mean = MeanSpec::plug_in();
  } else {
    throw ValidationError("--mean must be 'exact' or 'plug-in'");
  }

  const PathBatch paths = std::holds_alternative<MarkovSpec>(spec)
                              ? sample_paths(std::get<MarkovSpec>(spec), config.seed, config.samples, config.workers)
                              : sample_paths(std::get<HmmSpec>(spec), config.seed, config.samples, config.workers);
  const TailEstimate estimate = empirical_tail(paths, phi, grid, mean);

  const Metric metric = parse_metric(config.metric);
  double c = config.c;
  if (!config.c_given) {
    c = metric == Metric::hamming ? phi.lipschitz_const() : phi.lipschitz_const() * static_cast<double>(n);
    if (!(c > 0.0)) c = 1.0;
  }
  const Certificate certificate = certificate_for(config, spec, c);
  const TailComparison comparison = compare(estimate, certificate);

  if (!config.tsv_path.empty()) {
    std::ofstream tsv(config.tsv_path, std::ios::binary);
    if (!tsv) throw ValidationError("cannot write '" + config.tsv_path + "'");
    report::write_tsv(tsv, comparison);
  }
  if (config.format == "tsv") {
    std::ostringstream text;
    report::write_tsv(text, comparison);
    emit(config, out, text.str());
    return 0;
  }
  if (config.format != "json") throw ValidationError("--format must be 'json' or 'tsv'");
  Json doc = report::document("simulation");
  doc["estimate"] = report::to_json(estimate);
  doc["certificate"] = report::to_json(certificate, grid);
  doc["comparison"] = report::to_json(comparison);
  emit(config, out, report::dump(doc));
  return 0;
}

std::vector<verification::NamedSpec> load_fixtures(const std::vector<std::string>& paths) {
  std::vector<std::filesystem::path> files;
  for (const std::string& p : paths) {
    if (std::filesystem::is_directory(p)) {
      for (const auto& entry : std::filesystem::directory_iterator(p)) {
        if (entry.path().extension() == ".json") files.push_back(entry.path());
      }
    } else {
      files.emplace_back(p);
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<verification::NamedSpec> out;
  for (const auto& f : files) out.push_back({f.filename().string(), load_process_spec(f)});
  return out;
}

int cmd_verify(const RunConfig& config, std::ostream& out) {
  verification::Options options;
  options.seed = config.seed;
  options.scale = config.scale;
  options.cell_budget = cell_budget(config);
  if (!(config.scale > 0.0)) throw ValidationError("--scale must be positive");
  std::vector<std::string> fixtures = config.fixtures;
  if (!config.spec_path.empty()) fixtures.push_back(config.spec_path);
  options.fixtures = load_fixtures(fixtures);

  const auto results = verification::run_suite(config.suite, options);
  Json doc = report::document("verification");
  doc["suite"] = config.suite;
  bool all = true;
  Json checks = Json::array();
  for (const auto& r : results) {
    Json item;
    item["suite"] = r.suite;
    item["name"] = r.name;
    item["passed"] = r.passed;
    item["cases"] = r.cases;
    item["worst"] = r.worst;
    if (!r.detail.empty()) item["detail"] = r.detail;
    checks.push_back(item);
    all = all && r.passed;
  }
  doc["passed"] = all;
  doc["checks"] = checks;
  emit(config, out, report::dump(doc));
  return all ? 0 : kExitChecksFailed;
}

Json error_json(const std::string& type, const std::string& message) {
  Json doc = report::document("error");
  doc["error"] = type;
  doc["message"] = message;
  return doc;
}

void add_spec(CLI::App* cmd, RunConfig& config) {
  cmd->add_option("--spec", config.spec_path, "Process spec (JSON)");
  cmd->add_option("-o,--output", config.output_path, "Write the report here instead of stdout");
  cmd->add_option("--budget", config.cell_budget, "Dense-array cell budget (overrides MIXCONC_BUDGET)");
}

void add_kernel_selection(CLI::App* cmd, RunConfig& config) {
  cmd->add_option("--i", config.i, "Martingale index (1-based)")->check(CLI::PositiveNumber);
  cmd->add_option("--prefix", config.prefix, "Comma-separated symbols: z^i, or y^{i-1} with --pair");
  cmd->add_option("--pair", config.pair, "Two symbols 'w,w_hat' selecting the pairwise kernel");
}

}  // namespace

int execute(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.command == "mixing") return cmd_mixing(config, out);
    if (config.command == "contraction") return cmd_contraction(config, out);
    if (config.command == "certify") return cmd_certify(config, out);
    if (config.command == "psi") return cmd_psi(config, out);
    if (config.command == "phi-oracle") return cmd_phi_oracle(config, out);
    if (config.command == "bar") return cmd_bar(config, out);
    if (config.command == "simulate") return cmd_simulate(config, out);
    if (config.command == "verify") return cmd_verify(config, out);
    throw ValidationError("unknown command '" + config.command + "'");
  } catch (const CapacityError& e) {
    Json doc = error_json("capacity", e.what());
    doc["required"] = e.required();
    doc["budget"] = e.budget();
    err << doc.dump() << '\n';
    return kExitCapacity;
  } catch (const ConditioningError& e) {
    Json doc = error_json("conditioning", e.what());
    doc["prefix"] = e.prefix();
    err << doc.dump() << '\n';
    return kExitValidation;
  } catch (const OutOfValidityError& e) {
    Json doc = error_json("out-of-validity", e.what());
    doc["threshold"] = e.threshold();
    err << doc.dump() << '\n';
    return kExitValidation;
  } catch (const ConventionError& e) {
    err << error_json("convention", e.what()).dump() << '\n';
    return kExitValidation;
  } catch (const Error& e) {
    err << error_json("validation", e.what()).dump() << '\n';
    return kExitValidation;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  CLI::App app{"Concentration certificates for dependent discrete sequences", "mixconc"};
  app.require_subcommand(1);

  auto* mixing = app.add_subcommand("mixing", "Mixing coefficients and the Delta_n matrix");
  add_spec(mixing, config);

  auto* contraction = app.add_subcommand("contraction", "Contraction coefficients and M_n");
  add_spec(contraction, config);

  auto* certify = app.add_subcommand("certify", "Tail-bound certificate over a t-grid");
  add_spec(certify, config);
  certify->add_option("--c", config.c, "Lipschitz constant")->check(CLI::PositiveNumber);
  certify->add_option("--metric", config.metric, "hamming | normalized-hamming");
  certify->add_option("--constant", config.constant, "delta | mn");
  certify->add_option("--t", config.t_grid, "t-grid start:step:end");

  auto* psi_cmd = app.add_subcommand("psi", "Psi functional of a martingale-difference kernel");
  add_spec(psi_cmd, config);
  add_kernel_selection(psi_cmd, config);

  auto* phi = app.add_subcommand("phi-oracle", "Exact Phi-norm of a martingale-difference kernel");
  add_spec(phi, config);
  add_kernel_selection(phi, config);
  phi->add_option("--route", config.route, "auto | enumeration | max-flow");
  phi->add_option("--oracle-budget", config.oracle_budget, "Candidate budget for enumeration");

  auto* bar = app.add_subcommand("bar", "BAR construction and extremality report");
  add_spec(bar, config);
  bar->add_option("--i", config.i, "Martingale index (1-based)")->check(CLI::PositiveNumber);
  bar->add_option("--z", config.z, "Also build the BAR function for this comma-separated prefix");
  bar->add_option("--oracle-budget", config.oracle_budget, "Candidate budget for enumeration");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo tails against a certificate");
  add_spec(simulate, config);
  simulate->add_option("--phi", config.functional, "hamming-weight[:<sym>] | bar:<rows> | table");
  simulate->add_option("--table", config.table_path, "JSON array of values over S^n for --phi table");
  simulate->add_option("--samples", config.samples, "Number of sample paths");
  simulate->add_option("--seed", config.seed, "Master seed");
  simulate->add_option("--workers", config.workers, "Sampling threads (0 = all cores)");
  simulate->add_option("--t", config.t_grid, "t-grid start:step:end");
  simulate->add_option("--mean", config.mean, "exact | plug-in");
  simulate->add_option("--c", config.c, "Lipschitz constant for the certificate")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--metric", config.metric, "hamming | normalized-hamming");
  simulate->add_option("--constant", config.constant, "delta | mn");
  simulate->add_option("--format", config.format, "json | tsv");
  simulate->add_option("--tsv", config.tsv_path, "Also write the comparison table here");

  auto* verify = app.add_subcommand("verify", "Run the property suites");
  verify->add_option("--suite", config.suite, "all | process | mixing | martingale | bar | certificates | montecarlo");
  verify->add_option("--fixtures", config.fixtures, "Spec files or directories to include");
  verify->add_option("--spec", config.spec_path, "A single spec file to include");
  verify->add_option("--seed", config.seed, "Seed for random instances");
  verify->add_option("--scale", config.scale, "Multiplier on the number of random cases");
  verify->add_option("-o,--output", config.output_path, "Write the report here instead of stdout");
  verify->add_option("--budget", config.cell_budget, "Dense-array cell budget");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << error_json("usage", e.what()).dump() << '\n';
    return kExitValidation;
  }
  for (const auto* sub : app.get_subcommands()) config.command = sub->get_name();
  config.c_given = simulate->count("--c") > 0;
  return execute(config, out, err);
}

}  // namespace mixconc::cli
