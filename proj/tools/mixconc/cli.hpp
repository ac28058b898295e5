#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace mixconc::cli {

struct RunConfig {
  std::string command;
  std::string spec_path;
  std::string output_path;  ///< empty: standard output
  std::string format = "json";
  std::string tsv_path;
  std::string t_grid = "0:0.5:5";
  std::uint64_t seed = 42;
  std::uint64_t samples = 100000;
  unsigned workers = 0;
  std::optional<std::uint64_t> cell_budget;
  std::optional<std::uint64_t> oracle_budget;

  double c = 1.0;
  bool c_given = false;
  std::string metric = "hamming";
  std::string constant = "delta";

  std::size_t i = 1;
  std::string prefix;  ///< comma-separated symbols
  std::string pair;    ///< "w,w_hat"
  std::string route = "auto";
  std::string z;

  std::string functional = "hamming-weight";
  std::string table_path;
  std::string mean = "exact";

  std::string suite = "all";
  std::vector<std::string> fixtures;
  double scale = 1.0;
};

/// Parses argv-style arguments (without the program name) and runs the command.
/// Exit codes: 0 success, 1 validation error, 2 capacity or budget error,
/// 3 verification checks failed.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace mixconc::cli
