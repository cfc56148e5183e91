// Convergence-study driver: configuration parsing, refinement sequences,
// report files and optional rate gating for CI use.

#ifndef HDG_STUDY_HPP
#define HDG_STUDY_HPP

#include <optional>
#include <string>
#include <vector>

namespace hdg {

struct StudyConfig {
  int dim = 2;
  std::string mesh_family = "simplex";  // simplex | ladder
  std::vector<int> degrees = {0};
  std::vector<int> levels = {3, 4, 5};  // h = 2^-m
  std::string problem = "sine2d";
  std::string solver = "direct";  // direct | pcg
  double tol = 1e-11;
  int direct_limit = 200000;  // "direct" switches to pcg above this dimension
  std::optional<double> gamma;  // interface norms on {x = gamma}
  std::string out_dir = ".";
  int sample_degree = -1;  // override for L-inf sampling density
  bool check_rates = false;
};

// Throws std::invalid_argument naming the offending field.
void validate_config(const StudyConfig& cfg);

// Parse command-line style arguments (and an optional `--config file` of
// key = value lines; flags override the file). Throws on unknown keys,
// type mismatches and constraint violations. When `args` contains --help,
// prints usage and sets `wants_help`.
StudyConfig parse_config(const std::vector<std::string>& args, bool* wants_help = nullptr);

// Run the full study: one CSV and one markdown table per (mesh family, k).
// Returns 0 on success, nonzero if a rate-band or conservation check fails
// (only when cfg.check_rates is set).
int run_study(const StudyConfig& cfg);

}  // namespace hdg

#endif
