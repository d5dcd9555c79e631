#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "focklab/core.hpp"

namespace focklab {

// ---------------------------------------------------------------------------
// Configuration-driven verification suites and grid evaluation.
// ---------------------------------------------------------------------------

struct GridSpec {
  double re0 = -1.0, im0 = -1.0;
  double re1 = 1.0, im1 = 1.0;
  int nx = 3, ny = 3;
};

struct RunConfig {
  std::string suite = "all";  // operators | bargmann | berezin | szego | all
  double beta1 = 0.5;
  double beta2 = 0.3;
  double kappa = 0.5;
  double l_re = 0.2;
  double l_im = 0.0;
  double tau = 0.3;
  int trunc_N = 10;
  int quad_m = 20;
  int samples = 25;
  unsigned seed = 20250808;
  GridSpec grid;
  std::string quantity = "berezin-a";
  std::string out;  // empty writes to stdout

  cplx l() const { return cplx{l_re, l_im}; }
};

/// One verified claim. `claim` names the identity being checked; `value` is
/// the residual (or slack) compared against `tolerance`.
struct CheckRecord {
  std::string name;
  std::string claim;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  bool skipped = false;
  std::string note;
};

/// The measured normalization constants (conventions, not residuals).
struct Constants {
  double gram_diagonal_hkappal = 0.0;   // H_{kappa,l} Gram diagonal at (2, 0.5)
  double bargmann_unitarity = 0.0;      // (B h_k, B h_k) in the quadrature model
  double szego_prefactor_ratio = 0.0;   // szego_numeric / szego_closed
};

struct Report {
  std::string version;
  RunConfig config;
  std::vector<CheckRecord> checks;
  Constants constants;

  bool all_pass() const;  // ignores skipped entries
};

/// Runs the selected suites. Deterministic: identical configs produce
/// byte-identical serialized reports. Quadrature-invalid parameters produce
/// "skipped (degenerate weight)" entries, not failures.
Report run_suite(const RunConfig& config);

Constants measured_constants(const RunConfig& config);

std::string report_to_json(const Report& report);

/// CSV rows over the configured grid: point, closed value, numeric value
/// (blank when unavailable), absolute deviation. Returns the row count.
int eval_grid(const RunConfig& config, std::ostream& os);

/// Write-then-rename; the destination never holds a partial file.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace focklab
