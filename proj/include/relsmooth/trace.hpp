#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "relsmooth/types.hpp"

namespace relsmooth {

struct SolverConfig {
  int max_iters = 1000;
  /// Record every record_every-th iterate (plus iterates 0 and the last).
  /// 0 selects the default rule: every iterate up to 1000, then every 10th.
  int record_every = 0;
  /// Stop once f - f_star <= target_gap (requires a finite f_star).
  double target_gap = std::numeric_limits<double>::quiet_NaN();
  /// Reference value used by target_gap and the trace gap column.
  double f_star = std::numeric_limits<double>::quiet_NaN();
  std::uint64_t seed = 0;
};

struct TraceRow {
  std::int64_t k = 0;
  Vector x;
  double f = 0.0;
  double best_f = 0.0;  // min of f over all iterates up to k (not just recorded)
  double gap = std::numeric_limits<double>::quiet_NaN();
  double gap_bound = std::numeric_limits<double>::quiet_NaN();
  double root_residual = std::numeric_limits<double>::quiet_NaN();
  std::int64_t wall_ns = 0;
};

/// Per-run iterate record.  Row 0 is always the starting point; recorded
/// iteration indices are strictly increasing.  The metadata pins everything
/// needed to reproduce or bound-check the run.
struct IterateTrace {
  std::vector<TraceRow> rows;

  std::string algorithm;
  double L = 0.0;
  double mu = 0.0;
  std::uint64_t seed = 0;
  std::string prng;
  Vector x0;
  bool completed = true;
  std::string abort_reason;
  /// Last duality-style gap estimate max_j kappa_j - m (vertex-direction
  /// solver only; NaN elsewhere).
  double fw_stationarity = std::numeric_limits<double>::quiet_NaN();

  const TraceRow& last() const { return rows.back(); }
  double final_f() const { return rows.back().f; }
  double best_f() const { return rows.back().best_f; }
};

/// Writes the trace as CSV: '#'-prefixed metadata lines, a header
/// `iter,f,gap,gap_bound,root_residual,wall_ns`, then one row per record.
/// Floats are printed with 17 significant digits; NaN fields become empty
/// cells.  The wall_ns column is left empty unless include_wall_times is
/// set, keeping files byte-reproducible across runs.  The file is written
/// via a temp file and renamed into place.
void write_trace_csv(const IterateTrace& trace, const std::string& path,
                     bool include_wall_times = false);

}  // namespace relsmooth
