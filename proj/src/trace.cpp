#include "relsmooth/trace.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "relsmooth/errors.hpp"

namespace relsmooth {

namespace {

std::string format_double(double v) {
  if (std::isnan(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void write_trace_csv(const IterateTrace& trace, const std::string& path,
                     bool include_wall_times) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error("write_trace_csv: cannot open " + tmp);
    out << "# relsmooth trace\n";
    out << "# algorithm=" << trace.algorithm << "\n";
    out << "# L=" << format_double(trace.L) << "\n";
    out << "# mu=" << format_double(trace.mu) << "\n";
    out << "# seed=" << trace.seed << "\n";
    out << "# prng=" << trace.prng << "\n";
    out << "# completed=" << (trace.completed ? "yes" : "no") << "\n";
    out << "iter,f,gap,gap_bound,root_residual,wall_ns\n";
    for (const TraceRow& row : trace.rows) {
      out << row.k << ',' << format_double(row.f) << ',' << format_double(row.gap)
          << ',' << format_double(row.gap_bound) << ','
          << format_double(row.root_residual) << ',';
      if (include_wall_times) out << row.wall_ns;
      out << '\n';
    }
    if (!out) throw Error("write_trace_csv: write failed for " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace relsmooth
