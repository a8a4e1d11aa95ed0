#include "salsa/solvers.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace salsa {

void write_trace_csv(std::ostream& out, const SolverTrace& trace, const TraceCsvOptions& options) {
  out << "iter,objective,gap,seconds\n";
  char line[128];
  for (const auto& row : trace.rows) {
    std::snprintf(line, sizeof line, "%d,%.17g,%.17g,%.6f\n", row.iter, row.objective, row.gap,
                  options.include_timing ? row.seconds : 0.0);
    out << line;
  }
}

void write_trace_csv(const std::filesystem::path& path, const SolverTrace& trace, const TraceCsvOptions& options) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_trace_csv(out, trace, options);
}

SolverTrace read_trace_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "iter,objective,gap,seconds") {
    throw std::runtime_error("read_trace_csv: unexpected header in " + path.string());
  }
  SolverTrace trace;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    TraceRow row;
    char c1, c2, c3;
    std::istringstream fields(line);
    if (!(fields >> row.iter >> c1 >> row.objective >> c2 >> row.gap >> c3 >> row.seconds) || c1 != ',' ||
        c2 != ',' || c3 != ',') {
      throw std::runtime_error("read_trace_csv: malformed row '" + line + "'");
    }
    trace.rows.push_back(row);
  }
  return trace;
}

}  // namespace salsa
