#include "relaxoc/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace relaxoc::csv {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

std::vector<std::vector<double>> read_table(const std::string& path, std::string* header) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty csv: " + path);
  if (header) *header = line;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

void write_trajectory(const std::string& path, const Trajectory& traj) {
  auto out = open_out(path);
  const int dim = static_cast<int>(traj.states.front().size());
  out << "t";
  for (int i = 1; i <= dim; ++i) out << ",x_" << i;
  out << ",residual\n";
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    out << format_double(traj.times[k]);
    for (int i = 0; i < dim; ++i) out << ',' << format_double(traj.states[k][i]);
    out << ',' << format_double(k + 1 == traj.times.size() ? traj.residual : 0.0) << '\n';
  }
}

void write_signal(const std::string& path, const Signal& u) {
  auto out = open_out(path);
  out << "t";
  for (int i = 1; i <= u.dim(); ++i) out << ",u_" << i;
  out << '\n';
  for (int k = 0; k < u.intervals(); ++k) {
    out << format_double(u.time(k));
    for (int i = 0; i < u.dim(); ++i) out << ',' << format_double(u.value(k)[i]);
    out << '\n';
  }
  // Trailing breakpoint row repeats the last value so the signal horizon
  // round-trips.
  out << format_double(u.times().back());
  for (int i = 0; i < u.dim(); ++i) out << ',' << format_double(u.value(u.intervals() - 1)[i]);
  out << '\n';
}

void write_young(const std::string& path, const YoungControl& lam) {
  auto out = open_out(path);
  const int dim = lam.dim();
  out << "k,t";
  for (int i = 1; i <= dim; ++i) out << ",atom_" << i;
  out << ",weight\n";
  for (int k = 0; k < lam.intervals(); ++k) {
    const auto& mu = lam.measures[static_cast<std::size_t>(k)];
    for (int i = 0; i < mu.atom_count(); ++i) {
      out << k << ',' << format_double(lam.times[static_cast<std::size_t>(k)]);
      for (int d = 0; d < dim; ++d) out << ',' << format_double(mu.atom(i)[d]);
      out << ',' << format_double(mu.weight(i)) << '\n';
    }
  }
}

void write_convergence(const std::string& path, const std::vector<ConvergenceRow>& table) {
  auto out = open_out(path);
  out << "n,weak_gap,state_gap,J,gap_to_mr\n";
  for (const auto& row : table)
    out << row.cycles << ',' << format_double(row.weak_gap) << ',' << format_double(row.state_gap)
        << ',' << format_double(row.cost) << ',' << format_double(row.gap_to_relaxed) << '\n';
}

void write_trace(const std::string& path, const std::vector<TraceEntry>& trace) {
  auto out = open_out(path);
  out << "iteration,objective,step\n";
  for (const auto& e : trace)
    out << e.iteration << ',' << format_double(e.objective) << ',' << format_double(e.step)
        << '\n';
}

void write_envelope_dump(const std::string& path, const std::vector<double>& us,
                         const std::vector<double>& raw, const std::vector<double>& env) {
  auto out = open_out(path);
  out << "u,L,L_envelope\n";
  for (std::size_t i = 0; i < us.size(); ++i)
    out << format_double(us[i]) << ',' << format_double(raw[i]) << ',' << format_double(env[i])
        << '\n';
}

Trajectory read_trajectory(const std::string& path) {
  std::string header;
  const auto rows = read_table(path, &header);
  if (rows.size() < 2) throw std::runtime_error("trajectory csv needs at least two rows");
  const std::size_t cols = rows.front().size();
  if (cols < 3) throw std::runtime_error("trajectory csv needs t, states, residual columns");
  Trajectory traj;
  for (const auto& row : rows) {
    if (row.size() != cols) throw std::runtime_error("ragged trajectory csv");
    traj.times.push_back(row.front());
    Vec x(static_cast<int>(cols) - 2);
    for (std::size_t i = 1; i + 1 < cols; ++i) x[static_cast<int>(i) - 1] = row[i];
    traj.states.push_back(std::move(x));
  }
  traj.residual = rows.back().back();
  return traj;
}

Signal read_signal(const std::string& path) {
  std::string header;
  const auto rows = read_table(path, &header);
  if (rows.size() < 2) throw std::runtime_error("signal csv needs at least two rows");
  const std::size_t cols = rows.front().size();
  std::vector<double> times;
  std::vector<Vec> values;
  for (const auto& row : rows) {
    if (row.size() != cols) throw std::runtime_error("ragged signal csv");
    times.push_back(row.front());
  }
  for (std::size_t r = 0; r + 1 < rows.size(); ++r) {
    Vec v(static_cast<int>(cols) - 1);
    for (std::size_t i = 1; i < cols; ++i) v[static_cast<int>(i) - 1] = rows[r][i];
    values.push_back(std::move(v));
  }
  return Signal(std::move(times), std::move(values));
}

}  // namespace relaxoc::csv
