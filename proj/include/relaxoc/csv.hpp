#pragma once

#include "relaxoc/chattering.hpp"
#include "relaxoc/grid.hpp"
#include "relaxoc/optimizer.hpp"
#include "relaxoc/young.hpp"

#include <string>
#include <vector>

namespace relaxoc::csv {

/// Shortest round-trip decimal rendering (printf %.17g trimmed); output is
/// byte-deterministic across runs and thread counts.
std::string format_double(double v);

void write_trajectory(const std::string& path, const Trajectory& traj);
void write_signal(const std::string& path, const Signal& u);
void write_young(const std::string& path, const YoungControl& lam);
void write_convergence(const std::string& path, const std::vector<ConvergenceRow>& table);
void write_trace(const std::string& path, const std::vector<TraceEntry>& trace);
/// Control-grid envelope dump for scalar controls: u, L(t,x,u), envelope.
void write_envelope_dump(const std::string& path, const std::vector<double>& us,
                         const std::vector<double>& raw, const std::vector<double>& env);

Trajectory read_trajectory(const std::string& path);
Signal read_signal(const std::string& path);

}  // namespace relaxoc::csv
