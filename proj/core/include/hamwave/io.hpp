#pragma once

#include "hamwave/hamiltonian.hpp"
#include "hamwave/integrate.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace hamwave {

/// One JSON object {"t", "m", "period_x", "gamma1", "gamma2", "xi"} without a trailing newline.
std::string snapshot_json(double time, const PhaseState& state);

struct LoadedState {
  PhaseState state;
  std::optional<double> time;
};

/// Parses a snapshot_json record. "xi" is optional and defaults to zero; "period_x"
/// defaults to `default_period`.
LoadedState parse_state_json(const std::string& text, double default_period);

/// Reads the first record of a JSON or JSON-lines file.
LoadedState load_state_file(const std::filesystem::path& path, double default_period);

/// Header t,K,U,U_sigma,H,dH_rel then one row per snapshot; dH_rel relative to the first row.
void write_energy_csv(std::ostream& out, const Trajectory& trajectory);

/// Header x,y then one row per node.
void write_curve_csv(std::ostream& out, const SurfaceCurve& curve);

/// One snapshot_json line per snapshot.
void write_snapshots_jsonl(std::ostream& out, const Trajectory& trajectory);

}  // namespace hamwave
