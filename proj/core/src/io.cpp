#include "hamwave/io.hpp"

#include "hamwave/error.hpp"

#include "json.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <vector>

namespace hamwave {
namespace {

using nlohmann::json;

std::vector<double> to_vector(const Samples& f) { return {f.data(), f.data() + f.size()}; }

Samples to_samples(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array()) fail(ErrorKind::Io, std::string("missing array: ") + key);
  const auto v = j[key].get<std::vector<double>>();
  return Eigen::Map<const Samples>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

std::string snapshot_json(double time, const PhaseState& state) {
  json j;
  j["t"] = time;
  j["m"] = state.curve.size();
  j["period_x"] = state.curve.period_x;
  j["gamma1"] = to_vector(state.curve.gamma1);
  j["gamma2"] = to_vector(state.curve.gamma2);
  j["xi"] = to_vector(state.xi);
  return j.dump();
}

LoadedState parse_state_json(const std::string& text, double default_period) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorKind::Io, std::string("invalid JSON: ") + e.what());
  }
  LoadedState out;
  out.state.curve.gamma1 = to_samples(j, "gamma1");
  out.state.curve.gamma2 = to_samples(j, "gamma2");
  out.state.curve.period_x = j.value("period_x", default_period);
  out.state.xi = j.contains("xi") ? to_samples(j, "xi") : Samples::Zero(out.state.curve.size());
  if (j.contains("t")) out.time = j["t"].get<double>();
  if (j.contains("m") && j["m"].get<Eigen::Index>() != out.state.curve.size()) {
    fail(ErrorKind::Io, "field m disagrees with the sample count");
  }
  out.state.validate();
  return out;
}

LoadedState load_state_file(const std::filesystem::path& path, double default_period) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  std::string text = buffer.str();
  // JSON-lines: take the first nonempty line when the whole file is not one document.
  if (!json::accept(text)) {
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line) && line.find_first_not_of(" \t\r") == std::string::npos) {
    }
    text = line;
  }
  return parse_state_json(text, default_period);
}

void write_energy_csv(std::ostream& out, const Trajectory& trajectory) {
  out << "t,K,U,U_sigma,H,dH_rel\n";
  if (trajectory.snapshots.empty()) return;
  const double h0 = trajectory.snapshots.front().energy.total;
  out << std::setprecision(17);
  for (const Snapshot& s : trajectory.snapshots) {
    const EnergyBreakdown& e = s.energy;
    const double drift = h0 != 0.0 ? (e.total - h0) / std::abs(h0) : e.total - h0;
    out << s.time << ',' << e.kinetic << ',' << e.potential_grav << ',' << e.potential_surf << ',' << e.total << ','
        << drift << '\n';
  }
}

void write_curve_csv(std::ostream& out, const SurfaceCurve& curve) {
  out << "x,y\n" << std::setprecision(17);
  for (Eigen::Index j = 0; j < curve.size(); ++j) out << curve.gamma1[j] << ',' << curve.gamma2[j] << '\n';
}

void write_snapshots_jsonl(std::ostream& out, const Trajectory& trajectory) {
  for (const Snapshot& s : trajectory.snapshots) out << snapshot_json(s.time, s.state) << '\n';
}

}  // namespace hamwave
