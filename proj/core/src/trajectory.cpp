#include "ecocacc/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ecocacc/error.hpp"

namespace ecocacc {

double Trajectory::energy_wh() const {
  double sum = 0.0;
  for (const auto& p : points) sum += p.step_energy_wh;
  return sum;
}

double Trajectory::time_at_position(double position_m) const {
  if (points.empty()) throw DomainError("empty trajectory");
  const double k = (position_m - start_position_m()) / ds_m;
  const double rounded = std::round(k);
  if (std::fabs(k - rounded) > 1e-6 || rounded < 0.0 || rounded >= static_cast<double>(points.size())) {
    throw DomainError("position " + std::to_string(position_m) + " m is not a grid point of the trajectory");
  }
  return points[static_cast<std::size_t>(rounded)].time_s;
}

double time_reaching(const Trajectory& traj, double position_m) {
  if (traj.points.empty()) throw DomainError("empty trajectory");
  const auto& pts = traj.points;
  if (position_m <= pts.front().position_m) return pts.front().time_s;
  if (position_m >= pts.back().position_m) {
    const auto& last = pts.back();
    if (position_m == last.position_m) return last.time_s;
    if (!(last.velocity_mps > 0.0)) return std::numeric_limits<double>::infinity();
    return last.time_s + (position_m - last.position_m) / last.velocity_mps;
  }
  const auto k = static_cast<std::size_t>((position_m - pts.front().position_m) / traj.ds_m);
  const auto& p = pts[std::min(k, pts.size() - 2)];
  const double d = position_m - p.position_m;
  const double disc = std::max(0.0, p.velocity_mps * p.velocity_mps + 2.0 * p.accel_mps2 * d);
  const double denom = p.velocity_mps + std::sqrt(disc);
  if (!(denom > 0.0)) return std::numeric_limits<double>::infinity();
  return p.time_s + 2.0 * d / denom;
}

SampledState sample_at_time(const Trajectory& traj, double t_s) {
  if (traj.points.empty()) throw DomainError("empty trajectory");
  const auto& pts = traj.points;
  if (t_s <= pts.front().time_s) {
    return {pts.front().position_m, pts.front().velocity_mps, 0.0, 0.0};
  }
  if (t_s >= pts.back().time_s) {
    const auto& last = pts.back();
    return {last.position_m + last.velocity_mps * (t_s - last.time_s), last.velocity_mps, 0.0, 0.0};
  }
  auto it = std::upper_bound(pts.begin(), pts.end(), t_s,
                             [](double t, const TrajectoryPoint& p) { return t < p.time_s; });
  const auto& p = *(it - 1);
  const double tau = t_s - p.time_s;
  return {p.position_m + p.velocity_mps * tau + 0.5 * p.accel_mps2 * tau * tau,
          std::max(0.0, p.velocity_mps + p.accel_mps2 * tau), p.accel_mps2, p.command_u};
}

KinematicResiduals kinematic_residuals(const Trajectory& traj) {
  KinematicResiduals r;
  for (std::size_t k = 0; k + 1 < traj.points.size(); ++k) {
    const auto& a = traj.points[k];
    const auto& b = traj.points[k + 1];
    const double ds = b.position_m - a.position_m;
    r.max_velocity_residual =
        std::max(r.max_velocity_residual,
                 std::fabs(b.velocity_mps * b.velocity_mps - a.velocity_mps * a.velocity_mps - 2.0 * a.accel_mps2 * ds));
    r.max_time_residual = std::max(
        r.max_time_residual, std::fabs(b.time_s - a.time_s - 2.0 * ds / (b.velocity_mps + a.velocity_mps)));
  }
  return r;
}

double average_efficiency(const Trajectory& traj) {
  if (traj.points.size() < 2) throw DomainError("average efficiency needs at least one step");
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t k = 0; k + 1 < traj.points.size(); ++k) {
    if (traj.points[k].traction) {
      sum += traj.points[k].eta_tr;
      ++n;
    }
  }
  if (n > 0) return sum / static_cast<double>(n);
  // Coasting/braking only: fall back to every step.
  for (std::size_t k = 0; k + 1 < traj.points.size(); ++k) sum += traj.points[k].eta_tr;
  return sum / static_cast<double>(traj.points.size() - 1);
}

}  // namespace ecocacc
