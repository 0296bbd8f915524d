#include "ecocacc/signal_timing.hpp"

#include <cmath>
#include <string>

#include "ecocacc/error.hpp"

namespace ecocacc {
namespace {

double cycle_position(const TrafficSignal& sig, double t_s) {
  if (!(t_s >= 0.0)) throw DomainError("signal query time must be >= 0, got " + std::to_string(t_s));
  double x = std::fmod(t_s - sig.offset_s, sig.cycle_s());
  if (x < 0.0) x += sig.cycle_s();
  return x;
}

}  // namespace

void TrafficSignal::validate() const {
  if (!(green_s > 0.0)) throw ConfigError("signal: green_s must be > 0");
  if (!(red_s > 0.0)) throw ConfigError("signal: red_s must be > 0");
  if (!(offset_s >= 0.0)) throw ConfigError("signal: offset_s must be >= 0");
}

Phase phase_at(const TrafficSignal& sig, double t_s) {
  return cycle_position(sig, t_s) < sig.green_s ? Phase::kGreen : Phase::kRed;
}

GreenWindow next_green_window(const TrafficSignal& sig, double t_s) {
  const double x = cycle_position(sig, t_s);
  const double cycle_start = t_s - x;
  if (x < sig.green_s) return {cycle_start, cycle_start + sig.green_s};
  return {cycle_start + sig.cycle_s(), cycle_start + sig.cycle_s() + sig.green_s};
}

double green_remaining(const TrafficSignal& sig, double t_s) {
  const double x = cycle_position(sig, t_s);
  return x < sig.green_s ? sig.green_s - x : 0.0;
}

}  // namespace ecocacc
