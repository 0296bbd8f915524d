#pragma once

namespace ecocacc {

enum class Phase { kGreen, kRed };

/// Pre-timed signal with effective green/red (amber folded into both).
struct TrafficSignal {
  double position_m = 0.0;
  double green_s = 0.0;
  double red_s = 0.0;
  double offset_s = 0.0;  // start of the first green

  double cycle_s() const { return green_s + red_s; }
  void validate() const;
  friend bool operator==(const TrafficSignal&, const TrafficSignal&) = default;
};

struct GreenWindow {
  double start_s = 0.0;
  double end_s = 0.0;  // exclusive
};

/// Green iff ((t - offset) mod cycle) lies in [0, green).
Phase phase_at(const TrafficSignal& sig, double t_s);

/// Earliest green window with end > t; the containing window when t is green.
GreenWindow next_green_window(const TrafficSignal& sig, double t_s);

/// Seconds of green left at t (0 during red).
double green_remaining(const TrafficSignal& sig, double t_s);

}  // namespace ecocacc
