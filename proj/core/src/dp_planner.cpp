#include "ecocacc/dp_planner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <string>
#include <unordered_map>

#include "ecocacc/error.hpp"

namespace ecocacc {

void PlannerWeights::validate() const {
  if (!(alpha >= 0.0 && beta >= 0.0 && gamma >= 0.0)) throw ConfigError("weights: alpha, beta, gamma must be >= 0");
  if (alpha == 0.0 && beta == 0.0 && gamma == 0.0) throw ConfigError("weights: alpha, beta, gamma are all zero");
  if (!(p_red > 0.0)) throw ConfigError("weights: p_red must be > 0");
}

void GridSpec::validate() const {
  if (!(ds_m > 0.0)) throw ConfigError("grid: ds_m must be > 0");
  if (!(accel_quantum_mps2 > 0.0)) throw ConfigError("grid: accel_quantum_mps2 must be > 0");
  if (!(t_step_s > 0.0)) throw ConfigError("grid: t_step_s must be > 0");
  if (!(t_min_s < t_max_s)) throw ConfigError("grid: t_min_s must be < t_max_s");
  for (int f : coarse_factors) {
    if (f < 1) throw ConfigError("grid: coarse factors must be >= 1");
  }
}

std::vector<double> default_accel_candidates(const VehicleParams& p) {
  std::vector<double> out;
  for (double a : {-3.0, -2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0, p.accel_max_mps2}) {
    if (a >= p.accel_min_mps2 && a <= p.accel_max_mps2 &&
        std::find(out.begin(), out.end(), a) == out.end()) {
      out.push_back(a);
    }
  }
  return out;
}

double mobility_cost(double v_mps, double ds_m, double v_des_mps) {
  const double d = ds_m / (v_mps + 0.01) - ds_m / v_des_mps;
  return d * d;
}

double comfort_cost(double a_mps2) { return a_mps2 * a_mps2; }

std::optional<Transition> kinematic_transition(double v_mps, double a_mps2, double ds_m) {
  const double v2 = v_mps * v_mps + 2.0 * a_mps2 * ds_m;
  if (v2 < 0.0) return std::nullopt;
  const double v_next = std::sqrt(v2);
  if (v_next + v_mps <= 0.0) return std::nullopt;
  return Transition{v_next, 2.0 * ds_m / (v_next + v_mps)};
}

double stage_cost(const VehicleParams& p, const PlannerWeights& w, double v_mps, double a_mps2, double dt_s,
                  double v_des_mps, double ds_m) {
  const double energy = w.alpha != 0.0 ? distance_step_energy(p, ds_m, a_mps2, dt_s).energy_wh : 0.0;
  return w.alpha * energy + w.beta * mobility_cost(v_mps, ds_m, v_des_mps) + w.gamma * comfort_cost(a_mps2);
}

bool arrives_on_red(const TrafficSignal& sig, double t_arrival_s, double guard_s) {
  if (phase_at(sig, t_arrival_s) == Phase::kRed) return true;
  return guard_s > 0.0 && green_remaining(sig, t_arrival_s) <= guard_s;
}

double red_penalty(const std::vector<TrafficSignal>& signals, double position_m, double t_arrival_s, double p_red,
                   double guard_s) {
  if (!(t_arrival_s >= 0.0)) throw DomainError("arrival time must be >= 0");
  double penalty = 0.0;
  for (const auto& sig : signals) {
    if (std::fabs(sig.position_m - position_m) < 1e-9 && arrives_on_red(sig, t_arrival_s, guard_s)) {
      penalty += p_red;
    }
  }
  return penalty;
}

double red_penalty(const std::vector<TrafficSignal>& signals, int k, double t_arrival_s, double ds_m, double p_red,
                   double start_position_m, double guard_s) {
  return red_penalty(signals, start_position_m + k * ds_m, t_arrival_s, p_red, guard_s);
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::uint32_t kActionBits = 4;
constexpr std::uint32_t kActionMask = (1u << kActionBits) - 1;

std::uint32_t pack(std::uint32_t parent, std::uint32_t action) { return (parent << kActionBits) | action; }
std::uint32_t parent_of(std::uint32_t back) { return back >> kActionBits; }
std::uint32_t action_of(std::uint32_t back) { return back & kActionMask; }

struct Label {
  double cost;
  double time;
  std::uint32_t back;
  std::uint32_t level;
};

// Everything about a request that does not depend on the merge bucket width.
struct Problem {
  const PlanRequest* req = nullptr;
  int steps = 0;
  double spacing = 0.0;  // v^2 distance between adjacent speed levels
  int start_level = 0;
  std::vector<double> speed;        // per level
  std::vector<int> max_level;       // per step
  std::vector<double> accel;        // per action, sorted by tie-break rank
  std::vector<int> level_step;      // per action
  std::vector<double> dt;           // [level * n_actions + action], NaN if infeasible
  std::vector<double> cost;         // same layout
  std::vector<std::vector<const TrafficSignal*>> signals_at;  // per step
  std::vector<double> lower_bound;  // [step * n_levels + level], cost-to-go ignoring time
  std::vector<double> time_price;   // per level, -v^2 g'(v) of the cruise cost g
  double t_max = 0.0;

  int n_actions() const { return static_cast<int>(accel.size()); }
  int n_levels() const { return static_cast<int>(speed.size()); }
  double position(int k) const { return req->start_position_m + k * req->grid.ds_m; }
};

int integer_ratio(double value, double unit, const char* what) {
  const double r = value / unit;
  const double rounded = std::round(r);
  if (std::fabs(r - rounded) > 1e-6) {
    std::ostringstream msg;
    msg << what << " (" << value << ") is not an integer multiple of " << unit;
    throw ConfigError(msg.str());
  }
  return static_cast<int>(rounded);
}

Problem build_problem(const PlanRequest& req) {
  if (req.vehicle == nullptr) throw ConfigError("plan request has no vehicle");
  const VehicleParams& p = *req.vehicle;
  p.validate();
  req.weights.validate();
  req.grid.validate();
  const GridSpec& g = req.grid;
  if (!(req.v_des_mps > 0.0)) throw ConfigError("v_des must be > 0");
  if (!(req.speed_limit_mps > 0.0)) throw ConfigError("speed limit must be > 0");
  if (!(req.start_velocity_mps >= 0.0)) throw DomainError("start velocity must be >= 0");
  if (!(req.exit_speed_min_mps >= 0.0)) throw ConfigError("exit speed must be >= 0");

  Problem pr;
  pr.req = &req;
  pr.steps = integer_ratio(req.route_end_m - req.start_position_m, g.ds_m, "route length from start");
  if (pr.steps <= 0) throw ConfigError("route end must lie ahead of the start position");
  pr.t_max = g.t_max_s;
  pr.spacing = 2.0 * g.accel_quantum_mps2 * g.ds_m;

  std::vector<double> cap(static_cast<std::size_t>(pr.steps) + 1, req.speed_limit_mps);
  if (!g.v_max_profile.empty()) {
    if (g.v_max_profile.size() != cap.size()) {
      throw ConfigError("grid: v_max_profile must have one entry per grid point");
    }
    cap = g.v_max_profile;
  }
  double top = 0.0;
  pr.max_level.resize(cap.size());
  for (std::size_t k = 0; k < cap.size(); ++k) {
    if (!(cap[k] >= 0.0)) throw ConfigError("grid: negative speed cap");
    pr.max_level[k] = static_cast<int>(std::floor(cap[k] * cap[k] / pr.spacing + 1e-9));
    top = std::max(top, cap[k]);
  }
  const int levels = static_cast<int>(std::floor(top * top / pr.spacing + 1e-9)) + 1;
  pr.speed.resize(static_cast<std::size_t>(levels));
  for (int j = 0; j < levels; ++j) pr.speed[static_cast<std::size_t>(j)] = std::sqrt(j * pr.spacing);

  pr.start_level = integer_ratio(req.start_velocity_mps * req.start_velocity_mps, pr.spacing,
                                 "start velocity squared");
  if (pr.start_level > pr.max_level[0]) throw ConfigError("start velocity exceeds the speed cap at the start");

  std::vector<double> candidates = g.a_candidates.empty() ? default_accel_candidates(p) : g.a_candidates;
  for (double a : candidates) {
    if (a < p.accel_min_mps2 - 1e-12 || a > p.accel_max_mps2 + 1e-12) {
      throw ConfigError("grid: acceleration candidate outside the vehicle limits");
    }
    integer_ratio(a, g.accel_quantum_mps2, "acceleration candidate");
  }
  std::sort(candidates.begin(), candidates.end(), [](double a, double b) {
    if (std::fabs(a) != std::fabs(b)) return std::fabs(a) < std::fabs(b);
    return a < b;
  });
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  if (candidates.empty()) throw ConfigError("grid: no acceleration candidates");
  if (candidates.size() > kActionMask + 1) throw ConfigError("grid: at most 16 acceleration candidates");
  pr.accel = candidates;
  for (double a : candidates) pr.level_step.push_back(integer_ratio(a, g.accel_quantum_mps2, "acceleration"));

  const int na = pr.n_actions();
  pr.dt.assign(static_cast<std::size_t>(levels * na), std::numeric_limits<double>::quiet_NaN());
  pr.cost.assign(pr.dt.size(), kInf);
  for (int j = 0; j < levels; ++j) {
    for (int ai = 0; ai < na; ++ai) {
      const int j2 = j + pr.level_step[static_cast<std::size_t>(ai)];
      if (j2 < 0 || j2 >= levels || (j == 0 && j2 == 0)) continue;
      const double v = pr.speed[static_cast<std::size_t>(j)];
      const double dt = 2.0 * g.ds_m / (v + pr.speed[static_cast<std::size_t>(j2)]);
      const std::size_t idx = static_cast<std::size_t>(j * na + ai);
      pr.dt[idx] = dt;
      pr.cost[idx] = stage_cost(p, req.weights, v, pr.accel[static_cast<std::size_t>(ai)], dt, req.v_des_mps, g.ds_m);
    }
  }

  pr.signals_at.resize(static_cast<std::size_t>(pr.steps) + 1);
  for (const auto& sig : req.signals) {
    if (sig.position_m < req.start_position_m) continue;
    if (sig.position_m > req.route_end_m) throw ConfigError("signal lies beyond the route end");
    const int k = integer_ratio(sig.position_m - req.start_position_m, g.ds_m, "signal position");
    pr.signals_at[static_cast<std::size_t>(k)].push_back(&sig);
  }

  if (!req.time_lower_bound.empty() && req.time_lower_bound.size() != static_cast<std::size_t>(pr.steps) + 1) {
    throw ConfigError("time lower bound must have one entry per grid point");
  }

  // Marginal cost of stretching a cruise at v by one second.
  pr.time_price.assign(static_cast<std::size_t>(levels), 0.0);
  auto cruise = [&](double v) { return stage_cost(p, req.weights, v, 0.0, g.ds_m / v, req.v_des_mps, g.ds_m) / g.ds_m; };
  for (int j = 1; j < levels; ++j) {
    const double v = pr.speed[static_cast<std::size_t>(j)];
    const double h = 1e-4 * v;
    pr.time_price[static_cast<std::size_t>(j)] = -v * v * (cruise(v + h) - cruise(v - h)) / (2.0 * h);
  }

  // Time-free backward pass: admissible bound on the cost-to-go.
  pr.lower_bound.assign(static_cast<std::size_t>((pr.steps + 1) * levels), kInf);
  const int exit_level = static_cast<int>(std::ceil(req.exit_speed_min_mps * req.exit_speed_min_mps / pr.spacing - 1e-9));
  if (exit_level > pr.max_level[static_cast<std::size_t>(pr.steps)]) {
    throw ConfigError("exit speed exceeds the speed cap at the route end");
  }
  for (int j = exit_level; j <= pr.max_level[static_cast<std::size_t>(pr.steps)] && j < levels; ++j) {
    pr.lower_bound[static_cast<std::size_t>(pr.steps * levels + j)] = 0.0;
  }
  for (int k = pr.steps - 1; k >= 0; --k) {
    const int cap_k = std::min(pr.max_level[static_cast<std::size_t>(k)], levels - 1);
    const int cap_next = pr.max_level[static_cast<std::size_t>(k + 1)];
    for (int j = 0; j <= cap_k; ++j) {
      double best = kInf;
      for (int ai = 0; ai < na; ++ai) {
        const int j2 = j + pr.level_step[static_cast<std::size_t>(ai)];
        const std::size_t idx = static_cast<std::size_t>(j * na + ai);
        if (j2 < 0 || j2 > cap_next || std::isnan(pr.dt[idx])) continue;
        best = std::min(best, pr.cost[idx] + pr.lower_bound[static_cast<std::size_t>((k + 1) * levels + j2)]);
      }
      pr.lower_bound[static_cast<std::size_t>(k * levels + j)] = best;
    }
  }
  return pr;
}

// Maps (level, time bucket) to a label slot. Dense when the box is small,
// hashed otherwise (fine buckets used for exact comparisons).
class CellIndex {
 public:
  void reset(int levels, std::int64_t bucket_lo, std::int64_t bucket_hi) {
    for (std::size_t i : touched_) dense_[i] = -1;
    touched_.clear();
    sparse_.clear();
    levels_ = levels;
    lo_ = bucket_lo;
    const std::int64_t width = bucket_hi - bucket_lo + 1;
    use_dense_ = width > 0 && width * levels <= (std::int64_t{1} << 24);
    if (use_dense_) {
      width_ = width;
      const std::size_t need = static_cast<std::size_t>(width * levels);
      if (dense_.size() < need) dense_.resize(need, -1);
    }
  }

  std::int32_t* find_or_null(int level, std::int64_t bucket, bool create) {
    if (use_dense_) {
      const std::size_t i = static_cast<std::size_t>(static_cast<std::int64_t>(level) * width_ + (bucket - lo_));
      if (create && dense_[i] < 0) touched_.push_back(i);
      return &dense_[i];
    }
    const std::uint64_t key = (static_cast<std::uint64_t>(bucket) << 16) ^ static_cast<std::uint64_t>(level);
    auto it = sparse_.find(key);
    if (it == sparse_.end()) {
      if (!create) return nullptr;
      it = sparse_.emplace(key, -1).first;
    }
    return &it->second;
  }

 private:
  bool use_dense_ = true;
  int levels_ = 0;
  std::int64_t lo_ = 0;
  std::int64_t width_ = 0;
  std::vector<std::int32_t> dense_;
  std::vector<std::size_t> touched_;
  std::unordered_map<std::uint64_t, std::int32_t> sparse_;
};

struct PassOutcome {
  std::vector<int> actions;  // empty when nothing reached the end
  double cost = kInf;
  std::size_t expanded = 0;
  std::string failure;
};

class ForwardPass {
 public:
  ForwardPass(const Problem& pr, double bucket_s, double upper_bound, std::vector<char> priced)
      : pr_(pr), bucket_s_(bucket_s), ub_(upper_bound), priced_(std::move(priced)) {}

  PassOutcome run() {
    const PlanRequest& req = *pr_.req;
    const int na = pr_.n_actions();
    const int levels = pr_.n_levels();
    const double ub_limit = std::isfinite(ub_) ? ub_ + 1e-9 * std::max(1.0, std::fabs(ub_)) : kInf;
    PassOutcome out;

    backs_.assign(static_cast<std::size_t>(pr_.steps) + 1, {});
    std::vector<Label> cur{{0.0, req.start_time_s, 0, static_cast<std::uint32_t>(pr_.start_level)}};
    cur[0].cost += penalty_at(0, req.start_time_s);
    backs_[0].push_back(0);
    for (int k = 0; k < pr_.steps; ++k) {
      const int cap_next = pr_.max_level[static_cast<std::size_t>(k + 1)];
      double t_lb = req.time_lower_bound.empty() ? -kInf : req.time_lower_bound[static_cast<std::size_t>(k + 1)] - 1e-9;
      if (k + 1 == pr_.steps) t_lb = std::max(t_lb, req.grid.t_min_s);
      const bool at_signal = !pr_.signals_at[static_cast<std::size_t>(k + 1)].empty();

      double t_lo = kInf;
      double t_hi = -kInf;
      for (const auto& l : cur) {
        t_lo = std::min(t_lo, l.time);
        t_hi = std::max(t_hi, l.time);
      }
      const double dt_bound = 2.0 * req.grid.ds_m / pr_.speed[std::min<std::size_t>(1, pr_.speed.size() - 1)];
      index_.reset(levels, bucket(t_lo), bucket(std::min(t_hi + dt_bound, pr_.t_max)) + 1);
      next_.clear();

      std::size_t pruned_time_hi = 0;
      std::size_t pruned_time_lo = 0;
      std::size_t pruned_speed = 0;
      std::size_t pruned_bound = 0;
      for (std::size_t i = 0; i < cur.size(); ++i) {
        const Label& l = cur[i];
        for (int ai = 0; ai < na; ++ai) {
          const int j2 = static_cast<int>(l.level) + pr_.level_step[static_cast<std::size_t>(ai)];
          const std::size_t idx = static_cast<std::size_t>(static_cast<int>(l.level) * na + ai);
          if (j2 < 0 || std::isnan(pr_.dt[idx])) continue;
          if (j2 > cap_next) {
            ++pruned_speed;
            continue;
          }
          const double t2 = l.time + pr_.dt[idx];
          if (t2 > pr_.t_max) {
            ++pruned_time_hi;
            continue;
          }
          if (t2 < t_lb) {
            ++pruned_time_lo;
            continue;
          }
          const double lb = pr_.lower_bound[static_cast<std::size_t>((k + 1) * levels + j2)];
          if (lb == kInf) {
            ++pruned_speed;
            continue;
          }
          double c2 = l.cost + pr_.cost[idx];
          if (at_signal) c2 += penalty_at(k + 1, t2);
          if (c2 + lb > ub_limit) {
            ++pruned_bound;
            continue;
          }
          ++out.expanded;

          std::int32_t* head = index_.find_or_null(j2, bucket(t2), true);
          const std::uint32_t back = pack(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(ai));
          insert(head, {c2, t2, back, static_cast<std::uint32_t>(j2)}, k);
        }
      }

      if (next_.empty()) {
        std::ostringstream msg;
        msg << "no admissible state at position " << pr_.position(k + 1) << " m (step " << k + 1 << "/"
            << pr_.steps << "): ";
        const std::size_t worst = std::max({pruned_time_hi, pruned_time_lo, pruned_speed, pruned_bound});
        if (worst == 0) {
          msg << "no transition is feasible";
        } else if (worst == pruned_time_hi) {
          msg << "binding constraint is t_max = " << pr_.t_max << " s";
        } else if (worst == pruned_time_lo) {
          msg << "binding constraint is the per-step earliest-time bound";
        } else if (worst == pruned_speed) {
          msg << "binding constraint is the speed cap or the exit speed";
        } else {
          msg << "no path within the pruning bound";
        }
        out.failure = msg.str();
        return out;
      }
      auto& stage_backs = backs_[static_cast<std::size_t>(k + 1)];
      stage_backs.reserve(next_.size());
      for (const auto& l : next_) stage_backs.push_back(l.back);
      std::swap(cur, next_);
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < cur.size(); ++i) {
      if (cur[i].cost < cur[best].cost ||
          (cur[i].cost == cur[best].cost &&
           precedes_at(pr_.steps, static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(best)))) {
        best = i;
      }
    }
    out.cost = cur[best].cost;
    out.actions.resize(static_cast<std::size_t>(pr_.steps));
    std::uint32_t x = static_cast<std::uint32_t>(best);
    for (int m = pr_.steps; m > 0; --m) {
      const std::uint32_t b = backs_[static_cast<std::size_t>(m)][x];
      out.actions[static_cast<std::size_t>(m - 1)] = static_cast<int>(action_of(b));
      x = parent_of(b);
    }
    return out;
  }

 private:
  // Labels sharing a (level, time bucket) cell are merged into one. Where
  // travel time is binding the survivor minimizes cost - price * time, with
  // the cruise price of the cell's speed; elsewhere plain cost. Ties keep the
  // lexicographically first action sequence.
  void insert(std::int32_t* head, const Label& x, int k) {
    if (*head < 0) {
      *head = static_cast<std::int32_t>(next_.size());
      next_.push_back(x);
      return;
    }
    Label& a = next_[static_cast<std::size_t>(*head)];
    const double lam = priced_[static_cast<std::size_t>(k + 1)] ? pr_.time_price[x.level] : 0.0;
    const double kx = x.cost - lam * x.time;
    const double ka = a.cost - lam * a.time;
    if (kx < ka || (kx == ka && precedes(k, x.back, a.back))) a = x;
  }

  std::int64_t bucket(double t) const { return static_cast<std::int64_t>(std::floor(t / bucket_s_)); }

  double penalty_at(int k, double t) const {
    double pen = 0.0;
    for (const TrafficSignal* sig : pr_.signals_at[static_cast<std::size_t>(k)]) {
      if (arrives_on_red(*sig, t, pr_.req->green_end_guard_s)) pen += pr_.req->weights.p_red;
    }
    return pen;
  }

  // Lexicographic order of action sequences (actions are stored by rank):
  // does the path ending in candidate `a` come before the one ending in `b`?
  // Both are packed back-pointers into stage k.
  bool precedes(int k, std::uint32_t a, std::uint32_t b) const {
    std::uint32_t x = parent_of(a);
    std::uint32_t y = parent_of(b);
    std::uint32_t ax = action_of(a);
    std::uint32_t ay = action_of(b);
    int m = k;
    while (x != y) {
      const std::uint32_t bx = backs_[static_cast<std::size_t>(m)][x];
      const std::uint32_t by = backs_[static_cast<std::size_t>(m)][y];
      ax = action_of(bx);
      ay = action_of(by);
      x = parent_of(bx);
      y = parent_of(by);
      --m;
    }
    return ax < ay;
  }

  bool precedes_at(int k, std::uint32_t x, std::uint32_t y) const {
    if (x == y) return false;
    return precedes(k - 1, backs_[static_cast<std::size_t>(k)][x], backs_[static_cast<std::size_t>(k)][y]);
  }

  const Problem& pr_;
  double bucket_s_;
  double ub_;
  std::vector<char> priced_;
  CellIndex index_;
  std::vector<Label> next_;
  std::vector<std::vector<std::uint32_t>> backs_;
};

PlanResult replay(const Problem& pr, const std::vector<int>& actions, std::size_t expanded) {
  const PlanRequest& req = *pr.req;
  const VehicleParams& p = *req.vehicle;
  const int na = pr.n_actions();
  PlanResult res;
  res.labels_expanded = expanded;
  Trajectory& traj = res.trajectory;
  traj.ds_m = req.grid.ds_m;
  traj.points.reserve(actions.size() + 1);

  int level = pr.start_level;
  double t = req.start_time_s;
  double cost = 0.0;
  auto count_red = [&](int k, double time) {
    for (const TrafficSignal* sig : pr.signals_at[static_cast<std::size_t>(k)]) {
      if (arrives_on_red(*sig, time, req.green_end_guard_s)) {
        ++res.red_arrivals;
        cost += req.weights.p_red;
      }
    }
  };
  count_red(0, t);
  for (int k = 0; k <= pr.steps; ++k) {
    TrajectoryPoint pt;
    pt.step = k;
    pt.position_m = pr.position(k);
    pt.time_s = t;
    pt.velocity_mps = pr.speed[static_cast<std::size_t>(level)];
    if (k < pr.steps) {
      const int ai = actions[static_cast<std::size_t>(k)];
      const std::size_t idx = static_cast<std::size_t>(level * na + ai);
      const double a = pr.accel[static_cast<std::size_t>(ai)];
      const StepEnergy e = distance_step_energy(p, req.grid.ds_m, a, pr.dt[idx]);
      pt.accel_mps2 = a;
      pt.command_u = a;
      pt.step_energy_wh = e.energy_wh;
      pt.eta_tr = e.eta_tr;
      pt.traction = e.traction;
      cost += pr.cost[idx];
      t += pr.dt[idx];
      level += pr.level_step[static_cast<std::size_t>(ai)];
      count_red(k + 1, t);
    }
    traj.points.push_back(pt);
  }
  res.total_cost = cost;
  res.red_unavoidable = res.red_arrivals > 0;
  return res;
}

// Steps at which merging prices time: those before a binding signal, or all
// of them under a per-step time bound. Without a previous solution every
// signal counts as binding. A signal binds when the crossing sits within a
// couple of seconds of a window edge.
std::vector<char> priced_steps(const Problem& pr, const std::vector<int>* actions) {
  constexpr double kBindingMargin = 2.0;
  const PlanRequest& req = *pr.req;
  std::vector<char> priced(static_cast<std::size_t>(pr.steps) + 1, 0);
  if (!req.time_lower_bound.empty()) {
    std::fill(priced.begin(), priced.end(), 1);
    return priced;
  }
  std::vector<double> time(priced.size(), 0.0);
  if (actions != nullptr) {
    const int na = pr.n_actions();
    int level = pr.start_level;
    double t = req.start_time_s;
    for (int k = 0; k <= pr.steps; ++k) {
      time[static_cast<std::size_t>(k)] = t;
      if (k < pr.steps) {
        const int ai = (*actions)[static_cast<std::size_t>(k)];
        t += pr.dt[static_cast<std::size_t>(level * na + ai)];
        level += pr.level_step[static_cast<std::size_t>(ai)];
      }
    }
  }
  auto binding = [&](int k) {
    if (actions == nullptr) return true;
    const double tk = time[static_cast<std::size_t>(k)];
    for (const TrafficSignal* sig : pr.signals_at[static_cast<std::size_t>(k)]) {
      const GreenWindow w = next_green_window(*sig, tk);
      if (tk - w.start_s < kBindingMargin || w.end_s - req.green_end_guard_s - tk < kBindingMargin) return true;
    }
    return false;
  };
  int last = 0;
  for (int k = 1; k <= pr.steps; ++k) {
    if (!pr.signals_at[static_cast<std::size_t>(k)].empty() && binding(k)) last = k;
  }
  std::fill(priced.begin() + 1, priced.begin() + last + 1, 1);
  return priced;
}

}  // namespace

PlanResult plan_trajectory(const PlanRequest& request) {
  const Problem pr = build_problem(request);

  std::vector<int> factors = request.grid.coarse_factors;
  std::sort(factors.rbegin(), factors.rend());
  factors.erase(std::remove(factors.begin(), factors.end(), 1), factors.end());
  factors.push_back(1);

  double upper = kInf;
  const double start_bound = pr.lower_bound[static_cast<std::size_t>(pr.start_level)];
  std::vector<int> best_actions;
  std::vector<char> priced = priced_steps(pr, nullptr);
  std::size_t expanded = 0;
  std::string failure;
  for (int f : factors) {
    PassOutcome o;
    // Priced merging is not monotone in the bound, so a pass that finds
    // nothing under it is retried with a looser one.
    for (double slack : {0.0, 0.25, 1.0}) {
      const double bound = std::isfinite(upper) ? upper + slack * (upper - start_bound) : kInf;
      o = ForwardPass(pr, request.grid.t_step_s * f, bound, priced).run();
      expanded += o.expanded;
      if (!o.actions.empty() || !std::isfinite(upper)) break;
    }
    if (o.actions.empty()) {
      if (failure.empty()) failure = o.failure;
      continue;
    }
    priced = priced_steps(pr, &o.actions);
    if (o.cost < upper || best_actions.empty()) {
      upper = o.cost;
      best_actions = std::move(o.actions);
    }
  }
  if (best_actions.empty()) throw PlanningError("planning failed: " + failure);
  return replay(pr, best_actions, expanded);
}

double evaluate_trajectory_cost(const PlanRequest& request, const Trajectory& traj) {
  const VehicleParams& p = *request.vehicle;
  double cost = 0.0;
  for (std::size_t k = 0; k < traj.points.size(); ++k) {
    const auto& pt = traj.points[k];
    cost += red_penalty(request.signals, pt.position_m, pt.time_s, request.weights.p_red, request.green_end_guard_s);
    if (k + 1 < traj.points.size()) {
      const double dt = traj.points[k + 1].time_s - pt.time_s;
      cost += stage_cost(p, request.weights, pt.velocity_mps, pt.accel_mps2, dt, request.v_des_mps, traj.ds_m);
    }
  }
  return cost;
}

}  // namespace ecocacc
