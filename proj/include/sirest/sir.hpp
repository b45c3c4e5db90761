#ifndef SIREST_SIR_HPP
#define SIREST_SIR_HPP

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <queue>
#include <unordered_map>
#include <vector>

#include "sirest/graph.hpp"
#include "sirest/rng.hpp"

namespace sirest {

struct SirParams {
  double lambda = 0.0;  // infection rate per S-I edge
  double mu = 0.0;      // recovery rate per infected vertex
  void validate() const;
};

struct InfectionRecord {
  Vertex vertex;
  double infection_time;
  double recovery_time;  // +inf when not resolved within the horizon
};

/// One sample path, exact on [0, horizon]. A stored +inf means the event did
/// not happen by the horizon; with an infinite horizon it means never.
/// Only ever-infected vertices carry records, so tree paths stay sparse.
class Trajectory {
 public:
  Trajectory() = default;

  double horizon() const { return horizon_; }
  Vertex patient_zero() const { return patient_zero_; }
  std::size_t num_infected() const { return records_.size(); }
  const std::vector<InfectionRecord>& infections() const { return records_; }

  double infection_time(Vertex v) const;
  double recovery_time(Vertex v) const;
  std::optional<std::uint32_t> record_index(Vertex v) const;

  static Trajectory from_records(std::vector<InfectionRecord> records, double horizon,
                                 Vertex patient_zero);

 private:
  friend class GraphSirSimulator;
  friend class GillespieSimulator;
  friend class TreeSirSimulator;

  std::uint32_t append(Vertex v, double t);
  void set_recovery(std::uint32_t index, double t) { records_[index].recovery_time = t; }

  std::vector<InfectionRecord> records_;  // ordered by infection time
  std::unordered_map<Vertex, std::uint32_t> index_;
  double horizon_ = 0.0;
  Vertex patient_zero_ = 0;
};

/// U(t): vertices infected by time t (sorted by id). t must be resolved.
std::vector<Vertex> unsusceptible_at(const Trajectory& traj, double t);

/// First time |U(t)| reaches k: the k-th smallest infection time. +inf when
/// the path ended with fewer than k infections; nullopt when the horizon cut
/// the path first, so the answer is unresolved.
std::optional<double> first_time_u_reaches(const Trajectory& traj, std::size_t k);

enum class StopReason { Absorbed, Horizon, UCap, EventCap };

struct StopCondition {
  double horizon = std::numeric_limits<double>::infinity();
  std::size_t u_cap = std::numeric_limits<std::size_t>::max();
  std::uint64_t event_cap = std::numeric_limits<std::uint64_t>::max();
};

/// Event-queue sampler of the SIR chain on a finite graph. On each infection
/// it draws the recovery clock and one candidate infection clock per
/// susceptible neighbor; a candidate fires only if it precedes the source's
/// recovery and finds the target still susceptible. Resumable: run() can be
/// called again with a later horizon.
class GraphSirSimulator {
 public:
  GraphSirSimulator(const Graph& g, SirParams params, Vertex patient_zero, std::uint64_t seed);

  StopReason run(const StopCondition& stop);
  double now() const { return now_; }
  std::uint64_t events_processed() const { return events_; }
  const Trajectory& trajectory() const { return traj_; }

 private:
  struct Event {
    double time;
    std::uint64_t seq;  // insertion order breaks (measure-zero) ties
    Vertex target;
    std::uint32_t source_index;  // 0xFFFFFFFF for recoveries
    bool operator>(const Event& o) const {
      return time != o.time ? time > o.time : seq > o.seq;
    }
  };
  enum class State : char { S, I, R };

  void infect(Vertex v, double t);

  const Graph* g_;
  SirParams params_;
  Rng rng_;
  std::vector<State> state_;
  std::vector<double> recovery_at_;  // drawn at infection, indexed by record
  std::priority_queue<Event, std::vector<Event>, std::greater<>> queue_;
  Trajectory traj_;
  double now_ = 0.0;
  std::uint64_t events_ = 0;
  std::uint64_t seq_ = 0;
};

/// Aggregate-rate sampler of the same chain: total rate
/// lambda*e(I,S) + mu*|I|, then a proportional pick. Kept as an independent
/// cross-check of GraphSirSimulator; both must agree in law.
class GillespieSimulator {
 public:
  GillespieSimulator(const Graph& g, SirParams params, Vertex patient_zero, std::uint64_t seed);

  StopReason run(const StopCondition& stop);
  double now() const { return now_; }
  std::uint64_t events_processed() const { return events_; }
  const Trajectory& trajectory() const { return traj_; }

 private:
  enum class State : char { S, I, R };
  void infect(Vertex v, double t);

  const Graph* g_;
  SirParams params_;
  Rng rng_;
  std::vector<State> state_;
  std::vector<std::uint32_t> infected_neighbors_;  // per susceptible vertex
  std::vector<Vertex> infected_;
  std::uint64_t frontier_edges_ = 0;  // e(I, S)
  double pending_time_ = -1.0;        // next event time already drawn
  Trajectory traj_;
  double now_ = 0.0;
  std::uint64_t events_ = 0;
};

Trajectory simulate(const Graph& g, SirParams params, std::optional<Vertex> patient_zero,
                    double horizon, std::uint64_t seed);
Trajectory simulate_gillespie(const Graph& g, SirParams params, std::optional<Vertex> patient_zero,
                              double horizon, std::uint64_t seed);

/// Vertex ids on the lazily materialized kappa-ary tree. The root is 0; when
/// the i-th infected vertex (in infection order) is infected, its kappa
/// children materialize as the contiguous block [1+i*kappa, 1+(i+1)*kappa).
/// Materialized-but-uninfected ids are susceptible leaves.
class TreeArena {
 public:
  TreeArena(std::uint32_t kappa, std::vector<Vertex> infection_order);

  std::uint32_t kappa() const { return kappa_; }
  std::uint64_t num_infected() const { return order_.size(); }
  std::uint64_t num_materialized() const { return 1 + static_cast<std::uint64_t>(kappa_) * order_.size(); }
  bool is_materialized(Vertex v) const { return v < num_materialized(); }
  Vertex parent(Vertex v) const;  // v != 0
  std::optional<std::uint32_t> infection_index(Vertex v) const;
  // First child id when v is infected (children exist only then).
  std::optional<Vertex> children_begin(Vertex v) const;

 private:
  std::uint32_t kappa_;
  std::vector<Vertex> order_;
  std::unordered_map<Vertex, std::uint32_t> index_;
};

/// SIR on the infinite kappa-ary tree, root initially infected. Child
/// infection clocks are realized through their order statistics (the first
/// of j remaining Exp(lambda) clocks is Exp(j*lambda)), so per-infection work
/// is O(1) instead of O(kappa). Each infected vertex draws from its own
/// substream keyed by infection index, which makes resolve_child_infection_time
/// produce bit-identical times to continuing the full simulation.
class TreeSirSimulator {
 public:
  TreeSirSimulator(std::uint32_t kappa, SirParams params, std::uint64_t seed);

  StopReason run(const StopCondition& stop);
  double now() const { return now_; }
  std::uint32_t kappa() const { return kappa_; }
  std::uint64_t events_processed() const { return events_; }
  std::uint64_t num_materialized() const { return 1 + static_cast<std::uint64_t>(kappa_) * traj_.num_infected(); }
  const Trajectory& trajectory() const { return traj_; }
  TreeArena arena() const;

  /// Infection time of child slot `slot` (0-based) of the family rooted at
  /// the `family`-th infected vertex, resolved up to t_max; +inf when the
  /// child is not infected by t_max. Advances only that family's private
  /// clock chain, so it works even where the full tree would be astronomically
  /// large. After the first call run() is no longer allowed.
  double resolve_child_infection_time(std::uint32_t family, std::uint32_t slot, double t_max);

 private:
  struct Family {
    double recovery_time;
    double next_candidate;    // +inf when the chain is done
    std::uint32_t remaining;  // un-infected child slots
    Rng rng;
    std::vector<double> lazy_fires;  // fires resolved past the global frontier
  };
  struct Event {
    double time;
    std::uint64_t seq;
    std::uint32_t family;
    bool is_recovery;
    bool operator>(const Event& o) const {
      return time != o.time ? time > o.time : seq > o.seq;
    }
  };

  std::uint32_t infect(Vertex id, double t);

  std::uint32_t kappa_;
  SirParams params_;
  std::uint64_t seed_;
  std::vector<Family> families_;  // by infection index
  std::priority_queue<Event, std::vector<Event>, std::greater<>> queue_;
  Trajectory traj_;
  double now_ = 0.0;
  std::uint64_t events_ = 0;
  std::uint64_t seq_ = 0;
  bool resolving_ = false;
};

struct TreeSimResult {
  Trajectory trajectory;
  TreeArena arena;
  StopReason stopped;
};

/// One-shot run on the infinite kappa-ary tree. At least one of
/// stop.horizon / stop.u_cap must be finite.
TreeSimResult simulate_tree(std::uint32_t kappa, SirParams params, StopCondition stop,
                            std::uint64_t seed);

/// CSV: header `vertex,infection_time,recovery_time`; `inf` for never,
/// `na` for unresolved-beyond-horizon; 17 significant digits.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj, std::uint64_t num_vertices);

}  // namespace sirest

#endif  // SIREST_SIR_HPP
