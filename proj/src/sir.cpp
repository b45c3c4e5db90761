#include "sirest/sir.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "sirest/csv.hpp"

namespace sirest {

void SirParams::validate() const {
  if (lambda < 0 || mu < 0) throw std::invalid_argument("SirParams: rates must be >= 0");
  if (lambda == 0 && mu == 0) throw std::invalid_argument("SirParams: lambda and mu cannot both be 0");
}

double Trajectory::infection_time(Vertex v) const {
  auto it = index_.find(v);
  return it == index_.end() ? kInf : records_[it->second].infection_time;
}

double Trajectory::recovery_time(Vertex v) const {
  auto it = index_.find(v);
  return it == index_.end() ? kInf : records_[it->second].recovery_time;
}

std::optional<std::uint32_t> Trajectory::record_index(Vertex v) const {
  auto it = index_.find(v);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::uint32_t Trajectory::append(Vertex v, double t) {
  auto idx = static_cast<std::uint32_t>(records_.size());
  records_.push_back({v, t, kInf});
  index_.emplace(v, idx);
  return idx;
}

Trajectory Trajectory::from_records(std::vector<InfectionRecord> records, double horizon,
                                    Vertex patient_zero) {
  Trajectory traj;
  std::sort(records.begin(), records.end(),
            [](const InfectionRecord& a, const InfectionRecord& b) {
              return a.infection_time < b.infection_time;
            });
  for (const auto& r : records) {
    if (r.infection_time > horizon)
      throw std::invalid_argument("Trajectory: infection time beyond horizon");
    if (traj.index_.count(r.vertex))
      throw std::invalid_argument("Trajectory: duplicate vertex record");
    traj.records_.push_back(r);
    traj.index_.emplace(r.vertex, static_cast<std::uint32_t>(traj.records_.size() - 1));
  }
  traj.horizon_ = horizon;
  traj.patient_zero_ = patient_zero;
  if (traj.records_.empty()) throw std::invalid_argument("Trajectory: no records");
  if (traj.records_.front().vertex != patient_zero)
    throw std::invalid_argument("Trajectory: patient zero is not the earliest record");
  return traj;
}

std::vector<Vertex> unsusceptible_at(const Trajectory& traj, double t) {
  if (t > traj.horizon())
    throw std::domain_error("unsusceptible_at: time beyond horizon is unresolved");
  std::vector<Vertex> out;
  for (const auto& r : traj.infections()) {
    if (r.infection_time > t) break;
    out.push_back(r.vertex);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<double> first_time_u_reaches(const Trajectory& traj, std::size_t k) {
  if (k == 0) return 0.0;
  if (traj.num_infected() >= k) return traj.infections()[k - 1].infection_time;
  if (std::isinf(traj.horizon())) return kInf;  // path fully resolved, never reached k
  return std::nullopt;
}

// ---------------------------------------------------------------- graph engine

GraphSirSimulator::GraphSirSimulator(const Graph& g, SirParams params, Vertex patient_zero,
                                     std::uint64_t seed)
    : g_(&g), params_(params), rng_(seed), state_(g.num_vertices(), State::S) {
  params.validate();
  if (g.num_vertices() == 0) throw std::invalid_argument("simulate: empty graph");
  if (patient_zero >= g.num_vertices()) throw std::invalid_argument("simulate: patient zero out of range");
  traj_.patient_zero_ = patient_zero;
  infect(patient_zero, 0.0);
}

void GraphSirSimulator::infect(Vertex v, double t) {
  std::uint32_t idx = traj_.append(v, t);
  state_[v] = State::I;
  double rec = t + rng_.exponential(params_.mu);
  if (!std::isinf(rec)) queue_.push({rec, seq_++, v, 0xFFFFFFFFu});
  for (Vertex w : g_->neighbors(v)) {
    if (state_[w] != State::S) continue;
    double c = t + rng_.exponential(params_.lambda);
    if (c < rec) queue_.push({c, seq_++, w, idx});
  }
}

StopReason GraphSirSimulator::run(const StopCondition& stop) {
  while (true) {
    if (queue_.empty()) {
      traj_.horizon_ = kInf;  // nothing can happen anymore
      return StopReason::Absorbed;
    }
    const Event& top = queue_.top();
    if (top.time > stop.horizon) {
      traj_.horizon_ = stop.horizon;
      now_ = stop.horizon;
      return StopReason::Horizon;
    }
    Event ev = top;
    queue_.pop();
    ++events_;
    now_ = ev.time;
    if (ev.source_index == 0xFFFFFFFFu) {
      state_[ev.target] = State::R;
      traj_.set_recovery(*traj_.record_index(ev.target), ev.time);
    } else if (state_[ev.target] == State::S) {
      infect(ev.target, ev.time);
      if (traj_.num_infected() >= stop.u_cap) {
        traj_.horizon_ = ev.time;
        return StopReason::UCap;
      }
    }
    if (events_ >= stop.event_cap) {
      traj_.horizon_ = ev.time;
      return StopReason::EventCap;
    }
  }
}

// ------------------------------------------------------------ gillespie engine

GillespieSimulator::GillespieSimulator(const Graph& g, SirParams params, Vertex patient_zero,
                                       std::uint64_t seed)
    : g_(&g),
      params_(params),
      rng_(seed),
      state_(g.num_vertices(), State::S),
      infected_neighbors_(g.num_vertices(), 0) {
  params.validate();
  if (g.num_vertices() == 0) throw std::invalid_argument("simulate: empty graph");
  if (patient_zero >= g.num_vertices()) throw std::invalid_argument("simulate: patient zero out of range");
  traj_.patient_zero_ = patient_zero;
  infect(patient_zero, 0.0);
}

void GillespieSimulator::infect(Vertex v, double t) {
  traj_.append(v, t);
  if (state_[v] == State::S) frontier_edges_ -= infected_neighbors_[v];
  state_[v] = State::I;
  infected_.push_back(v);
  for (Vertex w : g_->neighbors(v))
    if (state_[w] == State::S) {
      ++infected_neighbors_[w];
      ++frontier_edges_;
    }
}

StopReason GillespieSimulator::run(const StopCondition& stop) {
  while (true) {
    double total = params_.lambda * static_cast<double>(frontier_edges_) +
                   params_.mu * static_cast<double>(infected_.size());
    if (total <= 0.0) {
      traj_.horizon_ = kInf;
      return StopReason::Absorbed;
    }
    if (pending_time_ < now_) pending_time_ = now_ + rng_.exponential(total);
    if (pending_time_ > stop.horizon) {
      traj_.horizon_ = stop.horizon;
      now_ = stop.horizon;
      return StopReason::Horizon;
    }
    double t = pending_time_;
    pending_time_ = -1.0;
    now_ = t;
    ++events_;
    double r = rng_.uniform() * total;
    if (r <= params_.mu * static_cast<double>(infected_.size())) {
      std::size_t i = rng_.below(infected_.size());
      Vertex v = infected_[i];
      infected_[i] = infected_.back();
      infected_.pop_back();
      state_[v] = State::R;
      traj_.set_recovery(*traj_.record_index(v), t);
      for (Vertex w : g_->neighbors(v))
        if (state_[w] == State::S) {
          --infected_neighbors_[w];
          --frontier_edges_;
        }
    } else {
      // uniform (I,S) edge: pick the r-th frontier edge by target scan
      std::uint64_t pick = rng_.below(frontier_edges_);
      Vertex target = 0;
      std::uint64_t acc = 0;
      for (Vertex v = 0; v < g_->num_vertices(); ++v) {
        if (state_[v] != State::S) continue;
        acc += infected_neighbors_[v];
        if (pick < acc) {
          target = v;
          break;
        }
      }
      infect(target, t);
      if (traj_.num_infected() >= stop.u_cap) {
        traj_.horizon_ = t;
        return StopReason::UCap;
      }
    }
    if (events_ >= stop.event_cap) {
      traj_.horizon_ = now_;
      return StopReason::EventCap;
    }
  }
}

namespace {

Vertex resolve_patient_zero(const Graph& g, std::optional<Vertex> patient_zero, Rng& rng) {
  if (patient_zero) return *patient_zero;
  return static_cast<Vertex>(rng.below(g.num_vertices()));
}

}  // namespace

Trajectory simulate(const Graph& g, SirParams params, std::optional<Vertex> patient_zero,
                    double horizon, std::uint64_t seed) {
  if (!(horizon > 0)) throw std::invalid_argument("simulate: horizon must be > 0");
  if (g.num_vertices() == 0) throw std::invalid_argument("simulate: empty graph");
  Rng pz_rng(derive_stream(seed, 0x70617469656e74ULL));
  GraphSirSimulator sim(g, params, resolve_patient_zero(g, patient_zero, pz_rng), seed);
  sim.run({.horizon = horizon});
  return sim.trajectory();
}

Trajectory simulate_gillespie(const Graph& g, SirParams params, std::optional<Vertex> patient_zero,
                              double horizon, std::uint64_t seed) {
  if (!(horizon > 0)) throw std::invalid_argument("simulate: horizon must be > 0");
  if (g.num_vertices() == 0) throw std::invalid_argument("simulate: empty graph");
  Rng pz_rng(derive_stream(seed, 0x70617469656e74ULL));
  GillespieSimulator sim(g, params, resolve_patient_zero(g, patient_zero, pz_rng), seed);
  sim.run({.horizon = horizon});
  return sim.trajectory();
}

// ----------------------------------------------------------------- tree arena

TreeArena::TreeArena(std::uint32_t kappa, std::vector<Vertex> infection_order)
    : kappa_(kappa), order_(std::move(infection_order)) {
  index_.reserve(order_.size());
  for (std::uint32_t i = 0; i < order_.size(); ++i) index_.emplace(order_[i], i);
}

Vertex TreeArena::parent(Vertex v) const {
  if (v == 0 || !is_materialized(v)) throw std::invalid_argument("TreeArena::parent: bad vertex");
  return order_[(v - 1) / kappa_];
}

std::optional<std::uint32_t> TreeArena::infection_index(Vertex v) const {
  auto it = index_.find(v);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<Vertex> TreeArena::children_begin(Vertex v) const {
  auto idx = infection_index(v);
  if (!idx) return std::nullopt;
  return 1 + *idx * kappa_;
}

// ------------------------------------------------------------------ tree engine

TreeSirSimulator::TreeSirSimulator(std::uint32_t kappa, SirParams params, std::uint64_t seed)
    : kappa_(kappa), params_(params), seed_(seed) {
  params.validate();
  if (kappa < 1) throw std::invalid_argument("simulate_tree: kappa must be >= 1");
  traj_.patient_zero_ = 0;
  infect(0, 0.0);
}

std::uint32_t TreeSirSimulator::infect(Vertex id, double t) {
  std::uint32_t idx = traj_.append(id, t);
  // Per-family substream: the family's clocks do not depend on the global
  // interleaving, so lazy resolution reproduces the full run exactly.
  Rng frng(derive_stream(seed_, idx));
  double rec = t + frng.exponential(params_.mu);
  double cand = t + frng.exponential(static_cast<double>(kappa_) * params_.lambda);
  families_.push_back({rec, cand < rec ? cand : kInf, kappa_, frng, {}});
  if (!std::isinf(rec)) queue_.push({rec, seq_++, idx, true});
  if (cand < rec) queue_.push({cand, seq_++, idx, false});
  return idx;
}

StopReason TreeSirSimulator::run(const StopCondition& stop) {
  if (resolving_)
    throw std::logic_error("TreeSirSimulator: run() after lazy resolution started");
  while (true) {
    if (queue_.empty()) {
      traj_.horizon_ = kInf;
      return StopReason::Absorbed;
    }
    const Event& top = queue_.top();
    if (top.time > stop.horizon) {
      traj_.horizon_ = stop.horizon;
      now_ = stop.horizon;
      return StopReason::Horizon;
    }
    Event ev = top;
    queue_.pop();
    ++events_;
    now_ = ev.time;
    if (ev.is_recovery) {
      traj_.set_recovery(ev.family, ev.time);
    } else {
      Family& fam = families_[ev.family];
      std::uint32_t slot = kappa_ - fam.remaining;
      --fam.remaining;
      Vertex child = 1 + ev.family * kappa_ + slot;
      if (fam.remaining > 0) {
        double gap = fam.rng.exponential(static_cast<double>(fam.remaining) * params_.lambda);
        double next = ev.time + gap;
        fam.next_candidate = next < fam.recovery_time ? next : kInf;
        if (next < fam.recovery_time) queue_.push({next, seq_++, ev.family, false});
      } else {
        fam.next_candidate = kInf;
      }
      infect(child, ev.time);
      if (traj_.num_infected() >= stop.u_cap) {
        traj_.horizon_ = ev.time;
        return StopReason::UCap;
      }
    }
    if (events_ >= stop.event_cap) {
      traj_.horizon_ = now_;
      return StopReason::EventCap;
    }
  }
}

double TreeSirSimulator::resolve_child_infection_time(std::uint32_t family, std::uint32_t slot,
                                                      double t_max) {
  if (family >= families_.size())
    throw std::invalid_argument("resolve_child_infection_time: bad family index");
  if (slot >= kappa_) throw std::invalid_argument("resolve_child_infection_time: bad slot");
  resolving_ = true;
  Family& fam = families_[family];
  std::uint32_t infected_total = kappa_ - fam.remaining;
  std::uint32_t eagerly = infected_total - static_cast<std::uint32_t>(fam.lazy_fires.size());
  if (slot < eagerly) {
    Vertex id = 1 + family * kappa_ + slot;
    double t = traj_.infection_time(id);
    return t <= t_max ? t : kInf;
  }
  std::size_t li = slot - eagerly;
  while (li >= fam.lazy_fires.size()) {
    double c = fam.next_candidate;
    if (std::isinf(c) || c > t_max) return kInf;
    fam.lazy_fires.push_back(c);
    --fam.remaining;
    if (fam.remaining > 0) {
      double gap = fam.rng.exponential(static_cast<double>(fam.remaining) * params_.lambda);
      double next = c + gap;
      fam.next_candidate = next < fam.recovery_time ? next : kInf;
    } else {
      fam.next_candidate = kInf;
    }
  }
  double t = fam.lazy_fires[li];
  return t <= t_max ? t : kInf;
}

TreeArena TreeSirSimulator::arena() const {
  std::vector<Vertex> order;
  order.reserve(traj_.num_infected());
  for (const auto& r : traj_.infections()) order.push_back(r.vertex);
  return TreeArena(kappa_, std::move(order));
}

TreeSimResult simulate_tree(std::uint32_t kappa, SirParams params, StopCondition stop,
                            std::uint64_t seed) {
  if (std::isinf(stop.horizon) && stop.u_cap == std::numeric_limits<std::size_t>::max() &&
      stop.event_cap == std::numeric_limits<std::uint64_t>::max())
    throw std::invalid_argument("simulate_tree: at least one stop condition must be finite");
  TreeSirSimulator sim(kappa, params, seed);
  StopReason reason = sim.run(stop);
  return {sim.trajectory(), sim.arena(), reason};
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj, std::uint64_t num_vertices) {
  out << "vertex,infection_time,recovery_time\n";
  for (std::uint64_t v = 0; v < num_vertices; ++v) {
    auto vid = static_cast<Vertex>(v);
    out << v << ',' << format_time(traj.infection_time(vid), traj.horizon()) << ','
        << format_time(traj.recovery_time(vid), traj.horizon()) << '\n';
  }
}

}  // namespace sirest
