#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

#include "schedsim/error.hpp"
#include "schedsim/pfp.hpp"
#include "schedsim/policy.hpp"

namespace schedsim {

namespace {

// FCFS, SJF and Priority: pick the minimum key among ready processes and run
// it to completion.
class NonPreemptivePolicy final : public DispatchPolicy {
 public:
  explicit NonPreemptivePolicy(Policy kind) : kind_(kind) {}

  void on_arrival(std::size_t slot) override { pending_.push_back(slot); }

  StagingAction on_preempted(std::size_t slot) override {
    pending_.push_back(slot);
    return StagingAction::Requeued;
  }

  std::optional<Dispatch> select_next(const DispatchContext& ctx) override {
    for (std::size_t slot : pending_) ready_.insert(key(ctx.runtimes[slot], slot));
    pending_.clear();
    if (ready_.empty()) return std::nullopt;
    const std::size_t slot = std::get<2>(*ready_.begin());
    ready_.erase(ready_.begin());
    return Dispatch{slot, ctx.runtimes[slot].remaining, false, std::nullopt};
  }

 private:
  using Key = std::tuple<Tick, ProcessId, std::size_t>;

  Key key(const ProcessRuntime& rt, std::size_t slot) const {
    switch (kind_) {
      case Policy::Fcfs: return {rt.spec.arrival, rt.spec.id, slot};
      case Policy::Sjf: return {rt.remaining, rt.spec.id, slot};
      default: return {rt.spec.external_priority.value_or(0), rt.spec.id, slot};
    }
  }

  Policy kind_;
  std::vector<std::size_t> pending_;  // arrived since the last selection
  std::set<Key> ready_;
};

// One global FIFO shared by every processor.
class RoundRobinPolicy final : public DispatchPolicy {
 public:
  explicit RoundRobinPolicy(Tick quantum) : quantum_(quantum) {}

  void on_arrival(std::size_t slot) override { fifo_.push_back(slot); }

  StagingAction on_preempted(std::size_t slot) override {
    fifo_.push_back(slot);
    return StagingAction::Requeued;
  }

  std::optional<Dispatch> select_next(const DispatchContext& ctx) override {
    if (fifo_.empty()) return std::nullopt;
    const std::size_t slot = fifo_.front();
    fifo_.pop_front();
    return Dispatch{slot, std::min(quantum_, ctx.runtimes[slot].remaining), false, quantum_};
  }

 private:
  Tick quantum_;
  std::deque<std::size_t> fifo_;
};

// DABRR and CSPDABRR. Arrivals and preempted processes wait in staging; a
// new round is formed from staging only once the current one is fully
// dispatched.
class BatchPolicy final : public DispatchPolicy {
 public:
  explicit BatchPolicy(const SimConfig& config) : config_(config) {}

  void on_arrival(std::size_t slot) override { staging_.push_back(slot); }

  StagingAction on_preempted(std::size_t slot) override {
    staging_.push_back(slot);
    return StagingAction::Staged;
  }

  std::optional<Dispatch> select_next(const DispatchContext& ctx) override {
    if (cursor_ == slots_.size()) {
      if (staging_.empty()) return std::nullopt;
      form_round(ctx);
    }
    const BatchEntry& entry = history_.back().entries[cursor_];
    const std::size_t slot = slots_[cursor_];
    ++cursor_;

    const ProcessRuntime& rt = ctx.runtimes[slot];
    if (rt.remaining != entry.remaining) {
      throw std::logic_error("batch entry changed between formation and dispatch");
    }
    const Tick quantum = history_.back().quantum;
    Dispatch d{slot, std::min(quantum, rt.remaining), false, quantum};

    if (config_.policy == Policy::Cspdabrr && ctx.processors >= 2) {
      if (ctx.live_count <= ctx.processors) {
        d.pinned = true;
        if (config_.bonding_mode == BondingMode::RunToCompletion) d.slice = rt.remaining;
      }
      if (config_.dedication_enabled && priority_level(entry.priority_value).level == 6 &&
          rt.remaining > quantum) {
        d.pinned = true;
        d.slice = rt.remaining;
      }
    }
    return d;
  }

  std::vector<Batch> batches() const override { return history_; }

 private:
  void form_round(const DispatchContext& ctx) {
    std::vector<BatchCandidate> candidates;
    std::unordered_map<ProcessId, std::size_t> slot_of;
    candidates.reserve(staging_.size());
    for (std::size_t slot : staging_) {
      const ProcessRuntime& rt = ctx.runtimes[slot];
      candidates.push_back(BatchCandidate{&rt.spec, rt.executed});
      slot_of.emplace(rt.spec.id, slot);
    }
    Batch batch = config_.policy == Policy::Cspdabrr
                      ? form_batch(candidates, ctx.now, config_.tie_break)
                      : form_average_burst_batch(candidates, ctx.now);
    slots_.clear();
    for (const auto& e : batch.entries) slots_.push_back(slot_of.at(e.id));
    cursor_ = 0;
    staging_.clear();
    history_.push_back(std::move(batch));
  }

  SimConfig config_;
  std::vector<std::size_t> staging_;
  std::vector<std::size_t> slots_;  // current round, parallel to its entries
  std::size_t cursor_ = 0;
  std::vector<Batch> history_;
};

}  // namespace

std::unique_ptr<DispatchPolicy> make_policy(const SimConfig& config) {
  switch (config.policy) {
    case Policy::Fcfs:
    case Policy::Sjf:
    case Policy::Priority: return std::make_unique<NonPreemptivePolicy>(config.policy);
    case Policy::RoundRobin: return std::make_unique<RoundRobinPolicy>(config.rr_quantum);
    case Policy::Dabrr:
    case Policy::Cspdabrr: return std::make_unique<BatchPolicy>(config);
  }
  throw InvalidArgument("unknown policy");
}

StagingAction on_quantum_expiry(ProcessRuntime& runtime, std::size_t slot, Tick slice, Tick now,
                                DispatchPolicy& policy) {
  if (slice < 1 || slice > runtime.remaining) {
    throw InvalidArgument("slice does not fit the remaining burst");
  }
  runtime.remaining -= slice;
  runtime.executed += slice;
  runtime.pinned = false;
  if (runtime.remaining == 0) {
    runtime.completion = now;
    return StagingAction::Completed;
  }
  return policy.on_preempted(slot);
}

}  // namespace schedsim
