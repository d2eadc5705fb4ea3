#include "schedsim/oracle.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "schedsim/batch.hpp"
#include "schedsim/engine.hpp"
#include "schedsim/error.hpp"
#include "schedsim/pfp.hpp"

namespace schedsim {

namespace {

constexpr int kNone = -1;

struct OracleProcess {
  ProcessSpec spec;
  Tick remaining = 0;
  std::optional<Tick> first;
  std::optional<Tick> completion;
  int last_cpu = kNone;
};

struct OracleCpu {
  int proc = kNone;
  Tick slice_left = 0;
  Tick switch_left = 0;
  std::optional<Tick> quantum;
  int last_proc = kNone;
  bool segment_open = false;
};

struct Pick {
  int proc;
  Tick slice;
  bool pinned;
  std::optional<Tick> quantum;
};

class TickMachine {
 public:
  TickMachine(std::span<const ProcessSpec> workload, const SimConfig& config)
      : config_(config), cpus_(config.processors) {
    for (const auto& s : workload) procs_.push_back(OracleProcess{s, s.burst, {}, {}, kNone});
    for (int i = 0; i < static_cast<int>(procs_.size()); ++i) by_id_.push_back(i);
    std::sort(by_id_.begin(), by_id_.end(),
              [&](int a, int b) { return procs_[a].spec.id < procs_[b].spec.id; });
    for (const auto& p : procs_) horizon_ = std::max(horizon_, p.spec.arrival);
    // Every segment may pay one switch, and a process has at most `burst` segments.
    for (const auto& p : procs_) horizon_ += p.spec.burst * (1 + config.context_switch_cost);
  }

  Trace run() {
    std::size_t done = 0;
    for (Tick t = 0; done < procs_.size(); ++t) {
      if (t > horizon_ + 1) throw std::logic_error("oracle failed to finish");
      for (int i : by_id_) {
        if (procs_[i].spec.arrival == t) {
          ++live_;
          enqueue(i);
        }
      }
      for (auto& cpu : cpus_) {
        if (cpu.proc == kNone || cpu.switch_left > 0 || cpu.slice_left > 0) continue;
        OracleProcess& p = procs_[cpu.proc];
        const int finished = cpu.proc;
        cpu.proc = kNone;
        cpu.segment_open = false;
        if (p.remaining == 0) {
          p.completion = t;
          ++done;
          --live_;
        } else {
          ++trace_.preemptions;
          enqueue(finished);
        }
      }
      assign_free_cpus(t);
      step(t);
    }
    return finish();
  }

 private:
  void enqueue(int i) {
    switch (config_.policy) {
      case Policy::RoundRobin: fifo_.push_back(i); break;
      case Policy::Dabrr:
      case Policy::Cspdabrr: staging_.push_back(i); break;
      default: pool_.push_back(i); break;
    }
  }

  std::optional<Pick> pick(Tick t) {
    switch (config_.policy) {
      case Policy::RoundRobin: {
        if (fifo_.empty()) return std::nullopt;
        const int i = fifo_.front();
        fifo_.erase(fifo_.begin());
        return Pick{i, std::min(config_.rr_quantum, procs_[i].remaining), false, config_.rr_quantum};
      }
      case Policy::Dabrr:
      case Policy::Cspdabrr: return pick_from_round(t);
      default: break;
    }
    if (pool_.empty()) return std::nullopt;
    int best = pool_.front();
    for (int i : pool_) {
      if (rank(i) < rank(best)) best = i;
    }
    pool_.erase(std::find(pool_.begin(), pool_.end(), best));
    return Pick{best, procs_[best].remaining, false, std::nullopt};
  }

  std::pair<Tick, ProcessId> rank(int i) const {
    const OracleProcess& p = procs_[i];
    if (config_.policy == Policy::Fcfs) return {p.spec.arrival, p.spec.id};
    if (config_.policy == Policy::Sjf) return {p.remaining, p.spec.id};
    return {p.spec.external_priority.value_or(0), p.spec.id};
  }

  std::optional<Pick> pick_from_round(Tick t) {
    if (next_entry_ >= round_.entries.size()) {
      if (staging_.empty()) return std::nullopt;
      std::vector<BatchCandidate> candidates;
      for (int i : staging_) {
        candidates.push_back(BatchCandidate{&procs_[i].spec, procs_[i].spec.burst - procs_[i].remaining});
      }
      round_ = config_.policy == Policy::Cspdabrr ? form_batch(candidates, t, config_.tie_break)
                                                  : form_average_burst_batch(candidates, t);
      trace_.batches.push_back(round_);
      next_entry_ = 0;
      staging_.clear();
    }
    const BatchEntry& entry = round_.entries[next_entry_++];
    int i = 0;
    while (procs_[i].spec.id != entry.id) ++i;
    const OracleProcess& p = procs_[i];
    Pick pk{i, std::min(round_.quantum, p.remaining), false, round_.quantum};
    const bool multi = cpus_.size() >= 2;
    if (config_.policy == Policy::Cspdabrr && multi) {
      if (live_ <= cpus_.size()) {
        pk.pinned = true;
        if (config_.bonding_mode == BondingMode::RunToCompletion) pk.slice = p.remaining;
      }
      if (config_.dedication_enabled && entry.priority_value >= 17 && p.remaining > round_.quantum) {
        pk.pinned = true;
        pk.slice = p.remaining;
      }
    }
    return pk;
  }

  void assign_free_cpus(Tick t) {
    for (std::size_t c = 0; c < cpus_.size(); ++c) {
      while (cpus_[c].proc == kNone) {
        const std::optional<Pick> pk = pick(t);
        if (!pk) return;
        std::size_t target = c;
        const int last = procs_[pk->proc].last_cpu;
        if (pk->pinned && last != kNone && static_cast<std::size_t>(last) != c &&
            cpus_[last].proc == kNone) {
          target = static_cast<std::size_t>(last);
        }
        OracleCpu& cpu = cpus_[target];
        cpu.proc = pk->proc;
        cpu.slice_left = pk->slice;
        cpu.quantum = pk->quantum;
        cpu.switch_left = 0;
        if (cpu.last_proc != kNone && cpu.last_proc != pk->proc) {
          ++trace_.context_switches;
          cpu.switch_left = config_.context_switch_cost;
        }
        cpu.last_proc = pk->proc;
        procs_[pk->proc].last_cpu = static_cast<int>(target);
      }
    }
  }

  void step(Tick t) {
    for (std::size_t c = 0; c < cpus_.size(); ++c) {
      OracleCpu& cpu = cpus_[c];
      if (cpu.proc == kNone) continue;
      if (cpu.switch_left > 0) {
        --cpu.switch_left;
        continue;
      }
      OracleProcess& p = procs_[cpu.proc];
      if (!cpu.segment_open) {
        trace_.segments.push_back(TimelineSegment{c, p.spec.id, t, t, cpu.quantum});
        open_segment_[c] = trace_.segments.size() - 1;
        cpu.segment_open = true;
        if (!p.first) p.first = t;
      }
      ++trace_.segments[open_segment_[c]].end;
      --p.remaining;
      --cpu.slice_left;
    }
  }

  Trace finish() {
    trace_.processors = cpus_.size();
    for (const auto& p : procs_) {
      trace_.processes.push_back(
          ProcessOutcome{p.spec.id, p.spec.arrival, p.spec.burst, p.first, p.completion});
      trace_.makespan = std::max(trace_.makespan, p.completion.value_or(0));
    }
    std::stable_sort(trace_.segments.begin(), trace_.segments.end(),
                     [](const TimelineSegment& a, const TimelineSegment& b) {
                       return a.start != b.start ? a.start < b.start : a.processor < b.processor;
                     });
    return std::move(trace_);
  }

  SimConfig config_;
  std::vector<OracleProcess> procs_;
  std::vector<OracleCpu> cpus_;
  std::vector<int> by_id_;
  std::vector<int> fifo_;
  std::vector<int> pool_;
  std::vector<int> staging_;
  Batch round_;
  std::size_t next_entry_ = 0;
  std::size_t live_ = 0;
  Tick horizon_ = 0;
  std::map<std::size_t, std::size_t> open_segment_;
  Trace trace_;
};

}  // namespace

Trace oracle_simulate(std::span<const ProcessSpec> workload, const SimConfig& config,
                      const OracleLimits& limits) {
  if (workload.size() > limits.max_processes) {
    throw InvalidArgument("oracle limited to " + std::to_string(limits.max_processes) + " processes");
  }
  if (config.processors > limits.max_processors) {
    throw InvalidArgument("oracle limited to " + std::to_string(limits.max_processors) + " processors");
  }
  for (const auto& p : workload) {
    if (p.burst > limits.max_burst) {
      throw InvalidArgument("oracle limited to bursts of " + std::to_string(limits.max_burst));
    }
  }
  validate_workload(workload, config);
  return TickMachine(workload, config).run();
}

std::string Verdict::describe() const {
  if (!divergence) return "equal";
  auto show = [](const std::optional<Tick>& v) { return v ? std::to_string(*v) : std::string("none"); };
  return "P" + std::to_string(divergence->process) + " " + divergence->field + ": " +
         show(divergence->lhs) + " vs " + show(divergence->rhs);
}

Verdict equivalence_check(const Trace& lhs, const Trace& rhs) {
  if (lhs.processes.size() != rhs.processes.size()) {
    throw InvalidArgument("traces cover different numbers of processes");
  }
  for (const auto& a : lhs.processes) {
    const ProcessOutcome* b = rhs.find(a.id);
    if (b == nullptr || b->arrival != a.arrival || b->burst != a.burst) {
      throw InvalidArgument("traces come from different workloads (P" + std::to_string(a.id) + ")");
    }
  }
  for (const auto& a : lhs.processes) {
    const ProcessOutcome* b = rhs.find(a.id);
    if (a.completion != b->completion) {
      return Verdict{Divergence{a.id, "completion", a.completion, b->completion}};
    }
    if (a.first_dispatch != b->first_dispatch) {
      return Verdict{Divergence{a.id, "first_dispatch", a.first_dispatch, b->first_dispatch}};
    }
  }
  return Verdict{};
}

}  // namespace schedsim
