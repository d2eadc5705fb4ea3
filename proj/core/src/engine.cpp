#include "schedsim/engine.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>

#include "schedsim/error.hpp"
#include "schedsim/policy.hpp"

namespace schedsim {

void validate_workload(std::span<const ProcessSpec> workload, const SimConfig& config) {
  validate(config);
  if (workload.empty()) throw InvalidWorkload("workload has no processes");
  std::set<ProcessId> ids;
  for (const auto& p : workload) {
    const std::string name = "P" + std::to_string(p.id);
    if (p.id < 1) throw InvalidWorkload("process id must be positive, got " + std::to_string(p.id));
    if (!ids.insert(p.id).second) throw InvalidWorkload("duplicate process id " + name);
    if (p.burst < 1) throw InvalidWorkload(name + " has non-positive burst");
    if (p.arrival < 0) throw InvalidWorkload(name + " has negative arrival");
    try {
      validate(p.pfp);
    } catch (const InvalidArgument& e) {
      throw InvalidWorkload(name + ": " + e.what());
    }
    if (config.policy == Policy::Priority && !p.external_priority) {
      throw InvalidWorkload(name + " has no priority; the Priority policy needs one per process");
    }
  }
}

namespace {

enum class EventKind { Arrival = 0, SliceEnd = 1 };

struct Event {
  Tick time;
  EventKind kind;
  std::int64_t key;  // process id for arrivals, processor index for slice ends
  std::size_t payload;

  bool operator>(const Event& o) const {
    return std::tie(time, kind, key) > std::tie(o.time, o.kind, o.key);
  }
};

struct Running {
  std::size_t slot;
  Tick slice;
};

struct ProcessorState {
  std::optional<Running> running;
  std::optional<ProcessId> last_process;
};

class Kernel {
 public:
  Kernel(std::span<const ProcessSpec> workload, const SimConfig& config)
      : config_(config), policy_(make_policy(config)), processors_(config.processors) {
    runtimes_.reserve(workload.size());
    for (std::size_t i = 0; i < workload.size(); ++i) {
      runtimes_.emplace_back(workload[i]);
      events_.push(Event{workload[i].arrival, EventKind::Arrival, workload[i].id, i});
    }
  }

  Trace run() {
    while (!events_.empty()) {
      const Tick now = events_.top().time;
      while (!events_.empty() && events_.top().time == now) {
        const Event e = events_.top();
        events_.pop();
        handle(e, now);
      }
      dispatch(now);
    }
    return finish();
  }

 private:
  void handle(const Event& e, Tick now) {
    if (e.kind == EventKind::Arrival) {
      ++live_;
      policy_->on_arrival(e.payload);
      return;
    }
    ProcessorState& cpu = processors_[e.payload];
    const Running r = *cpu.running;
    cpu.running.reset();
    const StagingAction action = on_quantum_expiry(runtimes_[r.slot], r.slot, r.slice, now, *policy_);
    if (action == StagingAction::Completed) {
      --live_;
    } else {
      ++trace_.preemptions;
    }
  }

  void dispatch(Tick now) {
    for (std::size_t p = 0; p < processors_.size(); ++p) {
      while (!processors_[p].running) {
        DispatchContext ctx{runtimes_, live_, processors_.size(), now};
        const std::optional<Dispatch> d = policy_->select_next(ctx);
        if (!d) return;
        std::size_t target = p;
        const auto& bound = runtimes_[d->slot].bound_processor;
        if (d->pinned && bound && *bound != p && !processors_[*bound].running) target = *bound;
        start(target, *d, now);
      }
    }
  }

  void start(std::size_t target, const Dispatch& d, Tick now) {
    ProcessRuntime& rt = runtimes_[d.slot];
    ProcessorState& cpu = processors_[target];
    Tick begin = now;
    if (cpu.last_process && *cpu.last_process != rt.spec.id) {
      ++trace_.context_switches;
      begin += config_.context_switch_cost;
    }
    cpu.last_process = rt.spec.id;
    cpu.running = Running{d.slot, d.slice};
    if (!rt.first_dispatch) rt.first_dispatch = begin;
    rt.bound_processor = target;
    rt.pinned = d.pinned;

    const Tick end = begin + d.slice;
    trace_.segments.push_back(TimelineSegment{target, rt.spec.id, begin, end, d.quantum});
    events_.push(Event{end, EventKind::SliceEnd, static_cast<std::int64_t>(target), target});
  }

  Trace finish() {
    trace_.processors = processors_.size();
    for (const auto& rt : runtimes_) {
      if (!rt.completion) throw std::logic_error("simulation ended with unfinished work");
      trace_.processes.push_back(
          ProcessOutcome{rt.spec.id, rt.spec.arrival, rt.spec.burst, rt.first_dispatch, rt.completion});
      trace_.makespan = std::max(trace_.makespan, *rt.completion);
    }
    std::stable_sort(trace_.segments.begin(), trace_.segments.end(),
                     [](const TimelineSegment& a, const TimelineSegment& b) {
                       return std::tie(a.start, a.processor) < std::tie(b.start, b.processor);
                     });
    trace_.batches = policy_->batches();
    return std::move(trace_);
  }

  SimConfig config_;
  std::unique_ptr<DispatchPolicy> policy_;
  std::vector<ProcessRuntime> runtimes_;
  std::vector<ProcessorState> processors_;
  std::priority_queue<Event, std::vector<Event>, std::greater<>> events_;
  std::size_t live_ = 0;
  Trace trace_;
};

}  // namespace

Trace simulate(std::span<const ProcessSpec> workload, const SimConfig& config) {
  validate_workload(workload, config);
  return Kernel(workload, config).run();
}

}  // namespace schedsim
