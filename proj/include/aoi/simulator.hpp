#pragma once

/// @file simulator.hpp
/// Discrete-event simulation of the seven policies with exponential step
/// times.  Each busy server holds a sampled completion time; the earliest
/// completion fires next (ties go to the lower server index) and the
/// policy's rules decide what happens to the update and the other server.
///
/// Horizon and warmup are counted in events, where an event is one server
/// completion.  The first warmup_fraction of the events is discarded; the
/// remainder is split into batch_count equal-event batches whose
/// time-average ages feed a Student-t batch-means interval, pooled over
/// replications.
///
/// Event log, version 1 (one JSON object per line):
///
///   {"v":1,"kind":"header","policy":"mm11","replication":0,"seed":..,
///    "mu1":..,"mu2":..,"mean_cycles":..,"alpha":..}
///   {"t":..,"kind":"warmup_end","age_before":..,"age_after":..}
///   {"t":..,"kind":"begin","server":1,"step":1,"update":7,"age_before":..,"age_after":..}
///   {"t":..,"kind":"end","server":1,"step":1,"update":7,"age_before":..,"age_after":..}
///   {"t":..,"kind":"deliver","server":2,"update":7,"age_before":..,"age_after":..}
///   {"t":..,"kind":"drop","server":2,"update":7,"reason":"discarded-on-arrival",
///    "age_before":..,"age_after":..}
///   {"t":..,"kind":"stop","age_before":..,"age_after":..}
///
/// Servers are numbered 1 and 2.  age_before/age_after are the monitor age
/// around the record; they differ only on a delivery that lowers it.  A log
/// may hold several replications, each opened by its own header.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "aoi/policy.hpp"
#include "aoi/power.hpp"
#include "aoi/stats.hpp"

namespace aoi {

inline constexpr int kEventLogVersion = 1;

struct SimConfig {
  std::uint64_t horizon_events = 10'000'000;  // per replication
  double warmup_fraction = 0.1;
  std::uint32_t replications = 10;
  std::uint64_t master_seed = 1;
  std::uint32_t batch_count = 30;
  unsigned threads = 0;  // 0: one per hardware thread

  /// Throws ConfigError.
  void validate() const;
};

/// Where the effort spent on an update ends up.
enum class EffortCategory : std::size_t {
  Useful,                   // update delivered and lowered the monitor age
  PreemptedInService,       // a server abandoned it mid-step for a fresher one
  DiscardedOnArrival,       // server 2 was busy when it arrived (mm11)
  PreemptedInWaiting,       // replaced in the waiting room (mm12star)
  UselessParallelDelivery,  // delivered but no fresher than the monitor
  InFlight,                 // still in service when the run stopped
};
inline constexpr std::size_t kEffortCategoryCount = 6;

std::string_view category_name(EffortCategory c);

/// Average power (energy / observed time) by category.
struct EffortBreakdown {
  std::array<double, kEffortCategoryCount> power{};

  double& operator[](EffortCategory c) { return power[static_cast<std::size_t>(c)]; }
  double operator[](EffortCategory c) const { return power[static_cast<std::size_t>(c)]; }
  /// Preempted, discarded and useless effort.  Excludes in-flight work.
  double wasted() const;
  double total() const;
};

struct SimResult {
  ConfidenceInterval mean_age;  // 95% batch-means interval
  double n1_bar_hat = 0.0;
  double n2_bar_hat = 0.0;
  double power_hat = 0.0;  // (E[C] mu1)^alpha n1 + (E[C] mu2)^alpha n2
  double wasted_power_hat = 0.0;
  double useful_delivery_fraction = 0.0;
  EffortBreakdown effort;
  std::vector<double> replication_mean_age;
  std::uint64_t deliveries = 0;
  double observed_time = 0.0;  // summed over replications
};

/// Deterministic in (policy, rates, power, config) whatever the thread
/// count.  When event_log is non-null every replication's log is written to
/// it in replication order.
SimResult simulate(Policy policy, RatePair rates, const PowerModel& power, const SimConfig& config,
                   std::ostream* event_log = nullptr);

/// Rebuilds the effort breakdown from an event log: each begin/end interval
/// after warmup is charged to its update at that step's power, and the
/// update's fate picks the category.  Replications are averaged.  Throws
/// std::invalid_argument for an empty or malformed log or a policy mismatch.
EffortBreakdown classify_effort(Policy policy, std::istream& event_log);

}  // namespace aoi
