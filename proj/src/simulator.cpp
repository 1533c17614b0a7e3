#include "aoi/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>

#include "aoi/errors.hpp"
#include "aoi/rng.hpp"

namespace aoi {
namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
constexpr std::uint64_t kMinEventsPerBatch = 10;

const char* drop_reason(EffortCategory c) {
  switch (c) {
    case EffortCategory::PreemptedInService: return "preempted-in-service";
    case EffortCategory::DiscardedOnArrival: return "discarded-on-arrival";
    case EffortCategory::PreemptedInWaiting: return "preempted-in-waiting";
    default: return "?";
  }
}

struct Update {
  std::uint64_t id = 0;
  double generated = 0.0;
  double energy = 0.0;  // after warmup
  bool alive = false;
};

struct Server {
  bool busy = false;
  int step = 0;
  std::size_t slot = kNone;
  double done = std::numeric_limits<double>::infinity();
};

struct ReplicationOutput {
  std::vector<double> batch_means;
  double observed_time = 0.0;
  double step1_busy_time = 0.0;
  double step2_busy_time = 0.0;
  std::array<double, kEffortCategoryCount> energy{};
  std::uint64_t deliveries = 0;
  std::uint64_t useful_deliveries = 0;
  double mean_age = 0.0;
};

class Replication {
 public:
  Replication(Policy policy, RatePair rates, const PowerModel& power, const SimConfig& config, std::uint64_t index,
              std::ostream* log)
      : policy_(policy),
        mu1_(rates.mu1()),
        mu2_(rates.mu2),
        step_power_{0.0, power.step_power(rates.mu1()), power.step_power(rates.mu2)},
        config_(config),
        rng_(replication_seed(config.master_seed, index)),
        log_(log) {
    if (log_) {
      *log_ << R"({"v":)" << kEventLogVersion << R"(,"kind":"header","policy":")" << policy_name(policy)
            << R"(","replication":)" << index << R"(,"seed":)" << config.master_seed << R"(,"mu1":)" << mu1_
            << R"(,"mu2":)" << mu2_ << R"(,"mean_cycles":)" << power.mean_cycles << R"(,"alpha":)" << power.alpha
            << "}\n";
    }
  }

  ReplicationOutput run() {
    const std::uint64_t total = config_.horizon_events;
    warmup_events_ = static_cast<std::uint64_t>(std::floor(config_.warmup_fraction * static_cast<double>(total)));
    start();
    if (warmup_events_ == 0) begin_observation();
    for (events_ = 0; events_ < total;) {
      const std::size_t s = next_server();
      advance(servers_[s].done);
      complete(s);
      ++events_;
      if (events_ == warmup_events_) {
        begin_observation();
      } else if (observing_ && events_ == batch_end_) {
        close_batch();
      }
    }
    finish();
    return std::move(out_);
  }

 private:
  // --- bookkeeping -------------------------------------------------------

  double monitor_age() const { return now_ - monitor_generated_; }

  void record(const char* kind, int server = -1, int step = 0, std::size_t slot = kNone, double age_after = -1.0,
              const char* reason = nullptr) {
    const double before = monitor_age();
    auto& os = *log_;
    os << R"({"t":)" << now_ << R"(,"kind":")" << kind << '"';
    if (server >= 0) os << R"(,"server":)" << server + 1;
    if (step > 0) os << R"(,"step":)" << step;
    if (slot != kNone) os << R"(,"update":)" << updates_[slot].id;
    if (reason) os << R"(,"reason":")" << reason << '"';
    os << R"(,"age_before":)" << before << R"(,"age_after":)" << (age_after < 0.0 ? before : age_after) << "}\n";
  }

  std::size_t new_update() {
    std::size_t slot = kNone;
    for (std::size_t i = 0; i < updates_.size(); ++i)
      if (!updates_[i].alive) {
        slot = i;
        break;
      }
    if (slot == kNone) {
      slot = updates_.size();
      updates_.emplace_back();
    }
    updates_[slot] = Update{next_id_++, now_, 0.0, true};
    return slot;
  }

  void begin(std::size_t s, int step, std::size_t slot) {
    Server& sv = servers_[s];
    sv.busy = true;
    sv.step = step;
    sv.slot = slot;
    sv.done = now_ + rng_.exponential(step == 1 ? mu1_ : mu2_);
    if (log_) record("begin", static_cast<int>(s), step, slot);
  }

  void end(std::size_t s) {
    Server& sv = servers_[s];
    if (log_) record("end", static_cast<int>(s), sv.step, sv.slot);
    sv.busy = false;
    sv.step = 0;
    sv.slot = kNone;
    sv.done = std::numeric_limits<double>::infinity();
  }

  void settle(std::size_t slot, EffortCategory c) {
    out_.energy[static_cast<std::size_t>(c)] += updates_[slot].energy;
    updates_[slot].alive = false;
  }

  void drop(std::size_t s, std::size_t slot, EffortCategory c) {
    if (log_) record("drop", static_cast<int>(s), 0, slot, -1.0, drop_reason(c));
    settle(slot, c);
  }

  // The monitor keeps the fresher of its current update and the delivered one.
  void deliver(std::size_t s, std::size_t slot) {
    const double generated = updates_[slot].generated;
    const bool useful = generated > monitor_generated_;
    const double after = useful ? now_ - generated : monitor_age();
    if (log_) record("deliver", static_cast<int>(s), 0, slot, after);
    if (useful) monitor_generated_ = generated;
    if (observing_) {
      ++out_.deliveries;
      if (useful) ++out_.useful_deliveries;
    }
    settle(slot, useful ? EffortCategory::Useful : EffortCategory::UselessParallelDelivery);
  }

  std::size_t next_server() const {
    std::size_t best = 0;
    for (std::size_t s = 1; s < servers_.size(); ++s)
      if (servers_[s].done < servers_[best].done) best = s;
    return best;
  }

  void advance(double t) {
    const double dt = t - now_;
    if (observing_) {
      const double age0 = monitor_age();
      const double area = dt * (age0 + 0.5 * dt);
      batch_area_ += area;
      batch_time_ += dt;
      total_area_ += area;
      for (const Server& sv : servers_) {
        if (!sv.busy) continue;
        (sv.step == 1 ? out_.step1_busy_time : out_.step2_busy_time) += dt;
        updates_[sv.slot].energy += dt * step_power_[sv.step];
      }
    }
    now_ = t;
  }

  void begin_observation() {
    observing_ = true;
    observation_start_ = now_;
    const std::uint64_t post = config_.horizon_events - warmup_events_;
    batch_index_ = 0;
    batch_end_ = warmup_events_ + post / config_.batch_count;
    if (log_) record("warmup_end");
  }

  void close_batch() {
    out_.batch_means.push_back(batch_time_ > 0.0 ? batch_area_ / batch_time_ : 0.0);
    batch_area_ = 0.0;
    batch_time_ = 0.0;
    ++batch_index_;
    const std::uint64_t post = config_.horizon_events - warmup_events_;
    batch_end_ = warmup_events_ + ((batch_index_ + 1) * post) / config_.batch_count;
  }

  void finish() {
    for (std::size_t i = 0; i < updates_.size(); ++i)
      if (updates_[i].alive) settle(i, EffortCategory::InFlight);
    if (log_) record("stop");
    out_.observed_time = now_ - observation_start_;
    out_.mean_age = out_.observed_time > 0.0 ? total_area_ / out_.observed_time : 0.0;
  }

  // --- policies ----------------------------------------------------------

  void start() {
    switch (policy_) {
      case Policy::MM1Star:
      case Policy::MM12Star:
      case Policy::MM11:
      case Policy::SSS: begin(0, 1, new_update()); break;
      case Policy::PSSS:
        begin(0, 1, new_update());
        begin(1, 1, new_update());
        break;
      case Policy::PCAF:
      case Policy::PSIU: {
        const std::size_t u = new_update();
        begin(0, 1, u);
        begin(1, 1, u);
        break;
      }
    }
  }

  void complete(std::size_t s) {
    switch (policy_) {
      case Policy::MM1Star: complete_mm1star(s); break;
      case Policy::MM12Star: complete_mm12star(s); break;
      case Policy::MM11: complete_mm11(s); break;
      case Policy::SSS: complete_sss(s); break;
      case Policy::PSSS: complete_psss(s); break;
      case Policy::PCAF: complete_pcaf(s); break;
      case Policy::PSIU: complete_psiu(s); break;
    }
  }

  // Server 2 (index 1) delivers and idles.
  void finish_step2_series(std::size_t s) {
    const std::size_t u = servers_[s].slot;
    end(s);
    deliver(s, u);
  }

  void complete_mm1star(std::size_t s) {
    if (s == 1) return finish_step2_series(s);
    const std::size_t u = servers_[0].slot;
    end(0);
    // Step-1 output carries the completion instant as its timestamp.
    updates_[u].generated = now_;
    if (servers_[1].busy) {
      const std::size_t old = servers_[1].slot;
      end(1);
      drop(1, old, EffortCategory::PreemptedInService);
    }
    begin(1, 2, u);
    begin(0, 1, new_update());
  }

  void complete_mm12star(std::size_t s) {
    if (s == 1) {
      finish_step2_series(1);
      if (waiting_ != kNone) {
        begin(1, 2, waiting_);
        waiting_ = kNone;
      }
      return;
    }
    const std::size_t u = servers_[0].slot;
    end(0);
    if (!servers_[1].busy) {
      begin(1, 2, u);
    } else {
      if (waiting_ != kNone) drop(1, waiting_, EffortCategory::PreemptedInWaiting);
      waiting_ = u;
    }
    begin(0, 1, new_update());
  }

  void complete_mm11(std::size_t s) {
    if (s == 1) return finish_step2_series(1);
    const std::size_t u = servers_[0].slot;
    end(0);
    if (!servers_[1].busy) {
      begin(1, 2, u);
    } else {
      drop(1, u, EffortCategory::DiscardedOnArrival);
    }
    begin(0, 1, new_update());
  }

  void complete_sss(std::size_t s) {
    if (s == 0) {
      const std::size_t u = servers_[0].slot;
      end(0);
      begin(1, 2, u);
      return;
    }
    finish_step2_series(1);
    begin(0, 1, new_update());
  }

  void complete_psss(std::size_t s) {
    const std::size_t u = servers_[s].slot;
    const int step = servers_[s].step;
    end(s);
    if (step == 1) {
      begin(s, 2, u);
    } else {
      deliver(s, u);
      begin(s, 1, new_update());
    }
  }

  void complete_pcaf(std::size_t s) {
    const std::size_t other = 1 - s;
    const std::size_t u = servers_[s].slot;
    if (servers_[s].step == 1) {
      end(s);
      if (servers_[other].step == 1) {
        // Both were on the same fresh update; the loser restarts fresh.
        end(other);
      } else {
        // A fresher update reached step 2: the older one is abandoned.
        const std::size_t old = servers_[other].slot;
        end(other);
        drop(other, old, EffortCategory::PreemptedInService);
      }
      begin(s, 2, u);
      begin(other, 1, new_update());
      return;
    }
    const std::size_t pending = servers_[other].slot;
    end(s);
    end(other);
    deliver(s, u);
    drop(other, pending, EffortCategory::PreemptedInService);
    const std::size_t fresh = new_update();
    begin(0, 1, fresh);
    begin(1, 1, fresh);
  }

  void complete_psiu(std::size_t s) {
    const std::size_t other = 1 - s;
    const std::size_t u = servers_[s].slot;
    const int step = servers_[s].step;
    end(s);
    end(other);
    if (step == 1) {
      begin(0, 2, u);
      begin(1, 2, u);
      return;
    }
    deliver(s, u);
    const std::size_t fresh = new_update();
    begin(0, 1, fresh);
    begin(1, 1, fresh);
  }

  Policy policy_;
  double mu1_;
  double mu2_;
  std::array<double, 3> step_power_;  // indexed by step
  const SimConfig& config_;
  RandomStream rng_;
  std::ostream* log_;

  std::array<Server, 2> servers_{};
  std::vector<Update> updates_;
  std::uint64_t next_id_ = 0;
  std::size_t waiting_ = kNone;

  double now_ = 0.0;
  double monitor_generated_ = 0.0;
  std::uint64_t events_ = 0;
  std::uint64_t warmup_events_ = 0;
  bool observing_ = false;
  double observation_start_ = 0.0;
  std::uint64_t batch_index_ = 0;
  std::uint64_t batch_end_ = 0;
  double batch_area_ = 0.0;
  double batch_time_ = 0.0;
  double total_area_ = 0.0;

  ReplicationOutput out_;
};

}  // namespace

std::string_view category_name(EffortCategory c) {
  switch (c) {
    case EffortCategory::Useful: return "useful";
    case EffortCategory::PreemptedInService: return "preempted-in-service";
    case EffortCategory::DiscardedOnArrival: return "discarded-on-arrival";
    case EffortCategory::PreemptedInWaiting: return "preempted-in-waiting";
    case EffortCategory::UselessParallelDelivery: return "useless-parallel-delivery";
    case EffortCategory::InFlight: return "in-flight";
  }
  return "?";
}

double EffortBreakdown::wasted() const {
  return (*this)[EffortCategory::PreemptedInService] + (*this)[EffortCategory::DiscardedOnArrival] +
         (*this)[EffortCategory::PreemptedInWaiting] + (*this)[EffortCategory::UselessParallelDelivery];
}

double EffortBreakdown::total() const {
  double s = 0.0;
  for (double p : power) s += p;
  return s;
}

void SimConfig::validate() const {
  if (!(warmup_fraction >= 0.0 && warmup_fraction < 1.0))
    throw ConfigError("warmup_fraction must be in [0, 1)");
  if (replications < 1) throw ConfigError("replications must be at least 1");
  if (batch_count < 2) throw ConfigError("batch_count must be at least 2");
  const auto warm = static_cast<std::uint64_t>(std::floor(warmup_fraction * static_cast<double>(horizon_events)));
  const std::uint64_t post = horizon_events - warm;
  if (post < kMinEventsPerBatch * batch_count) {
    throw ConfigError("horizon of " + std::to_string(horizon_events) + " events leaves " + std::to_string(post) +
                      " after warmup; " + std::to_string(batch_count) + " batches need at least " +
                      std::to_string(kMinEventsPerBatch * batch_count));
  }
}

SimResult simulate(Policy policy, RatePair rates, const PowerModel& power, const SimConfig& config,
                   std::ostream* event_log) {
  config.validate();
  power.validate();
  if (!(rates.mu2 > 0.0) || !(rates.rho > 0.0) || !std::isfinite(rates.mu2) || !std::isfinite(rates.rho))
    throw std::invalid_argument("simulate: mu2 and rho must be positive");

  const std::size_t reps = config.replications;
  std::vector<ReplicationOutput> outputs(reps);
  std::vector<std::ostringstream> logs(event_log ? reps : 0);
  for (auto& l : logs) l.precision(17);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t r = next++; r < reps; r = next++) {
      Replication rep(policy, rates, power, config, r, event_log ? &logs[r] : nullptr);
      outputs[r] = rep.run();
    }
  };
  unsigned threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, reps));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  SimResult res;
  std::vector<double> batches;
  std::uint64_t useful = 0;
  for (const auto& o : outputs) {
    batches.insert(batches.end(), o.batch_means.begin(), o.batch_means.end());
    res.n1_bar_hat += o.step1_busy_time / o.observed_time;
    res.n2_bar_hat += o.step2_busy_time / o.observed_time;
    for (std::size_t c = 0; c < kEffortCategoryCount; ++c) res.effort.power[c] += o.energy[c] / o.observed_time;
    res.deliveries += o.deliveries;
    useful += o.useful_deliveries;
    res.observed_time += o.observed_time;
    res.replication_mean_age.push_back(o.mean_age);
  }
  const double n = static_cast<double>(reps);
  res.n1_bar_hat /= n;
  res.n2_bar_hat /= n;
  for (double& p : res.effort.power) p /= n;
  res.mean_age = batch_means_ci(batches);
  res.power_hat = power.step_power(rates.mu1()) * res.n1_bar_hat + power.step_power(rates.mu2) * res.n2_bar_hat;
  res.wasted_power_hat = res.effort.wasted();
  res.useful_delivery_fraction =
      res.deliveries ? static_cast<double>(useful) / static_cast<double>(res.deliveries) : 0.0;

  if (event_log)
    for (const auto& l : logs) *event_log << l.str();
  return res;
}

}  // namespace aoi
