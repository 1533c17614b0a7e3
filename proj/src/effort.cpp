#include <cmath>
#include <istream>
#include <nlohmann/json.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "aoi/power.hpp"
#include "aoi/simulator.hpp"

namespace aoi {
namespace {

struct OpenInterval {
  double start = 0.0;
  int step = 0;
  std::uint64_t update = 0;
};

EffortCategory category_from_reason(const std::string& reason) {
  if (reason == "preempted-in-service") return EffortCategory::PreemptedInService;
  if (reason == "discarded-on-arrival") return EffortCategory::DiscardedOnArrival;
  if (reason == "preempted-in-waiting") return EffortCategory::PreemptedInWaiting;
  throw std::invalid_argument("event log: unknown drop reason \"" + reason + "\"");
}

class RunClassifier {
 public:
  RunClassifier(const nlohmann::json& header) {
    PowerModel pm;
    pm.mean_cycles = header.at("mean_cycles").get<double>();
    pm.alpha = header.at("alpha").get<double>();
    step_power_[1] = pm.step_power(header.at("mu1").get<double>());
    step_power_[2] = pm.step_power(header.at("mu2").get<double>());
  }

  bool stopped() const { return stopped_; }

  void consume(const nlohmann::json& rec, std::size_t line) {
    const std::string kind = rec.at("kind").get<std::string>();
    const double t = rec.at("t").get<double>();
    if (kind == "warmup_end") {
      warm_ = t;
    } else if (kind == "begin") {
      open_[server_of(rec, line)] = OpenInterval{t, rec.at("step").get<int>(), rec.at("update").get<std::uint64_t>()};
    } else if (kind == "end") {
      close(server_of(rec, line), t, line);
    } else if (kind == "deliver") {
      const bool lowered = rec.at("age_after").get<double>() < rec.at("age_before").get<double>();
      settle(rec.at("update").get<std::uint64_t>(),
             lowered ? EffortCategory::Useful : EffortCategory::UselessParallelDelivery);
    } else if (kind == "drop") {
      settle(rec.at("update").get<std::uint64_t>(), category_from_reason(rec.at("reason").get<std::string>()));
    } else if (kind == "stop") {
      for (std::size_t s = 0; s < open_.size(); ++s)
        if (open_[s]) close(s, t, line);
      for (const auto& [id, e] : energy_) totals_[static_cast<std::size_t>(EffortCategory::InFlight)] += e;
      energy_.clear();
      observed_ = warm_ ? t - *warm_ : 0.0;
      stopped_ = true;
    } else {
      throw std::invalid_argument("event log line " + std::to_string(line) + ": unknown kind \"" + kind + "\"");
    }
  }

  EffortBreakdown breakdown() const {
    EffortBreakdown b;
    if (observed_ > 0.0)
      for (std::size_t c = 0; c < kEffortCategoryCount; ++c) b.power[c] = totals_[c] / observed_;
    return b;
  }

 private:
  static std::size_t server_of(const nlohmann::json& rec, std::size_t line) {
    const int s = rec.at("server").get<int>();
    if (s < 1 || s > 2) throw std::invalid_argument("event log line " + std::to_string(line) + ": bad server");
    return static_cast<std::size_t>(s - 1);
  }

  void close(std::size_t s, double t, std::size_t line) {
    if (!open_[s])
      throw std::invalid_argument("event log line " + std::to_string(line) + ": end without begin");
    const OpenInterval iv = *open_[s];
    open_[s].reset();
    if (!warm_) return;
    const double from = std::max(iv.start, *warm_);
    if (t > from) energy_[iv.update] += step_power_.at(static_cast<std::size_t>(iv.step)) * (t - from);
  }

  void settle(std::uint64_t update, EffortCategory c) {
    if (auto it = energy_.find(update); it != energy_.end()) {
      totals_[static_cast<std::size_t>(c)] += it->second;
      energy_.erase(it);
    }
  }

  std::array<double, 3> step_power_{};
  std::optional<double> warm_;
  std::array<std::optional<OpenInterval>, 2> open_;
  std::unordered_map<std::uint64_t, double> energy_;
  std::array<double, kEffortCategoryCount> totals_{};
  double observed_ = 0.0;
  bool stopped_ = false;
};

}  // namespace

EffortBreakdown classify_effort(Policy policy, std::istream& event_log) {
  std::optional<RunClassifier> run;
  EffortBreakdown sum;
  std::size_t runs = 0;
  std::size_t line_no = 0;

  auto flush = [&] {
    if (!run) return;
    if (!run->stopped()) throw std::invalid_argument("event log: replication ends without a stop record");
    const auto b = run->breakdown();
    for (std::size_t c = 0; c < kEffortCategoryCount; ++c) sum.power[c] += b.power[c];
    ++runs;
  };

  for (std::string line; std::getline(event_log, line);) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json rec;
    try {
      rec = nlohmann::json::parse(line);
      if (rec.at("kind") == "header") {
        if (rec.at("v").get<int>() != kEventLogVersion)
          throw std::invalid_argument("unsupported event log version " + rec.at("v").dump());
        if (rec.at("policy").get<std::string>() != policy_name(policy))
          throw std::invalid_argument("log is for policy " + rec.at("policy").dump() + ", not " +
                                      std::string(policy_name(policy)));
        flush();
        run.emplace(rec);
        continue;
      }
      if (!run) throw std::invalid_argument("record before any header");
      run->consume(rec, line_no);
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument("event log line " + std::to_string(line_no) + ": " + e.what());
    } catch (const std::invalid_argument& e) {
      const std::string what = e.what();
      if (what.rfind("event log", 0) == 0) throw;
      throw std::invalid_argument("event log line " + std::to_string(line_no) + ": " + what);
    }
  }
  if (!run) throw std::invalid_argument("event log is empty or has no header");
  flush();
  for (double& p : sum.power) p /= static_cast<double>(runs);
  return sum;
}

}  // namespace aoi
