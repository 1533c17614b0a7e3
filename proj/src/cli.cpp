#include "aoi/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <nlohmann/json.hpp>
#include <optional>
#include <ostream>
#include <sstream>

#include "aoi/errors.hpp"
#include "aoi/optimizer.hpp"
#include "aoi/policy.hpp"
#include "aoi/shs.hpp"
#include "aoi/shs_json.hpp"
#include "aoi/simulator.hpp"

namespace aoi {
namespace {

using nlohmann::json;

// Exit codes.
constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Shortest decimal that reads back to the same double.
std::string num(double v) {
  char buf[32];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

Policy require_policy(const std::string& name) {
  if (auto p = parse_policy(name)) return *p;
  throw UsageError("unknown policy '" + name + "'; valid policies: " + policy_name_list());
}

std::vector<Policy> require_policies(const std::string& list) {
  if (list == "all") return {kAllPolicies.begin(), kAllPolicies.end()};
  std::vector<Policy> out;
  std::stringstream ss(list);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(require_policy(item));
  if (out.empty()) throw UsageError("no policies given; use 'all' or a comma list of: " + policy_name_list());
  return out;
}

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) throw UsageError(std::string("--") + name + " must be positive");
}

std::uint64_t default_seed() {
  if (const char* s = std::getenv("AOI_SEED")) {
    char* end = nullptr;
    const auto v = std::strtoull(s, &end, 10);
    if (end && *end == '\0' && end != s) return v;
    throw UsageError(std::string("AOI_SEED is not an unsigned integer: ") + s);
  }
  return 1;
}

json record(const std::string& command, const std::vector<std::string>& argv, json params, json results) {
  json j;
  j["tool"] = "aoi";
  j["version"] = kToolVersion;
  j["command"] = command;
  j["argv"] = argv;
  j["params"] = std::move(params);
  j["results"] = std::move(results);
  return j;
}

// Writes through a temporary file in the target directory so readers never
// see a partial CSV.
void write_atomically(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + tmp.string());
    f << contents;
    f.flush();
    if (!f) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot move " + tmp.string() + " to " + path + ": " + ec.message());
  }
}

// --- analyze ----------------------------------------------------------------

struct AnalyzeArgs {
  std::string policy;
  double mu2 = 1.0;
  double rho = 1.0;
  double alpha = 5.0;
  bool json = false;
};

int cmd_analyze(const AnalyzeArgs& a, std::ostream& out) {
  const Policy p = require_policy(a.policy);
  require_positive(a.mu2, "mu2");
  require_positive(a.rho, "rho");
  if (!(a.alpha >= 1.0)) throw UsageError("--alpha must be >= 1");

  const RatePair rates{a.mu2, a.rho};
  const double closed = closed_form_age(p, rates);
  const ShsModel model = build_model(p);
  const AgeSolution sol = solve_age_balance(model, rates.mu1(), rates.mu2);
  const PwpaBreakdown w = pwpa(p, a.rho, a.alpha);

  const std::vector<std::string> argv = {"analyze", "--policy", std::string(policy_name(p)), "--mu2", num(a.mu2),
                                         "--rho",   num(a.rho), "--alpha", num(a.alpha), "--json"};
  if (a.json) {
    json results = {{"closed_form_delta", closed},
                    {"shs_delta", sol.delta},
                    {"relative_difference", std::abs(sol.delta - closed) / closed},
                    {"states", model.states},
                    {"pi", sol.pi},
                    {"n1_bar", w.n1_bar},
                    {"n2_bar", w.n2_bar},
                    {"n_bar", w.n_bar}};
    auto r = record("analyze", argv, {{"mu2", a.mu2}, {"rho", a.rho}, {"mu1", rates.mu1()}, {"alpha", a.alpha}},
                    results);
    r["policy"] = policy_name(p);
    out << r.dump(2) << '\n';
    return kOk;
  }
  out << std::setprecision(12);
  out << "policy " << policy_name(p) << "  mu2=" << a.mu2 << "  rho=" << a.rho << "  mu1=" << rates.mu1()
      << "  alpha=" << a.alpha << '\n';
  out << "  age (closed form)   " << closed << '\n';
  out << "  age (SHS numeric)   " << sol.delta << '\n';
  out << "  stationary pi      ";
  for (std::size_t q = 0; q < sol.pi.size(); ++q) out << ' ' << model.states[q] << ':' << sol.pi[q];
  out << '\n';
  out << "  N1=" << w.n1_bar << "  N2=" << w.n2_bar << "  PWPA=" << w.n_bar << '\n';
  return kOk;
}

// --- simulate ---------------------------------------------------------------

struct SimulateArgs {
  std::string policy;
  double mu2 = 1.0;
  double rho = 1.0;
  double budget = 8.0;
  double ec = 1.0;
  double alpha = 5.0;
  std::optional<std::uint64_t> seed;
  std::uint64_t events = 10'000'000;
  std::uint32_t replications = 10;
  std::uint32_t batches = 30;
  double warmup = 0.1;
  unsigned threads = 0;
  std::string event_log;
  bool json = false;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  const Policy p = require_policy(a.policy);
  require_positive(a.mu2, "mu2");
  require_positive(a.rho, "rho");
  require_positive(a.budget, "P");
  require_positive(a.ec, "EC");
  if (!(a.alpha >= 1.0)) throw UsageError("--alpha must be >= 1");

  SimConfig cfg;
  cfg.horizon_events = a.events;
  cfg.replications = a.replications;
  cfg.batch_count = a.batches;
  cfg.warmup_fraction = a.warmup;
  cfg.master_seed = a.seed ? *a.seed : default_seed();
  cfg.threads = a.threads;
  cfg.validate();
  const PowerModel power{a.budget, a.ec, a.alpha};
  const RatePair rates{a.mu2, a.rho};

  std::optional<std::ofstream> log;
  if (!a.event_log.empty()) {
    log.emplace(a.event_log, std::ios::trunc);
    if (!*log) throw std::runtime_error("cannot open event log " + a.event_log);
    log->precision(17);
  }
  const SimResult res = simulate(p, rates, power, cfg, log ? &*log : nullptr);
  const double closed = closed_form_age(p, rates);

  const std::vector<std::string> argv = {"simulate",       "--policy",  std::string(policy_name(p)),
                                         "--mu2",          num(a.mu2),  "--rho",
                                         num(a.rho),       "--P",       num(a.budget),
                                         "--EC",           num(a.ec),   "--alpha",
                                         num(a.alpha),     "--seed",    std::to_string(cfg.master_seed),
                                         "--events",       std::to_string(cfg.horizon_events),
                                         "--replications", std::to_string(cfg.replications),
                                         "--batches",      std::to_string(cfg.batch_count),
                                         "--warmup",       num(cfg.warmup_fraction),
                                         "--json"};
  if (a.json) {
    json effort;
    for (std::size_t c = 0; c < kEffortCategoryCount; ++c)
      effort[std::string(category_name(static_cast<EffortCategory>(c)))] = res.effort.power[c];
    json results = {{"mean_age", res.mean_age.mean},
                    {"ci_half_width", res.mean_age.half_width},
                    {"closed_form_delta", closed},
                    {"n1_bar_hat", res.n1_bar_hat},
                    {"n2_bar_hat", res.n2_bar_hat},
                    {"power_hat", res.power_hat},
                    {"wasted_power_hat", res.wasted_power_hat},
                    {"useful_delivery_fraction", res.useful_delivery_fraction},
                    {"effort_power", effort},
                    {"deliveries", res.deliveries},
                    {"observed_time", res.observed_time},
                    {"replication_mean_age", res.replication_mean_age}};
    json params = {{"mu2", a.mu2},
                   {"rho", a.rho},
                   {"mu1", rates.mu1()},
                   {"P", a.budget},
                   {"EC", a.ec},
                   {"alpha", a.alpha},
                   {"events", cfg.horizon_events},
                   {"replications", cfg.replications},
                   {"batches", cfg.batch_count},
                   {"warmup", cfg.warmup_fraction}};
    auto r = record("simulate", argv, params, results);
    r["policy"] = policy_name(p);
    r["seed"] = cfg.master_seed;
    out << r.dump(2) << '\n';
    return kOk;
  }
  out << std::setprecision(8);
  out << "policy " << policy_name(p) << "  mu2=" << a.mu2 << "  rho=" << a.rho << "  seed=" << cfg.master_seed
      << "  events=" << cfg.horizon_events << " x " << cfg.replications << '\n';
  out << "  mean age        " << res.mean_age.mean << " +/- " << res.mean_age.half_width << " (95%)\n";
  out << "  closed form     " << closed << '\n';
  out << "  busy N1, N2     " << res.n1_bar_hat << ", " << res.n2_bar_hat << '\n';
  out << "  power           " << res.power_hat << '\n';
  out << "  wasted power    " << res.wasted_power_hat << '\n';
  out << "  useful delivery " << res.useful_delivery_fraction << '\n';
  return kOk;
}

// --- optimize ---------------------------------------------------------------

struct OptimizeArgs {
  std::string policy;
  double budget = 8.0;
  double ec = 1.0;
  double alpha = 5.0;
  SearchOptions search;
  bool json = false;
};

int cmd_optimize(const OptimizeArgs& a, std::ostream& out) {
  const Policy p = require_policy(a.policy);
  require_positive(a.budget, "P");
  require_positive(a.ec, "EC");
  if (!(a.alpha >= 1.0)) throw UsageError("--alpha must be >= 1");
  require_positive(a.search.rho_min, "rho-min");
  require_positive(a.search.tol, "tol");
  if (!(a.search.rho_min < a.search.rho_max)) throw UsageError("--rho-min must be below --rho-max");

  const PowerModel power{a.budget, a.ec, a.alpha};
  const OptResult r = optimize(p, power, a.search);
  const std::vector<std::string> argv = {
      "optimize",    "--policy", std::string(policy_name(p)), "--P",   num(a.budget),
      "--EC",        num(a.ec),  "--alpha",                   num(a.alpha), "--rho-min",
      num(a.search.rho_min),     "--rho-max",                 num(a.search.rho_max), "--tol",
      num(a.search.tol),         "--json"};
  if (a.json) {
    json results = {{"rho_star", r.rho_star},     {"mu2_star", r.mu2_star},
                    {"mu1_star", r.mu1_star},     {"delta_star", r.delta_star},
                    {"achieved_power", r.achieved_power}, {"iterations", r.iterations}};
    json params = {{"P", a.budget},
                   {"EC", a.ec},
                   {"alpha", a.alpha},
                   {"rho_min", a.search.rho_min},
                   {"rho_max", a.search.rho_max},
                   {"tol", a.search.tol}};
    auto rec = record("optimize", argv, params, results);
    rec["policy"] = policy_name(p);
    out << rec.dump(2) << '\n';
    return kOk;
  }
  out << std::setprecision(10);
  out << "policy " << policy_name(p) << "  P=" << a.budget << "  E[C]=" << a.ec << "  alpha=" << a.alpha << '\n';
  out << "  rho*   " << r.rho_star << '\n';
  out << "  mu2*   " << r.mu2_star << '\n';
  out << "  mu1*   " << r.mu1_star << '\n';
  out << "  age*   " << r.delta_star << '\n';
  out << "  power  " << r.achieved_power << '\n';
  return kOk;
}

// --- sweep ------------------------------------------------------------------

struct SweepArgs {
  std::string mode = "rho";
  std::string policies = "all";
  double budget = 8.0;
  double ec = 1.0;
  double alpha = 5.0;
  std::optional<double> min;
  std::optional<double> max;
  std::optional<std::size_t> count;
  bool log = false;
  std::string out;
  bool json = false;
};

int cmd_sweep(const SweepArgs& a, std::ostream& out, std::ostream& err) {
  if (a.mode != "rho" && a.mode != "power") throw UsageError("--mode must be 'rho' or 'power'");
  const bool rho_mode = a.mode == "rho";
  const auto policies = require_policies(a.policies);
  require_positive(a.budget, "P");
  require_positive(a.ec, "EC");
  if (!(a.alpha >= 1.0)) throw UsageError("--alpha must be >= 1");

  // Defaults reproduce the two evaluation figures: delta*(rho) at P = 8 and
  // optimal age against P.
  const double lo = a.min.value_or(rho_mode ? 0.05 : 1.0);
  const double hi = a.max.value_or(rho_mode ? 5.0 : 64.0);
  const std::size_t count = a.count.value_or(rho_mode ? 100 : 7);
  const bool log_spaced = a.min || a.max || a.count ? a.log : true;
  if (count < 2) throw UsageError("--count must be at least 2");
  if (!(lo > 0.0) || !(lo < hi)) throw UsageError("grid needs 0 < --min < --max");
  const auto grid = make_grid(lo, hi, count, log_spaced);
  const PowerModel base{a.budget, a.ec, a.alpha};

  std::ostringstream csv;
  csv << std::setprecision(17);
  json summary = json::array();
  if (rho_mode) {
    csv << "policy,rho,P,mu2_star,delta_star\n";
    for (Policy p : policies) {
      const RhoCurve c = sweep_rho(p, base, grid);
      for (const auto& pt : c.points)
        csv << policy_name(p) << ',' << pt.rho << ',' << base.budget << ',' << pt.mu2_star << ',' << pt.delta_star
            << '\n';
      const auto& m = c.points[c.argmin];
      summary.push_back({{"policy", policy_name(p)}, {"argmin_rho", m.rho}, {"min_delta_star", m.delta_star}});
    }
  } else {
    csv << "policy,rho,P,mu2_star,delta_star,rho_star\n";
    const auto rows = sweep_power(policies, grid, base);
    for (const auto& r : rows)
      csv << policy_name(r.policy) << ',' << r.rho_star << ',' << r.budget << ',' << r.mu2_star << ','
          << r.delta_star << ',' << r.rho_star << '\n';
    for (Policy p : policies) {
      json ages = json::array();
      double rho_star = 0.0;
      for (const auto& r : rows)
        if (r.policy == p) {
          ages.push_back(r.delta_star);
          rho_star = r.rho_star;
        }
      summary.push_back({{"policy", policy_name(p)}, {"rho_star", rho_star}, {"delta_star", ages}});
    }
  }

  std::vector<std::string> argv = {"sweep", "--mode", a.mode, "--policies", a.policies, "--P", num(a.budget),
                                   "--EC", num(a.ec), "--alpha", num(a.alpha), "--min", num(lo), "--max", num(hi),
                                   "--count", std::to_string(count)};
  if (log_spaced) argv.emplace_back("--log");
  if (!a.out.empty()) {
    argv.emplace_back("--out");
    argv.push_back(a.out);
  }
  argv.emplace_back("--json");

  std::ostream& report = a.out.empty() ? err : out;
  if (a.out.empty()) {
    out << csv.str();
  } else {
    write_atomically(a.out, csv.str());
  }
  if (a.json) {
    json params = {{"mode", a.mode}, {"P", a.budget}, {"EC", a.ec},      {"alpha", a.alpha},
                   {"min", lo},      {"max", hi},     {"count", count},  {"log", log_spaced}};
    auto rec = record("sweep", argv, params, {{"rows", policies.size() * count}, {"summary", summary}});
    if (!a.out.empty()) rec["output"] = a.out;
    report << rec.dump(2) << '\n';
  } else {
    report << std::setprecision(8);
    report << "sweep " << a.mode << ": " << policies.size() * count << " rows"
           << (a.out.empty() ? "" : " -> " + a.out) << '\n';
    for (const auto& s : summary) {
      if (rho_mode) {
        report << "  " << s["policy"].get<std::string>() << "  argmin rho " << s["argmin_rho"].get<double>()
               << "  delta* " << s["min_delta_star"].get<double>() << '\n';
      } else {
        report << "  " << s["policy"].get<std::string>() << "  rho* " << s["rho_star"].get<double>() << '\n';
      }
    }
  }
  return kOk;
}

// --- model-dump / solve -------------------------------------------------------

int cmd_model_dump(const std::string& policy, bool as_record, std::ostream& out) {
  const Policy p = require_policy(policy);
  const json model = model_to_json(build_model(p));
  if (!as_record) {
    out << model.dump(2) << '\n';
    return kOk;
  }
  auto rec = record("model-dump", {"model-dump", "--policy", std::string(policy_name(p)), "--json"}, json::object(),
                    {{"model", model}});
  rec["policy"] = policy_name(p);
  out << rec.dump(2) << '\n';
  return kOk;
}

struct SolveArgs {
  std::string model_path;
  double mu1 = 1.0;
  double mu2 = 1.0;
  bool json = false;
};

int cmd_solve(const SolveArgs& a, std::ostream& out) {
  require_positive(a.mu1, "mu1");
  require_positive(a.mu2, "mu2");
  std::ifstream f(a.model_path);
  if (!f) throw UsageError("cannot read model file " + a.model_path);
  json j;
  try {
    j = json::parse(f);
  } catch (const json::exception& e) {
    throw UsageError("model file " + a.model_path + " is not valid JSON: " + e.what());
  }
  ShsModel model;
  try {
    model = model_from_json(j);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (const auto problems = validate_model(model); !problems.empty()) {
    std::string msg = "invalid model:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw UsageError(msg);
  }
  const AgeSolution sol = solve_age_balance(model, a.mu1, a.mu2);
  const MeanActivity act = mean_activity(model, sol.pi);
  if (a.json) {
    json results = {{"delta", sol.delta}, {"states", model.states}, {"pi", sol.pi},
                    {"v_bar", sol.v_bar}, {"n1_bar", act.step1},    {"n2_bar", act.step2}};
    auto rec = record("solve", {"solve", "--model", a.model_path, "--mu1", num(a.mu1), "--mu2", num(a.mu2), "--json"},
                      {{"mu1", a.mu1}, {"mu2", a.mu2}, {"model", a.model_path}}, results);
    out << rec.dump(2) << '\n';
    return kOk;
  }
  out << std::setprecision(12);
  out << "model " << model.name << "  mu1=" << a.mu1 << "  mu2=" << a.mu2 << '\n';
  out << "  average age " << sol.delta << '\n';
  for (std::size_t q = 0; q < sol.pi.size(); ++q) {
    out << "  state " << model.states[q] << "  pi=" << sol.pi[q] << "  v=[";
    for (std::size_t k = 0; k < sol.v_bar[q].size(); ++k) out << (k ? ", " : "") << sol.v_bar[q][k];
    out << "]\n";
  }
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Age of information for two-step update processing under a power budget", "aoi"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  AnalyzeArgs an;
  auto* analyze = app.add_subcommand("analyze", "Closed-form and SHS age, stationary distribution, PWPA");
  analyze->add_option("--policy", an.policy, "Policy name")->required();
  analyze->add_option("--mu2", an.mu2, "Step-2 service rate")->capture_default_str();
  analyze->add_option("--rho", an.rho, "mu1 / mu2")->capture_default_str();
  analyze->add_option("--alpha", an.alpha, "Power exponent")->capture_default_str();
  analyze->add_flag("--json", an.json, "Emit a JSON record");

  SimulateArgs si;
  auto* sim = app.add_subcommand("simulate", "Monte-Carlo simulation with batch-means confidence interval");
  sim->add_option("--policy", si.policy, "Policy name")->required();
  sim->add_option("--mu2", si.mu2)->capture_default_str();
  sim->add_option("--rho", si.rho)->capture_default_str();
  sim->add_option("--P,--budget", si.budget, "Power budget (for reporting)")->capture_default_str();
  sim->add_option("--EC,--mean-cycles", si.ec, "Mean CPU cycles per step")->capture_default_str();
  sim->add_option("--alpha", si.alpha)->capture_default_str();
  sim->add_option("--seed", si.seed, "Master seed (default: $AOI_SEED or 1)");
  sim->add_option("--events", si.events, "Events per replication")->capture_default_str();
  sim->add_option("--replications", si.replications)->capture_default_str();
  sim->add_option("--batches", si.batches, "Batches per replication")->capture_default_str();
  sim->add_option("--warmup", si.warmup, "Fraction of events discarded")->capture_default_str();
  sim->add_option("--threads", si.threads, "Worker threads (0 = all cores)")->capture_default_str();
  sim->add_option("--event-log", si.event_log, "Write the JSON-lines event log here");
  sim->add_flag("--json", si.json);

  OptimizeArgs op;
  auto* opt = app.add_subcommand("optimize", "Optimal rho, rates and age under the power budget");
  opt->add_option("--policy", op.policy)->required();
  opt->add_option("--P,--budget", op.budget)->capture_default_str();
  opt->add_option("--EC,--mean-cycles", op.ec)->capture_default_str();
  opt->add_option("--alpha", op.alpha)->capture_default_str();
  opt->add_option("--rho-min", op.search.rho_min)->capture_default_str();
  opt->add_option("--rho-max", op.search.rho_max)->capture_default_str();
  opt->add_option("--tol", op.search.tol)->capture_default_str();
  opt->add_flag("--json", op.json);

  SweepArgs sw;
  auto* sweep = app.add_subcommand("sweep", "Objective over rho, or optimal age over P, as CSV");
  sweep->add_option("--mode", sw.mode, "rho | power")->capture_default_str();
  sweep->add_option("--policies", sw.policies, "'all' or comma list")->capture_default_str();
  sweep->add_option("--P,--budget", sw.budget, "Power budget (rho mode)")->capture_default_str();
  sweep->add_option("--EC,--mean-cycles", sw.ec)->capture_default_str();
  sweep->add_option("--alpha", sw.alpha)->capture_default_str();
  sweep->add_option("--min", sw.min, "Grid start (rho mode 0.05, power mode 1)");
  sweep->add_option("--max", sw.max, "Grid end (rho mode 5, power mode 64)");
  sweep->add_option("--count", sw.count, "Grid points (rho mode 100, power mode 7)");
  sweep->add_flag("--log", sw.log, "Log-spaced grid");
  sweep->add_option("--out", sw.out, "CSV path (default: standard output)");
  sweep->add_flag("--json", sw.json);

  std::string dump_policy;
  bool dump_json = false;
  auto* dump = app.add_subcommand("model-dump", "Print a policy's SHS model as JSON");
  dump->add_option("--policy", dump_policy)->required();
  dump->add_flag("--json", dump_json, "Wrap the model in a run record");

  SolveArgs so;
  auto* solve = app.add_subcommand("solve", "Solve a custom SHS model given as JSON");
  solve->add_option("--model", so.model_path, "Model file")->required();
  solve->add_option("--mu1", so.mu1)->capture_default_str();
  solve->add_option("--mu2", so.mu2)->capture_default_str();
  solve->add_flag("--json", so.json);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(an, out);
    if (sim->parsed()) return cmd_simulate(si, out);
    if (opt->parsed()) return cmd_optimize(op, out);
    if (sweep->parsed()) return cmd_sweep(sw, out, err);
    if (dump->parsed()) return cmd_model_dump(dump_policy, dump_json, out);
    if (solve->parsed()) return cmd_solve(so, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}

}  // namespace aoi
