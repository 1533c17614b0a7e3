#include "aoi/shs.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "aoi/errors.hpp"
#include "linear_solve.hpp"

namespace aoi {
namespace {

std::vector<bool> reachable(const ShsModel& model, bool forward) {
  const std::size_t m = model.states.size();
  std::vector<bool> seen(m, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    const std::size_t q = stack.back();
    stack.pop_back();
    for (const auto& t : model.transitions) {
      const std::size_t from = forward ? t.source : t.dest;
      const std::size_t to = forward ? t.dest : t.source;
      if (from == q && !seen[to]) {
        seen[to] = true;
        stack.push_back(to);
      }
    }
  }
  return seen;
}

void check_rates(double mu1, double mu2) {
  if (!(mu1 > 0.0) || !(mu2 > 0.0) || !std::isfinite(mu1) || !std::isfinite(mu2)) {
    std::ostringstream os;
    os << "service rates must be positive and finite (mu1=" << mu1 << ", mu2=" << mu2 << ")";
    throw std::invalid_argument(os.str());
  }
}

// Throws unless the model is structurally sound.  Reducibility is a solver
// error rather than an argument error.
void require_solvable(const ShsModel& model) {
  const auto problems = validate_model(model);
  if (problems.empty()) return;
  bool only_reducible = true;
  std::string joined;
  for (const auto& p : problems) {
    if (p.rfind("reducible", 0) != 0) only_reducible = false;
    joined += (joined.empty() ? "" : "; ") + p;
  }
  const std::string msg = "model '" + model.name + "': " + joined;
  if (only_reducible) throw SolverError(msg);
  throw std::invalid_argument(msg);
}

std::vector<double> outgoing_rates(const ShsModel& model, double mu1, double mu2) {
  std::vector<double> out(model.states.size(), 0.0);
  for (const auto& t : model.transitions) out[t.source] += t.rate.evaluate(mu1, mu2);
  return out;
}

}  // namespace

std::vector<std::string> validate_model(const ShsModel& model) {
  std::vector<std::string> problems;
  const std::size_t m = model.states.size();
  if (m == 0) problems.emplace_back("model has no states");
  if (model.age_dim < 1) problems.emplace_back("age_dim must be at least 1");
  if (model.activity.size() != m) {
    problems.push_back("activity has " + std::to_string(model.activity.size()) + " entries for " +
                       std::to_string(m) + " states");
  }
  for (std::size_t q = 0; q < model.activity.size(); ++q) {
    const auto& a = model.activity[q];
    if (a.step1 + a.step2 > model.processors) {
      problems.push_back("state " + std::to_string(q) + " uses " + std::to_string(a.step1 + a.step2) +
                         " processors but the model has " + std::to_string(model.processors));
    }
  }

  bool indices_ok = m > 0;
  for (std::size_t l = 0; l < model.transitions.size(); ++l) {
    const auto& t = model.transitions[l];
    const std::string tag = "transition " + std::to_string(l + 1);
    if (t.source >= m || t.dest >= m) {
      problems.push_back(tag + ": state index out of range (" + std::to_string(t.source) + " -> " +
                         std::to_string(t.dest) + ", " + std::to_string(m) + " states)");
      indices_ok = false;
    }
    if (t.rate.coefficient < 1) problems.push_back(tag + ": rate coefficient must be at least 1");
    if (t.reset.size() != model.age_dim) {
      problems.push_back(tag + ": reset map has " + std::to_string(t.reset.size()) + " columns, expected " +
                         std::to_string(model.age_dim));
    }
    for (std::size_t j = 0; j < t.reset.size(); ++j) {
      if (!t.reset[j].is_zero() && t.reset[j].source() >= model.age_dim) {
        problems.push_back(tag + ": reset column " + std::to_string(j) + " copies component " +
                           std::to_string(t.reset[j].source()) + " outside age_dim " +
                           std::to_string(model.age_dim));
      }
    }
  }

  if (indices_ok) {
    const auto fwd = reachable(model, true);
    const auto bwd = reachable(model, false);
    for (std::size_t q = 0; q < m; ++q) {
      if (!fwd[q] || !bwd[q]) {
        problems.push_back("reducible chain: state " + std::to_string(q) + " (" + model.states[q] +
                           ") does not communicate with state 0");
        break;
      }
    }
  }
  return problems;
}

std::vector<double> stationary_distribution(const ShsModel& model, double mu1, double mu2) {
  check_rates(mu1, mu2);
  require_solvable(model);
  const std::size_t m = model.states.size();

  // Rows: global balance inflow - outflow = 0 for states 0..m-2; last row sum(pi) = 1.
  detail::DenseMatrix a(m);
  for (const auto& t : model.transitions) {
    if (t.source == t.dest) continue;
    const double r = t.rate.evaluate(mu1, mu2);
    a(t.dest, t.source) += r;
    a(t.source, t.source) -= r;
  }
  for (std::size_t c = 0; c < m; ++c) a(m - 1, c) = 1.0;
  std::vector<double> b(m, 0.0);
  b[m - 1] = 1.0;
  auto pi = detail::solve_dense(std::move(a), std::move(b), "stationary distribution of '" + model.name + "'");
  for (auto& p : pi)
    if (p < 0.0 && p > -1e-14) p = 0.0;
  return pi;
}

AgeSolution solve_age_balance(const ShsModel& model, double mu1, double mu2) {
  AgeSolution sol;
  sol.pi = stationary_distribution(model, mu1, mu2);

  const std::size_t m = model.states.size();
  const std::size_t n = model.age_dim;
  const auto out = outgoing_rates(model, mu1, mu2);
  auto idx = [n](std::size_t q, std::size_t j) { return q * n + j; };

  detail::DenseMatrix a(m * n);
  std::vector<double> b(m * n, 0.0);
  for (std::size_t q = 0; q < m; ++q) {
    for (std::size_t j = 0; j < n; ++j) {
      a(idx(q, j), idx(q, j)) += out[q];
      b[idx(q, j)] = sol.pi[q];
    }
  }
  for (const auto& t : model.transitions) {
    const double r = t.rate.evaluate(mu1, mu2);
    for (std::size_t j = 0; j < n; ++j) {
      if (t.reset[j].is_zero()) continue;
      a(idx(t.dest, j), idx(t.source, t.reset[j].source())) -= r;
    }
  }

  std::ostringstream what;
  what << "age balance of '" << model.name << "' at mu1=" << mu1 << ", mu2=" << mu2;
  const auto v = detail::solve_dense(std::move(a), std::move(b), what.str());

  sol.v_bar.assign(m, std::vector<double>(n, 0.0));
  for (std::size_t q = 0; q < m; ++q) {
    for (std::size_t j = 0; j < n; ++j) {
      const double x = v[idx(q, j)];
      if (!std::isfinite(x) || x < -1e-9 * (1.0 + std::abs(x))) {
        std::ostringstream os;
        os << what.str() << ": no non-negative fixed point (state " << q << " (" << model.states[q]
           << "), component " << j << " = " << x << ")";
        throw SolverError(os.str());
      }
      sol.v_bar[q][j] = std::max(x, 0.0);
    }
  }
  sol.delta = average_age(sol);
  return sol;
}

double average_age(const AgeSolution& solution) {
  double d = 0.0;
  for (const auto& vq : solution.v_bar)
    if (!vq.empty()) d += vq[0];
  return d;
}

MeanActivity mean_activity(const ShsModel& model, std::span<const double> pi) {
  if (pi.size() != model.activity.size())
    throw std::invalid_argument("distribution size does not match the model's state count");
  MeanActivity a;
  for (std::size_t q = 0; q < pi.size(); ++q) {
    a.step1 += pi[q] * model.activity[q].step1;
    a.step2 += pi[q] * model.activity[q].step2;
  }
  return a;
}

}  // namespace aoi
