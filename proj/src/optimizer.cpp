#include "aoi/optimizer.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "aoi/errors.hpp"

namespace aoi {

double mu2_star(Policy p, double rho, const PowerModel& power) {
  power.validate();
  const double n_bar = pwpa(p, rho, power.alpha).n_bar;
  return std::pow(power.budget / (std::pow(power.mean_cycles, power.alpha) * n_bar), 1.0 / power.alpha);
}

double objective(Policy p, double rho, const PowerModel& power) {
  return closed_form_age(p, {mu2_star(p, rho, power), rho});
}

GoldenResult golden_section_minimize(const std::function<double(double)>& f, double a, double b, double tol) {
  if (!(a < b)) throw std::invalid_argument("golden_section_minimize: need a < b");
  if (!(tol > 0.0)) throw std::invalid_argument("golden_section_minimize: tol must be positive");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  std::size_t it = 0;
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
    ++it;
  }
  const double x = 0.5 * (a + b);
  return {x, f(x), it};
}

OptResult optimize(Policy p, const PowerModel& power, const SearchOptions& search) {
  power.validate();
  if (!(search.rho_min > 0.0) || !(search.rho_min < search.rho_max))
    throw std::invalid_argument("optimize: need 0 < rho_min < rho_max");
  if (!(search.tol > 0.0)) throw std::invalid_argument("optimize: tol must be positive");
  if (search.grid_points < 3) throw std::invalid_argument("optimize: need at least 3 grid points");

  const auto grid = make_grid(search.rho_min, search.rho_max, search.grid_points, true);
  std::size_t best = 0;
  double best_value = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double v = std::numeric_limits<double>::quiet_NaN();
    try {
      v = objective(p, grid[i], power);
    } catch (const std::invalid_argument&) {
      // mu2* under- or overflowed
    }
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << "optimize(" << policy_name(p) << "): objective is not finite at rho=" << grid[i];
      throw NumericError(os.str());
    }
    if (i == 0 || v < best_value) {
      best = i;
      best_value = v;
    }
  }

  const double lo = grid[best == 0 ? 0 : best - 1];
  const double hi = grid[best + 1 == grid.size() ? best : best + 1];
  const auto g = golden_section_minimize([&](double r) { return objective(p, r, power); }, lo, hi, search.tol);

  OptResult r;
  r.rho_star = g.x;
  r.delta_star = g.fx;
  if (best_value < r.delta_star) {  // refinement never does worse than the scan
    r.rho_star = grid[best];
    r.delta_star = best_value;
  }
  r.mu2_star = mu2_star(p, r.rho_star, power);
  r.mu1_star = r.rho_star * r.mu2_star;
  r.achieved_power = std::pow(power.mean_cycles * r.mu2_star, power.alpha) * pwpa(p, r.rho_star, power.alpha).n_bar;
  r.iterations = g.iterations;
  return r;
}

RhoCurve sweep_rho(Policy p, const PowerModel& power, std::span<const double> grid) {
  if (grid.empty()) throw std::invalid_argument("sweep_rho: empty grid");
  RhoCurve curve;
  curve.policy = p;
  for (double rho : grid) {
    if (!(rho > 0.0)) throw std::invalid_argument("sweep_rho: grid values must be positive");
    const double m = mu2_star(p, rho, power);
    curve.points.push_back({rho, m, closed_form_age(p, {m, rho})});
    if (curve.points.back().delta_star < curve.points[curve.argmin].delta_star) curve.argmin = curve.points.size() - 1;
  }
  return curve;
}

std::vector<PowerRow> sweep_power(std::span<const Policy> policies, std::span<const double> power_grid,
                                  const PowerModel& base, const SearchOptions& search) {
  if (power_grid.empty()) throw std::invalid_argument("sweep_power: empty power grid");
  for (std::size_t i = 0; i < power_grid.size(); ++i) {
    if (!(power_grid[i] > 0.0)) throw std::invalid_argument("sweep_power: budgets must be positive");
    if (i > 0 && !(power_grid[i] > power_grid[i - 1]))
      throw std::invalid_argument("sweep_power: budgets must be ascending");
  }
  std::vector<PowerRow> rows;
  for (Policy p : policies) {
    for (double budget : power_grid) {
      PowerModel pm = base;
      pm.budget = budget;
      const auto r = optimize(p, pm, search);
      rows.push_back({p, budget, r.rho_star, r.mu2_star, r.delta_star});
    }
  }
  return rows;
}

std::vector<double> make_grid(double lo, double hi, std::size_t count, bool log_spaced) {
  if (count < 1) throw std::invalid_argument("grid needs at least one point");
  if (log_spaced && !(lo > 0.0)) throw std::invalid_argument("log grid needs a positive lower bound");
  if (count == 1) return {lo};
  if (!(lo < hi)) throw std::invalid_argument("grid needs min < max");
  std::vector<double> g(count);
  const double last = static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    const double f = static_cast<double>(i) / last;
    g[i] = log_spaced ? std::exp(std::log(lo) + f * (std::log(hi) - std::log(lo))) : lo + f * (hi - lo);
  }
  g.front() = lo;
  g.back() = hi;
  return g;
}

}  // namespace aoi
