#pragma once

/// @file optimizer.hpp
/// Age minimization under a total power budget.
///
/// For a fixed ratio rho = mu1/mu2 every policy's age falls as mu2 grows, so
/// the budget is spent in full:
///   mu2*(rho) = (P / (E[C]^alpha * n_bar(rho)))^(1/alpha)
/// and what is left is the one-dimensional objective
///   delta*(rho) = closed_form_age(mu2*(rho), rho).

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "aoi/policy.hpp"
#include "aoi/power.hpp"

namespace aoi {

struct SearchOptions {
  double rho_min = 1e-3;
  double rho_max = 1e3;
  double tol = 1e-8;              // final bracket width in rho
  std::size_t grid_points = 200;  // log-spaced coarse scan
};

struct OptResult {
  double rho_star = 0.0;
  double mu2_star = 0.0;
  double mu1_star = 0.0;
  double delta_star = 0.0;
  double achieved_power = 0.0;
  std::size_t iterations = 0;  // golden-section steps
};

double mu2_star(Policy p, double rho, const PowerModel& power);
double objective(Policy p, double rho, const PowerModel& power);

/// Coarse log-grid scan to bracket the best grid point, then golden-section
/// refinement.  Throws NumericError when the objective is not finite at some
/// grid point and std::invalid_argument on bad options.
OptResult optimize(Policy p, const PowerModel& power, const SearchOptions& search = {});

struct GoldenResult {
  double x = 0.0;
  double fx = 0.0;
  std::size_t iterations = 0;
};

/// Golden-section search for a minimum of f on [a, b] down to a bracket of
/// width tol.
GoldenResult golden_section_minimize(const std::function<double(double)>& f, double a, double b, double tol);

struct CurvePoint {
  double rho = 0.0;
  double mu2_star = 0.0;
  double delta_star = 0.0;
};

struct RhoCurve {
  Policy policy{};
  std::vector<CurvePoint> points;
  std::size_t argmin = 0;
};

RhoCurve sweep_rho(Policy p, const PowerModel& power, std::span<const double> grid);

struct PowerRow {
  Policy policy{};
  double budget = 0.0;
  double rho_star = 0.0;
  double mu2_star = 0.0;
  double delta_star = 0.0;
};

/// One row per (policy, budget) in input order; budgets must be positive and
/// ascending.
std::vector<PowerRow> sweep_power(std::span<const Policy> policies, std::span<const double> power_grid,
                                  const PowerModel& base, const SearchOptions& search = {});

/// `count` points from lo to hi inclusive, evenly spaced in value or in log.
std::vector<double> make_grid(double lo, double hi, std::size_t count, bool log_spaced);

}  // namespace aoi
