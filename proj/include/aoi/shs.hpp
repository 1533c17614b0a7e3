#pragma once

/// @file shs.hpp
/// Stochastic hybrid system (SHS) models of age processes and the
/// age-balance solver.
///
/// A model is a finite continuous-time Markov chain whose transitions carry
/// a rate (a positive multiple of the step-1 rate mu1 or the step-2 rate
/// mu2) and a reset map acting on a vector of age components.  Every age
/// component grows at unit slope between transitions.  Component 0 is the
/// age at the monitor.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace aoi {

enum class BaseRate { Mu1, Mu2 };

/// coefficient x (mu1 | mu2); e.g. {2, Mu1} is the 2*mu1 transition of a
/// two-server step-1 race.
struct RateSpec {
  unsigned coefficient = 1;
  BaseRate base = BaseRate::Mu1;

  double evaluate(double mu1, double mu2) const {
    return coefficient * (base == BaseRate::Mu1 ? mu1 : mu2);
  }
};

/// One output column of a reset map: either zero or a copy of an input
/// component.  A reset map built from these columns is a 0/1 matrix with at
/// most one 1 per column.
class ResetColumn {
 public:
  static ResetColumn zero() { return ResetColumn{}; }
  static ResetColumn copy(std::size_t component) { return ResetColumn{component}; }

  bool is_zero() const { return !source_.has_value(); }
  /// Input component copied into this column.  Precondition: !is_zero().
  std::size_t source() const { return *source_; }

  friend bool operator==(const ResetColumn&, const ResetColumn&) = default;

 private:
  ResetColumn() = default;
  explicit ResetColumn(std::size_t s) : source_(s) {}
  std::optional<std::size_t> source_;
};

using ResetMap = std::vector<ResetColumn>;

struct Transition {
  std::size_t source = 0;
  std::size_t dest = 0;
  RateSpec rate;
  ResetMap reset;
};

/// Number of processors busy on each step while the chain sits in a state.
struct StepActivity {
  unsigned step1 = 0;
  unsigned step2 = 0;
  friend bool operator==(const StepActivity&, const StepActivity&) = default;
};

struct ShsModel {
  std::string name;
  std::vector<std::string> states;
  std::size_t age_dim = 1;
  unsigned processors = 2;
  std::vector<Transition> transitions;
  std::vector<StepActivity> activity;  // one entry per state
};

struct AgeSolution {
  std::vector<double> pi;
  std::vector<std::vector<double>> v_bar;  // [state][component]
  double delta = 0.0;
};

/// Structural problems with a model; an empty result means the model is valid.
std::vector<std::string> validate_model(const ShsModel& model);

/// Stationary distribution of the discrete chain.  One global-balance row is
/// replaced by the normalization row and the system is solved directly.
/// Throws std::invalid_argument on a malformed model or non-positive rate and
/// SolverError when the chain is reducible.
std::vector<double> stationary_distribution(const ShsModel& model, double mu1, double mu2);

/// Solves the age-balance equations
///   v_q * (total rate leaving q) = pi_q * 1 + sum over transitions l into q
///                                  of rate_l * (v_{source(l)} A_l)
/// for the fixed points v_q and returns them with delta = sum_q v_q[0].
/// Self-loops appear on both sides.
AgeSolution solve_age_balance(const ShsModel& model, double mu1, double mu2);

/// Sum over states of the monitor component of v_bar.
double average_age(const AgeSolution& solution);

struct MeanActivity {
  double step1 = 0.0;
  double step2 = 0.0;
};

/// sum_q pi_q n_{q,i} for i = 1, 2.
MeanActivity mean_activity(const ShsModel& model, std::span<const double> pi);

}  // namespace aoi
