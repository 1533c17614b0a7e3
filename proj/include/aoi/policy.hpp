#pragma once

/// @file policy.hpp
/// The seven two-step update-processing policies.
///
/// Series (server 1 does step 1, server 2 does step 2):
///   mm1star   server 2 preempts in service
///   mm12star  server 2 has a one-slot waiting room with preemption in waiting
///   mm11      server 2 discards arrivals while busy
///   sss       one update in the system at a time
/// Parallel (each server runs both steps):
///   psss      two independent servers, monitor keeps the fresher update
///   pcaf      coordinated alternating freshness: only one server in step 2
///   psiu      shared intermediate result, both servers on the same update
///
/// Every policy's age has the form (1/mu2) f(rho) with rho = mu1/mu2.

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "aoi/shs.hpp"

namespace aoi {

enum class Policy { MM1Star, MM12Star, MM11, SSS, PSSS, PCAF, PSIU };
enum class Family { Series, Parallel };

inline constexpr std::array<Policy, 7> kAllPolicies = {Policy::MM1Star, Policy::MM12Star, Policy::MM11, Policy::SSS,
                                                       Policy::PSSS,    Policy::PCAF,     Policy::PSIU};

/// Canonical lower-case name, e.g. "mm12star".  These strings are the CLI and
/// JSON contract.
std::string_view policy_name(Policy p);
/// Case-insensitive inverse of policy_name.
std::optional<Policy> parse_policy(std::string_view name);
/// "mm1star, mm12star, ..." for error messages.
std::string policy_name_list();

Family family(Policy p);
/// Physical servers.  Series models have two servers too.
unsigned processor_count(Policy p);

struct RatePair {
  double mu2 = 1.0;
  double rho = 1.0;

  double mu1() const { return rho * mu2; }
  static RatePair from_rates(double mu1, double mu2) { return {mu2, mu1 / mu2}; }
};

/// Power-weighted processor activity: n_bar = rho^alpha * n1_bar + n2_bar.
struct PwpaBreakdown {
  double n1_bar = 0.0;
  double n2_bar = 0.0;
  double n_bar = 0.0;
};

/// Rate-parametric SHS model with per-state step activity.
ShsModel build_model(Policy p);

/// Closed-form average age.  Throws std::invalid_argument unless
/// mu2 > 0 and rho > 0.
double closed_form_age(Policy p, RatePair rates);

/// Closed-form busy fractions and PWPA.  Requires rho > 0 and alpha >= 1.
PwpaBreakdown pwpa(Policy p, double rho, double alpha);

}  // namespace aoi
