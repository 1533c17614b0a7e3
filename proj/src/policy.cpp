#include "aoi/policy.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace aoi {
namespace {

const ResetColumn o = ResetColumn::zero();
ResetColumn x(std::size_t k) { return ResetColumn::copy(k); }

constexpr RateSpec mu1{1, BaseRate::Mu1};
constexpr RateSpec mu2{1, BaseRate::Mu2};
constexpr RateSpec two_mu1{2, BaseRate::Mu1};
constexpr RateSpec two_mu2{2, BaseRate::Mu2};

// Age vector (x0, x1, x2): monitor, step-1 output, server 2.  A step-1
// completion hands server 2 an update stamped at the completion instant,
// which is what makes the monitor age 1/mu1 + 1/mu2 (two-node preemptive
// line network).
ShsModel mm1star_model() {
  return {"mm1star",
          {"0", "1"},
          3,
          2,
          {{0, 1, mu1, {x(0), o, o}},  //
           {1, 1, mu1, {x(0), o, o}},
           {1, 0, mu2, {x(2), x(1), x(2)}}},
          {{1, 0}, {1, 1}}};
}

// (x0, x1, x2, x3): monitor, server 1, server 2, waiting room.
ShsModel mm12star_model() {
  return {"mm12star",
          {"0", "1", "2"},
          4,
          2,
          {{0, 1, mu1, {x(0), o, x(1), x(1)}},
           {1, 0, mu2, {x(2), x(1), x(2), x(3)}},
           {1, 2, mu1, {x(0), o, x(2), x(1)}},
           {2, 2, mu1, {x(0), o, x(2), x(1)}},
           {2, 1, mu2, {x(2), x(1), x(3), x(3)}}},
          {{1, 0}, {1, 1}, {1, 1}}};
}

ShsModel mm11_model() {
  return {"mm11",
          {"0", "1"},
          3,
          2,
          {{0, 1, mu1, {x(0), o, x(1)}},  //
           {1, 1, mu1, {x(0), o, x(2)}},
           {1, 0, mu2, {x(2), x(1), x(2)}}},
          {{1, 0}, {1, 1}}};
}

ShsModel sss_model() {
  return {"sss",
          {"1", "2"},
          3,
          2,
          {{0, 1, mu1, {x(0), x(1), x(1)}},  //
           {1, 0, mu2, {x(2), o, x(2)}}},
          {{1, 0}, {0, 1}}};
}

// States (step of server 1, step of server 2).  Age vector
// (x0, x1, x2, min(x0,x1), min(x0,x2), min(x0,x1,x2)).
ShsModel psss_model() {
  const ResetMap same = {x(0), x(1), x(2), x(3), x(4), x(5)};
  const ResetMap server1_delivers = {x(3), o, x(2), o, x(5), o};
  const ResetMap server2_delivers = {x(4), x(1), o, x(5), o, o};
  enum : std::size_t { s11 = 0, s12 = 1, s21 = 2, s22 = 3 };
  return {"psss",
          {"(1,1)", "(1,2)", "(2,1)", "(2,2)"},
          6,
          2,
          {{s11, s21, mu1, same},
           {s11, s12, mu1, same},
           {s12, s22, mu1, same},
           {s21, s22, mu1, same},
           {s21, s11, mu2, server1_delivers},
           {s22, s12, mu2, server1_delivers},
           {s12, s11, mu2, server2_delivers},
           {s22, s21, mu2, server2_delivers}},
          {{2, 0}, {1, 1}, {1, 1}, {0, 2}}};
}

// (x0, x1, x2): monitor, update in step 1, update in step 2.
ShsModel pcaf_model() {
  return {"pcaf",
          {"1", "2"},
          3,
          2,
          {{0, 1, two_mu1, {x(0), o, x(1)}},  //
           {1, 1, mu1, {x(0), o, x(1)}},
           {1, 0, mu2, {x(2), o, x(2)}}},
          {{2, 0}, {1, 1}}};
}

ShsModel psiu_model() {
  return {"psiu",
          {"1", "2"},
          2,
          2,
          {{0, 1, two_mu1, {x(0), x(1)}},  //
           {1, 0, two_mu2, {x(1), o}}},
          {{2, 0}, {0, 2}}};
}

}  // namespace

std::string_view policy_name(Policy p) {
  switch (p) {
    case Policy::MM1Star: return "mm1star";
    case Policy::MM12Star: return "mm12star";
    case Policy::MM11: return "mm11";
    case Policy::SSS: return "sss";
    case Policy::PSSS: return "psss";
    case Policy::PCAF: return "pcaf";
    case Policy::PSIU: return "psiu";
  }
  return "?";
}

std::optional<Policy> parse_policy(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  for (Policy p : kAllPolicies)
    if (policy_name(p) == lower) return p;
  return std::nullopt;
}

std::string policy_name_list() {
  std::string s;
  for (Policy p : kAllPolicies) {
    if (!s.empty()) s += ", ";
    s += policy_name(p);
  }
  return s;
}

Family family(Policy p) {
  switch (p) {
    case Policy::MM1Star:
    case Policy::MM12Star:
    case Policy::MM11:
    case Policy::SSS: return Family::Series;
    default: return Family::Parallel;
  }
}

unsigned processor_count(Policy) { return 2; }

ShsModel build_model(Policy p) {
  switch (p) {
    case Policy::MM1Star: return mm1star_model();
    case Policy::MM12Star: return mm12star_model();
    case Policy::MM11: return mm11_model();
    case Policy::SSS: return sss_model();
    case Policy::PSSS: return psss_model();
    case Policy::PCAF: return pcaf_model();
    case Policy::PSIU: return psiu_model();
  }
  throw std::invalid_argument("unknown policy");
}

double closed_form_age(Policy p, RatePair rates) {
  const double m = rates.mu2;
  const double r = rates.rho;
  if (!(m > 0.0) || !(r > 0.0) || !std::isfinite(m) || !std::isfinite(r)) {
    std::ostringstream os;
    os << "closed_form_age: need mu2 > 0 and rho > 0 (mu2=" << m << ", rho=" << r << ")";
    throw std::invalid_argument(os.str());
  }
  const double r2 = r * r;
  double f = 0.0;
  switch (p) {
    case Policy::MM1Star:
      f = 1.0 + 1.0 / r;
      break;
    case Policy::MM12Star:
      f = 2.0 / r + 2.0 * r2 / (1.0 + r + r2) + (1.0 + 2.0 * r) * (1.0 + 3.0 * r + r2) / std::pow(1.0 + r, 4);
      break;
    case Policy::MM11:
      f = 2.0 * (1.0 + 1.0 / r);
      break;
    case Policy::SSS:
      f = 2.0 + 1.0 / r + 1.0 / (r * (1.0 + r));
      break;
    case Policy::PSSS:
      f = 1.0 + 1.0 / r + (1.0 + r + r2) / (4.0 * r * (1.0 + r)) +
          r * (1.0 + 2.0 * r) * (2.0 + r) / (4.0 * std::pow(1.0 + r, 5));
      break;
    case Policy::PCAF:
      f = 3.0 / (2.0 * (1.0 + r)) + 2.0 * r / (1.0 + 2.0 * r) + (1.0 + r + r2) / (r * (1.0 + r) * (1.0 + r));
      break;
    case Policy::PSIU:
      f = 1.0 + (1.0 / (2.0 * r)) * (1.0 + 1.0 / (1.0 + r));
      break;
  }
  return f / m;
}

PwpaBreakdown pwpa(Policy p, double rho, double alpha) {
  if (!(rho > 0.0) || !std::isfinite(rho)) throw std::invalid_argument("pwpa: rho must be positive");
  if (!(alpha >= 1.0) || !std::isfinite(alpha)) throw std::invalid_argument("pwpa: alpha must be >= 1");
  const double r = rho;
  PwpaBreakdown b;
  switch (p) {
    case Policy::MM1Star:
    case Policy::MM11:
      b.n1_bar = 1.0;
      b.n2_bar = r / (1.0 + r);
      break;
    case Policy::MM12Star:
      b.n1_bar = 1.0;
      b.n2_bar = r * (1.0 + r) / (1.0 + r + r * r);
      break;
    case Policy::SSS:
      b.n1_bar = 1.0 / (1.0 + r);
      b.n2_bar = r / (1.0 + r);
      break;
    case Policy::PSSS:
    case Policy::PSIU:
      b.n1_bar = 2.0 / (1.0 + r);
      b.n2_bar = 2.0 * r / (1.0 + r);
      break;
    case Policy::PCAF:
      // Both servers are always busy; state 1 is left at rate 2 mu1.
      b.n1_bar = 2.0 * (1.0 + r) / (1.0 + 2.0 * r);
      b.n2_bar = 2.0 * r / (1.0 + 2.0 * r);
      break;
  }
  b.n_bar = std::pow(r, alpha) * b.n1_bar + b.n2_bar;
  return b;
}

}  // namespace aoi
