#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "aoi/policy.hpp"
#include "aoi/shs.hpp"

using namespace aoi;

namespace {

const double kRhoGrid[] = {0.25, 0.5, 1.0, 2.0, 4.0};
const double kMu2Grid[] = {0.5, 1.0, 2.0};

// Closed forms for sss and psiu, written out independently in long double.
long double sss_age(long double mu2, long double rho) {
  return (2.0L + 1.0L / rho + 1.0L / (rho * (1.0L + rho))) / mu2;
}
long double psiu_age(long double mu2, long double rho) {
  return (1.0L + (1.0L / (2.0L * rho)) * (1.0L + 1.0L / (1.0L + rho))) / mu2;
}

ResetMap columns(std::initializer_list<int> src) {
  ResetMap m;
  for (int s : src) m.push_back(s < 0 ? ResetColumn::zero() : ResetColumn::copy(static_cast<std::size_t>(s)));
  return m;
}

}  // namespace

TEST_CASE("names and families") {
  CHECK(kAllPolicies.size() == 7);
  for (Policy p : kAllPolicies) {
    CHECK(parse_policy(policy_name(p)) == p);
    CHECK(processor_count(p) == 2);
  }
  CHECK(parse_policy("MM12Star") == Policy::MM12Star);
  CHECK(parse_policy("P-SSS") == std::nullopt);
  CHECK(parse_policy("bogus") == std::nullopt);
  CHECK(family(Policy::SSS) == Family::Series);
  CHECK(family(Policy::MM1Star) == Family::Series);
  CHECK(family(Policy::PSSS) == Family::Parallel);
  CHECK(family(Policy::PSIU) == Family::Parallel);
  CHECK(policy_name_list().find("pcaf") != std::string::npos);
}

TEST_CASE("model tables") {
  SUBCASE("mm12star") {
    const auto m = build_model(Policy::MM12Star);
    REQUIRE(m.transitions.size() == 5);
    CHECK(m.states.size() == 3);
    CHECK(m.transitions[4].reset == columns({2, 1, 3, 3}));
  }
  SUBCASE("psss") {
    const auto m = build_model(Policy::PSSS);
    CHECK(m.states.size() == 4);
    REQUIRE(m.transitions.size() == 8);
    for (std::size_t l = 0; l < 4; ++l) {
      const auto& reset = m.transitions[l].reset;
      for (std::size_t j = 0; j < reset.size(); ++j) CHECK(reset[j] == ResetColumn::copy(j));
    }
  }
  SUBCASE("pcaf") {
    const auto m = build_model(Policy::PCAF);
    CHECK(m.states.size() == 2);
    CHECK(m.transitions[0].rate.coefficient == 2);
    CHECK(m.transitions[0].rate.base == BaseRate::Mu1);
    CHECK(m.activity[0] == StepActivity{2, 0});
    CHECK(m.activity[1] == StepActivity{1, 1});
  }
}

TEST_CASE("closed_form_age") {
  CHECK(closed_form_age(Policy::MM12Star, {1, 1}) == doctest::Approx(2.0 + 2.0 / 3.0 + 15.0 / 16.0).epsilon(1e-15));
  CHECK(closed_form_age(Policy::PSSS, {1, 1}) == doctest::Approx(2.4453125).epsilon(1e-15));
  CHECK(std::abs(closed_form_age(Policy::PSSS, {1, 1e6}) - 1.25) < 1e-4);
  CHECK(closed_form_age(Policy::MM1Star, {2, 1}) == doctest::Approx(1.0));
  CHECK_THROWS_AS(closed_form_age(Policy::SSS, {0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(closed_form_age(Policy::SSS, {1, 0}), std::invalid_argument);
}

TEST_CASE("identities on the grid") {
  SUBCASE("mm11 is twice mm1star, same pwpa") {
    for (double rho : kRhoGrid) {
      for (double mu2 : kMu2Grid) {
        const double a = closed_form_age(Policy::MM11, {mu2, rho});
        const double b = closed_form_age(Policy::MM1Star, {mu2, rho});
        CHECK(std::abs(a - 2.0 * b) <= 1e-12 * a);
      }
      const auto p = pwpa(Policy::MM11, rho, 5.0);
      const auto q = pwpa(Policy::MM1Star, rho, 5.0);
      CHECK(p.n_bar == q.n_bar);
      CHECK(p.n1_bar == q.n1_bar);
      CHECK(p.n2_bar == q.n2_bar);
    }
  }
  SUBCASE("psiu at mu2 matches sss at 2 mu2") {
    // First the two closed forms against each other, then the library.
    for (double rho : kRhoGrid)
      for (double mu2 : kMu2Grid) {
        const long double lhs = psiu_age(mu2, rho);
        const long double rhs = sss_age(2.0L * mu2, rho);
        CHECK(std::abs(static_cast<double>(lhs - rhs)) <= 1e-15 * static_cast<double>(lhs));
        CHECK(closed_form_age(Policy::PSIU, {mu2, rho}) ==
              doctest::Approx(closed_form_age(Policy::SSS, {2 * mu2, rho})).epsilon(1e-14));
        CHECK(closed_form_age(Policy::PSIU, {mu2, rho}) ==
              doctest::Approx(static_cast<double>(lhs)).epsilon(1e-14));
      }
  }
  SUBCASE("psiu and psss share pwpa") {
    for (double rho : {0.1, 0.7, 1.0, 3.0, 9.0})
      for (double alpha : {1.0, 2.5, 5.0}) {
        const auto a = pwpa(Policy::PSIU, rho, alpha);
        const auto b = pwpa(Policy::PSSS, rho, alpha);
        CHECK(a.n_bar == doctest::Approx(b.n_bar).epsilon(1e-15));
      }
  }
}

TEST_CASE("pwpa") {
  CHECK(pwpa(Policy::MM1Star, 1, 5).n_bar == doctest::Approx(1.5));
  CHECK(pwpa(Policy::PCAF, 1, 5).n_bar == doctest::Approx(2.0));
  const auto s = pwpa(Policy::SSS, 3, 5);
  CHECK(s.n1_bar == doctest::Approx(0.25));
  CHECK(s.n2_bar == doctest::Approx(0.75));
  CHECK(s.n_bar == doctest::Approx((243.0 + 3.0) / 4.0));
  CHECK_THROWS_AS(pwpa(Policy::SSS, 0, 5), std::invalid_argument);
  CHECK_THROWS_AS(pwpa(Policy::SSS, 1, 0.5), std::invalid_argument);

  SUBCASE("bounds and n_bar definition") {
    for (Policy p : kAllPolicies)
      for (int k = 1; k <= 100; ++k) {
        const double rho = 0.1 * k;
        const auto b = pwpa(p, rho, 5.0);
        CHECK(b.n1_bar >= 0.0);
        CHECK(b.n2_bar >= 0.0);
        CHECK(b.n1_bar + b.n2_bar <= processor_count(p) + 1e-12);
        CHECK(b.n_bar == std::pow(rho, 5.0) * b.n1_bar + b.n2_bar);
      }
  }
  SUBCASE("n_bar strictly increasing in rho") {
    for (Policy p : kAllPolicies) {
      double prev = pwpa(p, 0.1, 5.0).n_bar;
      for (int k = 2; k <= 100; ++k) {
        const double cur = pwpa(p, 0.1 * k, 5.0).n_bar;
        CHECK(cur > prev);
        prev = cur;
      }
    }
  }
  SUBCASE("busy fractions equal the chain average") {
    for (Policy p : kAllPolicies) {
      const auto m = build_model(p);
      for (double rho : {0.1, 0.5, 1.0, 2.0, 10.0}) {
        const auto pi = stationary_distribution(m, rho, 1.0);
        const auto act = mean_activity(m, pi);
        const auto b = pwpa(p, rho, 5.0);
        CAPTURE(policy_name(p));
        CHECK(std::abs(act.step1 - b.n1_bar) < 1e-12);
        CHECK(std::abs(act.step2 - b.n2_bar) < 1e-12);
      }
    }
  }
}
