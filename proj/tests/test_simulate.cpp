#include "doctest.h"
#include "fixtures.hpp"
#include "mdc/error.hpp"
#include "mdc/simulate.hpp"

using namespace mdc;
using mdc::test::grouping;

namespace {

NetworkConfig probs(std::vector<double> q) {
  NetworkConfig cfg;
  cfg.num_paths = static_cast<int>(q.size());
  cfg.blockage_probs = std::move(q);
  return cfg;
}

CodingScheme xor_scheme() {
  CodingScheme s;
  s.num_paths = 3;
  s.field_order = 2;
  s.k1 = 1;
  s.k2 = 1;
  s.generator = Matrix::from_rows(2, {{1, 0, 1}, {0, 1, 1}});
  return s;
}

}  // namespace

TEST_CASE("degenerate blockage laws") {
  const auto g = mdc::test::example5();
  const auto s = build_scheme(g, probs({0.1, 0.2, 0.3}), {1, 1});
  auto r = run_monte_carlo(s, g, probs({1, 1, 1}), 1000, 1);
  CHECK(r.empirical_p_u1 == 0.0);
  CHECK(r.empirical_p_u2 == 0.0);
  CHECK(r.pattern_counts[0] == 1000);
  r = run_monte_carlo(s, g, probs({0, 0, 0}), 1000, 1);
  CHECK(r.empirical_p_u1 == 1.0);
  CHECK(r.empirical_p_u2 == 1.0);
  CHECK(r.required_success_rate == 1.0);
}

TEST_CASE("Example 5 corner scheme matches the analytic probabilities") {
  const auto cfg = probs({0.1, 0.2, 0.3});
  const auto g = mdc::test::example5();
  const auto s = build_scheme(g, cfg, {1, 1});
  const auto r = run_monte_carlo(s, g, cfg, 100000, 2024);
  CHECK(r.required_success_rate == 1.0);
  CHECK(r.analytic_p_u2 == doctest::Approx(0.504));
  CHECK(std::abs(r.empirical_p_u2 - 0.504) <= 3 * r.stderr_u2);
  CHECK(std::abs(r.empirical_p_u1 - r.analytic_p_u1) <= 3 * r.stderr_u1);
  CHECK(r.empirical_p_u1 >= r.empirical_p_u2);
  const auto dev = compare_with_analytic(r, g, cfg);
  CHECK(dev.passed);
  const auto chi = pattern_chi_square(r, cfg);
  CHECK(chi.degrees_of_freedom == 7);
  CHECK(chi.p_value >= 1e-3);
  CHECK_FALSE(chi.impossible_draw);
}

TEST_CASE("benign surplus and hard failures") {
  const auto cfg = probs({0.1, 0.2, 0.3});
  // The XOR scheme decodes everything under 111, which this grouping omits.
  const auto g = grouping({"100"}, {"011"});
  auto r = run_monte_carlo(xor_scheme(), g, cfg, 20000, 3);
  CHECK(r.surplus_p_u1 > 0);
  CHECK(r.empirical_p_u1 + r.surplus_p_u1 > r.analytic_p_u1);
  auto dev = compare_with_analytic(r, g, cfg);
  CHECK(dev.benign_surplus);
  CHECK(dev.passed);

  const auto bad = grouping({"001"}, {"011"});
  r = run_monte_carlo(xor_scheme(), bad, cfg, 20000, 3);
  CHECK(r.required_success_rate < 1.0);
  dev = compare_with_analytic(r, bad, cfg);
  CHECK_FALSE(dev.required_all_decoded);
  CHECK_FALSE(dev.passed);
}

TEST_CASE("argument errors") {
  const auto cfg = probs({0.1, 0.2, 0.3});
  const auto g = mdc::test::example5();
  const auto s = build_scheme(g, cfg, {1, 1});
  try {
    run_monte_carlo(s, g, cfg, 0, 1);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidInput);
  }
  CHECK_THROWS_AS(run_monte_carlo(s, g, probs({0.1, 0.2, 0.3, 0.4}), 10, 1),
                  Error);
}

TEST_CASE("serial and parallel runs agree, and seeds reproduce") {
  const auto cfg = probs({0.1, 0.2, 0.3});
  for (const auto& g : {mdc::test::example3(), mdc::test::example4(),
                        mdc::test::example5()}) {
    for (const auto& c : region(g, cfg).corner_points) {
      const auto s = build_scheme(g, cfg, c);
      const auto a = run_monte_carlo(s, g, cfg, 5000, 77);
      const auto b = run_monte_carlo_serial(s, g, cfg, 5000, 77);
      const auto again = run_monte_carlo(s, g, cfg, 5000, 77);
      CHECK(to_json(a) == to_json(b));
      CHECK(to_json(a) == to_json(again));
      CHECK(a.required_success_rate == 1.0);
      const auto other = run_monte_carlo(s, g, cfg, 5000, 78);
      CHECK(other.pattern_counts != a.pattern_counts);
    }
  }
}

TEST_CASE("chi-square flags draws of impossible patterns") {
  const auto cfg = probs({0.1, 0.2, 0.3});
  const auto g = mdc::test::example5();
  auto r = run_monte_carlo(build_scheme(g, cfg, {1, 1}), g, probs({0, 0.5, 0.5}),
                           2000, 4);
  // Path 1 never fails, so half the cells have zero expectation.
  auto chi = pattern_chi_square(r, probs({0, 0.5, 0.5}));
  CHECK(chi.degrees_of_freedom == 3);
  CHECK_FALSE(chi.impossible_draw);
  chi = pattern_chi_square(r, probs({0, 0, 0}));
  CHECK(chi.impossible_draw);
  CHECK(chi.p_value == 0.0);
}

TEST_CASE("result JSON lists pattern counts by text") {
  const auto cfg = probs({0.1, 0.2, 0.3});
  const auto g = mdc::test::example5();
  const auto r = run_monte_carlo(build_scheme(g, cfg, {1, 1}), g, cfg, 100, 5);
  const auto j = to_json(r);
  CHECK(j.at("pattern_counts").contains("000"));
  CHECK(j.at("pattern_counts").contains("111"));
  CHECK(j.at("trials") == 100);
}
