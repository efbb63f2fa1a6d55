#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <heraldsim/conditioning.hpp>
#include <heraldsim/errors.hpp>
#include <heraldsim/rng.hpp>

using namespace heraldsim;

namespace {

TwoPortConfig make_config(double eta, double loss, double dark) {
  return {eta, {loss, dark}, {loss, dark}};
}

double tail_of(double chi, int n) {
  return std::pow(chi * chi, n + 1) / (1.0 - chi * chi);
}

} // namespace

TEST_CASE("pair number weights") {
  const auto vacuum = pair_number_weights({0.0}, 3);
  CHECK(vacuum == std::vector<double>{1.0, 0.0, 0.0, 0.0});

  // chi = 0.5: every value dyadic, equality is exact
  CHECK(pair_number_weights({0.5}, 2) == std::vector<double>{0.75, 0.1875, 0.046875});

  CounterRng rng(3, 0);
  for (int trial = 0; trial < 30; ++trial) {
    const double chi = 0.98 * rng.uniform();
    const int cutoff = static_cast<int>(rng.next_u64() % 40);
    const auto w = pair_number_weights({chi}, cutoff);
    REQUIRE(w.size() == static_cast<std::size_t>(cutoff) + 1);
    double sum = 0.0;
    for (double v : w) {
      CHECK(v >= 0.0);
      sum += v;
    }
    // geometric partial sum telescopes to 1 - chi^(2(cutoff+1))
    CHECK(sum == doctest::Approx(1.0 - std::pow(chi * chi, cutoff + 1)).epsilon(1e-13));
  }
}

TEST_CASE("auto cutoff") {
  CHECK(auto_cutoff({0.0}, 1e-12) == 0);
  CHECK(auto_cutoff({0.5}, 1e-12) == 20);
  CHECK(auto_cutoff({0.7}, 1.0) == 0);
  CHECK(auto_cutoff({0.866}, 1.0) == 4);

  // minimality: the returned N passes the bound and N-1 does not
  CounterRng rng(5, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const double chi = 0.01 + 0.97 * rng.uniform();
    const double tol = std::pow(10.0, -15.0 * rng.uniform());
    const int n = auto_cutoff({chi}, tol);
    CHECK(tail_of(chi, n) <= tol);
    if (n > 0) CHECK(tail_of(chi, n - 1) > tol);
  }

  CHECK_THROWS_AS(auto_cutoff({0.5}, 0.0), InvalidParameterError);
  CHECK_THROWS_AS(auto_cutoff({0.5}, -1e-9), InvalidParameterError);
  CHECK_THROWS_AS(auto_cutoff({1.0}, 1e-12), InvalidParameterError);
  CHECK_THROWS_AS(auto_cutoff({-0.1}, 1e-12), InvalidParameterError);
}

TEST_CASE("conditional state") {
  SUBCASE("vacuum source with ideal detectors never heralds") {
    const ConditionalState state = conditional_state({0.0}, make_config(0.5, 0, 0), 1e-12);
    for (double w : state.weights) CHECK(w == 0.0);
    CHECK(state.tail_bound == 0.0);
  }

  SUBCASE("ideal detectors: weights follow (1-chi^2) (chi^2 eta)^n") {
    const double chi = 0.2;
    const ConditionalState state = conditional_state({chi}, make_config(0.5, 0, 0), 1e-12);
    const double chi2 = chi * chi;
    CHECK(state.weights[0] == 0.0);
    for (std::size_t n = 1; n < state.weights.size(); ++n) {
      const double expected =
          (1.0 - chi2) * std::pow(chi2, static_cast<double>(n)) * std::pow(0.5, static_cast<double>(n));
      CHECK(state.weights[n] == doctest::Approx(expected).epsilon(1e-13));
    }
  }

  SUBCASE("cutoff floor and tail bound") {
    // tiny chi: the geometric bound alone would truncate below n = 1
    const ConditionalState state = conditional_state({1e-8}, make_config(0.5, 0, 0.01), 1e-12);
    CHECK(state.cutoff == 1);
    CHECK(state.weights.size() == 2);
    const ConditionalState wide = conditional_state({0.5}, make_config(0.5, 0, 0), 1e-12);
    CHECK(wide.cutoff == 20);
    CHECK(wide.tail_bound == std::pow(0.25, 21));
  }

  SUBCASE("trace matches the prepared herald probability") {
    const ConditionalState state = conditional_state({0.3}, make_config(0.4, 0.1, 1e-4), 1e-12);
    const PreparationReport report = prepare({0.3}, make_config(0.4, 0.1, 1e-4), 1e-12);
    CHECK(state.trace() == report.herald_probability);
  }
}

TEST_CASE("prepare spot values") {
  CHECK(prepare({0.2}, make_config(0.5, 0, 0)).fidelity ==
        doctest::Approx(0.98).epsilon(1e-12));
  // eta_ref = 1: the single-bucket-detector limit, F = 1 - chi^2. The
  // truncated tail shows up at ~(chi^2 eta)^cutoff, so pin it below the
  // assertion tolerance.
  CHECK(prepare({0.2}, make_config(1.0, 0, 0), 1e-15).fidelity ==
        doctest::Approx(0.96).epsilon(1e-12));

  const PreparationReport report = prepare({0.2}, make_config(0.5, 0, 0));
  CHECK(report.herald_probability ==
        doctest::Approx(0.96 * 0.02 / 0.98).epsilon(1e-12));
  CHECK(report.truncation_error <= 1e-12);
  CHECK(report.chi.chi == 0.2);
  CHECK(report.config.reflectivity == 0.5);
}

TEST_CASE("degenerate herald detection") {
  CHECK_THROWS_AS(prepare({0.0}, make_config(0.5, 0, 0)), DegenerateHeraldError);
  CHECK_THROWS_AS(prepare({0.2}, make_config(0.0, 0, 0)), DegenerateHeraldError);

  // dark counts alone do herald: vacuum source, all-dark heralds, F = 0
  const PreparationReport report = prepare({0.0}, make_config(0.5, 0, 0.01));
  CHECK(report.fidelity == 0.0);
  CHECK(report.herald_probability == doctest::Approx(0.01 * 0.99).epsilon(1e-14));
}

TEST_CASE("closed form fidelity for ideal detectors") {
  for (int i = 0; i < 12; ++i) {
    for (int j = 0; j < 12; ++j) {
      const double chi = 0.05 + 0.85 * i / 11.0;
      const double eta = 0.01 + 0.99 * j / 11.0;
      const PreparationReport report = prepare({chi}, make_config(eta, 0, 0), 1e-15);
      CHECK(report.fidelity == doctest::Approx(1.0 - chi * chi * eta).epsilon(1e-12));
      const double chi2 = chi * chi;
      CHECK(report.herald_probability ==
            doctest::Approx((1.0 - chi2) * chi2 * eta / (1.0 - chi2 * eta)).epsilon(1e-12));
    }
  }
}

TEST_CASE("fidelity bounds for arbitrary valid parameters") {
  CounterRng rng(17, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const double chi = 0.02 + 0.9 * rng.uniform();
    const TwoPortConfig cfg{rng.uniform(),
                            {rng.uniform(), rng.uniform()},
                            {rng.uniform(), rng.uniform()}};
    try {
      const PreparationReport report = prepare({chi}, cfg);
      CHECK(report.fidelity >= 0.0);
      CHECK(report.fidelity <= 1.0);
      CHECK(report.herald_probability >= 0.0);
      CHECK(report.herald_probability <= 1.0);
    } catch (const DegenerateHeraldError&) {
      // degenerate corners are legitimate
    }
  }
}

TEST_CASE("fidelity falls and herald probability rises with the splitting ratio") {
  const double chis[] = {0.05, 0.1, 0.2};
  const double losses[] = {0.0, 0.3, 0.7};
  for (double chi : chis) {
    for (double loss : losses) {
      double prev_f = 2.0;
      double prev_h = -1.0;
      for (int k = 1; k <= 20; ++k) {
        const double eta = 0.05 * k;
        const PreparationReport r = prepare({chi}, make_config(eta, loss, 0.0));
        CHECK(r.fidelity <= prev_f);
        CHECK(r.herald_probability >= prev_h);
        prev_f = r.fidelity;
        prev_h = r.herald_probability;
      }
    }
  }
}

TEST_CASE("tightening the tolerance brackets the true sums") {
  CounterRng rng(23, 0);
  for (int trial = 0; trial < 40; ++trial) {
    const double chi = 0.1 + 0.8 * rng.uniform();
    const TwoPortConfig cfg = make_config(0.05 + 0.95 * rng.uniform(), rng.uniform(), 1e-3);
    const ConditionalState loose = conditional_state({chi}, cfg, 1e-4);
    const ConditionalState tight = conditional_state({chi}, cfg, 1e-15);
    // more terms never shrink the trace, and the gain stays under the bound
    CHECK(tight.trace() >= loose.trace());
    CHECK(tight.trace() <= loose.trace() + loose.tail_bound * (1.0 + 1e-12));
    // fidelity moves by at most tail_bound / trace
    const double f_loose = loose.weights[1] / loose.trace();
    const double f_tight = tight.weights[1] / tight.trace();
    CHECK(std::abs(f_tight - f_loose) <=
          loose.tail_bound / loose.trace() * (1.0 + 1e-12) + 1e-15);
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(pair_number_weights({1.0}, 3), InvalidParameterError);
  CHECK_THROWS_AS(pair_number_weights({0.5}, -1), InvalidParameterError);
  CHECK_THROWS_AS(conditional_state({0.5}, make_config(0.5, 0, 0), 0.0),
                  InvalidParameterError);
  CHECK_THROWS_AS(prepare({std::nan("")}, make_config(0.5, 0, 0)), InvalidParameterError);
}
