#include <doctest.h>

#include "abci/beta_dist.hpp"
#include "abci/posterior.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

using namespace abci;

namespace {

// Monte Carlo oracle for the balanced-accuracy posterior: sample each
// per-class recall from its Beta posterior and average.
std::vector<double> mc_balanced_accuracy(const ConfusionMatrix& cm, std::size_t n_draws,
                                         std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::size_t m = cm.class_count();
  std::vector<BetaParams> params;
  for (std::size_t k = 0; k < m; ++k) {
    const double c = static_cast<double>(cm.counts[k][k]);
    const double n = static_cast<double>(cm.truth_count(k));
    params.push_back({c + 1.0, n - c + 1.0});
  }
  std::vector<double> draws(n_draws);
  for (auto& d : draws) {
    double sum = 0.0;
    for (const auto& p : params) {
      std::gamma_distribution<double> ga(p.a, 1.0), gb(p.b, 1.0);
      const double x = ga(rng);
      sum += x / (x + gb(rng));
    }
    d = sum / m;
  }
  return draws;
}

double quantile(std::vector<double> v, double q) {
  const std::size_t idx = static_cast<std::size_t>(q * (v.size() - 1));
  std::nth_element(v.begin(), v.begin() + idx, v.end());
  return v[idx];
}

}  // namespace

TEST_CASE("beta_pdf closed-form checks") {
  CHECK(beta_pdf({1.0, 1.0}, 0.3) == doctest::Approx(1.0));
  CHECK(beta_pdf({1.0, 1.0}, 0.9) == doctest::Approx(1.0));
  CHECK(beta_pdf({2.0, 2.0}, 0.5) == doctest::Approx(1.5));
  CHECK(beta_pdf({2.0, 1.0}, 0.25) == doctest::Approx(0.5));
  CHECK(beta_pdf({3.0, 2.0}, 0.0) == doctest::Approx(0.0));
  CHECK_THROWS_AS(beta_pdf({2.0, 2.0}, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(beta_pdf({0.0, 2.0}, 0.5), std::invalid_argument);
}

TEST_CASE("beta_cdf closed-form and symmetry checks") {
  CHECK(beta_cdf({1.0, 1.0}, 0.37) == doctest::Approx(0.37));
  // Beta(2,2): CDF = 3x^2 - 2x^3
  for (double x : {0.1, 0.25, 0.5, 0.8}) {
    CHECK(beta_cdf({2.0, 2.0}, x) == doctest::Approx(3 * x * x - 2 * x * x * x).epsilon(1e-10));
  }
  // symmetry I_x(a,b) = 1 - I_{1-x}(b,a)
  for (double x : {0.05, 0.3, 0.6, 0.95}) {
    CHECK(beta_cdf({7.5, 2.25}, x) ==
          doctest::Approx(1.0 - beta_cdf({2.25, 7.5}, 1.0 - x)).epsilon(1e-10));
  }
  CHECK(beta_cdf({3.0, 4.0}, 0.0) == 0.0);
  CHECK(beta_cdf({3.0, 4.0}, 1.0) == 1.0);
}

TEST_CASE("beta_inv_cdf inverts the CDF") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.001, 0.999);
  for (int it = 0; it < 200; ++it) {
    const BetaParams p{0.5 + 20.0 * u(rng), 0.5 + 20.0 * u(rng)};
    const double prob = u(rng);
    const double x = beta_inv_cdf(p, prob);
    CHECK(std::fabs(beta_cdf(p, x) - prob) < 1e-9);
  }
  // median of a symmetric Beta is 1/2
  CHECK(beta_inv_cdf({51.0, 51.0}, 0.5) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(beta_inv_cdf({51.0, 51.0}, 0.975) == doctest::Approx(0.5963569325).epsilon(1e-7));
  CHECK_THROWS_AS(beta_inv_cdf({2.0, 2.0}, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(beta_inv_cdf({2.0, 2.0}, 1.1), std::invalid_argument);
}

TEST_CASE("single-class credible intervals") {
  // zero data: flat posterior
  const auto flat = single_class_credible_interval(0, 0, 0.05);
  CHECK(flat.low == doctest::Approx(0.025).epsilon(1e-8));
  CHECK(flat.high == doctest::Approx(0.975).epsilon(1e-8));
  CHECK(flat.level == doctest::Approx(0.95));

  // 50/100 -> Beta(51,51)
  const auto mid = single_class_credible_interval(50, 100, 0.05);
  CHECK(mid.low == doctest::Approx(0.4036430675).epsilon(1e-7));
  CHECK(mid.high == doctest::Approx(0.5963569325).epsilon(1e-7));

  CHECK_THROWS_AS(single_class_credible_interval(5, 4, 0.05), std::invalid_argument);
  CHECK_THROWS_AS(single_class_credible_interval(-1, 4, 0.05), std::invalid_argument);
  CHECK_THROWS_AS(single_class_credible_interval(2, 4, 0.0), std::invalid_argument);
}

TEST_CASE("make_posterior normalizes and pins the CDF") {
  std::vector<double> raw(kDefaultPosteriorGrid, 0.0);
  for (std::size_t i = 0; i < raw.size(); ++i) raw[i] = 2.0 + i * 0.001;
  const auto post = make_posterior(raw);
  CHECK(post.grid.front() == 0.0);
  CHECK(post.grid.back() == 1.0);
  CHECK(post.cdf.front() == 0.0);
  CHECK(post.cdf.back() == doctest::Approx(1.0).epsilon(1e-12));
  double integral = 0.0;
  for (std::size_t i = 0; i + 1 < post.density.size(); ++i)
    integral += 0.5 * (post.density[i] + post.density[i + 1]) * post.grid_spacing();
  CHECK(integral == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("balanced accuracy posterior mean matches the analytic Beta means") {
  // posterior mean of bAcc = average of per-class Beta means (linearity)
  const auto check_mean = [](const ConfusionMatrix& cm) {
    const auto post = balanced_accuracy_posterior(cm);
    double expected = 0.0;
    for (std::size_t k = 0; k < cm.class_count(); ++k) {
      const double c = static_cast<double>(cm.counts[k][k]);
      const double n = static_cast<double>(cm.truth_count(k));
      expected += (c + 1.0) / (n + 2.0);
    }
    expected /= cm.class_count();
    CHECK(post.mean() == doctest::Approx(expected).epsilon(2e-3));
  };
  check_mean(make_confusion({{1, 0}, {0, 1}}));
  check_mean(make_confusion({{8, 3}, {2, 7}}));
  check_mean(make_confusion({{12, 1, 2}, {3, 14, 1}, {0, 5, 17}}));
}

TEST_CASE("single-trial-per-class posterior") {
  // [[1,0],[0,1]]: both recalls ~ Beta(2,1), mean of average = 2/3
  const auto post = balanced_accuracy_posterior(make_confusion({{1, 0}, {0, 1}}));
  CHECK(post.mean() == doctest::Approx(2.0 / 3.0).epsilon(2e-3));
  // density of (U1+U2)/2 with Ui ~ Beta(2,1) is increasing then peaked at 1
  CHECK(post.mode() > 0.5);
}

TEST_CASE("posterior matches a Monte Carlo oracle") {
  const auto cm = make_confusion({{40, 12}, {10, 38}});
  const auto post = balanced_accuracy_posterior(cm);
  auto draws = mc_balanced_accuracy(cm, 400000, 99);

  double mc_mean = 0.0;
  for (double d : draws) mc_mean += d;
  mc_mean /= draws.size();
  CHECK(post.mean() == doctest::Approx(mc_mean).epsilon(3e-3));

  const auto ci = credible_interval(post, 0.05);
  CHECK(ci.low == doctest::Approx(quantile(draws, 0.025)).epsilon(0.01));
  CHECK(ci.high == doctest::Approx(quantile(draws, 0.975)).epsilon(0.01));

  const double p_above = probability_above(post, 0.5);
  double mc_above = 0.0;
  for (double d : draws) mc_above += d > 0.5 ? 1.0 : 0.0;
  mc_above /= draws.size();
  CHECK(p_above == doctest::Approx(mc_above).epsilon(0.02));
}

TEST_CASE("posterior with one huge class approaches the small-class Beta") {
  // class 0 recall is pinned at ~0.9 with tiny variance, so the bAcc
  // posterior is the class-1 Beta shifted/scaled by 1/2.
  const auto cm = make_confusion({{90000, 3}, {10000, 7}});
  const auto post = balanced_accuracy_posterior(cm);
  const BetaParams p1{8.0, 4.0};  // 7 of 10
  const double beta_mean = 8.0 / 12.0;
  CHECK(post.mean() == doctest::Approx(0.5 * (0.9 + beta_mean)).epsilon(2e-3));
  // quantiles map through x -> (0.9 + x)/2
  const auto ci = credible_interval(post, 0.05);
  CHECK(ci.low == doctest::Approx(0.5 * (0.9 + beta_inv_cdf(p1, 0.025))).epsilon(5e-3));
  CHECK(ci.high == doctest::Approx(0.5 * (0.9 + beta_inv_cdf(p1, 0.975))).epsilon(5e-3));
}

TEST_CASE("posterior is stable under grid refinement") {
  const auto cm = make_confusion({{25, 6}, {5, 24}});
  const auto coarse = balanced_accuracy_posterior(cm, 1001);
  const auto fine = balanced_accuracy_posterior(cm, 4001);
  CHECK(coarse.mean() == doctest::Approx(fine.mean()).epsilon(1e-3));
  const auto ci_c = credible_interval(coarse, 0.05);
  const auto ci_f = credible_interval(fine, 0.05);
  CHECK(std::fabs(ci_c.low - ci_f.low) < 1e-3);
  CHECK(std::fabs(ci_c.high - ci_f.high) < 1e-3);
}

TEST_CASE("credible_interval on the uniform posterior") {
  const auto post = make_posterior(std::vector<double>(2001, 1.0));
  const auto ci = credible_interval(post, 0.05);
  CHECK(ci.low == doctest::Approx(0.025).epsilon(1e-3));
  CHECK(ci.high == doctest::Approx(0.975).epsilon(1e-3));
  CHECK_THROWS_AS(credible_interval(post, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(credible_interval(post, 1.0), std::invalid_argument);
}

TEST_CASE("probability_above endpoints and monotonicity") {
  const auto post = balanced_accuracy_posterior(make_confusion({{8, 3}, {2, 7}}));
  CHECK(probability_above(post, 0.0) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(probability_above(post, 1.0) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(probability_above(post, 0.4) > probability_above(post, 0.6));
}

TEST_CASE("group proportion posterior") {
  const auto g = group_proportion_posterior(6, 32, 0.05);
  CHECK(g.n_participants == 32);
  CHECK(g.n_above_chance == 6);
  CHECK(g.proportion == doctest::Approx(6.0 / 32.0));
  // Beta(7,27) equal-tailed interval
  CHECK(g.interval.low == doctest::Approx(beta_inv_cdf({7.0, 27.0}, 0.025)).epsilon(1e-8));
  CHECK(g.interval.high == doctest::Approx(beta_inv_cdf({7.0, 27.0}, 0.975)).epsilon(1e-8));
  CHECK(g.interval.low > 0.07);
  CHECK(g.interval.high < 0.37);

  const auto none = group_proportion_posterior(0, 32, 0.05);
  CHECK(none.interval.low < 0.01);
  CHECK_THROWS_AS(group_proportion_posterior(33, 32, 0.05), std::invalid_argument);
  CHECK_THROWS_AS(group_proportion_posterior(-1, 32, 0.05), std::invalid_argument);
  CHECK_THROWS_AS(group_proportion_posterior(3, 0, 0.05), std::invalid_argument);
}

TEST_CASE("two-sample t-test basics") {
  const std::vector<double> a = {1.0, 2.0, 3.0, 4.0};
  const auto same = two_sample_ttest(a, a);
  CHECK(same.t == doctest::Approx(0.0));
  CHECK(same.p == doctest::Approx(1.0));
  CHECK(!same.reject_at_05);

  const std::vector<double> b = {2.0, 3.0, 4.0, 5.5};
  const auto ab = two_sample_ttest(a, b);
  const auto ba = two_sample_ttest(b, a);
  CHECK(ab.t == doctest::Approx(-ba.t));
  CHECK(ab.p == doctest::Approx(ba.p));
  CHECK(ab.p > 0.0);
  CHECK(ab.p < 1.0);
}

TEST_CASE("t-test matches a textbook example") {
  // n1=n2=2: a={1,2}, b={4,5} -> pooled var 0.5, se = sqrt(0.5*(1/2+1/2)) ...
  const std::vector<double> a = {1.0, 2.0}, b = {4.0, 5.0};
  const auto r = two_sample_ttest(a, b);
  // t = (1.5 - 4.5)/sqrt(0.5 * 1) = -3/0.7071 = -4.2426, df=2
  CHECK(r.t == doctest::Approx(-3.0 / std::sqrt(0.5)).epsilon(1e-10));
  // two-tailed p with df=2: p = df/(df+t^2) adjusted -> known value 0.0513
  CHECK(r.p == doctest::Approx(0.05132).epsilon(1e-3));
  CHECK(!r.reject_at_05);
}

TEST_CASE("t-test separates well-separated samples decisively") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> n0(0.0, 1.0), n1(1.0, 1.0);
  std::vector<double> a(1000), b(1000);
  for (double& v : a) v = n0(rng);
  for (double& v : b) v = n1(rng);
  const auto r = two_sample_ttest(a, b);
  CHECK(r.p < 1e-10);
  CHECK(r.reject_at_05);
}

TEST_CASE("t-test degenerate and error cases") {
  const auto r = two_sample_ttest({1.0, 1.0, 1.0}, {1.0, 1.0});
  CHECK(r.degenerate);
  const auto shifted = two_sample_ttest({1.0, 1.0}, {2.0, 2.0});
  CHECK(shifted.degenerate);
  CHECK(shifted.p == doctest::Approx(0.0));
  CHECK_THROWS_AS(two_sample_ttest({1.0}, {1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(two_sample_ttest({}, {1.0, 2.0}), std::invalid_argument);
}
