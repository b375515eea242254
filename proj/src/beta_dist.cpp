#include "abci/beta_dist.hpp"

#include <cmath>
#include <stdexcept>

namespace abci {

namespace {

void check_params(const BetaParams& p) {
  if (!(p.a > 0.0) || !(p.b > 0.0))
    throw std::invalid_argument("beta distribution: a and b must be > 0");
}

double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

// Continued fraction for the incomplete beta (modified Lentz).
double beta_cf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 3e-16;
  constexpr double kTiny = 1e-300;

  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace

double beta_pdf(const BetaParams& params, double x) {
  check_params(params);
  if (x < 0.0 || x > 1.0) throw std::invalid_argument("beta_pdf: x outside [0,1]");
  if (x == 0.0) return params.a < 1.0   ? HUGE_VAL
                       : params.a == 1.0 ? params.b
                                         : 0.0;
  if (x == 1.0) return params.b < 1.0   ? HUGE_VAL
                       : params.b == 1.0 ? params.a
                                         : 0.0;
  const double logp = (params.a - 1.0) * std::log(x) + (params.b - 1.0) * std::log1p(-x) -
                      log_beta(params.a, params.b);
  return std::exp(logp);
}

double beta_cdf(const BetaParams& params, double x) {
  check_params(params);
  if (x < 0.0 || x > 1.0) throw std::invalid_argument("beta_cdf: x outside [0,1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double a = params.a, b = params.b;
  const double front =
      std::exp(a * std::log(x) + b * std::log1p(-x) - log_beta(a, b));
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(a, b, x) / a;
  return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double beta_inv_cdf(const BetaParams& params, double p) {
  check_params(params);
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("beta_inv_cdf: p outside [0,1]");
  if (p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;

  double lo = 0.0, hi = 1.0;
  double x = params.a / (params.a + params.b);
  for (int iter = 0; iter < 200; ++iter) {
    const double f = beta_cdf(params, x) - p;
    if (std::fabs(f) < 1e-12) break;
    if (f > 0.0) hi = x;
    else lo = x;
    const double pdf = beta_pdf(params, x);
    double next = pdf > 0.0 && std::isfinite(pdf) ? x - f / pdf : (lo + hi) / 2.0;
    if (!(next > lo && next < hi)) next = (lo + hi) / 2.0;  // Newton left the bracket
    x = next;
    if (hi - lo < 1e-15) break;
  }
  return x;
}

CredibleInterval single_class_credible_interval(long c, long n, double alpha) {
  if (c < 0 || n < 0 || c > n)
    throw std::invalid_argument("single_class_credible_interval: need 0 <= c <= n");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("single_class_credible_interval: alpha outside (0,1)");
  const BetaParams post{static_cast<double>(c) + 1.0, static_cast<double>(n - c) + 1.0};
  return {beta_inv_cdf(post, alpha / 2.0), beta_inv_cdf(post, 1.0 - alpha / 2.0), 1.0 - alpha};
}

}  // namespace abci
