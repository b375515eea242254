#pragma once

namespace abci {

struct BetaParams {
  double a;
  double b;
};

struct CredibleInterval {
  double low;
  double high;
  double level;  // e.g. 0.95
};

// Density at x in [0,1], evaluated in log space.
double beta_pdf(const BetaParams& params, double x);

// Regularized incomplete beta I_x(a,b) via the Lentz continued fraction.
double beta_cdf(const BetaParams& params, double x);

// Monotone inverse CDF, |CDF(x) - p| < 1e-10.
double beta_inv_cdf(const BetaParams& params, double p);

// Equal-tailed (1-alpha) interval of Beta(c+1, n-c+1), the posterior of an
// accuracy with c successes in n trials under a flat prior.
CredibleInterval single_class_credible_interval(long c, long n, double alpha);

}  // namespace abci
