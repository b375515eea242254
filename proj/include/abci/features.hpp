#pragma once

#include "abci/types.hpp"

namespace abci {

// sigma_d / sigma_x with first differences as the derivative estimate.
// Dimensionless (no sample-rate scaling). Throws on constant signals.
double hjorth_mobility(const std::vector<double>& signal);

// (sigma_dd / sigma_d) / (sigma_d / sigma_x); 1 for a pure sine.
double hjorth_complexity(const std::vector<double>& signal);

// Normalized Shannon entropy (base 2) of the PSD restricted to
// [low_hz, high_hz]; in [0,1], 1 for a flat spectrum.
double spectral_entropy(const Spectrum& spectrum, double low_hz = 4.0, double high_hz = 45.0);

enum class AsymmetryForm { log_ratio, normalized };

// log_ratio: ln(R/L). normalized: ln((R-L)/(R+L)), defined only for R > L.
double asymmetry_index(double right_power, double left_power, AsymmetryForm form);

// ln(theta_p / beta_p). Negated by swapping arguments.
double theta_beta_ratio(double theta_power, double beta_power);

}  // namespace abci
