#pragma once

#include "abci/types.hpp"

namespace abci {

struct FilterDesign {
  double low_hz = 0.0;
  double high_hz = 0.0;
  double sample_rate_hz = 0.0;
  int order = 0;  // tap count, odd
};

struct FilterKernel {
  std::vector<double> coefficients;
  FilterDesign design;
};

// Windowed-sinc (Hamming) linear-phase bandpass. order = tap count, odd >= 11.
FilterKernel design_bandpass_fir(double low_hz, double high_hz,
                                 double sample_rate_hz, int order);

// Magnitude of the kernel's frequency response at freq_hz.
double filter_gain_at(const FilterKernel& kernel, double freq_hz);

// Zero-phase application: forward convolution with the integer group delay
// compensated. Output length = input length - (order - 1).
TrialRecording apply_filter(const TrialRecording& trial, const FilterKernel& kernel);

std::vector<double> apply_filter(const std::vector<double>& signal, const FilterKernel& kernel);

}  // namespace abci
