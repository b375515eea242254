#include "abci/fir.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace abci {

namespace {

// Ideal lowpass impulse response at normalized cutoff fc (cycles/sample),
// centered at (order-1)/2.
double sinc_lowpass(double fc, int n, int center) {
  const double m = n - center;
  if (m == 0.0) return 2.0 * fc;
  const double x = 2.0 * std::numbers::pi * fc * m;
  return std::sin(x) / (std::numbers::pi * m);
}

}  // namespace

FilterKernel design_bandpass_fir(double low_hz, double high_hz,
                                 double sample_rate_hz, int order) {
  if (sample_rate_hz <= 0.0)
    throw std::invalid_argument("design_bandpass_fir: sample rate must be > 0");
  if (!(0.0 < low_hz && low_hz < high_hz && high_hz < sample_rate_hz / 2.0))
    throw std::invalid_argument("design_bandpass_fir: invalid band edges");
  if (order < 11 || order % 2 == 0)
    throw std::invalid_argument("design_bandpass_fir: order must be odd and >= 11");

  const int center = (order - 1) / 2;
  const double fl = low_hz / sample_rate_hz;
  const double fh = high_hz / sample_rate_hz;

  FilterKernel kernel;
  kernel.design = {low_hz, high_hz, sample_rate_hz, order};
  kernel.coefficients.resize(static_cast<std::size_t>(order));
  for (int n = 0; n < order; ++n) {
    const double hamming =
        0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * n / (order - 1));
    kernel.coefficients[n] = (sinc_lowpass(fh, n, center) - sinc_lowpass(fl, n, center)) * hamming;
  }

  // Remove residual DC leakage so the bandpass rejects constants exactly.
  double sum = 0.0;
  for (double c : kernel.coefficients) sum += c;
  const double correction = sum / order;
  for (double& c : kernel.coefficients) c -= correction;
  return kernel;
}

double filter_gain_at(const FilterKernel& kernel, double freq_hz) {
  const double omega = 2.0 * std::numbers::pi * freq_hz / kernel.design.sample_rate_hz;
  double re = 0.0, im = 0.0;
  for (std::size_t n = 0; n < kernel.coefficients.size(); ++n) {
    re += kernel.coefficients[n] * std::cos(omega * n);
    im -= kernel.coefficients[n] * std::sin(omega * n);
  }
  return std::hypot(re, im);
}

std::vector<double> apply_filter(const std::vector<double>& signal, const FilterKernel& kernel) {
  const std::size_t taps = kernel.coefficients.size();
  if (signal.size() <= taps)
    throw std::invalid_argument("apply_filter: signal shorter than kernel");
  const std::size_t out_len = signal.size() - taps + 1;
  std::vector<double> out(out_len, 0.0);
  for (std::size_t i = 0; i < out_len; ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < taps; ++k)
      acc += kernel.coefficients[k] * signal[i + taps - 1 - k];
    out[i] = acc;
  }
  return out;
}

TrialRecording apply_filter(const TrialRecording& trial, const FilterKernel& kernel) {
  TrialRecording out = trial;
  for (std::size_t c = 0; c < trial.samples.size(); ++c)
    out.samples[c] = apply_filter(trial.samples[c], kernel);
  return out;
}

}  // namespace abci
