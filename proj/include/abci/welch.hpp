#pragma once

#include "abci/types.hpp"

namespace abci {

enum class WindowType { hamming };

struct WelchConfig {
  std::size_t segment_len = 0;  // 0 = auto: min(256, floor(n/4))
  double overlap_fraction = 0.5;
  WindowType window = WindowType::hamming;
};

// Default segment length: min(256, floor(n/4)), never below 8.
std::size_t default_segment_len(std::size_t n);

// One-sided Welch PSD. Segments are mean-detrended and Hamming-windowed;
// scaling satisfies sum(psd)*df ~= signal variance.
Spectrum welch_psd(const std::vector<double>& signal, double sample_rate_hz,
                   std::size_t segment_len, double overlap_fraction,
                   WindowType window = WindowType::hamming);

Spectrum welch_psd(const std::vector<double>& signal, double sample_rate_hz,
                   const WelchConfig& config);

// Trapezoidal integral of the PSD over [band.low_hz, band.high_hz], with
// linear interpolation at the band edges.
double band_power(const Spectrum& spectrum, const FrequencyBand& band);

}  // namespace abci
