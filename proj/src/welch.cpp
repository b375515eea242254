#include "abci/welch.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include <fftw3.h>

namespace abci {

namespace {

std::mutex& fftw_plan_mutex() {
  static std::mutex m;
  return m;
}

// |rFFT|^2 of one segment. FFTW plan creation is serialized; execution is not.
void periodogram_accumulate(const std::vector<double>& seg, std::vector<double>& acc) {
  const std::size_t n = seg.size();
  const std::size_t nbins = n / 2 + 1;
  std::vector<double> in(seg);
  std::vector<std::complex<double>> out(nbins);

  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_plan_mutex());
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(),
                                reinterpret_cast<fftw_complex*>(out.data()),
                                FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(fftw_plan_mutex());
    fftw_destroy_plan(plan);
  }
  for (std::size_t k = 0; k < nbins; ++k) acc[k] += std::norm(out[k]);
}

}  // namespace

std::size_t default_segment_len(std::size_t n) {
  return std::max<std::size_t>(8, std::min<std::size_t>(256, n / 4));
}

Spectrum welch_psd(const std::vector<double>& signal, double sample_rate_hz,
                   std::size_t segment_len, double overlap_fraction, WindowType) {
  if (sample_rate_hz <= 0.0) throw std::invalid_argument("welch_psd: sample rate must be > 0");
  if (segment_len < 2 || segment_len > signal.size())
    throw std::invalid_argument("welch_psd: segment longer than signal");
  if (!(overlap_fraction >= 0.0 && overlap_fraction < 1.0))
    throw std::invalid_argument("welch_psd: overlap must be in [0,1)");

  const std::size_t n = segment_len;
  std::vector<double> window(n);
  double window_power = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    window[i] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * i / (n - 1));
    window_power += window[i] * window[i];
  }

  const std::size_t step =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(n * (1.0 - overlap_fraction))));
  const std::size_t nseg = 1 + (signal.size() - n) / step;

  const std::size_t nbins = n / 2 + 1;
  std::vector<double> acc(nbins, 0.0);
  std::vector<double> seg(n);
  for (std::size_t s = 0; s < nseg; ++s) {
    const std::size_t start = s * step;
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += signal[start + i];
    mean /= static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) seg[i] = (signal[start + i] - mean) * window[i];
    periodogram_accumulate(seg, acc);
  }

  Spectrum sp;
  sp.resolution_hz = sample_rate_hz / static_cast<double>(n);
  sp.frequencies_hz.resize(nbins);
  sp.psd.resize(nbins);
  const double scale = 1.0 / (static_cast<double>(nseg) * sample_rate_hz * window_power);
  for (std::size_t k = 0; k < nbins; ++k) {
    sp.frequencies_hz[k] = static_cast<double>(k) * sp.resolution_hz;
    double p = acc[k] * scale;
    const bool interior = k > 0 && (n % 2 == 1 || k < nbins - 1);
    if (interior) p *= 2.0;  // one-sided
    sp.psd[k] = p;
  }
  return sp;
}

Spectrum welch_psd(const std::vector<double>& signal, double sample_rate_hz,
                   const WelchConfig& config) {
  std::size_t seg = config.segment_len == 0 ? default_segment_len(signal.size())
                                            : config.segment_len;
  seg = std::max<std::size_t>(2, std::min(seg, signal.size()));
  return welch_psd(signal, sample_rate_hz, seg, config.overlap_fraction, config.window);
}

double band_power(const Spectrum& spectrum, const FrequencyBand& band) {
  if (spectrum.frequencies_hz.size() < 2)
    throw std::invalid_argument("band_power: spectrum too short");
  if (!(band.low_hz < band.high_hz) || band.low_hz < 0.0)
    throw std::invalid_argument("band_power: invalid band");
  if (band.high_hz > spectrum.max_frequency() + 1e-12 || band.low_hz >= spectrum.max_frequency())
    throw std::invalid_argument("band_power: band exceeds spectrum coverage");

  const double df = spectrum.resolution_hz;
  auto value_at = [&](double f) {
    const double pos = f / df;
    const std::size_t i = std::min(static_cast<std::size_t>(pos), spectrum.psd.size() - 2);
    const double t = pos - static_cast<double>(i);
    return spectrum.psd[i] * (1.0 - t) + spectrum.psd[i + 1] * t;
  };

  // piecewise-linear integral over [low, high]
  double total = 0.0;
  double f = band.low_hz;
  double v = value_at(f);
  while (f < band.high_hz - 1e-12) {
    const std::size_t next_idx = static_cast<std::size_t>(std::floor(f / df + 1e-12)) + 1;
    const double f_next = std::min(static_cast<double>(next_idx) * df, band.high_hz);
    const double v_next = value_at(f_next);
    total += 0.5 * (v + v_next) * (f_next - f);
    f = f_next;
    v = v_next;
  }
  return total;
}

}  // namespace abci
