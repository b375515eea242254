#include <doctest.h>

#include "abci/feature_sets.hpp"
#include "abci/features.hpp"
#include "abci/fir.hpp"
#include "abci/pca.hpp"
#include "abci/welch.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

using namespace abci;

namespace {

std::vector<double> sine(double freq_hz, double fs, std::size_t n, double amp = 1.0,
                         double phase = 0.0) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i)
    x[i] = amp * std::sin(2.0 * std::numbers::pi * freq_hz * i / fs + phase);
  return x;
}

std::vector<double> white_noise(std::size_t n, std::uint64_t seed, double sd = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, sd);
  std::vector<double> x(n);
  for (double& v : x) v = dist(rng);
  return x;
}

double variance(const std::vector<double>& x) {
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= x.size();
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  return ss / x.size();
}

double spectrum_total(const Spectrum& sp) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < sp.psd.size(); ++i)
    s += 0.5 * (sp.psd[i] + sp.psd[i + 1]) * sp.resolution_hz;
  return s;
}

double amplitude(const std::vector<double>& x) {
  return std::sqrt(2.0 * variance(x));
}

TrialRecording make_trial(const std::vector<std::string>& labels, std::size_t n, double fs,
                          std::uint64_t seed) {
  TrialRecording t;
  t.trial_id = "t1";
  t.participant_id = "p1";
  t.sample_rate_hz = fs;
  t.channel_labels = labels;
  for (std::size_t c = 0; c < labels.size(); ++c)
    t.samples.push_back(white_noise(n, seed + c));
  return t;
}

}  // namespace

TEST_CASE("bandpass FIR rejects DC and passes the band") {
  const auto kernel = design_bandpass_fir(4.0, 45.0, 128.0, 129);
  double sum = 0.0, peak = 0.0;
  for (double c : kernel.coefficients) {
    sum += c;
    peak = std::max(peak, std::fabs(c));
  }
  CHECK(std::fabs(sum) < 1e-6 * peak);
  CHECK(kernel.coefficients.size() == 129);

  // 20 Hz sits mid-band for the long fs=600 design.
  const auto long_kernel = design_bandpass_fir(4.0, 45.0, 600.0, 901);
  const double gain_db = 20.0 * std::log10(filter_gain_at(long_kernel, 20.0));
  CHECK(gain_db > -1.0);
  CHECK(gain_db < 0.1);
  CHECK(20.0 * std::log10(filter_gain_at(long_kernel, 2.0)) < -20.0);
}

TEST_CASE("bandpass FIR rejects invalid designs") {
  CHECK_THROWS_AS(design_bandpass_fir(45.0, 4.0, 128.0, 129), std::invalid_argument);
  CHECK_THROWS_AS(design_bandpass_fir(4.0, 45.0, 128.0, 128), std::invalid_argument);
  CHECK_THROWS_AS(design_bandpass_fir(4.0, 70.0, 128.0, 129), std::invalid_argument);
}

TEST_CASE("apply_filter passes in-band sines and kills out-of-band") {
  const auto kernel = design_bandpass_fir(4.0, 45.0, 600.0, 901);

  std::vector<double> zeros(4000, 0.0);
  const auto z = apply_filter(zeros, kernel);
  CHECK(z.size() == 4000 - 900);
  for (double v : z) CHECK(v == 0.0);

  const auto in_band = apply_filter(sine(20.0, 600.0, 6000), kernel);
  const double a20 = amplitude(in_band);
  CHECK(a20 > 0.89);
  CHECK(a20 < 1.01);

  const auto stop_band = apply_filter(sine(1.0, 600.0, 6000), kernel);
  CHECK(amplitude(stop_band) < 0.1);

  std::vector<double> too_short(100, 0.0);
  CHECK_THROWS_AS(apply_filter(too_short, kernel), std::invalid_argument);
}

TEST_CASE("welch_psd satisfies Parseval on white noise") {
  const auto x = white_noise(16384, 42);
  const auto sp = welch_psd(x, 128.0, 256, 0.5);
  const double total = spectrum_total(sp);
  const double var = variance(x);
  CHECK(total / var > 0.95);
  CHECK(total / var < 1.05);
}

TEST_CASE("welch_psd recovers sine power in its band") {
  const auto x = sine(10.0, 128.0, 8192);
  const auto sp = welch_psd(x, 128.0, 256, 0.5);
  const double alpha_power = band_power(sp, standard_band(BandName::alpha));
  CHECK(alpha_power > 0.45);
  CHECK(alpha_power < 0.55);
}

TEST_CASE("welch_psd of a constant signal is zero") {
  std::vector<double> x(1024, 3.7);
  const auto sp = welch_psd(x, 128.0, 256, 0.5);
  for (double p : sp.psd) CHECK(p < 1e-12);
}

TEST_CASE("welch_psd rejects bad segmentation") {
  std::vector<double> x(100, 0.0);
  CHECK_THROWS_AS(welch_psd(x, 128.0, 256, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(welch_psd(x, 128.0, 64, 1.0), std::invalid_argument);
}

TEST_CASE("welch_psd is scale-equivariant") {
  const auto x = white_noise(4096, 7);
  std::vector<double> scaled(x);
  for (double& v : scaled) v *= 3.5;
  const auto a = welch_psd(x, 128.0, 256, 0.5);
  const auto b = welch_psd(scaled, 128.0, 256, 0.5);
  for (std::size_t i = 0; i < a.psd.size(); ++i)
    CHECK(b.psd[i] == doctest::Approx(12.25 * a.psd[i]).epsilon(1e-9));
}

TEST_CASE("band_power integrates flat spectra exactly") {
  Spectrum sp;
  sp.resolution_hz = 0.5;
  for (int i = 0; i <= 128; ++i) {
    sp.frequencies_hz.push_back(i * 0.5);
    sp.psd.push_back(1.0);
  }
  CHECK(band_power(sp, standard_band(BandName::theta)) == doctest::Approx(4.0));
  for (double& p : sp.psd) p = 2.0;
  CHECK(band_power(sp, standard_band(BandName::beta2)) == doctest::Approx(24.0));
  for (double& p : sp.psd) p = 0.0;
  CHECK(band_power(sp, standard_band(BandName::alpha)) == doctest::Approx(0.0));
  CHECK_THROWS_AS(band_power(sp, FrequencyBand{BandName::gamma, 31.0, 100.0}),
                  std::invalid_argument);
}

TEST_CASE("band_power is additive over adjacent bands") {
  const auto x = white_noise(8192, 11);
  const auto sp = welch_psd(x, 128.0, 256, 0.5);
  const double theta = band_power(sp, {BandName::theta, 4.0, 8.0});
  const double alpha = band_power(sp, {BandName::alpha, 8.0, 12.0});
  const double both = band_power(sp, {BandName::broadband, 4.0, 12.0});
  CHECK(both == doctest::Approx(theta + alpha).epsilon(1e-9));
}

TEST_CASE("hjorth_mobility matches the analytic sine value") {
  const auto x = sine(2.0, 1000.0, 10000);
  const double expected = 2.0 * std::sin(std::numbers::pi * 2.0 / 1000.0);
  CHECK(hjorth_mobility(x) == doctest::Approx(expected).epsilon(1e-2));
  CHECK(std::fabs(hjorth_mobility(x) - expected) < 1e-4);
}

TEST_CASE("hjorth_mobility of Nyquist-rate alternation is 2") {
  std::vector<double> x;
  for (int i = 0; i < 101; ++i) x.push_back(i % 2 == 0 ? 1.0 : -1.0);
  CHECK(hjorth_mobility(x) == doctest::Approx(2.0).epsilon(1e-3));
  std::vector<double> constant(100, 5.0);
  CHECK_THROWS_AS(hjorth_mobility(constant), std::invalid_argument);
}

TEST_CASE("hjorth_complexity is 1 for a pure sine and > 1 for noise") {
  const auto pure = sine(1.0, 1000.0, 20000);
  CHECK(hjorth_complexity(pure) == doctest::Approx(1.0).epsilon(0.01));
  // difference-operator oracle: for white noise var(d)=2, var(dd)=6
  // => complexity = sqrt(6/2)/sqrt(2/1) = sqrt(1.5) > 1
  const auto noise = white_noise(100000, 3);
  const double c = hjorth_complexity(noise);
  CHECK(c > 1.0);
  CHECK(c == doctest::Approx(std::sqrt(1.5)).epsilon(0.02));
  std::vector<double> constant(100, 1.0);
  CHECK_THROWS_AS(hjorth_complexity(constant), std::invalid_argument);
}

TEST_CASE("hjorth parameters are scale-invariant") {
  const auto x = white_noise(5000, 9);
  std::vector<double> scaled(x);
  for (double& v : scaled) v *= 17.0;
  CHECK(hjorth_mobility(scaled) == doctest::Approx(hjorth_mobility(x)).epsilon(1e-12));
  CHECK(hjorth_complexity(scaled) == doctest::Approx(hjorth_complexity(x)).epsilon(1e-12));
}

TEST_CASE("spectral_entropy spans [0,1] with the expected extremes") {
  Spectrum flat;
  flat.resolution_hz = 1.0;
  for (int i = 0; i <= 64; ++i) {
    flat.frequencies_hz.push_back(i);
    flat.psd.push_back(1.0);
  }
  CHECK(spectral_entropy(flat) == doctest::Approx(1.0));

  Spectrum delta = flat;
  for (double& p : delta.psd) p = 0.0;
  delta.psd[10] = 5.0;
  CHECK(spectral_entropy(delta) == doctest::Approx(0.0));

  // two equal bins among four
  Spectrum four;
  four.resolution_hz = 1.0;
  for (int i = 0; i < 4; ++i) {
    four.frequencies_hz.push_back(i);
    four.psd.push_back(i < 2 ? 1.0 : 0.0);
  }
  CHECK(spectral_entropy(four, 0.0, 3.0) == doctest::Approx(0.5));

  Spectrum zero = flat;
  for (double& p : zero.psd) p = 0.0;
  CHECK_THROWS_AS(spectral_entropy(zero), std::invalid_argument);
}

TEST_CASE("spectral_entropy is scale-invariant") {
  const auto x = white_noise(4096, 21);
  auto sp = welch_psd(x, 128.0, 256, 0.5);
  const double h = spectral_entropy(sp);
  for (double& p : sp.psd) p *= 1e6;
  CHECK(spectral_entropy(sp) == doctest::Approx(h).epsilon(1e-12));
}

TEST_CASE("asymmetry_index") {
  CHECK(asymmetry_index(3.0, 3.0, AsymmetryForm::log_ratio) == doctest::Approx(0.0));
  CHECK(asymmetry_index(2.0, 1.0, AsymmetryForm::log_ratio) ==
        doctest::Approx(std::log(2.0)));
  CHECK(asymmetry_index(2.0, 1.0, AsymmetryForm::log_ratio) ==
        doctest::Approx(-asymmetry_index(1.0, 2.0, AsymmetryForm::log_ratio)));
  CHECK_THROWS_AS(asymmetry_index(1.0, 2.0, AsymmetryForm::normalized), std::invalid_argument);
  CHECK_THROWS_AS(asymmetry_index(0.0, 1.0, AsymmetryForm::log_ratio), std::invalid_argument);
}

TEST_CASE("theta_beta_ratio") {
  CHECK(theta_beta_ratio(2.5, 2.5) == doctest::Approx(0.0));
  CHECK(theta_beta_ratio(std::numbers::e * 2.0, 2.0) == doctest::Approx(1.0));
  CHECK(theta_beta_ratio(3.0, 5.0) == doctest::Approx(-theta_beta_ratio(5.0, 3.0)));
  CHECK_THROWS_AS(theta_beta_ratio(0.0, 1.0), std::invalid_argument);
}

TEST_CASE("pca_fit_transform keeps only what the variance needs") {
  // rank-1 data on a 3-D line
  FeatureMatrix line;
  line.column_names = {"a", "b", "c"};
  for (int i = 0; i < 20; ++i)
    line.rows.push_back({1.0 * i, 2.0 * i, -0.5 * i});
  auto [proj, reduced] = pca_fit_transform(line, 0.98);
  CHECK(proj.output_dim() == 1);
  CHECK(reduced.column_count() == 1);

  // isotropic 2-D forces both components at 0.98
  FeatureMatrix iso;
  iso.column_names = {"x", "y"};
  std::mt19937_64 rng(5);
  std::normal_distribution<double> dist;
  for (int i = 0; i < 500; ++i) iso.rows.push_back({dist(rng), dist(rng)});
  auto [proj2, reduced2] = pca_fit_transform(iso, 0.98);
  CHECK(proj2.output_dim() == 2);

  FeatureMatrix single;
  single.column_names = {"x"};
  single.rows.push_back({1.0});
  CHECK_THROWS_AS(pca_fit_transform(single, 0.98), std::invalid_argument);
}

TEST_CASE("pca components are orthonormal and full-rank reconstruction is exact") {
  FeatureMatrix m;
  m.column_names = {"a", "b", "c"};
  std::mt19937_64 rng(17);
  std::normal_distribution<double> dist;
  for (int i = 0; i < 100; ++i) {
    const double u = dist(rng), v = dist(rng), w = dist(rng);
    m.rows.push_back({u + 0.2 * v, 3.0 * v, w - u});
  }
  auto [proj, reduced] = pca_fit_transform(m, 1.0);
  REQUIRE(proj.output_dim() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      double dot = 0.0;
      for (std::size_t k = 0; k < 3; ++k) dot += proj.components[i][k] * proj.components[j][k];
      CHECK(dot == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-8));
    }
  }
  CHECK(proj.explained_variance[0] >= proj.explained_variance[1]);
  CHECK(proj.explained_variance[1] >= proj.explained_variance[2]);

  // back-projection
  for (std::size_t r = 0; r < m.rows.size(); ++r) {
    std::vector<double> rec(3, 0.0);
    for (std::size_t c = 0; c < 3; ++c)
      for (std::size_t j = 0; j < 3; ++j)
        rec[j] += reduced.rows[r][c] * proj.components[c][j];
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(rec[j] + proj.mean[j] == doctest::Approx(m.rows[r][j]).epsilon(1e-8));
  }
}

TEST_CASE("assemble_feature_set produces the registry layout") {
  FeatureConfig cfg;
  const std::vector<std::string> montage = {"F3", "F4", "F7", "F8", "Cz", "Pz"};
  const auto trial = make_trial(montage, 2048, 128.0, 1);

  const auto theta = assemble_feature_set(trial, FeatureSet::ThetaP, cfg);
  CHECK(theta.values.size() == montage.size());
  CHECK(theta.names[0] == "ThetaP:F3");

  const auto tbr_c = assemble_feature_set(trial, FeatureSet::TBR_C, cfg);
  CHECK(tbr_c.values.size() == 8);  // TBR1 + TBR2 over 4 frontal channels

  const auto fai = assemble_feature_set(trial, FeatureSet::FAI, cfg);
  CHECK(fai.values.size() == 1);

  const auto hjorth = assemble_feature_set(trial, FeatureSet::Hjorth, cfg);
  CHECK(hjorth.values.size() == 2 * montage.size());

  const auto psd = assemble_feature_set(trial, FeatureSet::PSD, cfg);
  CHECK(psd.values.size() == 41 * montage.size());

  // missing F4
  const auto broken = make_trial({"F3", "F7", "F8"}, 2048, 128.0, 2);
  CHECK_THROWS_AS(assemble_feature_set(broken, FeatureSet::FAI, cfg), std::invalid_argument);

  // Fp pair joins automatically
  const auto with_fp = make_trial({"F3", "F4", "F7", "F8", "Fp1", "Fp2"}, 2048, 128.0, 3);
  const auto pasi = assemble_feature_set(with_fp, FeatureSet::PASI, cfg);
  CHECK(pasi.values.size() == 3);
}

TEST_CASE("assemble_feature_set is deterministic") {
  FeatureConfig cfg;
  const auto trial = make_trial({"F3", "F4", "F7", "F8"}, 1024, 128.0, 4);
  const auto a = assemble_feature_set(trial, FeatureSet::All, cfg);
  const auto b = assemble_feature_set(trial, FeatureSet::All, cfg);
  REQUIRE(a.values.size() == b.values.size());
  for (std::size_t i = 0; i < a.values.size(); ++i) CHECK(a.values[i] == b.values[i]);
  CHECK(a.names == b.names);
}

TEST_CASE("gamma band truncation is noted when the spectrum ends early") {
  FeatureConfig cfg;
  // fs = 100 Hz -> Nyquist 50 < 63
  const auto trial = make_trial({"F3", "F4"}, 2048, 100.0, 5);
  const auto gamma = assemble_feature_set(trial, FeatureSet::GammaP, cfg);
  CHECK(gamma.values.size() == 2);
  CHECK(!gamma.notes.empty());
}
