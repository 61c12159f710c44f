#ifndef LEPAGE_SAMPLERS_HPP
#define LEPAGE_SAMPLERS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "lepage/arrivals.hpp"
#include "lepage/error.hpp"
#include "lepage/spectral.hpp"

namespace lepage {

inline constexpr std::size_t default_max_terms = 1'000'000;

/// Strictly max-stable law MS_d(alpha, sigma) on the cone (R^d_+, max).
class MaxStableLaw {
public:
  MaxStableLaw(double alpha, SpectralMeasure measure)
      : alpha_(alpha), measure_(std::move(measure)) {
    if (!(alpha_ > 0.0) || !std::isfinite(alpha_))
      throw invalid_argument("max-stable alpha must be positive");
    if (measure_.sphere() != Sphere::linf)
      throw invalid_measure("max-stable laws need a measure on the L-inf sphere");
    scales_.reserve(measure_.dim());
    for (std::size_t j = 0; j < measure_.dim(); ++j)
      scales_.push_back(marginal_alpha_moment(measure_, j, alpha_));
  }

  double alpha() const { return alpha_; }
  const SpectralMeasure &measure() const { return measure_; }
  std::size_t dim() const { return measure_.dim(); }

  /// c = sigma(S)^(1/alpha).
  double scale() const { return std::pow(measure_.total_mass(), 1.0 / alpha_); }

  /// Frechet scale constants: P{xi_j <= x} = exp(-scales()[j] x^-alpha).
  std::span<const double> marginal_scales() const { return scales_; }

  std::string description() const {
    return "max_stable(alpha=" + std::to_string(alpha_) + "," +
           describe(measure_) + ")";
  }

private:
  double alpha_;
  SpectralMeasure measure_;
  std::vector<double> scales_;
};

/// alpha-stable law S_d(alpha, sigma, delta) on (R^d, +), 0 < alpha < 2.
class StableLaw {
public:
  StableLaw(double alpha, SpectralMeasure measure,
            std::vector<double> delta = {})
      : alpha_(alpha), measure_(std::move(measure)), delta_(std::move(delta)) {
    if (!(alpha_ > 0.0 && alpha_ < 2.0))
      throw invalid_argument("stable alpha must lie in (0, 2)");
    if (measure_.sphere() != Sphere::euclidean)
      throw invalid_measure("stable laws need a measure on the Euclidean sphere");
    if (delta_.empty())
      delta_.assign(measure_.dim(), 0.0);
    if (delta_.size() != measure_.dim())
      throw invalid_argument("delta has the wrong dimension");
    symmetric_ = check_symmetry(measure_);
    strict_ = check_strict_stability(measure_, alpha_, delta_);
  }

  double alpha() const { return alpha_; }
  const SpectralMeasure &measure() const { return measure_; }
  std::span<const double> delta() const { return delta_; }
  std::size_t dim() const { return measure_.dim(); }
  bool symmetric() const { return symmetric_; }
  bool strictly_stable() const { return strict_; }

  /// The LePage partial sums converge to this law.
  bool lepage_valid() const { return alpha_ < 1.0 || symmetric_; }

  double scale() const { return std::pow(measure_.total_mass(), 1.0 / alpha_); }

  /// Number of series terms used when none is requested.
  std::size_t default_terms() const { return symmetric_ ? 50 : 1000; }

  std::string description() const {
    return "stable(alpha=" + std::to_string(alpha_) + "," +
           describe(measure_) + ")";
  }

private:
  double alpha_;
  SpectralMeasure measure_;
  std::vector<double> delta_;
  bool symmetric_ = false;
  bool strict_ = false;
};

// The series kernels below take the arrival and direction sources as
// callables so that a run can be replayed with prescribed Gamma_i and
// epsilon_i. `next_gamma()` returns the next arrival; `next_direction(out)`
// writes the next direction. They are called in the order
// Gamma_1, eps_1, Gamma_2, eps_2, ...

/// Exact draw of max_i Gamma_i^(-1/alpha) eps_i, scaled by c. Stops as soon
/// as the next radius cannot raise any coordinate of the running maximum
/// (direction coordinates never exceed 1). Returns the number of terms used.
template <class NextGamma, class NextDirection>
std::size_t max_series_exact(const MaxStableLaw &law, NextGamma &&next_gamma,
                             NextDirection &&next_direction,
                             std::span<double> out,
                             std::size_t max_terms = default_max_terms) {
  const std::size_t d = law.dim();
  for (std::size_t j = 0; j < d; ++j)
    if (!(law.marginal_scales()[j] > 0.0))
      throw degenerate_marginal("coordinate " + std::to_string(j + 1) +
                                " has scale constant 0");
  if (max_terms == 0)
    throw invalid_argument("max_terms must be at least 1");

  const double exponent = -1.0 / law.alpha();
  std::vector<double> eps(d);

  std::fill(out.begin(), out.end(), 0.0);
  double gamma = next_gamma();
  std::size_t terms = 1;
  for (;; ++terms) {
    const double r = std::pow(gamma, exponent);
    next_direction(std::span<double>(eps));
    double lowest = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < d; ++j) {
      out[j] = std::max(out[j], r * eps[j]);
      lowest = std::min(lowest, out[j]);
    }
    gamma = next_gamma();
    if (std::pow(gamma, exponent) <= lowest)
      break;
    if (terms == max_terms)
      throw truncation_exceeded("stopping rule not reached within " +
                                std::to_string(max_terms) + " terms");
  }
  const double c = law.scale();
  for (auto &x : out)
    x *= c;
  return terms;
}

/// k-term partial maximum, scaled by c.
template <class NextGamma, class NextDirection>
void max_series_partial(const MaxStableLaw &law, NextGamma &&next_gamma,
                        NextDirection &&next_direction, std::size_t k,
                        std::span<double> out) {
  if (k == 0)
    throw invalid_argument("k must be at least 1");
  const std::size_t d = law.dim();
  const double exponent = -1.0 / law.alpha();
  std::vector<double> eps(d);
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    const double r = std::pow(next_gamma(), exponent);
    next_direction(std::span<double>(eps));
    for (std::size_t j = 0; j < d; ++j)
      out[j] = std::max(out[j], r * eps[j]);
  }
  const double c = law.scale();
  for (auto &x : out)
    x *= c;
}

/// c * sum_{i<=k} Gamma_i^(-1/alpha) eps_i + delta.
template <class NextGamma, class NextDirection>
void sum_series_partial(const StableLaw &law, NextGamma &&next_gamma,
                        NextDirection &&next_direction, std::size_t k,
                        std::span<double> out) {
  if (!law.lepage_valid())
    throw unsupported_regime(
        "LePage sums need alpha < 1 or a symmetric spectral measure");
  if (k == 0)
    throw invalid_argument("k must be at least 1");
  const std::size_t d = law.dim();
  const double exponent = -1.0 / law.alpha();
  std::vector<double> eps(d);
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    const double r = std::pow(next_gamma(), exponent);
    next_direction(std::span<double>(eps));
    for (std::size_t j = 0; j < d; ++j)
      out[j] += r * eps[j];
  }
  const double c = law.scale();
  const auto delta = law.delta();
  for (std::size_t j = 0; j < d; ++j)
    out[j] = c * out[j] + delta[j];
}

/// Exact MS_d(alpha, sigma) draw. Returns the number of series terms used.
template <class Rng>
std::size_t sample_max_stable(const MaxStableLaw &law, Rng &rng,
                              std::span<double> out,
                              std::size_t max_terms = default_max_terms) {
  ArrivalStream<Rng> arrivals(rng);
  return max_series_exact(
      law, [&] { return arrivals.next_gamma(); },
      [&](std::span<double> e) { law.measure().sample_direction(rng, e); },
      out, max_terms);
}

template <class Rng>
std::vector<double> sample_max_stable(const MaxStableLaw &law, Rng &rng,
                                      std::size_t max_terms = default_max_terms) {
  std::vector<double> out(law.dim());
  sample_max_stable(law, rng, std::span<double>(out), max_terms);
  return out;
}

/// k-term partial maximum (approximate draw).
template <class Rng>
void sample_max_stable_fixed_k(const MaxStableLaw &law, Rng &rng,
                               std::size_t k, std::span<double> out) {
  ArrivalStream<Rng> arrivals(rng);
  max_series_partial(
      law, [&] { return arrivals.next_gamma(); },
      [&](std::span<double> e) { law.measure().sample_direction(rng, e); }, k,
      out);
}

template <class Rng>
std::vector<double> sample_max_stable_fixed_k(const MaxStableLaw &law,
                                              Rng &rng, std::size_t k) {
  std::vector<double> out(law.dim());
  sample_max_stable_fixed_k(law, rng, k, std::span<double>(out));
  return out;
}

/// k-term LePage partial sum. Throws unsupported_regime unless alpha < 1 or
/// the spectral measure is symmetric.
template <class Rng>
void sample_stable(const StableLaw &law, Rng &rng, std::size_t k,
                   std::span<double> out) {
  ArrivalStream<Rng> arrivals(rng);
  sum_series_partial(
      law, [&] { return arrivals.next_gamma(); },
      [&](std::span<double> e) { law.measure().sample_direction(rng, e); }, k,
      out);
}

template <class Rng>
std::vector<double> sample_stable(const StableLaw &law, Rng &rng,
                                  std::size_t k) {
  std::vector<double> out(law.dim());
  sample_stable(law, rng, k, std::span<double>(out));
  return out;
}

/// b_n = (n / sigma(S))^(1/alpha).
inline double normalizing_constant(double n, double alpha, double total_mass) {
  return std::pow(n / total_mass, 1.0 / alpha);
}

/// Normalized sum b_n^-1 (X_1 + ... + X_n) of i.i.d. X = R eps with
/// P{R > t} = t^-alpha (t >= 1) and eps ~ sigma / sigma(S). X is regularly
/// varying with spectral measure sigma, so for alpha < 1 the sum lies in the
/// domain of attraction of the LePage law with the same sigma.
template <class Rng>
void sample_doa_sum(double alpha, const SpectralMeasure &measure,
                    std::size_t n, Rng &rng, std::span<double> out) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw invalid_argument("domain-of-attraction sums need alpha in (0, 1)");
  if (n == 0)
    throw invalid_argument("number of summands must be at least 1");
  const std::size_t d = measure.dim();
  const double exponent = -1.0 / alpha;
  std::vector<double> eps(d);
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = std::pow(rng.uniform_open0(), exponent);
    measure.sample_direction(rng, std::span<double>(eps));
    for (std::size_t j = 0; j < d; ++j)
      out[j] += r * eps[j];
  }
  const double b_n =
      normalizing_constant(static_cast<double>(n), alpha, measure.total_mass());
  for (auto &x : out)
    x /= b_n;
}

template <class Rng>
std::vector<double> sample_doa_sum(double alpha, const SpectralMeasure &measure,
                                   std::size_t n, Rng &rng) {
  std::vector<double> out(measure.dim());
  sample_doa_sum(alpha, measure, n, rng, std::span<double>(out));
  return out;
}

} // namespace lepage

#endif // LEPAGE_SAMPLERS_HPP
