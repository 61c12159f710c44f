#ifndef LEPAGE_ANALYTIC_HPP
#define LEPAGE_ANALYTIC_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "lepage/error.hpp"
#include "lepage/quadrature.hpp"
#include "lepage/samplers.hpp"
#include "lepage/spectral.hpp"

namespace lepage {

/// C_alpha = (1 - alpha) / (Gamma(2 - alpha) cos(pi alpha / 2)), and 2/pi at
/// alpha = 1. Links this parametrization to Samorodnitsky-Taqqu's.
inline double c_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0))
    throw invalid_argument("C_alpha needs alpha in (0, 2)");
  if (alpha == 1.0)
    return 2.0 / std::numbers::pi;
  return (1.0 - alpha) /
         (std::tgamma(2.0 - alpha) * std::cos(std::numbers::pi * alpha / 2.0));
}

/// psi_alpha(x) of the stable characteristic exponent. psi_1(0) = 0.
inline std::complex<double> psi_alpha(double alpha, double x) {
  if (x == 0.0)
    return {0.0, 0.0};
  const double sign = x > 0.0 ? 1.0 : -1.0;
  const double ax = std::abs(x);
  if (alpha == 1.0)
    return {ax, ax * (2.0 / std::numbers::pi) * sign * std::log(ax)};
  const double mag = std::pow(ax, alpha);
  return {mag, -mag * sign * std::tan(std::numbers::pi * alpha / 2.0)};
}

namespace detail {

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    s += a[i] * b[i];
  return s;
}

} // namespace detail

/// Integral of psi_alpha(<t, s>) against sigma.
inline std::complex<double> stable_exponent_integral(const SpectralMeasure &measure,
                                                     double alpha,
                                                     std::span<const double> t) {
  if (t.size() != measure.dim())
    throw invalid_argument("argument has the wrong dimension");
  if (measure.is_atoms()) {
    const auto &list = measure.atom_list();
    std::complex<double> sum{};
    for (std::size_t i = 0; i < list.size(); ++i)
      sum += list.weights[i] * psi_alpha(alpha, detail::dot(t, list.point(i)));
    return sum;
  }
  if (!std::holds_alternative<AngularDensity>(measure.variant()))
    throw invalid_argument("characteristic functions need a Euclidean measure");
  if (t[0] == 0.0 && t[1] == 0.0)
    return {};
  // <t, s(theta)> vanishes at phase +- pi/2; psi has a kink there.
  const double phase = std::atan2(t[1], t[0]);
  const double cuts[] = {
      detail::wrap_angle(phase + std::numbers::pi / 2),
      detail::wrap_angle(phase + 1.5 * std::numbers::pi)};
  const auto w = [&](double theta) {
    return psi_alpha(alpha, t[0] * std::cos(theta) + t[1] * std::sin(theta));
  };
  return detail::angular_integral(measure, w, 0.0, 2.0 * std::numbers::pi,
                                  1e-11, cuts);
}

/// Characteristic function
///   phi(t) = exp(-(1/C_alpha) int psi_alpha(<t,s>) sigma(ds) + i <delta, t>).
inline std::complex<double> stable_cf(const StableLaw &law,
                                      std::span<const double> t) {
  const auto integral = stable_exponent_integral(law.measure(), law.alpha(), t);
  const double shift = detail::dot(law.delta(), t);
  return std::exp(-integral / c_alpha(law.alpha()) +
                  std::complex<double>(0.0, shift));
}

/// One-dimensional stable law S_1(alpha, beta, gamma, delta).
struct StableParams1D {
  double alpha = 1.0;
  double beta = 0.0;
  double gamma = 1.0;
  double delta = 0.0;

  void validate() const {
    if (!(alpha > 0.0 && alpha < 2.0))
      throw invalid_argument("alpha must lie in (0, 2)");
    if (!(beta >= -1.0 && beta <= 1.0))
      throw invalid_argument("beta must lie in [-1, 1]");
    if (!(gamma > 0.0))
      throw invalid_argument("gamma must be positive");
  }
};

/// Reads (beta, gamma) off a measure on S^0 = {-1, 1}:
/// gamma = sigma(1) + sigma(-1), beta = (sigma(1) - sigma(-1)) / gamma.
inline StableParams1D params_from_measure(const SpectralMeasure &measure,
                                          double alpha, double delta = 0.0) {
  if (measure.dim() != 1 || !measure.is_atoms() ||
      measure.sphere() != Sphere::euclidean)
    throw invalid_argument("expected an atomic measure on {-1, 1}");
  double plus = 0.0, minus = 0.0;
  const auto &list = measure.atom_list();
  for (std::size_t i = 0; i < list.size(); ++i)
    (list.point(i)[0] > 0.0 ? plus : minus) += list.weights[i];
  StableParams1D p{alpha, (plus - minus) / (plus + minus), plus + minus, delta};
  p.validate();
  return p;
}

/// The measure sigma(1) delta_1 + sigma(-1) delta_-1 of a 1-D law.
inline SpectralMeasure measure_from_params(const StableParams1D &p) {
  p.validate();
  const auto [plus, minus] = std::pair{(1.0 + p.beta) * p.gamma / 2.0,
                                       (1.0 - p.beta) * p.gamma / 2.0};
  std::vector<std::vector<double>> pts;
  std::vector<double> w;
  if (plus > 0.0) {
    pts.push_back({1.0});
    w.push_back(plus);
  }
  if (minus > 0.0) {
    pts.push_back({-1.0});
    w.push_back(minus);
  }
  return SpectralMeasure::atoms(Sphere::euclidean, std::move(pts), std::move(w));
}

/// Closed-form 1-D characteristic function.
inline std::complex<double> stable_cf_1d(const StableParams1D &p, double t) {
  p.validate();
  const double scale = p.gamma / c_alpha(p.alpha);
  const double at = std::abs(t);
  const double sign = t > 0.0 ? 1.0 : (t < 0.0 ? -1.0 : 0.0);
  std::complex<double> bracket;
  if (p.alpha == 1.0)
    bracket = {1.0, at == 0.0 ? 0.0
                              : p.beta * (2.0 / std::numbers::pi) * sign *
                                    std::log(at)};
  else
    bracket = {1.0, -p.beta * sign * std::tan(std::numbers::pi * p.alpha / 2)};
  const double mag = p.alpha == 1.0 ? at : std::pow(at, p.alpha);
  return std::exp(-scale * mag * bracket + std::complex<double>(0.0, p.delta * t));
}

/// lim x^alpha P{X > x} and lim x^alpha P{X < -x}: ((1+beta) gamma / 2,
/// (1-beta) gamma / 2).
inline std::pair<double, double> tail_constants(const StableParams1D &p) {
  p.validate();
  return {(1.0 + p.beta) * p.gamma / 2.0, (1.0 - p.beta) * p.gamma / 2.0};
}

/// Conversions to and from the Samorodnitsky-Taqqu parametrization:
/// gamma = C_alpha sigma_s^alpha in 1-D, sigma = C_alpha sigma_s for d >= 2.
enum class Conversion { to_st, from_st };

inline double convert_parametrization(Conversion direction, double alpha,
                                      double value) {
  if (!(value > 0.0))
    throw invalid_argument("scale must be positive");
  const double c = c_alpha(alpha);
  if (direction == Conversion::from_st)
    return c * std::pow(value, alpha);
  return std::pow(value / c, 1.0 / alpha);
}

inline SpectralMeasure convert_parametrization(Conversion direction,
                                               double alpha,
                                               const SpectralMeasure &measure) {
  const double c = c_alpha(alpha);
  return measure.scaled(direction == Conversion::from_st ? c : 1.0 / c);
}

namespace detail {

/// int max_j (s_j / x_j)^alpha sigma(ds): the m_alpha x sigma mass of the
/// complement of [0, x].
inline double max_cdf_exponent(const MaxStableLaw &law,
                               std::span<const double> x) {
  const double alpha = law.alpha();
  const auto &measure = law.measure();
  const std::size_t d = law.dim();
  if (measure.is_atoms()) {
    const auto &list = measure.atom_list();
    double sum = 0.0;
    for (std::size_t i = 0; i < list.size(); ++i) {
      const auto s = list.point(i);
      double ratio = 0.0;
      for (std::size_t j = 0; j < d; ++j)
        ratio = std::max(ratio, s[j] / x[j]);
      sum += list.weights[i] * std::pow(ratio, alpha);
    }
    return sum;
  }
  // Uniform on the L-inf sphere: face f has s_f = 1 and the other coordinates
  // i.i.d. uniform. For M = max(1/x_f, max_j U_j / x_j),
  //   E[M^alpha] = A^alpha + int_A^B alpha m^(alpha-1) P{M > m} dm
  // with A = 1/x_f and P{M > m} = 1 - prod_j min(1, m x_j) for m >= A.
  // Between consecutive cuts 1/x_j the product is c m^k, so each piece
  // integrates in closed form.
  double total = 0.0;
  std::vector<double> cuts;
  for (std::size_t f = 0; f < d; ++f) {
    const double a = 1.0 / x[f];
    cuts.clear();
    for (std::size_t j = 0; j < d; ++j)
      if (j != f && 1.0 / x[j] > a)
        cuts.push_back(1.0 / x[j]);
    std::sort(cuts.begin(), cuts.end());
    double face = std::pow(a, alpha);
    double lo = a;
    for (double hi : cuts) {
      if (hi > lo) {
        // Active coordinates are those with m x_j < 1 on (lo, hi).
        double k = 0.0, prod_lo = 1.0, prod_hi = 1.0;
        for (std::size_t j = 0; j < d; ++j)
          if (j != f && 1.0 / x[j] >= hi) {
            k += 1.0;
            prod_lo *= lo * x[j];
            prod_hi *= hi * x[j];
          }
        const double plo = std::pow(lo, alpha), phi = std::pow(hi, alpha);
        face += (phi - plo) - alpha / (alpha + k) * (phi * prod_hi - plo * prod_lo);
      }
      lo = hi;
    }
    total += face;
  }
  return measure.total_mass() * total / static_cast<double>(d);
}

} // namespace detail

/// P{xi <= x} = exp(-m_alpha x sigma([0, x]^c)) for x > 0 componentwise.
inline double max_joint_cdf(const MaxStableLaw &law, std::span<const double> x) {
  if (x.size() != law.dim())
    throw invalid_argument("argument has the wrong dimension");
  for (double v : x)
    if (!(v > 0.0))
      throw non_positive_argument("joint CDF needs x > 0 componentwise");
  return std::exp(-detail::max_cdf_exponent(law, x));
}

/// Frechet marginal exp(-c_j x^-alpha); 0 for x <= 0.
inline double max_marginal_cdf(const MaxStableLaw &law, std::size_t j, double x) {
  if (j >= law.dim())
    throw invalid_argument("coordinate index out of range");
  if (!(x > 0.0))
    return 0.0;
  return std::exp(-law.marginal_scales()[j] * std::pow(x, -law.alpha()));
}

enum class Ray { e1, e2 };

/// Probability that the max-stable vector with sigma = p delta_(1,a) +
/// q delta_(b,1) lies on the ray through (1,a) (or (b,1)) with norm below r.
/// Pass r = infinity for the total mass of the ray.
inline double ex3_ray_mass(double p, double q, double a, double b, double alpha,
                           Ray which, double r) {
  if (!(alpha > 0.0))
    throw invalid_argument("alpha must be positive");
  if (!(a >= 0.0 && a <= 1.0 && b >= 0.0 && b <= 1.0))
    throw invalid_argument("a and b must lie in [0, 1]");
  if (!(p >= 0.0 && q >= 0.0) || std::abs(p + q - 1.0) > 1e-12)
    throw invalid_argument("p and q must be nonnegative with p + q = 1");
  if (!(r > 0.0))
    throw non_positive_argument("r must be positive");
  if (which == Ray::e2) {
    std::swap(p, q);
    std::swap(a, b);
  }
  if (a == 0.0)
    return 0.0;
  const double aa = std::pow(a, alpha);
  const double total = p - p * q * (1.0 - aa) / (q + p * aa);
  if (std::isinf(r))
    return total;
  return total * std::exp(-(p + q / aa) * std::pow(r, -alpha));
}

} // namespace lepage

#endif // LEPAGE_ANALYTIC_HPP
