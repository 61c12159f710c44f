#ifndef LEPAGE_SPECTRAL_HPP
#define LEPAGE_SPECTRAL_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <memory>
#include <numbers>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "lepage/error.hpp"
#include "lepage/quadrature.hpp"

namespace lepage {

/// Which unit sphere a spectral measure lives on: the Euclidean sphere of
/// the additive cone (R^d, +) or the L-infinity sphere of the max cone
/// (R^d_+, max), whose points have coordinates in [0, 1] with at least one
/// coordinate equal to 1.
enum class Sphere { euclidean, linf };

/// Planar angular densities known to the library. Each has unit mass on
/// [0, 2pi); the measure scales it by its total mass.
///
///   f1      1/pi on [0, pi/2) and [pi, 3pi/2)
///   f2      cos(2t)/2 on [-pi/4, pi/4) and [3pi/4, 5pi/4)
///   f3      |cos(2t)|/4
///   uniform 1/(2pi)
enum class BuiltinDensity { f1, f2, f3, uniform };

inline constexpr double sphere_tolerance = 1e-12;
inline constexpr std::size_t angular_table_bins = 4096;

namespace detail {

inline double wrap_angle(double theta) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  theta = std::fmod(theta, two_pi);
  return theta < 0.0 ? theta + two_pi : theta;
}

} // namespace detail

/// Unit-mass density value at angle `theta` (any real; reduced mod 2pi).
inline double density_value(BuiltinDensity kind, double theta) {
  using std::numbers::pi;
  const double t = detail::wrap_angle(theta);
  switch (kind) {
  case BuiltinDensity::f1:
    return (t < pi / 2 || (t >= pi && t < 1.5 * pi)) ? 1.0 / pi : 0.0;
  case BuiltinDensity::f2:
    if (t < pi / 4 || (t >= 0.75 * pi && t < 1.25 * pi) || t >= 1.75 * pi)
      return 0.5 * std::cos(2.0 * t);
    return 0.0;
  case BuiltinDensity::f3:
    return 0.25 * std::abs(std::cos(2.0 * t));
  case BuiltinDensity::uniform:
    return 0.5 / pi;
  }
  return 0.0;
}

inline std::string to_string(BuiltinDensity kind) {
  switch (kind) {
  case BuiltinDensity::f1:
    return "f1";
  case BuiltinDensity::f2:
    return "f2";
  case BuiltinDensity::f3:
    return "f3";
  case BuiltinDensity::uniform:
    return "uniform";
  }
  return "?";
}

/// Finite atomic measure: points stored row-major, one row per atom.
struct AtomList {
  std::size_t dim = 0;
  std::vector<double> points;
  std::vector<double> weights;

  std::size_t size() const { return weights.size(); }
  std::span<const double> point(std::size_t i) const {
    return {points.data() + i * dim, dim};
  }
};

/// Uniform probability on the L-infinity sphere, scaled by the total mass.
struct UniformLInf {};

/// Angular density on the circle (d = 2, Euclidean sphere).
struct AngularDensity {
  BuiltinDensity kind = BuiltinDensity::uniform;
};

using MeasureVariant = std::variant<AtomList, UniformLInf, AngularDensity>;

/// Sphere subsets that measures and tail estimators can evaluate.
struct AtomSet {
  std::vector<std::size_t> indices;
};

/// Closed segment of one face of the d = 2 L-infinity sphere. `face` is the
/// coordinate pinned to 1; the other coordinate ranges over [lo, hi].
/// face = 0, [s, t] is the segment [(1,s), (1,t)].
struct FaceSegment {
  std::size_t face = 0;
  double lo = 0.0;
  double hi = 1.0;

  bool contains(std::span<const double> unit_point) const {
    if (unit_point.size() != 2)
      return false;
    const double other = unit_point[1 - face];
    return std::abs(unit_point[face] - 1.0) <= sphere_tolerance &&
           other >= lo - sphere_tolerance && other <= hi + sphere_tolerance;
  }
};

/// Half-open angle interval [lo, hi) on the circle, hi - lo <= 2pi.
struct AngleInterval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains_angle(double theta) const {
    if (hi - lo >= 2.0 * std::numbers::pi)
      return true;
    const double offset = detail::wrap_angle(theta - lo);
    return offset < hi - lo;
  }
  bool contains(std::span<const double> unit_point) const {
    if (unit_point.size() != 2)
      return false;
    return contains_angle(std::atan2(unit_point[1], unit_point[0]));
  }
};

using SphereSubset = std::variant<AtomSet, FaceSegment, AngleInterval>;

/// Finite measure on a unit sphere. Immutable after construction; copies
/// share the sampling tables.
class SpectralMeasure {
public:
  /// Atomic measure. Total mass is the sum of the weights.
  static SpectralMeasure atoms(Sphere sphere,
                               std::vector<std::vector<double>> points,
                               std::vector<double> weights) {
    if (points.empty())
      throw invalid_measure("atom list is empty");
    if (points.size() != weights.size())
      throw invalid_measure("atom points and weights differ in length");
    const std::size_t dim = points.front().size();
    if (dim == 0)
      throw invalid_measure("atom dimension must be at least 1");
    AtomList list;
    list.dim = dim;
    double total = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto &p = points[i];
      if (p.size() != dim)
        throw invalid_measure("atoms have inconsistent dimensions");
      const double w = weights[i];
      if (!(w > 0.0) || !std::isfinite(w))
        throw invalid_measure("atom weights must be positive and finite");
      check_on_sphere(sphere, p);
      list.points.insert(list.points.end(), p.begin(), p.end());
      list.weights.push_back(w);
      total += w;
    }
    SpectralMeasure m(sphere, dim, std::move(list), total);
    m.build_atom_table();
    return m;
  }

  static SpectralMeasure uniform_linf(std::size_t dim, double total_mass = 1.0) {
    if (dim == 0)
      throw invalid_measure("dimension must be at least 1");
    check_mass(total_mass);
    return SpectralMeasure(Sphere::linf, dim, UniformLInf{}, total_mass);
  }

  static SpectralMeasure angular_density(BuiltinDensity kind,
                                         double total_mass = 1.0) {
    check_mass(total_mass);
    SpectralMeasure m(Sphere::euclidean, 2, AngularDensity{kind}, total_mass);
    m.build_angular_table();
    return m;
  }

  Sphere sphere() const { return sphere_; }
  std::size_t dim() const { return dim_; }
  double total_mass() const { return total_mass_; }
  const MeasureVariant &variant() const { return variant_; }

  bool is_atoms() const { return std::holds_alternative<AtomList>(variant_); }
  const AtomList &atom_list() const { return std::get<AtomList>(variant_); }

  /// The measure c * sigma.
  SpectralMeasure scaled(double c) const {
    check_mass(c);
    SpectralMeasure m = *this;
    m.total_mass_ *= c;
    if (auto *list = std::get_if<AtomList>(&m.variant_)) {
      for (auto &w : list->weights)
        w *= c;
      m.build_atom_table();
    }
    return m;
  }

  /// Density of the measure itself (total mass included) at angle theta.
  double density_at(double theta) const {
    const auto &ad = std::get<AngularDensity>(variant_);
    return total_mass_ * density_value(ad.kind, theta);
  }

  /// Draws a direction from sigma / sigma(S) into `out` (size dim()).
  /// Consumes a fixed number of draws per call for a given measure:
  /// 1 for atoms and angular densities, dim() for the uniform L-inf law.
  template <class Rng>
  void sample_direction(Rng &rng, std::span<double> out) const {
    switch (variant_.index()) {
    case 0: {
      const auto &list = std::get<AtomList>(variant_);
      const double u = rng.uniform() * cumulative_.back();
      auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
      auto i = static_cast<std::size_t>(it - cumulative_.begin());
      if (i >= list.size())
        i = list.size() - 1;
      const auto p = list.point(i);
      std::copy(p.begin(), p.end(), out.begin());
      return;
    }
    case 1: {
      auto face = static_cast<std::size_t>(rng.uniform() *
                                           static_cast<double>(dim_));
      if (face >= dim_)
        face = dim_ - 1;
      for (std::size_t j = 0; j < dim_; ++j)
        out[j] = (j == face) ? 1.0 : rng.uniform();
      return;
    }
    default: {
      const double theta = angle_from_uniform(rng.uniform());
      out[0] = std::cos(theta);
      out[1] = std::sin(theta);
      return;
    }
    }
  }

  template <class Rng> std::vector<double> sample_direction(Rng &rng) const {
    std::vector<double> out(dim_);
    sample_direction(rng, std::span<double>(out));
    return out;
  }

  /// Inverse of the tabulated angular CDF at probability u in [0, 1).
  double angle_from_uniform(double u) const {
    const auto &cdf = *angular_cdf_;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    std::size_t bin = static_cast<std::size_t>(it - cdf.begin());
    bin = bin == 0 ? 0 : bin - 1;
    if (bin >= angular_table_bins)
      bin = angular_table_bins - 1;
    const double width = cdf[bin + 1] - cdf[bin];
    const double frac = width > 0.0 ? (u - cdf[bin]) / width : 0.0;
    const double h = 2.0 * std::numbers::pi / angular_table_bins;
    return h * (static_cast<double>(bin) + frac);
  }

private:
  SpectralMeasure(Sphere sphere, std::size_t dim, MeasureVariant v,
                  double total_mass)
      : sphere_(sphere), dim_(dim), variant_(std::move(v)),
        total_mass_(total_mass) {}

  static void check_mass(double m) {
    if (!(m > 0.0) || !std::isfinite(m))
      throw invalid_measure("total mass must be positive and finite");
  }

  static void check_on_sphere(Sphere sphere, const std::vector<double> &p) {
    double norm = 0.0;
    if (sphere == Sphere::euclidean) {
      for (double x : p)
        norm += x * x;
      norm = std::sqrt(norm);
    } else {
      for (double x : p) {
        if (x < 0.0 || x > 1.0)
          throw invalid_measure(
              "max-cone atoms must have coordinates in [0, 1]");
        norm = std::max(norm, x);
      }
    }
    if (std::abs(norm - 1.0) > sphere_tolerance)
      throw invalid_measure("atom is not on the unit sphere");
  }

  void build_atom_table() {
    const auto &list = std::get<AtomList>(variant_);
    cumulative_.resize(list.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < list.size(); ++i) {
      acc += list.weights[i];
      cumulative_[i] = acc;
    }
  }

  void build_angular_table() {
    const auto kind = std::get<AngularDensity>(variant_).kind;
    auto table = std::make_shared<std::vector<double>>(angular_table_bins + 1);
    const double h = 2.0 * std::numbers::pi / angular_table_bins;
    const auto f = [kind](double t) { return density_value(kind, t); };
    // Every density breakpoint is a multiple of pi/4, hence a bin edge, so
    // each bin integrand is smooth. The right end of a bin is nudged inward
    // because the densities are right-open at their jumps.
    (*table)[0] = 0.0;
    for (std::size_t i = 0; i < angular_table_bins; ++i) {
      const double lo = h * static_cast<double>(i);
      const double hi = h * static_cast<double>(i + 1);
      const auto g = [&](double t) {
        return f(std::min(t, std::nextafter(hi, lo)));
      };
      (*table)[i + 1] = (*table)[i] + quadrature::integrate(g, lo, hi, 1e-14);
    }
    const double mass = table->back();
    if (std::abs(mass - 1.0) > 1e-9)
      throw invalid_measure("angular density does not integrate to 1");
    for (auto &c : *table)
      c /= mass;
    table->back() = 1.0;
    angular_cdf_ = std::move(table);
  }

  Sphere sphere_;
  std::size_t dim_;
  MeasureVariant variant_;
  double total_mass_;
  std::vector<double> cumulative_;
  std::shared_ptr<const std::vector<double>> angular_cdf_;
};

/// sigma-tilde sample; see SpectralMeasure::sample_direction.
template <class Rng>
void sample_direction(const SpectralMeasure &measure, Rng &rng,
                      std::span<double> out) {
  measure.sample_direction(rng, out);
}

namespace detail {

/// Integral of density * weight over [lo, hi], split at every multiple of
/// pi/4 and at `extra_cuts`. Each piece is evaluated on its open interior so
/// that a jump at a piece end is seen from the correct side. The weight may
/// be real or complex valued.
inline auto angular_integral(const SpectralMeasure &m, const auto &weight_fn,
                             double lo, double hi, double tol,
                             std::span<const double> extra_cuts = {}) {
  constexpr double step = std::numbers::pi / 4.0;
  std::vector<double> cuts{lo, hi};
  for (double k = std::floor(lo / step) + 1.0; k * step < hi; k += 1.0)
    cuts.push_back(k * step);
  for (double c : extra_cuts)
    if (c > lo && c < hi)
      cuts.push_back(c);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  using T = decltype(m.density_at(lo) * weight_fn(lo));
  T total{};
  const double piece_tol = tol / static_cast<double>(cuts.size() - 1);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i];
    const double b = cuts[i + 1];
    const double ia = std::nextafter(a, b);
    const double ib = std::nextafter(b, a);
    if (!(ib >= ia))
      continue;
    const auto g = [&](double t) {
      const double u = std::clamp(t, ia, ib);
      return m.density_at(u) * weight_fn(u);
    };
    total += quadrature::integrate(g, a, b, piece_tol);
  }
  return total;
}

} // namespace detail

/// Integral of (s_j)^alpha against sigma: the scale constant of the j-th
/// Frechet marginal of the max-stable law with this spectral measure.
inline double marginal_alpha_moment(const SpectralMeasure &measure,
                                    std::size_t j, double alpha) {
  if (!(alpha > 0.0))
    throw invalid_argument("alpha must be positive");
  if (j >= measure.dim())
    throw invalid_argument("coordinate index out of range");

  return std::visit(
      [&](const auto &v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, AtomList>) {
          double sum = 0.0;
          for (std::size_t i = 0; i < v.size(); ++i) {
            const auto p = v.point(i);
            if (std::any_of(p.begin(), p.end(),
                            [](double x) { return x < 0.0; }))
              throw invalid_argument(
                  "measure has atoms with negative coordinates");
            sum += v.weights[i] * std::pow(p[j], alpha);
          }
          return sum;
        } else if constexpr (std::is_same_v<T, UniformLInf>) {
          const auto d = static_cast<double>(measure.dim());
          const double tail = quadrature::integrate(
              [alpha](double t) { return std::pow(t, alpha); }, 0.0, 1.0);
          return measure.total_mass() * (1.0 / d + (d - 1.0) / d * tail);
        } else {
          // Any mass where some coordinate is negative rules the measure
          // out of the max cone.
          using std::numbers::pi;
          const auto one = [](double) { return 1.0; };
          const double neg =
              detail::angular_integral(measure, one, pi / 2, 1.5 * pi, 1e-12) +
              detail::angular_integral(measure, one, pi, 2.0 * pi, 1e-12);
          if (neg > 1e-12)
            throw invalid_argument(
                "measure charges points with negative coordinates");
          const auto w = [&](double t) {
            const double s = j == 0 ? std::cos(t) : std::sin(t);
            return s > 0.0 ? std::pow(s, alpha) : 0.0;
          };
          return detail::angular_integral(measure, w, 0.0, 2.0 * pi, 1e-10);
        }
      },
      measure.variant());
}

/// sigma(B).
inline double measure_of(const SpectralMeasure &measure,
                         const SphereSubset &subset) {
  if (const auto *set = std::get_if<AtomSet>(&subset)) {
    if (set->indices.empty())
      return 0.0;
    if (!measure.is_atoms())
      throw incompatible_subset("atom index sets need an atomic measure");
    const auto &list = measure.atom_list();
    std::vector<std::size_t> idx = set->indices;
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    double sum = 0.0;
    for (auto i : idx) {
      if (i >= list.size())
        throw incompatible_subset("atom index out of range");
      sum += list.weights[i];
    }
    return sum;
  }

  if (const auto *seg = std::get_if<FaceSegment>(&subset)) {
    if (measure.sphere() != Sphere::linf || measure.dim() != 2)
      throw incompatible_subset("face segments need a d = 2 L-inf measure");
    if (seg->face > 1 || seg->lo > seg->hi || seg->lo < 0.0 || seg->hi > 1.0)
      throw incompatible_subset("malformed face segment");
    if (measure.is_atoms()) {
      const auto &list = measure.atom_list();
      double sum = 0.0;
      for (std::size_t i = 0; i < list.size(); ++i)
        if (seg->contains(list.point(i)))
          sum += list.weights[i];
      return sum;
    }
    // Uniform: face probability 1/2 times uniform length.
    return measure.total_mass() * 0.5 * (seg->hi - seg->lo);
  }

  const auto &arc = std::get<AngleInterval>(subset);
  if (measure.sphere() != Sphere::euclidean || measure.dim() != 2)
    throw incompatible_subset("angle intervals need a d = 2 Euclidean measure");
  if (arc.hi < arc.lo)
    throw incompatible_subset("malformed angle interval");
  if (measure.is_atoms()) {
    const auto &list = measure.atom_list();
    double sum = 0.0;
    for (std::size_t i = 0; i < list.size(); ++i)
      if (arc.contains(list.point(i)))
        sum += list.weights[i];
    return sum;
  }
  const double span = std::min(arc.hi - arc.lo, 2.0 * std::numbers::pi);
  const auto one = [](double) { return 1.0; };
  return detail::angular_integral(measure, one, arc.lo, arc.lo + span, 1e-10);
}

/// Integral of s^(k) against sigma.
inline double first_moment(const SpectralMeasure &measure, std::size_t k) {
  if (k >= measure.dim())
    throw invalid_argument("coordinate index out of range");
  return std::visit(
      [&](const auto &v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, AtomList>) {
          double sum = 0.0;
          for (std::size_t i = 0; i < v.size(); ++i)
            sum += v.weights[i] * v.point(i)[k];
          return sum;
        } else if constexpr (std::is_same_v<T, UniformLInf>) {
          const auto d = static_cast<double>(measure.dim());
          return measure.total_mass() * (1.0 / d + 0.5 * (d - 1.0) / d);
        } else {
          const auto w = [k](double t) {
            return k == 0 ? std::cos(t) : std::sin(t);
          };
          return detail::angular_integral(measure, w, 0.0,
                                          2.0 * std::numbers::pi, 1e-12);
        }
      },
      measure.variant());
}

/// Strict stability of S_d(alpha, sigma, delta): alpha != 1 needs delta = 0;
/// alpha = 1 needs every first moment of sigma to vanish.
inline bool check_strict_stability(const SpectralMeasure &measure, double alpha,
                                   std::span<const double> delta) {
  if (measure.sphere() != Sphere::euclidean)
    throw invalid_argument("strict stability is defined for Euclidean measures");
  if (!(alpha > 0.0 && alpha <= 2.0))
    throw invalid_argument("alpha must lie in (0, 2]");
  if (!delta.empty() && delta.size() != measure.dim())
    throw invalid_argument("delta has the wrong dimension");
  if (alpha != 1.0)
    return std::all_of(delta.begin(), delta.end(),
                       [](double x) { return x == 0.0; });
  for (std::size_t k = 0; k < measure.dim(); ++k)
    if (std::abs(first_moment(measure, k)) > 1e-10)
      return false;
  return true;
}

/// sigma(A) == sigma(-A) for every Borel A.
inline bool check_symmetry(const SpectralMeasure &measure) {
  return std::visit(
      [&](const auto &v) -> bool {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, AtomList>) {
          const auto mass_at = [&](std::span<const double> q, double sign) {
            double sum = 0.0;
            for (std::size_t i = 0; i < v.size(); ++i) {
              const auto p = v.point(i);
              bool same = true;
              for (std::size_t j = 0; j < v.dim && same; ++j)
                same = std::abs(p[j] - sign * q[j]) <= sphere_tolerance;
              if (same)
                sum += v.weights[i];
            }
            return sum;
          };
          for (std::size_t i = 0; i < v.size(); ++i) {
            const auto p = v.point(i);
            if (std::abs(mass_at(p, 1.0) - mass_at(p, -1.0)) >
                sphere_tolerance)
              return false;
          }
          return true;
        } else if constexpr (std::is_same_v<T, UniformLInf>) {
          // Supported on the nonnegative orthant.
          return false;
        } else {
          const double h = 2.0 * std::numbers::pi / angular_table_bins;
          for (std::size_t i = 0; i < angular_table_bins; ++i) {
            const double t = h * (static_cast<double>(i) + 0.5);
            if (std::abs(measure.density_at(t) -
                         measure.density_at(t + std::numbers::pi)) > 1e-9)
              return false;
          }
          return true;
        }
      },
      measure.variant());
}

/// Short human-readable description, used in batch metadata.
inline std::string describe(const SpectralMeasure &measure) {
  std::string s = measure.sphere() == Sphere::linf ? "linf:" : "euclid:";
  std::visit(
      [&](const auto &v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, AtomList>)
          s += "atoms[" + std::to_string(v.size()) + "]";
        else if constexpr (std::is_same_v<T, UniformLInf>)
          s += "uniform_linf";
        else
          s += "density(" + to_string(v.kind) + ")";
      },
      measure.variant());
  return s + ",d=" + std::to_string(measure.dim());
}

} // namespace lepage

#endif // LEPAGE_SPECTRAL_HPP
