#ifndef LEPAGE_QUADRATURE_HPP
#define LEPAGE_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace lepage::quadrature {

inline constexpr double default_tolerance = 1e-10;
inline constexpr int max_depth = 20; // at most 2^20 subintervals

namespace detail {

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(std::complex<double> v) { return std::abs(v); }

template <class F, class T>
T simpson_step(const F &f, double a, double b, T fa, T fm, T fb, T whole,
               double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const T flm = f(lm);
  const T frm = f(rm);
  const T left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const T right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const T delta = left + right - whole;
  if (depth >= max_depth || magnitude(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

} // namespace detail

/// Adaptive Simpson over [a, b] with absolute tolerance `tol`.
/// Works for real- and complex-valued integrands.
template <class F>
auto integrate(const F &f, double a, double b,
               double tol = default_tolerance) {
  using T = decltype(f(a));
  if (b == a)
    return T{};
  // Four fixed initial panels so that a symmetric integrand cannot fool the
  // first error estimate.
  constexpr int panels = 4;
  const double h = (b - a) / panels;
  T total{};
  for (int i = 0; i < panels; ++i) {
    const double lo = a + i * h;
    const double hi = (i + 1 == panels) ? b : a + (i + 1) * h;
    const double mid = 0.5 * (lo + hi);
    const T flo = f(lo), fmid = f(mid), fhi = f(hi);
    const T whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    total += detail::simpson_step(f, lo, hi, flo, fmid, fhi, whole,
                                  tol / panels, 2);
  }
  return total;
}

/// Integrates piecewise over [a, b], splitting at every breakpoint that lies
/// strictly inside. Use it for integrands with known kinks or jumps.
template <class F>
auto integrate_piecewise(const F &f, double a, double b,
                         std::span<const double> breakpoints,
                         double tol = default_tolerance) {
  std::vector<double> cuts{a};
  for (double c : breakpoints)
    if (c > a && c < b)
      cuts.push_back(c);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  using T = decltype(f(a));
  T total{};
  const double piece_tol = tol / static_cast<double>(cuts.size() - 1);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    total += integrate(f, cuts[i], cuts[i + 1], piece_tol);
  return total;
}

} // namespace lepage::quadrature

#endif // LEPAGE_QUADRATURE_HPP
