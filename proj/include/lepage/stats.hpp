#ifndef LEPAGE_STATS_HPP
#define LEPAGE_STATS_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "lepage/batch.hpp"
#include "lepage/error.hpp"
#include "lepage/format.hpp"
#include "lepage/spectral.hpp"

namespace lepage {

/// Fraction of the sample that is <= x.
inline double ecdf_eval(std::span<const double> sample, double x) {
  if (sample.empty())
    throw invalid_argument("ECDF of an empty sample");
  const auto below = std::count_if(sample.begin(), sample.end(),
                                   [x](double v) { return v <= x; });
  return static_cast<double>(below) / static_cast<double>(sample.size());
}

/// sup_x |F_n(x) - F(x)|, checked on both sides of every jump.
template <class Cdf>
double ks_one_sample(std::span<const double> sample, const Cdf &cdf) {
  if (sample.empty())
    throw invalid_argument("KS statistic of an empty sample");
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    const auto k = static_cast<double>(i);
    d = std::max({d, (k + 1.0) / n - f, f - k / n});
  }
  return d;
}

/// Two-sample sup distance between empirical CDFs. Tied values are
/// consumed together before the gap is measured.
inline double ks_two_sample(std::span<const double> a,
                            std::span<const double> b) {
  if (a.empty() || b.empty())
    throw invalid_argument("KS statistic of an empty sample");
  std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const auto nx = static_cast<double>(x.size());
  const auto ny = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v)
      ++i;
    while (j < y.size() && y[j] == v)
      ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / nx -
                             static_cast<double>(j) / ny));
  }
  return d;
}

/// (1/n) sum_rows exp(i <t, row>).
inline std::complex<double> ecf_eval(const SampleBatch &batch,
                                     std::span<const double> t) {
  if (t.size() != batch.dim())
    throw invalid_argument("argument has the wrong dimension");
  if (batch.empty())
    throw invalid_argument("ECF of an empty batch");
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < batch.rows(); ++i) {
    const auto row = batch.row(i);
    double phase = 0.0;
    for (std::size_t j = 0; j < row.size(); ++j)
      phase += t[j] * row[j];
    re += std::cos(phase);
    im += std::sin(phase);
  }
  const auto n = static_cast<double>(batch.rows());
  return {re / n, im / n};
}

inline constexpr std::size_t min_tail_exceedances = 30;

struct TailEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
  std::size_t exceedances = 0;
  bool reliable = false; // at least min_tail_exceedances points
};

/// n P{X/|X| in B, |X| > r b_n} estimated from the batch. The norm matches
/// the subset: L-inf for face segments, Euclidean for angle intervals.
/// `n` defaults to the batch size.
inline TailEstimate tail_measure_estimate(const SampleBatch &batch,
                                          const SphereSubset &subset, double r,
                                          double b_n, double n = 0.0) {
  if (std::holds_alternative<AtomSet>(subset))
    throw incompatible_subset("tail estimates need a face segment or an arc");
  if (!(r > 0.0) || !(b_n > 0.0))
    throw non_positive_argument("r and b_n must be positive");
  if (batch.empty())
    throw invalid_argument("tail estimate of an empty batch");
  if (n <= 0.0)
    n = static_cast<double>(batch.rows());
  const bool linf = std::holds_alternative<FaceSegment>(subset);
  const double threshold = r * b_n;
  std::vector<double> unit(batch.dim());
  std::size_t hits = 0;
  for (std::size_t i = 0; i < batch.rows(); ++i) {
    const auto row = batch.row(i);
    double norm = 0.0;
    for (double v : row)
      norm = linf ? std::max(norm, std::abs(v)) : norm + v * v;
    if (!linf)
      norm = std::sqrt(norm);
    if (!(norm > threshold))
      continue;
    for (std::size_t j = 0; j < row.size(); ++j)
      unit[j] = row[j] / norm;
    const bool inside = std::visit(
        [&](const auto &s) -> bool {
          if constexpr (std::is_same_v<std::decay_t<decltype(s)>, AtomSet>)
            return false;
          else
            return s.contains(unit);
        },
        subset);
    hits += inside ? 1 : 0;
  }
  const auto total = static_cast<double>(batch.rows());
  const double freq = static_cast<double>(hits) / total;
  TailEstimate est;
  est.exceedances = hits;
  est.estimate = n * freq;
  est.standard_error = n * std::sqrt(freq * (1.0 - freq) / total);
  est.reliable = hits >= min_tail_exceedances;
  return est;
}

/// Upper tail P{chi2_df > x}.
inline double chi_square_pvalue(double statistic, std::size_t df) {
  if (df == 0)
    return 1.0;
  if (!(statistic > 0.0))
    return 1.0;
  return boost::math::gamma_q(0.5 * static_cast<double>(df), 0.5 * statistic);
}

struct TauReport {
  double hit_probability = 0.0;   // p_j
  std::vector<std::string> cells; // "1", "2", ..., ">m"
  std::vector<std::size_t> observed;
  std::vector<double> expected;
  double statistic = 0.0;
  std::size_t df = 0;
  double p_value = 1.0;
};

/// Probability that a direction drawn from sigma / sigma(S) has coordinate j
/// equal to 1.
inline double face_hit_probability(const SpectralMeasure &measure,
                                   std::size_t j) {
  if (j >= measure.dim())
    throw invalid_argument("coordinate index out of range");
  if (measure.sphere() != Sphere::linf)
    throw invalid_argument("face hits are defined on the L-inf sphere");
  if (std::holds_alternative<UniformLInf>(measure.variant()))
    return 1.0 / static_cast<double>(measure.dim());
  const auto &list = measure.atom_list();
  double mass = 0.0;
  for (std::size_t i = 0; i < list.size(); ++i)
    if (std::abs(list.point(i)[j] - 1.0) <= sphere_tolerance)
      mass += list.weights[i];
  return mass / measure.total_mass();
}

/// Records tau_j = min{i : eps_i^(j) = 1} over `draws` direction sequences
/// and tests it against the geometric law (1 - p_j)^(n-1) p_j. Cells are
/// {1, ..., m, > m} with m <= 20, shrunk until every expected count is >= 5.
inline TauReport tau_law_check(const MaxStableLaw &law, std::size_t j,
                               std::size_t draws, std::uint64_t seed) {
  const auto &measure = law.measure();
  const double p = face_hit_probability(measure, j);
  if (!(p > 0.0))
    throw invalid_argument("coordinate is never hit by the spectral measure");
  if (draws == 0)
    throw invalid_argument("tau check needs at least one draw");

  constexpr std::size_t max_cells = 20;
  constexpr std::size_t max_steps = 100'000'000;
  std::vector<std::size_t> taus(draws);
  RandomStream rng(seed);
  std::vector<double> eps(measure.dim());
  for (auto &tau : taus) {
    std::size_t i = 1;
    for (;; ++i) {
      measure.sample_direction(rng, std::span<double>(eps));
      if (std::abs(eps[j] - 1.0) <= sphere_tolerance)
        break;
      if (i == max_steps)
        throw truncation_exceeded("tau_j exceeded the step cap");
    }
    tau = i;
  }

  const auto n = static_cast<double>(draws);
  const auto cell_expected = [&](std::size_t k) {
    return n * std::pow(1.0 - p, static_cast<double>(k - 1)) * p;
  };
  const auto tail_expected = [&](std::size_t m) {
    return n * std::pow(1.0 - p, static_cast<double>(m));
  };
  std::size_t m = max_cells;
  while (m > 1 && (cell_expected(m) < 5.0 ||
                   (tail_expected(m) > 0.0 && tail_expected(m) < 5.0)))
    --m;

  TauReport report;
  report.hit_probability = p;
  for (std::size_t k = 1; k <= m; ++k) {
    report.cells.push_back(std::to_string(k));
    report.expected.push_back(cell_expected(k));
  }
  const bool has_tail = tail_expected(m) > 0.0;
  if (has_tail) {
    report.cells.push_back(">" + std::to_string(m));
    report.expected.push_back(tail_expected(m));
  }
  report.observed.assign(report.cells.size(), 0);
  for (auto tau : taus) {
    if (tau <= m)
      ++report.observed[tau - 1];
    else if (has_tail)
      ++report.observed.back();
  }
  for (std::size_t c = 0; c < report.cells.size(); ++c) {
    const double diff = static_cast<double>(report.observed[c]) -
                        report.expected[c];
    report.statistic += diff * diff / report.expected[c];
  }
  report.df = report.cells.size() - 1;
  report.p_value = chi_square_pvalue(report.statistic, report.df);
  return report;
}

enum class Normalization { counts, density };

/// 2-D binned counts (or density) over the first two columns of a batch.
/// counts is row-major with one row per x bin.
struct HistogramGrid {
  std::vector<double> x_edges;
  std::vector<double> y_edges;
  std::vector<double> counts;
  std::size_t n_total = 0;
  Normalization normalization = Normalization::counts;

  std::size_t nx() const { return x_edges.size() - 1; }
  std::size_t ny() const { return y_edges.size() - 1; }
  double at(std::size_t i, std::size_t j) const { return counts[i * ny() + j]; }
  double binned() const {
    double s = 0.0;
    for (double c : counts)
      s += c;
    return s;
  }

  /// Adds another shard with identical edges (counts mode only).
  HistogramGrid &operator+=(const HistogramGrid &other) {
    if (other.x_edges != x_edges || other.y_edges != y_edges ||
        normalization != Normalization::counts ||
        other.normalization != Normalization::counts)
      throw invalid_argument("histogram shards are not compatible");
    for (std::size_t k = 0; k < counts.size(); ++k)
      counts[k] += other.counts[k];
    n_total += other.n_total;
    return *this;
  }
};

/// `bins + 1` equally spaced edges from lo to hi.
inline std::vector<double> linear_edges(double lo, double hi, std::size_t bins) {
  if (bins == 0 || !(hi > lo))
    throw invalid_argument("edges need bins >= 1 and hi > lo");
  std::vector<double> e(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i)
    e[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(bins);
  e.back() = hi;
  return e;
}

namespace detail {

inline void check_edges(const std::vector<double> &e) {
  if (e.size() < 2)
    throw invalid_argument("histogram needs at least two edges");
  for (std::size_t i = 1; i < e.size(); ++i)
    if (!(e[i] > e[i - 1]))
      throw invalid_argument("histogram edges must be strictly increasing");
}

/// Bin of v, or npos when outside. Bins are [e_i, e_{i+1}); the last one is
/// closed on the right.
inline std::size_t find_bin(const std::vector<double> &e, double v) {
  if (!(v >= e.front() && v <= e.back()))
    return static_cast<std::size_t>(-1);
  if (v == e.back())
    return e.size() - 2;
  const auto it = std::upper_bound(e.begin(), e.end(), v);
  return static_cast<std::size_t>(it - e.begin()) - 1;
}

} // namespace detail

/// Points outside the grid count towards n_total only. Density mode divides
/// each count by n_total times the bin area.
inline HistogramGrid histogram2d(const SampleBatch &batch,
                                 std::vector<double> x_edges,
                                 std::vector<double> y_edges,
                                 Normalization normalization = Normalization::counts) {
  detail::check_edges(x_edges);
  detail::check_edges(y_edges);
  if (!batch.empty() && batch.dim() < 2)
    throw invalid_argument("histogram2d needs at least two columns");
  HistogramGrid g;
  g.x_edges = std::move(x_edges);
  g.y_edges = std::move(y_edges);
  g.counts.assign(g.nx() * g.ny(), 0.0);
  g.n_total = batch.rows();
  g.normalization = normalization;
  constexpr auto npos = static_cast<std::size_t>(-1);
  for (std::size_t r = 0; r < batch.rows(); ++r) {
    const auto i = detail::find_bin(g.x_edges, batch(r, 0));
    const auto j = detail::find_bin(g.y_edges, batch(r, 1));
    if (i != npos && j != npos)
      g.counts[i * g.ny() + j] += 1.0;
  }
  if (normalization == Normalization::density && g.n_total > 0) {
    const auto n = static_cast<double>(g.n_total);
    for (std::size_t i = 0; i < g.nx(); ++i)
      for (std::size_t j = 0; j < g.ny(); ++j) {
        const double area = (g.x_edges[i + 1] - g.x_edges[i]) *
                            (g.y_edges[j + 1] - g.y_edges[j]);
        g.counts[i * g.ny() + j] /= n * area;
      }
  }
  return g;
}

/// Plain-text grid: "# xedges: ...", "# yedges: ...", "# n: N", then one
/// whitespace-separated row of values per x bin.
inline void write_grid(std::ostream &os, const HistogramGrid &g) {
  std::string line;
  const auto emit_edges = [&](const char *name, const std::vector<double> &e) {
    line = "# ";
    line += name;
    line += ":";
    for (double v : e) {
      line += ' ';
      append_double(line, v);
    }
    os << line << '\n';
  };
  emit_edges("xedges", g.x_edges);
  emit_edges("yedges", g.y_edges);
  os << "# n: " << g.n_total << '\n';
  for (std::size_t i = 0; i < g.nx(); ++i) {
    line.clear();
    for (std::size_t j = 0; j < g.ny(); ++j) {
      if (j)
        line += ' ';
      append_double(line, g.at(i, j));
    }
    os << line << '\n';
  }
}

inline HistogramGrid read_grid(std::istream &is) {
  HistogramGrid g;
  std::string line;
  const auto read_values = [](std::istringstream &ss, std::vector<double> &out) {
    std::string tok;
    while (ss >> tok) {
      double v;
      if (!parse_double(tok, v))
        throw invalid_argument("bad number in grid file: " + tok);
      out.push_back(v);
    }
  };
  bool have_n = false;
  while (std::getline(is, line)) {
    if (line.empty())
      continue;
    if (line[0] == '#') {
      std::istringstream ss(line.substr(1));
      std::string key;
      ss >> key;
      if (key == "xedges:")
        read_values(ss, g.x_edges);
      else if (key == "yedges:")
        read_values(ss, g.y_edges);
      else if (key == "n:") {
        ss >> g.n_total;
        have_n = true;
      }
      continue;
    }
    std::istringstream ss(line);
    read_values(ss, g.counts);
  }
  detail::check_edges(g.x_edges);
  detail::check_edges(g.y_edges);
  if (!have_n || g.counts.size() != g.nx() * g.ny())
    throw invalid_argument("grid file is incomplete");
  return g;
}

} // namespace lepage

#endif // LEPAGE_STATS_HPP
