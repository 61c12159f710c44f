#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "lepage/random.hpp"
#include "lepage/spectral.hpp"
#include "lepage/spectral_json.hpp"
#include "oracles.hpp"

using namespace lepage;
using std::numbers::pi;

namespace {

SpectralMeasure ex1_measure(double p1 = 0.5, double p2 = 0.5) {
  return SpectralMeasure::atoms(Sphere::linf, {{1.0, 0.0}, {0.0, 1.0}}, {p1, p2});
}

SpectralMeasure ex3_measure(double p, double q, double a, double b) {
  return SpectralMeasure::atoms(Sphere::linf, {{1.0, a}, {b, 1.0}}, {p, q});
}

} // namespace

TEST(SampleDirection, TwoAxisAtomsHalfAndHalf) {
  const auto m = ex1_measure();
  RandomStream rng(1);
  const int n = 100000;
  int first = 0;
  for (int i = 0; i < n; ++i) {
    const auto e = m.sample_direction(rng);
    const bool is_e1 = e == std::vector<double>{1.0, 0.0};
    const bool is_e2 = e == std::vector<double>{0.0, 1.0};
    ASSERT_TRUE(is_e1 || is_e2);
    first += is_e1;
  }
  EXPECT_NEAR(static_cast<double>(first) / n, 0.5, 0.005);
}

TEST(SampleDirection, SingleAtomIsConstant) {
  const auto m = SpectralMeasure::atoms(Sphere::euclidean, {{0.6, 0.8}}, {2.0});
  RandomStream rng(2);
  for (int i = 0; i < 100; ++i)
    EXPECT_EQ(m.sample_direction(rng), (std::vector<double>{0.6, 0.8}));
}

TEST(SampleDirection, UniformLInfFaceProbability) {
  const auto m = SpectralMeasure::uniform_linf(2);
  RandomStream rng(3);
  const int n = 100000;
  int hits = 0;
  for (int i = 0; i < n; ++i) {
    const auto e = m.sample_direction(rng);
    ASSERT_NEAR(std::max(e[0], e[1]), 1.0, 1e-12);
    hits += e[0] == 1.0;
  }
  const double se = std::sqrt(0.25 / n);
  EXPECT_NEAR(static_cast<double>(hits) / n, 0.5, 3 * se);
}

TEST(SampleDirection, DirectionsLieOnTheSphere) {
  RandomStream rng(4);
  for (auto kind : {BuiltinDensity::f1, BuiltinDensity::f2, BuiltinDensity::f3,
                    BuiltinDensity::uniform}) {
    const auto m = SpectralMeasure::angular_density(kind, 3.0);
    for (int i = 0; i < 10000; ++i) {
      const auto e = m.sample_direction(rng);
      ASSERT_NEAR(std::hypot(e[0], e[1]), 1.0, 1e-12);
    }
  }
  const auto u = SpectralMeasure::uniform_linf(4);
  for (int i = 0; i < 10000; ++i) {
    const auto e = u.sample_direction(rng);
    double mx = 0.0;
    for (double x : e) {
      ASSERT_GE(x, 0.0);
      mx = std::max(mx, x);
    }
    ASSERT_NEAR(mx, 1.0, 1e-12);
  }
}

TEST(SampleDirection, ArcFrequenciesMatchMeasure) {
  RandomStream rng(5);
  const int n = 100000;
  for (auto kind : {BuiltinDensity::f1, BuiltinDensity::f2, BuiltinDensity::f3}) {
    const auto m = SpectralMeasure::angular_density(kind);
    std::vector<AngleInterval> arcs;
    for (int k = 0; k < 8; ++k)
      arcs.push_back({k * pi / 4 + 0.1, k * pi / 4 + 0.6});
    std::vector<int> hits(arcs.size(), 0);
    for (int i = 0; i < n; ++i) {
      const auto e = m.sample_direction(rng);
      for (std::size_t a = 0; a < arcs.size(); ++a)
        hits[a] += arcs[a].contains(e);
    }
    for (std::size_t a = 0; a < arcs.size(); ++a) {
      const double p = measure_of(m, arcs[a]);
      const double se = std::sqrt(std::max(p * (1 - p), 1e-12) / n);
      EXPECT_NEAR(static_cast<double>(hits[a]) / n, p, 4 * se + 1e-12)
          << to_string(kind) << " arc " << a;
    }
  }
}

TEST(SampleDirection, AtomAndSegmentFrequencies) {
  const auto m = ex3_measure(0.3, 0.7, 0.5, 0.25);
  const auto u = SpectralMeasure::uniform_linf(2);
  RandomStream rng(6);
  const int n = 100000;
  const FaceSegment segs[] = {{0, 0.0, 0.5}, {1, 0.2, 0.9}, {0, 0.4, 0.6}};
  for (const auto *measure : {&m, &u}) {
    std::vector<int> hits(3, 0);
    for (int i = 0; i < n; ++i) {
      const auto e = measure->sample_direction(rng);
      for (int s = 0; s < 3; ++s)
        hits[s] += segs[s].contains(e);
    }
    for (int s = 0; s < 3; ++s) {
      const double p = measure_of(*measure, segs[s]) / measure->total_mass();
      const double se = std::sqrt(std::max(p * (1 - p), 1e-12) / n);
      EXPECT_NEAR(static_cast<double>(hits[s]) / n, p, 4 * se + 1e-12);
    }
  }
}

TEST(MarginalAlphaMoment, Example1GivesWeights) {
  const auto m = ex1_measure(0.3, 0.7);
  EXPECT_DOUBLE_EQ(marginal_alpha_moment(m, 0, 0.75), 0.3);
  EXPECT_DOUBLE_EQ(marginal_alpha_moment(m, 1, 0.75), 0.7);
}

TEST(MarginalAlphaMoment, UniformMatchesClosedConstant) {
  const auto m = SpectralMeasure::uniform_linf(2);
  const double alpha = 0.75;
  EXPECT_NEAR(marginal_alpha_moment(m, 0, alpha), 2.75 / 3.5, 1e-10);
  EXPECT_NEAR(marginal_alpha_moment(m, 1, alpha), oracle::ex2_constant(alpha, 2),
              1e-10);
  // 1/d + (d-1)/d * int_0^1 t^alpha dt, for a few dimensions.
  for (int d = 1; d <= 5; ++d) {
    const auto md = SpectralMeasure::uniform_linf(d);
    const double direct = 1.0 / d + (d - 1.0) / d / (alpha + 1.0);
    EXPECT_NEAR(marginal_alpha_moment(md, 0, alpha), direct, 1e-10);
    EXPECT_NEAR(direct, oracle::ex2_constant(alpha, d), 1e-14);
  }
}

TEST(MarginalAlphaMoment, SingleAtom) {
  const double a = 0.4, alpha = 1.3;
  const auto m = SpectralMeasure::atoms(Sphere::linf, {{1.0, a}}, {1.0});
  EXPECT_DOUBLE_EQ(marginal_alpha_moment(m, 1, alpha), std::pow(a, alpha));
}

TEST(MarginalAlphaMoment, ExplicitSumForAtoms) {
  const std::vector<std::vector<double>> pts = {
      {1.0, 0.2, 0.7}, {0.3, 1.0, 0.0}, {0.9, 0.5, 1.0}};
  const std::vector<double> w = {0.2, 1.1, 0.6};
  const auto m = SpectralMeasure::atoms(Sphere::linf, pts, w);
  for (std::size_t j = 0; j < 3; ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < 3; ++i)
      sum += w[i] * std::pow(pts[i][j], 1.7);
    EXPECT_DOUBLE_EQ(marginal_alpha_moment(m, j, 1.7), sum);
  }
}

TEST(MarginalAlphaMoment, RejectsNegativeCoordinates) {
  const auto f1 = SpectralMeasure::angular_density(BuiltinDensity::f1);
  EXPECT_THROW(marginal_alpha_moment(f1, 0, 0.75), invalid_argument);
  const auto atoms =
      SpectralMeasure::atoms(Sphere::euclidean, {{-1.0, 0.0}, {0.0, 1.0}}, {1, 1});
  EXPECT_THROW(marginal_alpha_moment(atoms, 1, 0.75), invalid_argument);
  EXPECT_THROW(marginal_alpha_moment(ex1_measure(), 0, 0.0), invalid_argument);
  EXPECT_THROW(marginal_alpha_moment(ex1_measure(), 2, 1.0), invalid_argument);
}

TEST(MeasureOf, Example3Segment) {
  const double p = 0.3, q = 0.7, a = 0.5, b = 0.25;
  const auto m = ex3_measure(p, q, a, b);
  EXPECT_DOUBLE_EQ(measure_of(m, FaceSegment{0, 0.4, 0.6}), p);
  EXPECT_DOUBLE_EQ(measure_of(m, FaceSegment{1, 0.1, 0.3}), q);
  EXPECT_DOUBLE_EQ(measure_of(m, FaceSegment{0, 0.6, 0.9}), 0.0);
  EXPECT_DOUBLE_EQ(measure_of(m, AtomSet{{0, 1}}), 1.0);
}

TEST(MeasureOf, EmptySubset) {
  EXPECT_EQ(measure_of(ex1_measure(), AtomSet{}), 0.0);
  EXPECT_EQ(measure_of(SpectralMeasure::uniform_linf(2), AtomSet{}), 0.0);
}

TEST(MeasureOf, UniformFaceSegment) {
  const auto m = SpectralMeasure::uniform_linf(2, 2.0);
  EXPECT_DOUBLE_EQ(measure_of(m, FaceSegment{0, 0.0, 0.5}), 2.0 * 0.25);
}

TEST(MeasureOf, AngularArcs) {
  const auto f1 = SpectralMeasure::angular_density(BuiltinDensity::f1);
  EXPECT_NEAR(measure_of(f1, AngleInterval{0.0, pi / 2}), 0.5, 1e-10);
  EXPECT_NEAR(measure_of(f1, AngleInterval{pi / 2, pi}), 0.0, 1e-10);
  const auto f3 = SpectralMeasure::angular_density(BuiltinDensity::f3, 2.0);
  EXPECT_NEAR(measure_of(f3, AngleInterval{0.0, 2 * pi}), 2.0, 1e-10);
  EXPECT_NEAR(measure_of(f3, AngleInterval{0.0, pi / 4}), 2.0 / 8, 1e-10);
}

TEST(MeasureOf, IncompatibleSubsets) {
  const auto u = SpectralMeasure::uniform_linf(2);
  EXPECT_THROW(measure_of(u, AtomSet{{0}}), incompatible_subset);
  EXPECT_THROW(measure_of(u, AngleInterval{0, 1}), incompatible_subset);
  const auto f1 = SpectralMeasure::angular_density(BuiltinDensity::f1);
  EXPECT_THROW(measure_of(f1, FaceSegment{0, 0, 1}), incompatible_subset);
  EXPECT_THROW(measure_of(ex1_measure(), AtomSet{{5}}), incompatible_subset);
  EXPECT_THROW(measure_of(u, FaceSegment{0, 0.6, 0.2}), incompatible_subset);
}

TEST(Scaling, LinearInTotalMass) {
  const double c = 3.7;
  const auto m = ex3_measure(0.3, 0.7, 0.5, 0.25);
  const auto u = SpectralMeasure::uniform_linf(2);
  for (const auto *base : {&m, &u}) {
    const auto s = base->scaled(c);
    EXPECT_DOUBLE_EQ(s.total_mass(), c * base->total_mass());
    const FaceSegment seg{0, 0.2, 0.7};
    EXPECT_DOUBLE_EQ(measure_of(s, seg), c * measure_of(*base, seg));
    EXPECT_NEAR(marginal_alpha_moment(s, 1, 0.8),
                c * marginal_alpha_moment(*base, 1, 0.8), 1e-14);
  }
  const auto f3 = SpectralMeasure::angular_density(BuiltinDensity::f3);
  EXPECT_NEAR(measure_of(f3.scaled(c), AngleInterval{0.2, 1.4}),
              c * measure_of(f3, AngleInterval{0.2, 1.4}), 1e-12);
}

TEST(StrictStability, Examples) {
  const auto f3 = SpectralMeasure::angular_density(BuiltinDensity::f3);
  const auto one = SpectralMeasure::atoms(Sphere::euclidean, {{0.6, 0.8}}, {1});
  const std::vector<double> zero{0.0, 0.0};
  EXPECT_TRUE(check_strict_stability(one, 0.75, zero));
  EXPECT_TRUE(check_strict_stability(f3, 0.75, zero));
  EXPECT_TRUE(check_strict_stability(f3, 1.0, zero));
  const auto sym = SpectralMeasure::atoms(Sphere::euclidean,
                                          {{0.6, 0.8}, {-0.6, -0.8}}, {1, 1});
  EXPECT_TRUE(check_strict_stability(sym, 1.0, zero));
  EXPECT_FALSE(check_strict_stability(one, 1.0, zero));
  EXPECT_FALSE(check_strict_stability(f3, 1.5, std::vector<double>{0.1, 0.0}));
  EXPECT_THROW(check_strict_stability(SpectralMeasure::uniform_linf(2), 1.0, zero),
               invalid_argument);
}

TEST(Symmetry, Examples) {
  EXPECT_TRUE(check_symmetry(SpectralMeasure::angular_density(BuiltinDensity::f1)));
  EXPECT_TRUE(check_symmetry(SpectralMeasure::angular_density(BuiltinDensity::f2)));
  EXPECT_TRUE(check_symmetry(SpectralMeasure::angular_density(BuiltinDensity::f3)));
  EXPECT_TRUE(
      check_symmetry(SpectralMeasure::angular_density(BuiltinDensity::uniform)));
  EXPECT_FALSE(check_symmetry(
      SpectralMeasure::atoms(Sphere::euclidean, {{0.6, 0.8}}, {1})));
  EXPECT_TRUE(check_symmetry(SpectralMeasure::atoms(
      Sphere::euclidean, {{1.0}, {-1.0}}, {0.5, 0.5})));
  EXPECT_FALSE(check_symmetry(SpectralMeasure::atoms(
      Sphere::euclidean, {{1.0}, {-1.0}}, {0.5, 0.6})));
  EXPECT_FALSE(check_symmetry(SpectralMeasure::uniform_linf(2)));
}

TEST(Construction, Validation) {
  EXPECT_THROW(SpectralMeasure::atoms(Sphere::euclidean, {{0.6, 0.81}}, {1}),
               invalid_measure);
  EXPECT_THROW(SpectralMeasure::atoms(Sphere::linf, {{1.0, -0.1}}, {1}),
               invalid_measure);
  EXPECT_THROW(SpectralMeasure::atoms(Sphere::linf, {{0.9, 0.5}}, {1}),
               invalid_measure);
  EXPECT_THROW(SpectralMeasure::atoms(Sphere::linf, {{1.0, 0.5}}, {-1}),
               invalid_measure);
  EXPECT_THROW(SpectralMeasure::atoms(Sphere::linf, {{1.0, 0.5}, {1.0}}, {1, 1}),
               invalid_measure);
  EXPECT_THROW(SpectralMeasure::atoms(Sphere::linf, {}, {}), invalid_measure);
  EXPECT_THROW(SpectralMeasure::uniform_linf(2, 0.0), invalid_measure);
  EXPECT_THROW(SpectralMeasure::angular_density(BuiltinDensity::f1, -1.0),
               invalid_measure);
  const auto m = ex1_measure(0.25, 0.5);
  EXPECT_DOUBLE_EQ(m.total_mass(), 0.75);
}

TEST(AngularDensity, TableMatchesOracle) {
  const auto f1 = SpectralMeasure::angular_density(BuiltinDensity::f1, 2.0);
  const auto f3 = SpectralMeasure::angular_density(BuiltinDensity::f3);
  for (double t = -3.0; t < 7.0; t += 0.37) {
    EXPECT_DOUBLE_EQ(f1.density_at(t), 2.0 * oracle::f1(t));
    EXPECT_NEAR(f3.density_at(t), oracle::f3(t), 1e-15);
  }
}

TEST(MeasureJson, ParsesAllVariants) {
  using nlohmann::json;
  const auto atoms = measure_from_json(json::parse(R"({
    "sphere": "linf", "dim": 2,
    "variant": {"atoms": [{"point": [1, 0.2], "weight": 0.5},
                          {"point": [0.3, 1], "weight": 0.25}]},
    "total_mass": 0.75})"));
  EXPECT_TRUE(atoms.is_atoms());
  EXPECT_DOUBLE_EQ(atoms.total_mass(), 0.75);
  const auto u = measure_from_json(json::parse(
      R"({"sphere": "linf", "dim": 3, "variant": {"uniform_linf": {}}, "total_mass": 2})"));
  EXPECT_EQ(u.dim(), 3u);
  EXPECT_DOUBLE_EQ(u.total_mass(), 2.0);
  const auto f2 = measure_from_json(json::parse(
      R"({"sphere": "euclid", "dim": 2, "variant": {"angular_density": "f2"}})"));
  EXPECT_TRUE(std::holds_alternative<AngularDensity>(f2.variant()));
  const auto round = measure_from_json(measure_to_json(atoms));
  EXPECT_EQ(round.atom_list().points, atoms.atom_list().points);
  EXPECT_EQ(round.atom_list().weights, atoms.atom_list().weights);
}

TEST(MeasureJson, RejectsBadInput) {
  using nlohmann::json;
  const char *bad[] = {
      R"({"sphere": "l2", "dim": 2, "variant": {"uniform_linf": {}}})",
      R"({"sphere": "linf", "variant": {"uniform_linf": {}}})",
      R"({"sphere": "euclid", "dim": 2, "variant": {"uniform_linf": {}}})",
      R"({"sphere": "euclid", "dim": 2, "variant": {"angular_density": "f9"}})",
      R"({"sphere": "linf", "dim": 2, "variant": {"atoms": [{"point": [1, 0.2], "weight": 0.5}]}, "total_mass": 1.0})",
      R"({"sphere": "linf", "dim": 3, "variant": {"atoms": [{"point": [1, 0.2], "weight": 0.5}]}})",
      R"({"sphere": "linf", "dim": 2, "variant": {}})",
      R"([1, 2])",
  };
  for (const char *text : bad)
    EXPECT_THROW(measure_from_json(json::parse(text)), invalid_measure) << text;
}
