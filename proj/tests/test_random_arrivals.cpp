#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "lepage/arrivals.hpp"
#include "lepage/random.hpp"

using namespace lepage;

TEST(RandomStream, SameSeedSameSequence) {
  RandomStream a(7), b(7);
  for (int i = 0; i < 1000; ++i)
    ASSERT_EQ(a(), b());
}

TEST(RandomStream, SubstreamsDiffer) {
  auto a = RandomStream::substream(7, 0);
  auto b = RandomStream::substream(7, 1);
  auto c = RandomStream::substream(8, 0);
  EXPECT_NE(a(), b());
  EXPECT_NE(RandomStream::substream(7, 0)(), c());
  EXPECT_EQ(RandomStream::substream(7, 3), RandomStream::substream(7, 3));
}

TEST(RandomStream, UniformRanges) {
  RandomStream rng(11);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform_open0();
    ASSERT_GT(u, 0.0);
    ASSERT_LE(u, 1.0);
    const double v = rng.uniform();
    ASSERT_GE(v, 0.0);
    ASSERT_LT(v, 1.0);
  }
}

TEST(ArrivalStream, StrictlyIncreasing) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    RandomStream rng(seed);
    ArrivalStream arrivals(rng);
    double last = 0.0;
    for (int k = 0; k < 2000; ++k) {
      const double g = arrivals.next_gamma();
      ASSERT_GT(g, last);
      last = g;
    }
    EXPECT_EQ(arrivals.count(), 2000u);
    EXPECT_EQ(arrivals.last_gamma(), last);
  }
}

TEST(ArrivalStream, ReproducibleBitForBit) {
  RandomStream r1(99), r2(99);
  ArrivalStream a(r1), b(r2);
  for (int k = 0; k < 1000; ++k)
    ASSERT_EQ(a.next_gamma(), b.next_gamma());
}

TEST(ArrivalStream, FirstArrivalHasUnitMean) {
  RandomStream rng(2024);
  const int streams = 100000;
  double sum = 0.0;
  for (int s = 0; s < streams; ++s) {
    ArrivalStream arrivals(rng);
    sum += arrivals.next_gamma();
  }
  EXPECT_NEAR(sum / streams, 1.0, 0.01);
}

TEST(ArrivalStream, LawOfLargeNumbers) {
  RandomStream rng(5);
  ArrivalStream arrivals(rng);
  double g = 0.0;
  const int k = 100000;
  for (int i = 0; i < k; ++i)
    g = arrivals.next_gamma();
  EXPECT_LT(std::abs(g / k - 1.0), 0.02);
}

TEST(Radius, Values) {
  EXPECT_EQ(radius(1.0, 0.75), 1.0);
  EXPECT_DOUBLE_EQ(radius(0.5, 1.0), 2.0);
  EXPECT_DOUBLE_EQ(radius(4.0, 2.0), 0.5);
}

TEST(Radius, RejectsBadArguments) {
  EXPECT_THROW(radius(0.0, 1.0), non_positive_argument);
  EXPECT_THROW(radius(-1.0, 1.0), non_positive_argument);
  EXPECT_THROW(radius(1.0, 0.0), invalid_argument);
  EXPECT_THROW(radius(1.0, -0.5), invalid_argument);
}

// Number of radii above r is Poisson(r^-alpha): mean and variance both 10.
TEST(Radius, ExceedanceCountIsPoisson) {
  RandomStream rng(77);
  const int streams = 10000;
  const double alpha = 1.0, r = 0.1;
  std::vector<double> counts(streams);
  for (int s = 0; s < streams; ++s) {
    ArrivalStream arrivals(rng);
    int c = 0;
    while (radius(arrivals.next_gamma(), alpha) > r)
      ++c;
    counts[s] = c;
  }
  double mean = 0.0;
  for (double c : counts)
    mean += c;
  mean /= streams;
  double var = 0.0;
  for (double c : counts)
    var += (c - mean) * (c - mean);
  var /= streams - 1;
  EXPECT_NEAR(mean, 10.0, 0.4);
  EXPECT_NEAR(var / mean, 1.0, 0.1);
}
