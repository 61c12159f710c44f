#ifndef LEPAGE_ARRIVALS_HPP
#define LEPAGE_ARRIVALS_HPP

#include <cmath>
#include <cstddef>
#include <limits>

#include "lepage/error.hpp"
#include "lepage/random.hpp"

namespace lepage {

/// Arrival times Gamma_1 < Gamma_2 < ... of a unit-rate Poisson process on
/// (0, inf), built as cumulative sums of standard exponentials drawn from a
/// borrowed generator.
template <class Rng = RandomStream> class ArrivalStream {
public:
  explicit ArrivalStream(Rng &rng) noexcept : rng_(&rng) {}

  double next_gamma() {
    double next = last_ + rng_->exponential();
    // An exponential draw of exactly 0, or one lost to rounding, must not
    // repeat the previous arrival.
    if (!(next > last_))
      next = std::nextafter(last_, std::numeric_limits<double>::infinity());
    last_ = next;
    ++count_;
    return last_;
  }

  double last_gamma() const noexcept { return last_; }
  std::size_t count() const noexcept { return count_; }

private:
  Rng *rng_;
  double last_ = 0.0;
  std::size_t count_ = 0;
};

/// gamma^(-1/alpha). Applied to Poisson arrivals it yields the points of a
/// Poisson process on (0, inf) with m((r, inf)) = r^(-alpha).
inline double radius(double gamma, double alpha) {
  if (!(gamma > 0.0))
    throw non_positive_argument("arrival time must be positive");
  if (!(alpha > 0.0))
    throw invalid_argument("alpha must be positive");
  return std::pow(gamma, -1.0 / alpha);
}

} // namespace lepage

#endif // LEPAGE_ARRIVALS_HPP
