#ifndef LEPAGE_ERROR_HPP
#define LEPAGE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace lepage {

/// Base class for every error raised by the library.
class error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A spectral measure (or its JSON description) violates its invariants.
class invalid_measure : public error {
public:
  using error::error;
};

/// A sphere subset cannot be evaluated against the given measure.
class incompatible_subset : public error {
public:
  using error::error;
};

/// Generic out-of-domain argument (alpha outside its range, x <= 0, ...).
class invalid_argument : public error {
public:
  using error::error;
};

class non_positive_argument : public invalid_argument {
public:
  using invalid_argument::invalid_argument;
};

/// The exact max-stable sampler did not reach its stopping rule.
class truncation_exceeded : public error {
public:
  using error::error;
};

/// Some coordinate of a max-stable law has scale constant 0.
class degenerate_marginal : public error {
public:
  using error::error;
};

/// The LePage partial sum is not valid for this law (alpha >= 1 and
/// non-symmetric spectral measure).
class unsupported_regime : public error {
public:
  using error::error;
};

} // namespace lepage

#endif // LEPAGE_ERROR_HPP
