#ifndef LEPAGE_BATCH_HPP
#define LEPAGE_BATCH_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <span>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "lepage/random.hpp"
#include "lepage/samplers.hpp"

namespace lepage {

struct BatchMeta {
  std::uint64_t seed = 0;
  std::string law;
  std::string truncation; // "exact" or the number of terms
  std::size_t n = 0;
};

/// n x d matrix of draws, row-major.
class SampleBatch {
public:
  SampleBatch() = default;
  SampleBatch(std::size_t rows, std::size_t dim)
      : rows_(rows), dim_(dim), data_(rows * dim) {}

  std::size_t rows() const { return rows_; }
  std::size_t dim() const { return dim_; }
  bool empty() const { return rows_ == 0; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * dim_, dim_}; }
  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * dim_, dim_};
  }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * dim_ + j];
  }

  std::vector<double> column(std::size_t j) const {
    std::vector<double> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      out[i] = data_[i * dim_ + j];
    return out;
  }

  std::span<const double> data() const { return data_; }
  std::span<double> data() { return data_; }

  BatchMeta meta;

private:
  std::size_t rows_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> data_;
};

/// Rows per substream. Row i always comes from substream i / batch_chunk_rows,
/// whatever the number of worker threads.
inline constexpr std::size_t batch_chunk_rows = 1024;

/// Fills an n x dim batch with `draw(rng, row)` using `threads` workers.
/// The result is a function of (seed, n) only.
template <class DrawFn>
SampleBatch generate_batch(std::size_t n, std::size_t dim, std::uint64_t seed,
                           std::size_t threads, DrawFn draw) {
  SampleBatch batch(n, dim);
  batch.meta.seed = seed;
  batch.meta.n = n;
  const std::size_t chunks = (n + batch_chunk_rows - 1) / batch_chunk_rows;
  if (chunks == 0)
    return batch;
  threads = std::clamp<std::size_t>(threads, 1, chunks);

  std::atomic<std::size_t> next_chunk{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t c = next_chunk.fetch_add(1);
      if (c >= chunks)
        return;
      try {
        RandomStream rng = RandomStream::substream(seed, c);
        const std::size_t end = std::min(n, (c + 1) * batch_chunk_rows);
        for (std::size_t i = c * batch_chunk_rows; i < end; ++i)
          draw(rng, batch.row(i));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure)
          failure = std::current_exception();
        next_chunk.store(chunks);
        return;
      }
    }
  };

  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t)
      pool.emplace_back(worker);
  }
  if (failure)
    std::rethrow_exception(failure);
  return batch;
}

/// How draws of a law are produced.
struct ExactMax {
  std::size_t max_terms = default_max_terms;
};
struct TruncatedMax {
  std::size_t k = 1;
};
struct PartialSum {
  std::size_t k = 1;
};

using MaxMode = std::variant<ExactMax, TruncatedMax>;

inline SampleBatch sample_batch(const MaxStableLaw &law, const MaxMode &mode,
                                std::size_t n, std::uint64_t seed,
                                std::size_t threads = 1) {
  SampleBatch batch;
  std::string truncation;
  if (const auto *exact = std::get_if<ExactMax>(&mode)) {
    const std::size_t cap = exact->max_terms;
    batch = generate_batch(n, law.dim(), seed, threads,
                           [&](RandomStream &rng, std::span<double> row) {
                             sample_max_stable(law, rng, row, cap);
                           });
    truncation = "exact";
  } else {
    const std::size_t k = std::get<TruncatedMax>(mode).k;
    if (k == 0)
      throw invalid_argument("k must be at least 1");
    batch = generate_batch(n, law.dim(), seed, threads,
                           [&](RandomStream &rng, std::span<double> row) {
                             sample_max_stable_fixed_k(law, rng, k, row);
                           });
    truncation = std::to_string(k);
  }
  batch.meta.law = law.description();
  batch.meta.truncation = truncation;
  return batch;
}

inline SampleBatch sample_batch(const StableLaw &law, PartialSum mode,
                                std::size_t n, std::uint64_t seed,
                                std::size_t threads = 1) {
  if (!law.lepage_valid())
    throw unsupported_regime(
        "LePage sums need alpha < 1 or a symmetric spectral measure");
  if (mode.k == 0)
    throw invalid_argument("k must be at least 1");
  auto batch = generate_batch(n, law.dim(), seed, threads,
                              [&](RandomStream &rng, std::span<double> row) {
                                sample_stable(law, rng, mode.k, row);
                              });
  batch.meta.law = law.description();
  batch.meta.truncation = std::to_string(mode.k);
  return batch;
}

/// Batch of normalized Pareto sums with `summands` terms each.
inline SampleBatch sample_doa_batch(double alpha, const SpectralMeasure &measure,
                                    std::size_t summands, std::size_t n,
                                    std::uint64_t seed,
                                    std::size_t threads = 1) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw invalid_argument("domain-of-attraction sums need alpha in (0, 1)");
  if (summands == 0)
    throw invalid_argument("number of summands must be at least 1");
  auto batch = generate_batch(n, measure.dim(), seed, threads,
                              [&](RandomStream &rng, std::span<double> row) {
                                sample_doa_sum(alpha, measure, summands, rng,
                                               row);
                              });
  batch.meta.law = "doa(alpha=" + std::to_string(alpha) + "," +
                   describe(measure) + ")";
  batch.meta.truncation = "summands=" + std::to_string(summands);
  return batch;
}

} // namespace lepage

#endif // LEPAGE_BATCH_HPP
