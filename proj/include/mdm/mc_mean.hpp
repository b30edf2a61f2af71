#pragma once

// Monte Carlo estimation of E[rho^{(x)m}].
//
// Samples are split into fixed-size chunks; chunk c always draws from
// RandomStream(seed, c). Chunk accumulators are merged in chunk order by a
// binary-counter pairwise tree, so the estimate depends only on (seed,
// n_samples, chunk_size) and never on thread scheduling or worker count.

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <map>
#include <mutex>
#include <thread>
#include <vector>

#include "mdm/measures.hpp"
#include "mdm/tensor_core.hpp"

namespace mdm {

struct MeanEstimate {
  ComplexMatrix mean;
  Eigen::MatrixXd stderr;  // per entry: max of real- and imaginary-part standard errors
  std::size_t n_samples = 0;
  MeasureSpec spec;
  Scenario scenario;
  std::uint64_t seed = 0;
  unsigned workers = 1;

  double stderr_max() const { return stderr.size() == 0 ? 0.0 : stderr.maxCoeff(); }
};

struct EstimateOptions {
  std::size_t cap = kDefaultDimensionCap;
  std::size_t chunk_size = 4096;
};

/// Worker count from MDM_WORKERS if set, otherwise the hardware concurrency.
inline unsigned default_workers() {
  if (const char* env = std::getenv("MDM_WORKERS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace detail {

/// Running mean and sum of squared deviations for the real and imaginary parts
/// of every entry (Welford; merged with Chan's pairwise update).
class MomentAccumulator {
 public:
  explicit MomentAccumulator(Index dim) : dim_(dim), mean_(Eigen::ArrayXd::Zero(2 * dim * dim)), m2_(mean_) {}

  void add(const ComplexMatrix& x) {
    const Eigen::Map<const Eigen::ArrayXd> v(reinterpret_cast<const double*>(x.data()), 2 * x.size());
    ++count_;
    const Eigen::ArrayXd delta = v - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (v - mean_);
  }

  void merge(const MomentAccumulator& other) {
    if (other.count_ == 0) return;
    if (count_ == 0) {
      *this = other;
      return;
    }
    const double na = static_cast<double>(count_);
    const double nb = static_cast<double>(other.count_);
    const double n = na + nb;
    const Eigen::ArrayXd delta = other.mean_ - mean_;
    mean_ += delta * (nb / n);
    m2_ += other.m2_ + delta.square() * (na * nb / n);
    count_ += other.count_;
  }

  std::size_t count() const { return count_; }

  ComplexMatrix mean() const {
    ComplexMatrix out(dim_, dim_);
    Eigen::Map<Eigen::ArrayXd>(reinterpret_cast<double*>(out.data()), 2 * out.size()) = mean_;
    return out;
  }

  Eigen::MatrixXd stderr() const {
    Eigen::MatrixXd out(dim_, dim_);
    const double n = static_cast<double>(count_);
    const double denom = count_ > 1 ? (n - 1.0) * n : std::numeric_limits<double>::infinity();
    for (Index k = 0; k < dim_ * dim_; ++k) {
      const double re = std::sqrt(std::max(0.0, m2_(2 * k)) / denom);
      const double im = std::sqrt(std::max(0.0, m2_(2 * k + 1)) / denom);
      out.data()[k] = std::max(re, im);  // same column-major layout as ComplexMatrix
    }
    return out;
  }

 private:
  Index dim_;
  std::size_t count_ = 0;
  Eigen::ArrayXd mean_;
  Eigen::ArrayXd m2_;
};

/// Folds accumulators arriving in chunk order into a pairwise tree.
class PairwiseReducer {
 public:
  void push(MomentAccumulator acc) {
    stack_.push_back({0, std::move(acc)});
    while (stack_.size() >= 2 && stack_[stack_.size() - 1].level == stack_[stack_.size() - 2].level) {
      auto top = std::move(stack_.back());
      stack_.pop_back();
      stack_.back().acc.merge(top.acc);
      ++stack_.back().level;
    }
  }

  MomentAccumulator finish(Index dim) && {
    if (stack_.empty()) return MomentAccumulator(dim);
    while (stack_.size() >= 2) {
      auto top = std::move(stack_.back());
      stack_.pop_back();
      stack_.back().acc.merge(top.acc);
    }
    return std::move(stack_.back().acc);
  }

 private:
  struct Node {
    int level;
    MomentAccumulator acc;
  };
  std::vector<Node> stack_;
};

}  // namespace detail

/// Sample mean of rho^{(x)m} with per-entry standard errors.
inline MeanEstimate estimate_mean(const MeasureSpec& spec, int m, std::size_t n_samples, std::uint64_t seed,
                                  unsigned workers, EstimateOptions options = {}) {
  spec.validate();
  if (n_samples == 0) throw DomainError("estimate_mean: zero samples");
  if (n_samples < 100) throw DomainError("estimate_mean: at least 100 samples are required");
  if (options.chunk_size == 0) throw DomainError("estimate_mean: chunk size must be positive");
  Scenario scenario(spec.factor_dimensions(), m);
  const auto dim = static_cast<Index>(scenario.total_dimension(options.cap));
  if (workers == 0) workers = default_workers();

  const std::size_t n_chunks = (n_samples + options.chunk_size - 1) / options.chunk_size;
  const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(workers, n_chunks));
  const std::size_t window = 4 * static_cast<std::size_t>(threads);

  std::mutex mu;
  std::condition_variable cv;
  std::map<std::size_t, detail::MomentAccumulator> pending;
  std::size_t next_to_merge = 0;
  std::atomic<std::size_t> next_chunk{0};
  detail::PairwiseReducer reducer;
  std::exception_ptr failure;

  auto run_chunk = [&](std::size_t chunk) {
    detail::MomentAccumulator acc(dim);
    RandomStream rng(seed, chunk);
    const std::size_t begin = chunk * options.chunk_size;
    const std::size_t end = std::min(n_samples, begin + options.chunk_size);
    for (std::size_t s = begin; s < end; ++s) {
      const ComplexMatrix rho = detail::draw_matrix(spec, rng);
      acc.add(m == 1 ? rho : kron_power(rho, m, options.cap));
    }
    return acc;
  };

  auto worker = [&] {
    try {
      for (;;) {
        const std::size_t chunk = next_chunk.fetch_add(1);
        if (chunk >= n_chunks) return;
        {
          // Bound the reorder buffer when one chunk lags behind the others.
          std::unique_lock lock(mu);
          cv.wait(lock, [&] { return chunk < next_to_merge + window || failure; });
          if (failure) return;
        }
        auto acc = run_chunk(chunk);
        std::lock_guard lock(mu);
        pending.emplace(chunk, std::move(acc));
        while (!pending.empty() && pending.begin()->first == next_to_merge) {
          reducer.push(std::move(pending.begin()->second));
          pending.erase(pending.begin());
          ++next_to_merge;
        }
        cv.notify_all();
      }
    } catch (...) {
      std::lock_guard lock(mu);
      if (!failure) failure = std::current_exception();
      cv.notify_all();
    }
  };

  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  const auto total = std::move(reducer).finish(dim);
  MeanEstimate est;
  est.mean = total.mean();
  est.stderr = total.stderr();
  est.n_samples = total.count();
  est.spec = spec;
  est.scenario = scenario;
  est.seed = seed;
  est.workers = workers;
  return est;
}

struct ConvergenceReport {
  double max_abs_delta = 0;
  double max_z = 0;
  std::size_t entries_over_gate = 0;
  std::size_t zero_pattern_mismatches = 0;
  double gate = 5.0;

  bool zero_pattern_agrees() const { return zero_pattern_mismatches == 0; }
};

/// Entrywise comparison of an estimate with a reference matrix. z = |delta| / stderr;
/// an entry counts as zero in the estimate when |value| <= gate * stderr.
inline ConvergenceReport convergence_report(const MeanEstimate& est, const ComplexMatrix& reference,
                                            double gate = 5.0) {
  if (est.mean.rows() != reference.rows() || est.mean.cols() != reference.cols()) {
    throw DimensionError("convergence_report: dimension mismatch");
  }
  ConvergenceReport rep;
  rep.gate = gate;
  for (Index r = 0; r < reference.rows(); ++r)
    for (Index c = 0; c < reference.cols(); ++c) {
      const double delta = std::abs(est.mean(r, c) - reference(r, c));
      const double se = est.stderr(r, c);
      double z = 0;
      if (se > 0) {
        z = delta / se;
      } else if (delta > 1e-12) {
        z = std::numeric_limits<double>::infinity();
      }
      rep.max_abs_delta = std::max(rep.max_abs_delta, delta);
      rep.max_z = std::max(rep.max_z, z);
      if (z > gate) ++rep.entries_over_gate;
      const bool ref_zero = std::abs(reference(r, c)) <= 1e-14;
      const bool est_zero = std::abs(est.mean(r, c)) <= gate * se + 1e-14;
      if (ref_zero != est_zero) ++rep.zero_pattern_mismatches;
    }
  return rep;
}

}  // namespace mdm
