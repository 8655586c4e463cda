#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>

#include "cesdp/objectives.hpp"
#include "cesdp/random.hpp"

namespace cesdp {

struct AnnealParams {
  double initial_temperature = 0.1;  // tau
  double visiting = 2.62;            // rho, generalized-annealing visiting exponent
  std::size_t outer_iterations = 1;  // omega
  std::size_t inner_evaluations = 50;

  /// Throws std::invalid_argument on tau <= 0, rho <= 1, omega == 0 or n_inner == 0.
  void validate() const;
};

struct AnnealResult {
  double x_best = 0.0;
  double f_best = 0.0;
  /// Candidate evaluations, always outer_iterations * inner_evaluations.
  /// The random starting point is evaluated once in addition.
  std::size_t evaluations = 0;
};

/// Raised when the objective returns NaN or infinity.
class AnnealAbort : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Temperature at outer iteration k >= 1:
/// tau * (2^(rho-1) - 1) / ((1+k)^(rho-1) - 1). Equals tau at k = 1.
double visiting_temperature(const AnnealParams& params, std::size_t k);

/// Maps any real into [lo, hi] by mirror reflection at the bounds.
double reflect_into(double x, Interval interval);

/**
 * Bounded one-dimensional simulated annealing.
 *
 * Starts at a uniform-random point of the interval. During outer iteration k
 * every one of the inner candidates is current + T(k) * C with C a standard
 * Cauchy variate, reflected into the interval. Improvements are
 * always accepted, worsening moves with probability exp(-delta / T(k)).
 * Returns the best point ever evaluated.
 */
AnnealResult anneal(const std::function<double(double)>& objective, Interval interval,
                    const AnnealParams& params, Rng& rng);

}  // namespace cesdp
