#include "cesdp/annealer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cesdp {

void AnnealParams::validate() const {
  if (!(initial_temperature > 0.0)) throw std::invalid_argument("tau must be positive");
  if (!(visiting > 1.0)) throw std::invalid_argument("rho must exceed 1");
  if (outer_iterations == 0) throw std::invalid_argument("omega must be at least 1");
  if (inner_evaluations == 0) throw std::invalid_argument("n_inner must be at least 1");
}

double visiting_temperature(const AnnealParams& params, std::size_t k) {
  const double e = params.visiting - 1.0;
  const double num = std::expm1(e * std::log(2.0));
  const double den = std::expm1(e * std::log1p(static_cast<double>(k)));
  return params.initial_temperature * num / den;
}

double reflect_into(double x, Interval interval) {
  const double w = interval.width();
  if (!(w > 0.0)) return interval.lo;
  if (interval.contains(x)) return x;
  double m = std::fmod(x - interval.lo, 2.0 * w);
  if (m < 0.0) m += 2.0 * w;
  if (m > w) m = 2.0 * w - m;
  // fmod is exact, but lo + m can round past hi.
  return std::min(interval.hi, std::max(interval.lo, interval.lo + m));
}

namespace {

double checked(const std::function<double(double)>& objective, double x) {
  const double f = objective(x);
  if (!std::isfinite(f)) {
    throw AnnealAbort("objective returned non-finite value " + std::to_string(f) + " at x = " +
                      std::to_string(x));
  }
  return f;
}

}  // namespace

AnnealResult anneal(const std::function<double(double)>& objective, Interval interval,
                    const AnnealParams& params, Rng& rng) {
  params.validate();
  if (!(interval.lo <= interval.hi)) throw std::invalid_argument("empty annealing interval");

  double current = rng.uniform(interval.lo, interval.hi);
  double f_current = checked(objective, current);
  AnnealResult best{current, f_current, 0};

  for (std::size_t k = 1; k <= params.outer_iterations; ++k) {
    const double temperature = visiting_temperature(params, k);
    for (std::size_t s = 0; s < params.inner_evaluations; ++s) {
      const double candidate = reflect_into(current + temperature * rng.cauchy(), interval);
      const double f_candidate = checked(objective, candidate);
      ++best.evaluations;

      const double delta = f_candidate - f_current;
      bool accept = delta <= 0.0;
      if (!accept) {
        accept = temperature > 0.0 && rng.uniform01() < std::exp(-delta / temperature);
      }
      if (accept) {
        current = candidate;
        f_current = f_candidate;
      }
      if (f_candidate < best.f_best) {
        best.x_best = candidate;
        best.f_best = f_candidate;
      }
    }
  }
  return best;
}

}  // namespace cesdp
