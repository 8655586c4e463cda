#include "cesdp/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace cesdp {

namespace {

constexpr double kAckleyC1 = 20.0;
constexpr double kAckleyC2 = 0.2;
constexpr double kAckleyC3 = 2.0 * std::numbers::pi;

double square(double v) { return v * v; }

double levy_w(double x) { return 1.0 + (x - 1.0) / 4.0; }

double levy_head(double w) { return square(std::sin(std::numbers::pi * w)); }

double levy_interior(double w) {
  return square(w - 1.0) * (1.0 + 10.0 * square(std::sin(std::numbers::pi * w + 1.0)));
}

double levy_tail(double w) {
  return square(w - 1.0) * (1.0 + square(std::sin(2.0 * std::numbers::pi * w)));
}

double ackley_from_sums(double sum_sq, double sum_cos, double dim) {
  return -kAckleyC1 * std::exp(-kAckleyC2 * std::sqrt(sum_sq / dim)) -
         std::exp(sum_cos / dim) + std::numbers::e + kAckleyC1;
}

std::string domain_message(std::size_t index, double value, ObjectiveKind kind) {
  const Interval d = domain(kind);
  std::ostringstream os;
  os << "component " << index << " = " << value << " outside " << to_string(kind)
     << " domain [" << d.lo << ", " << d.hi << "]";
  return os.str();
}

}  // namespace

std::string_view to_string(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::kAbsoluteSum: return "absolute-sum";
    case ObjectiveKind::kSphere: return "sphere";
    case ObjectiveKind::kAckley: return "ackley";
    case ObjectiveKind::kLevy: return "levy";
  }
  return "unknown";
}

ObjectiveKind parse_objective(std::string_view tag) {
  for (ObjectiveKind k : kAllObjectives) {
    if (to_string(k) == tag) return k;
  }
  throw std::invalid_argument("unknown objective '" + std::string(tag) +
                              "' (expected absolute-sum, sphere, ackley or levy)");
}

DomainError::DomainError(std::size_t index, double value, ObjectiveKind kind)
    : std::domain_error(domain_message(index, value, kind)), index_(index) {}

Interval domain(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::kAbsoluteSum: return {-10.0, 10.0};
    case ObjectiveKind::kSphere: return {-5.12, 5.12};
    case ObjectiveKind::kAckley: return {-32.768, 32.768};
    case ObjectiveKind::kLevy: return {-10.0, 10.0};
  }
  throw std::invalid_argument("invalid objective kind");
}

double evaluate(ObjectiveKind kind, std::span<const double> x) {
  if (x.empty()) throw std::invalid_argument("design vector must have at least one component");
  const Interval d = domain(kind);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!d.contains(x[i])) throw DomainError(i, x[i], kind);
  }

  switch (kind) {
    case ObjectiveKind::kAbsoluteSum: {
      double s = 0.0;
      for (double v : x) s += std::abs(v);
      return s;
    }
    case ObjectiveKind::kSphere: {
      double s = 0.0;
      for (double v : x) s += v * v;
      return s;
    }
    case ObjectiveKind::kAckley: {
      double sum_sq = 0.0;
      double sum_cos = 0.0;
      for (double v : x) {
        sum_sq += v * v;
        sum_cos += std::cos(kAckleyC3 * v);
      }
      // Cancellation near the optimum can leave a negative residue of a few ulps.
      return std::max(0.0, ackley_from_sums(sum_sq, sum_cos, static_cast<double>(x.size())));
    }
    case ObjectiveKind::kLevy: {
      const std::size_t last = x.size() - 1;
      double s = levy_head(levy_w(x[0]));
      for (std::size_t m = 0; m < last; ++m) s += levy_interior(levy_w(x[m]));
      s += levy_tail(levy_w(x[last]));
      return s;
    }
  }
  throw std::invalid_argument("invalid objective kind");
}

std::vector<double> optimum(ObjectiveKind kind, std::size_t dim) {
  if (dim == 0) throw std::invalid_argument("optimum dimension must be positive");
  return std::vector<double>(dim, kind == ObjectiveKind::kLevy ? 1.0 : 0.0);
}

SliceObjective::SliceObjective(ObjectiveKind kind, std::span<const double> fixed)
    : kind_(kind), dim_(fixed.size() + 1) {
  switch (kind) {
    case ObjectiveKind::kAbsoluteSum:
      for (double v : fixed) fixed_a_ += std::abs(v);
      break;
    case ObjectiveKind::kSphere:
      for (double v : fixed) fixed_a_ += v * v;
      break;
    case ObjectiveKind::kAckley:
      for (double v : fixed) {
        fixed_a_ += v * v;
        fixed_b_ += std::cos(kAckleyC3 * v);
      }
      break;
    case ObjectiveKind::kLevy:
      if (!fixed.empty()) {
        for (std::size_t m = 0; m + 1 < fixed.size(); ++m) fixed_a_ += levy_interior(levy_w(fixed[m]));
        fixed_a_ += levy_tail(levy_w(fixed.back()));
      }
      break;
  }
}

double SliceObjective::operator()(double x) const {
  switch (kind_) {
    case ObjectiveKind::kAbsoluteSum: return std::abs(x) + fixed_a_;
    case ObjectiveKind::kSphere: return x * x + fixed_a_;
    case ObjectiveKind::kAckley:
      return std::max(0.0, ackley_from_sums(x * x + fixed_a_, std::cos(kAckleyC3 * x) + fixed_b_,
                                            static_cast<double>(dim_)));
    case ObjectiveKind::kLevy: {
      const double w = levy_w(x);
      if (dim_ == 1) return levy_head(w) + levy_tail(w);
      return levy_head(w) + levy_interior(w) + fixed_a_;
    }
  }
  return 0.0;
}

}  // namespace cesdp
