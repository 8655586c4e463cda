#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cesdp {

enum class ObjectiveKind { kAbsoluteSum, kSphere, kAckley, kLevy };

inline constexpr std::array<ObjectiveKind, 4> kAllObjectives = {
    ObjectiveKind::kAbsoluteSum, ObjectiveKind::kSphere, ObjectiveKind::kAckley,
    ObjectiveKind::kLevy};

/// Canonical tag: "absolute-sum", "sphere", "ackley" or "levy".
std::string_view to_string(ObjectiveKind kind);

/// Throws std::invalid_argument for unknown tags.
ObjectiveKind parse_objective(std::string_view tag);

struct Interval {
  double lo;
  double hi;

  [[nodiscard]] bool contains(double x) const { return x >= lo && x <= hi; }
  [[nodiscard]] double width() const { return hi - lo; }
};

/// Raised when a design vector component lies outside the objective's domain.
class DomainError : public std::domain_error {
 public:
  DomainError(std::size_t index, double value, ObjectiveKind kind);
  [[nodiscard]] std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

/// Evaluation domain shared by every component of the design vector.
Interval domain(ObjectiveKind kind);

/// Evaluates the objective over x = [own, neighbors ascending...].
/// Any length >= 1 is accepted; every component must lie in domain(kind).
double evaluate(ObjectiveKind kind, std::span<const double> x);

/// Global minimizer of dimension dim (objective value zero).
std::vector<double> optimum(ObjectiveKind kind, std::size_t dim);

/**
 * @brief One-dimensional slice x -> evaluate(kind, [x, fixed...]).
 *
 * Every objective here is a function of per-component sums, so the
 * contribution of the fixed neighbor components is folded once at
 * construction and each call costs O(1). Agrees with evaluate() up to
 * floating-point reassociation of those sums.
 *
 * Does not check the domain; callers keep x inside domain(kind).
 */
class SliceObjective {
 public:
  SliceObjective(ObjectiveKind kind, std::span<const double> fixed);

  double operator()(double x) const;

  [[nodiscard]] ObjectiveKind kind() const { return kind_; }
  [[nodiscard]] std::size_t dimension() const { return dim_; }

 private:
  ObjectiveKind kind_;
  std::size_t dim_;
  // Absolute-sum / sphere: sum over fixed components.
  // Ackley: sum of squares and sum of cosines over fixed components.
  // Levy: sum of the interior terms plus the tail term of the last component.
  double fixed_a_ = 0.0;
  double fixed_b_ = 0.0;
};

}  // namespace cesdp
