#pragma once

#include <cstddef>
#include <vector>

#include "rotset/rational.hpp"

/// Dense two-phase primal simplex. Instantiated for Rational (exact
/// predicates) and double (bulk distance filters whose near-threshold
/// verdicts are re-decided exactly by the caller).
namespace rotset::lp {

enum class Sense { le, eq, ge };
enum class Status { optimal, infeasible, unbounded };

template <class T>
struct Constraint {
  std::vector<T> coeffs;  // one per variable
  Sense sense = Sense::le;
  T rhs{};
};

/// minimize objective . x  subject to constraints, x >= 0.
template <class T>
struct Problem {
  std::size_t num_vars = 0;
  std::vector<T> objective;
  std::vector<Constraint<T>> constraints;
};

template <class T>
struct Solution {
  Status status = Status::infeasible;
  std::vector<T> x;
  T value{};
};

template <class T>
Solution<T> solve(const Problem<T>& problem);

extern template Solution<Rational> solve(const Problem<Rational>&);
extern template Solution<double> solve(const Problem<double>&);

}  // namespace rotset::lp
