#include "rotset/lp.hpp"

#include <cmath>
#include <limits>
#include <optional>

#include "rotset/errors.hpp"

namespace rotset::lp {

namespace {

constexpr double kEps = 1e-10;

inline bool negative(const Rational& x) { return x < 0; }
inline bool positive(const Rational& x) { return x > 0; }
inline bool nonzero(const Rational& x) { return x != 0; }
inline bool negative(double x) { return x < -kEps; }
inline bool positive(double x) { return x > kEps; }
inline bool nonzero(double x) { return std::abs(x) > kEps; }

template <class T>
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : cols_(cols), a_(rows, std::vector<T>(cols + 1)), basis_(rows) {}

  std::size_t rows() const { return a_.size(); }
  std::size_t cols() const { return cols_; }
  T& at(std::size_t r, std::size_t c) { return a_[r][c]; }
  T& rhs(std::size_t r) { return a_[r][cols_]; }
  std::size_t& basic(std::size_t r) { return basis_[r]; }
  std::vector<T>& objective() { return obj_; }

  void set_objective(const std::vector<T>& costs) {
    obj_.assign(cols_ + 1, T(0));
    for (std::size_t j = 0; j < cols_; ++j) obj_[j] = costs[j];
    for (std::size_t r = 0; r < rows(); ++r) {
      const T& cb = costs[basis_[r]];
      if (!nonzero(cb)) continue;
      for (std::size_t j = 0; j <= cols_; ++j)
        if (nonzero(a_[r][j])) obj_[j] -= cb * a_[r][j];
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    T inv = T(1) / a_[r][c];
    for (std::size_t j = 0; j <= cols_; ++j)
      if (nonzero(a_[r][j])) a_[r][j] *= inv;
    a_[r][c] = T(1);
    for (std::size_t i = 0; i < rows(); ++i) {
      if (i == r || !nonzero(a_[i][c])) continue;
      T f = a_[i][c];
      for (std::size_t j = 0; j <= cols_; ++j)
        if (nonzero(a_[r][j])) a_[i][j] -= f * a_[r][j];
      a_[i][c] = T(0);
    }
    if (nonzero(obj_[c])) {
      T f = obj_[c];
      for (std::size_t j = 0; j <= cols_; ++j)
        if (nonzero(a_[r][j])) obj_[j] -= f * a_[r][j];
      obj_[c] = T(0);
    }
    basis_[r] = c;
  }

  void drop_row(std::size_t r) {
    a_.erase(a_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
  }

  /// Runs simplex iterations over eligible columns. Returns false if unbounded.
  bool optimize(const std::vector<bool>& eligible) {
    // Dantzig's rule first; Bland's rule afterwards guarantees termination.
    const std::size_t dantzig_budget = 4 * (rows() + cols_) + 16;
    for (std::size_t iter = 0;; ++iter) {
      const bool bland = iter >= dantzig_budget;
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (!eligible[j] || !negative(obj_[j])) continue;
        if (!enter || (!bland && obj_[j] < obj_[*enter])) enter = j;
        if (bland) break;
      }
      if (!enter) return true;
      std::optional<std::size_t> leave;
      T best_ratio{};
      for (std::size_t r = 0; r < rows(); ++r) {
        if (!positive(a_[r][*enter])) continue;
        T ratio = a_[r][cols_] / a_[r][*enter];
        if (!leave || ratio < best_ratio || (ratio == best_ratio && basis_[r] < basis_[*leave])) {
          leave = r;
          best_ratio = ratio;
        }
      }
      if (!leave) return false;
      pivot(*leave, *enter);
    }
  }

 private:
  std::size_t cols_;
  std::vector<std::vector<T>> a_;
  std::vector<std::size_t> basis_;
  std::vector<T> obj_;
};

}  // namespace

template <class T>
Solution<T> solve(const Problem<T>& problem) {
  const std::size_t n = problem.num_vars;
  const std::size_t m = problem.constraints.size();
  if (problem.objective.size() != n) throw ValidationError("LP objective length mismatch");

  // Column layout: originals, one slack per inequality, then artificials.
  std::size_t slack_count = 0;
  for (const auto& c : problem.constraints) {
    if (c.coeffs.size() != n) throw ValidationError("LP constraint length mismatch");
    if (c.sense != Sense::eq) ++slack_count;
  }
  std::vector<std::optional<std::size_t>> slack_col(m);
  std::vector<bool> needs_artificial(m, true);
  std::vector<bool> flip(m, false);
  {
    std::size_t next = n;
    for (std::size_t i = 0; i < m; ++i) {
      const auto& c = problem.constraints[i];
      flip[i] = negative(c.rhs);
      if (c.sense != Sense::eq) {
        slack_col[i] = next++;
        // After flipping, the slack coefficient is +1 exactly when it can start basic.
        const bool plus = (c.sense == Sense::le) != flip[i];
        needs_artificial[i] = !plus;
      }
    }
  }
  std::size_t artificial_count = 0;
  for (std::size_t i = 0; i < m; ++i) artificial_count += needs_artificial[i];
  const std::size_t cols = n + slack_count + artificial_count;

  Tableau<T> tab(m, cols);
  std::vector<bool> is_artificial(cols, false);
  {
    std::size_t next_art = n + slack_count;
    for (std::size_t i = 0; i < m; ++i) {
      const auto& c = problem.constraints[i];
      const T sign = flip[i] ? T(-1) : T(1);
      for (std::size_t j = 0; j < n; ++j)
        if (nonzero(c.coeffs[j])) tab.at(i, j) = sign * c.coeffs[j];
      tab.rhs(i) = sign * c.rhs;
      if (slack_col[i]) tab.at(i, *slack_col[i]) = sign * (c.sense == Sense::le ? T(1) : T(-1));
      if (needs_artificial[i]) {
        tab.at(i, next_art) = T(1);
        is_artificial[next_art] = true;
        tab.basic(i) = next_art++;
      } else {
        tab.basic(i) = *slack_col[i];
      }
    }
  }

  std::vector<bool> eligible(cols, true);
  if (artificial_count > 0) {
    std::vector<T> phase1(cols, T(0));
    for (std::size_t j = 0; j < cols; ++j)
      if (is_artificial[j]) phase1[j] = T(1);
    tab.set_objective(phase1);
    tab.optimize(eligible);
    // objective row rhs holds -(phase-one value)
    if (negative(tab.objective()[cols])) return {Status::infeasible, {}, T{}};
    // Drive basic artificials out or drop redundant rows.
    for (std::size_t r = 0; r < tab.rows();) {
      if (!is_artificial[tab.basic(r)]) {
        ++r;
        continue;
      }
      std::optional<std::size_t> col;
      for (std::size_t j = 0; j < cols && !col; ++j)
        if (!is_artificial[j] && nonzero(tab.at(r, j))) col = j;
      if (col) {
        tab.pivot(r, *col);
        ++r;
      } else {
        tab.drop_row(r);
      }
    }
    for (std::size_t j = 0; j < cols; ++j)
      if (is_artificial[j]) eligible[j] = false;
  }

  std::vector<T> costs(cols, T(0));
  for (std::size_t j = 0; j < n; ++j) costs[j] = problem.objective[j];
  tab.set_objective(costs);
  if (!tab.optimize(eligible)) return {Status::unbounded, {}, T{}};

  Solution<T> sol;
  sol.status = Status::optimal;
  sol.x.assign(n, T(0));
  for (std::size_t r = 0; r < tab.rows(); ++r)
    if (tab.basic(r) < n) sol.x[tab.basic(r)] = tab.rhs(r);
  sol.value = T(0);
  for (std::size_t j = 0; j < n; ++j) sol.value += problem.objective[j] * sol.x[j];
  return sol;
}

template Solution<Rational> solve(const Problem<Rational>&);
template Solution<double> solve(const Problem<double>&);

}  // namespace rotset::lp
