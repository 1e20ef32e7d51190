#include "rotset/polytope.hpp"

#include <algorithm>
#include <cmath>

#include "rotset/errors.hpp"
#include "rotset/linalg.hpp"
#include "rotset/lp.hpp"

namespace rotset {

// ---------------------------------------------------------------- NormSpec

NormSpec NormSpec::linf(int genus) {
  NormSpec n;
  n.genus_ = genus;
  n.tag_ = "linf";
  return n;
}

NormSpec NormSpec::block_sup(const BlockDecomposition& d) {
  BlockDecomposition full = d.completed();
  const std::size_t dim = 2 * static_cast<std::size_t>(d.genus());
  // Columns are the block basis vectors; coordinates come from the inverse.
  linalg::Matrix basis(dim, linalg::Row(dim));
  std::size_t col = 0;
  for (const auto& b : full.blocks())
    for (const auto& v : b.basis()) {
      for (std::size_t i = 0; i < dim; ++i) basis[i][col] = v[i];
      ++col;
    }
  auto inv = linalg::inverse(basis);
  if (!inv) throw InconsistencyError("completed block decomposition is singular");
  NormSpec n;
  n.genus_ = d.genus();
  n.tag_ = "block-sup";
  bool identity = true;
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      if ((*inv)[i][j] != (i == j ? 1 : 0)) identity = false;
  if (!identity) {
    n.matrix_ = *inv;
    n.matrix_d_.assign(dim, std::vector<double>(dim));
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) n.matrix_d_[i][j] = to_double((*inv)[i][j]);
  }
  return n;
}

HomologyVector NormSpec::apply(const HomologyVector& v) const {
  if (matrix_.empty()) return v;
  HomologyVector out(v.genus());
  for (std::size_t i = 0; i < matrix_.size(); ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < v.dim(); ++j)
      if (matrix_[i][j] != 0 && v[j] != 0) s += matrix_[i][j] * v[j];
    out[i] = s;
  }
  return out;
}

std::vector<double> NormSpec::apply(std::span<const double> v) const {
  if (matrix_d_.empty()) return {v.begin(), v.end()};
  std::vector<double> out(v.size(), 0.0);
  for (std::size_t i = 0; i < matrix_d_.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += matrix_d_[i][j] * v[j];
  return out;
}

// ---------------------------------------------------------------- LP builders

namespace {

/// Feasibility of sum_k lambda_k pts_k = x, sum lambda = 1, lambda >= 0.
/// Coordinates on which every point and x vanish are skipped.
template <class T>
std::optional<std::vector<T>> solve_combination(const std::vector<std::vector<T>>& pts,
                                                const std::vector<T>& x) {
  const std::size_t k = pts.size();
  lp::Problem<T> prob;
  prob.num_vars = k;
  prob.objective.assign(k, T(0));
  for (std::size_t i = 0; i < x.size(); ++i) {
    bool any = x[i] != T(0);
    for (std::size_t j = 0; j < k && !any; ++j) any = pts[j][i] != T(0);
    if (!any) continue;
    lp::Constraint<T> c;
    c.coeffs.resize(k);
    for (std::size_t j = 0; j < k; ++j) c.coeffs[j] = pts[j][i];
    c.sense = lp::Sense::eq;
    c.rhs = x[i];
    prob.constraints.push_back(std::move(c));
  }
  prob.constraints.push_back({std::vector<T>(k, T(1)), lp::Sense::eq, T(1)});
  auto sol = lp::solve(prob);
  if (sol.status != lp::Status::optimal) return std::nullopt;
  return sol.x;
}

/// min s  s.t.  |x_i - sum_k lambda_k pts_k[i]| <= s, sum lambda = 1.
template <class T>
T solve_distance(const std::vector<std::vector<T>>& pts, const std::vector<T>& x) {
  const std::size_t k = pts.size();
  const std::size_t s = k;  // index of the bound variable
  lp::Problem<T> prob;
  prob.num_vars = k + 1;
  prob.objective.assign(k + 1, T(0));
  prob.objective[s] = T(1);
  for (std::size_t i = 0; i < x.size(); ++i) {
    bool any = x[i] != T(0);
    for (std::size_t j = 0; j < k && !any; ++j) any = pts[j][i] != T(0);
    if (!any) continue;
    lp::Constraint<T> up, down;
    up.coeffs.assign(k + 1, T(0));
    down.coeffs.assign(k + 1, T(0));
    for (std::size_t j = 0; j < k; ++j) {
      up.coeffs[j] = pts[j][i];
      down.coeffs[j] = -pts[j][i];
    }
    up.coeffs[s] = T(-1);
    down.coeffs[s] = T(-1);
    up.sense = down.sense = lp::Sense::le;
    up.rhs = x[i];
    down.rhs = -x[i];
    prob.constraints.push_back(std::move(up));
    prob.constraints.push_back(std::move(down));
  }
  lp::Constraint<T> sum;
  sum.coeffs.assign(k + 1, T(1));
  sum.coeffs[s] = T(0);
  sum.sense = lp::Sense::eq;
  sum.rhs = T(1);
  prob.constraints.push_back(std::move(sum));
  auto sol = lp::solve(prob);
  if (sol.status != lp::Status::optimal) throw InconsistencyError("distance LP failed to reach an optimum");
  return sol.value;
}

/// Largest t such that some c in [-1,1]^d has c.(v - w) >= t for every other point w.
Rational exposure_margin(const HomologyVector& v, const std::vector<HomologyVector>& others) {
  if (others.empty()) return 1;
  const std::size_t d = v.dim();
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < d; ++i) {
    bool any = false;
    for (const auto& w : others) any = any || v[i] != w[i];
    if (any) active.push_back(i);
  }
  if (active.empty()) return 0;  // v coincides with another point
  const std::size_t a = active.size();
  // variables: c+ (a), c- (a), t
  lp::Problem<Rational> prob;
  prob.num_vars = 2 * a + 1;
  prob.objective.assign(2 * a + 1, Rational(0));
  prob.objective[2 * a] = -1;
  for (const auto& w : others) {
    lp::Constraint<Rational> c;
    c.coeffs.assign(2 * a + 1, Rational(0));
    for (std::size_t k = 0; k < a; ++k) {
      Rational diff = v[active[k]] - w[active[k]];
      c.coeffs[k] = -diff;
      c.coeffs[a + k] = diff;
    }
    c.coeffs[2 * a] = 1;
    c.sense = lp::Sense::le;
    c.rhs = 0;
    prob.constraints.push_back(std::move(c));
  }
  for (std::size_t k = 0; k < 2 * a; ++k) {
    lp::Constraint<Rational> box;
    box.coeffs.assign(2 * a + 1, Rational(0));
    box.coeffs[k] = 1;
    box.sense = lp::Sense::le;
    box.rhs = 1;
    prob.constraints.push_back(std::move(box));
  }
  auto sol = lp::solve(prob);
  if (sol.status != lp::Status::optimal) throw InconsistencyError("exposure LP failed");
  return -sol.value;
}

std::vector<std::vector<Rational>> as_rows(const std::vector<HomologyVector>& vs) {
  std::vector<std::vector<Rational>> rows;
  rows.reserve(vs.size());
  for (const auto& v : vs) rows.emplace_back(v.coords().begin(), v.coords().end());
  return rows;
}

std::vector<Rational> as_row(const HomologyVector& v) { return {v.coords().begin(), v.coords().end()}; }

}  // namespace

// ---------------------------------------------------------------- Polytope

Polytope::Polytope(std::vector<HomologyVector> extreme_vertices) : vertices_(std::move(extreme_vertices)) {
  std::sort(vertices_.begin(), vertices_.end());
  std::vector<HomologyVector> diffs;
  for (std::size_t i = 1; i < vertices_.size(); ++i) diffs.push_back(vertices_[i] - vertices_[0]);
  direction_ = span_of(diffs, vertices_.front().genus());
}

Polytope Polytope::point(const HomologyVector& p) { return Polytope({p}); }

Polytope Polytope::hull(std::span<const HomologyVector> points) {
  if (points.empty()) throw ValidationError("hull of an empty point set");
  std::vector<HomologyVector> pts(points.begin(), points.end());
  for (const auto& p : pts) require_same_dimension(p, pts.front());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  // Drop points one at a time while they lie in the hull of the rest.
  for (std::size_t i = 0; i < pts.size() && pts.size() > 1;) {
    std::vector<std::vector<Rational>> rest;
    rest.reserve(pts.size() - 1);
    for (std::size_t j = 0; j < pts.size(); ++j)
      if (j != i) rest.push_back(as_row(pts[j]));
    if (solve_combination(rest, as_row(pts[i])))
      pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(i));
    else
      ++i;
  }
  return Polytope(std::move(pts));
}

Subspace Polytope::linear_span() const { return span_of(vertices_, genus()); }

bool contains(const Polytope& p, const HomologyVector& x) {
  require_same_dimension(x, p.vertices().front());
  if (p.vertices().size() == 1) return x == p.vertices().front();
  if (!p.direction_space().contains(x - p.vertices().front())) return false;
  return solve_combination(as_rows(p.vertices()), as_row(x)).has_value();
}

Rational distance(const HomologyVector& x, const Polytope& p, const NormSpec& norm) {
  require_same_dimension(x, p.vertices().front());
  std::vector<HomologyVector> tv;
  tv.reserve(p.vertices().size());
  for (const auto& v : p.vertices()) tv.push_back(norm.apply(v));
  HomologyVector tx = norm.apply(x);
  if (tv.size() == 1) return linf_norm(tx - tv.front());
  return solve_distance(as_rows(tv), as_row(tx));
}

double distance_approx(std::span<const double> x, const Polytope& p, const NormSpec& norm) {
  std::vector<std::vector<double>> pts;
  pts.reserve(p.vertices().size());
  for (const auto& v : p.vertices()) {
    auto d = v.to_doubles();
    pts.push_back(norm.apply(d));
  }
  auto tx = norm.apply(x);
  if (pts.size() == 1) {
    double best = 0;
    for (std::size_t i = 0; i < tx.size(); ++i) best = std::max(best, std::abs(tx[i] - pts[0][i]));
    return best;
  }
  return std::max(0.0, solve_distance(pts, tx));
}

double hull_distance_approx(const std::vector<std::vector<double>>& points, std::span<const double> x) {
  if (points.size() == 1) {
    double best = 0;
    for (std::size_t i = 0; i < x.size(); ++i) best = std::max(best, std::abs(x[i] - points[0][i]));
    return best;
  }
  return std::max(0.0, solve_distance(points, std::vector<double>(x.begin(), x.end())));
}

std::vector<HomologyVector> exposed_points(const Polytope& p) {
  std::vector<HomologyVector> out;
  const auto& vs = p.vertices();
  for (std::size_t i = 0; i < vs.size(); ++i) {
    std::vector<HomologyVector> others;
    for (std::size_t j = 0; j < vs.size(); ++j)
      if (j != i) others.push_back(vs[j]);
    if (exposure_margin(vs[i], others) > 0) out.push_back(vs[i]);
  }
  return out;
}

HomologyVector interior_point(const Polytope& p, bool allow_vertex) {
  if (p.dimension() == 0) {
    if (allow_vertex) return p.vertices().front();
    throw ValidationError("no relative interior representative distinct from vertex",
                          {{"vertex", p.vertices().front().to_string()}});
  }
  HomologyVector sum(p.genus());
  for (const auto& v : p.vertices()) sum += v;
  return sum / Rational(static_cast<long>(p.vertices().size()));
}

std::optional<std::vector<Rational>> convex_combination(std::span<const HomologyVector> points,
                                                        const HomologyVector& x) {
  if (points.empty()) return std::nullopt;
  std::vector<std::vector<Rational>> rows;
  for (const auto& p : points) {
    require_same_dimension(p, x);
    rows.push_back(as_row(p));
  }
  return solve_combination(rows, as_row(x));
}

std::optional<HomologyVector> separating_direction(const Polytope& p, const HomologyVector& x) {
  if (contains(p, x)) return std::nullopt;
  // Maximize t with c.(x - v) >= t, c in [-1,1]^d; rebuild c from the LP.
  const std::size_t d = x.dim();
  lp::Problem<Rational> prob;
  prob.num_vars = 2 * d + 1;
  prob.objective.assign(2 * d + 1, Rational(0));
  prob.objective[2 * d] = -1;
  for (const auto& v : p.vertices()) {
    lp::Constraint<Rational> c;
    c.coeffs.assign(2 * d + 1, Rational(0));
    for (std::size_t k = 0; k < d; ++k) {
      c.coeffs[k] = -(x[k] - v[k]);
      c.coeffs[d + k] = x[k] - v[k];
    }
    c.coeffs[2 * d] = 1;
    c.sense = lp::Sense::le;
    prob.constraints.push_back(std::move(c));
  }
  for (std::size_t k = 0; k < 2 * d; ++k) {
    lp::Constraint<Rational> box;
    box.coeffs.assign(2 * d + 1, Rational(0));
    box.coeffs[k] = 1;
    box.sense = lp::Sense::le;
    box.rhs = 1;
    prob.constraints.push_back(std::move(box));
  }
  auto sol = lp::solve(prob);
  if (sol.status != lp::Status::optimal) throw InconsistencyError("separation LP failed");
  HomologyVector c(x.genus());
  for (std::size_t k = 0; k < d; ++k) c[k] = sol.x[k] - sol.x[d + k];
  return c;
}

// ---------------------------------------------------------------- unions

bool is_subset(const Polytope& inner, const Polytope& outer) {
  for (const auto& v : inner.vertices())
    if (!contains(outer, v)) return false;
  return true;
}

PolytopeUnion reduce_union(std::vector<Piece> pieces) {
  const std::size_t n = pieces.size();
  for (std::size_t i = 1; i < n; ++i) require_same_dimension(pieces[i].polytope.vertices().front(),
                                                             pieces[0].polytope.vertices().front());
  std::vector<bool> drop(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n && !drop[i]; ++j) {
      if (i == j || drop[j]) continue;
      const auto& a = pieces[i].polytope;
      const auto& b = pieces[j].polytope;
      if (a.dimension() > b.dimension()) continue;
      if (!is_subset(a, b)) continue;
      // Equal pieces: keep the earlier one.
      if (a == b && i < j) continue;
      drop[i] = true;
    }
  }
  PolytopeUnion u;
  for (std::size_t i = 0; i < n; ++i)
    if (!drop[i]) u.pieces_.push_back(std::move(pieces[i]));
  return u;
}

bool contains(const PolytopeUnion& u, const HomologyVector& x) {
  for (const auto& p : u.pieces())
    if (contains(p.polytope, x)) return true;
  return false;
}

Rational distance_to_union(const HomologyVector& x, const PolytopeUnion& u, const NormSpec& norm) {
  if (u.empty()) throw ValidationError("distance to an empty union");
  std::optional<Rational> best;
  for (const auto& p : u.pieces()) {
    Rational d = distance(x, p.polytope, norm);
    if (!best || d < *best) best = d;
    if (*best == 0) break;
  }
  return *best;
}

Polytope convex_hull(const PolytopeUnion& u) {
  if (u.empty()) throw ValidationError("convex hull of an empty union");
  std::vector<HomologyVector> all;
  for (const auto& p : u.pieces()) all.insert(all.end(), p.polytope.vertices().begin(), p.polytope.vertices().end());
  return Polytope::hull(all);
}

std::vector<std::vector<HomologyVector>> canonical_pieces(const PolytopeUnion& u) {
  std::vector<std::vector<HomologyVector>> out;
  for (const auto& p : u.pieces()) out.push_back(p.polytope.vertices());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace rotset
