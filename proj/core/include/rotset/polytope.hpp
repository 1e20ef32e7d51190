#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rotset/homology.hpp"

namespace rotset {

/// Norm used for distances: the l-infinity norm after a fixed linear change
/// of coordinates. The identity gives plain l-infinity; the inverse basis
/// matrix of a (completed) block decomposition gives the block sup-norm.
class NormSpec {
 public:
  static NormSpec linf(int genus);
  /// Block sup-norm for a decomposition; it is completed by standard basis
  /// vectors first so that every vector has block coordinates.
  static NormSpec block_sup(const BlockDecomposition& d);

  int genus() const noexcept { return genus_; }
  const std::string& tag() const noexcept { return tag_; }
  bool is_identity() const noexcept { return matrix_.empty(); }

  HomologyVector apply(const HomologyVector& v) const;
  std::vector<double> apply(std::span<const double> v) const;
  Rational norm(const HomologyVector& v) const { return linf_norm(apply(v)); }

 private:
  int genus_ = 0;
  std::string tag_;
  std::vector<std::vector<Rational>> matrix_;  // empty means identity
  std::vector<std::vector<double>> matrix_d_;
};

/// Closed convex polytope in Q^{2g} in vertex representation. The vertex
/// list is minimal and sorted lexicographically.
class Polytope {
 public:
  /// Convex hull of a nonempty point set; throws ValidationError on empty
  /// input or mixed dimensions. Duplicates are removed first.
  static Polytope hull(std::span<const HomologyVector> points);
  static Polytope point(const HomologyVector& p);

  int genus() const noexcept { return vertices_.front().genus(); }
  std::size_t ambient_dim() const noexcept { return vertices_.front().dim(); }
  const std::vector<HomologyVector>& vertices() const noexcept { return vertices_; }
  /// Affine dimension.
  std::size_t dimension() const noexcept { return direction_.dim(); }
  /// Linear span of {v - v0}.
  const Subspace& direction_space() const noexcept { return direction_; }
  /// Linear span of the vertices.
  Subspace linear_span() const;

  friend bool operator==(const Polytope& a, const Polytope& b) { return a.vertices_ == b.vertices_; }

 private:
  explicit Polytope(std::vector<HomologyVector> extreme_vertices);
  std::vector<HomologyVector> vertices_;
  Subspace direction_;
};

/// Exact membership in conv(vertices).
bool contains(const Polytope& p, const HomologyVector& x);

/// inf over e in P of ||x - e||, as an exact rational LP.
Rational distance(const HomologyVector& x, const Polytope& p, const NormSpec& norm);

/// Same LP solved in floating point; callers re-decide near-threshold values exactly.
double distance_approx(std::span<const double> x, const Polytope& p, const NormSpec& norm);

/// l-infinity distance from x to conv(points), everything already in the
/// norm's coordinates. Floating point; used by bulk trace filters.
double hull_distance_approx(const std::vector<std::vector<double>>& points, std::span<const double> x);

/// Exposed points found by a supporting-hyperplane LP per vertex.
std::vector<HomologyVector> exposed_points(const Polytope& p);

/// Vertex barycenter. Throws ValidationError for a single point unless
/// `allow_vertex` is set, in which case the vertex itself is returned.
HomologyVector interior_point(const Polytope& p, bool allow_vertex = false);

/// Weights lambda >= 0, sum 1, with sum lambda_k points_k = x; a basic
/// solution, so at most (affine dim + 1) weights are nonzero.
std::optional<std::vector<Rational>> convex_combination(std::span<const HomologyVector> points,
                                                        const HomologyVector& x);

/// A direction c with c.x > max_v c.v, or nullopt when x is in P.
std::optional<HomologyVector> separating_direction(const Polytope& p, const HomologyVector& x);

struct Piece {
  Polytope polytope;
  std::vector<int> path;  // generating path of classes in the condensation
  std::string tag;
};

/// Finite union of polytopes with no piece contained in another.
class PolytopeUnion {
 public:
  PolytopeUnion() = default;
  const std::vector<Piece>& pieces() const noexcept { return pieces_; }
  std::size_t size() const noexcept { return pieces_.size(); }
  bool empty() const noexcept { return pieces_.empty(); }
  int genus() const { return pieces_.front().polytope.genus(); }

  friend PolytopeUnion reduce_union(std::vector<Piece> pieces);

 private:
  std::vector<Piece> pieces_;
};

/// All vertices of `inner` lie in `outer`.
bool is_subset(const Polytope& inner, const Polytope& outer);

/// Drops every piece contained in another (of two equal pieces the first is
/// kept). Piece order and tags are preserved.
PolytopeUnion reduce_union(std::vector<Piece> pieces);

bool contains(const PolytopeUnion& u, const HomologyVector& x);
Rational distance_to_union(const HomologyVector& x, const PolytopeUnion& u, const NormSpec& norm);

/// conv of the union of all pieces.
Polytope convex_hull(const PolytopeUnion& u);

/// The pieces as sets of vertex lists, sorted; equality of these is
/// equality of reduced unions up to tags.
std::vector<std::vector<HomologyVector>> canonical_pieces(const PolytopeUnion& u);

}  // namespace rotset
