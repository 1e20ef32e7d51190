#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rotset/rational.hpp"

namespace rotset {

/// A class in H_1(S, Q) for a closed surface of genus g, in a fixed
/// symplectic basis (a_1, b_1, ..., a_g, b_g). Arithmetic is exact.
class HomologyVector {
 public:
  HomologyVector() = default;
  explicit HomologyVector(int genus);
  HomologyVector(int genus, std::vector<Rational> coords);

  static HomologyVector from_integers(int genus, std::span<const std::int64_t> coords);
  static HomologyVector unit(int genus, std::size_t index);

  int genus() const noexcept { return genus_; }
  std::size_t dim() const noexcept { return coords_.size(); }
  std::span<const Rational> coords() const noexcept { return coords_; }

  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  Rational& operator[](std::size_t i) { return coords_[i]; }

  bool is_zero() const;

  HomologyVector& operator+=(const HomologyVector& o);
  HomologyVector& operator-=(const HomologyVector& o);
  HomologyVector& operator*=(const Rational& s);
  HomologyVector& operator/=(const Rational& s);

  friend HomologyVector operator+(HomologyVector a, const HomologyVector& b) { return a += b; }
  friend HomologyVector operator-(HomologyVector a, const HomologyVector& b) { return a -= b; }
  friend HomologyVector operator-(HomologyVector a) { return a *= Rational(-1); }
  friend HomologyVector operator*(HomologyVector a, const Rational& s) { return a *= s; }
  friend HomologyVector operator*(const Rational& s, HomologyVector a) { return a *= s; }
  friend HomologyVector operator/(HomologyVector a, const Rational& s) { return a /= s; }

  friend bool operator==(const HomologyVector& a, const HomologyVector& b) {
    return a.genus_ == b.genus_ && a.coords_ == b.coords_;
  }
  /// Lexicographic; used for canonical vertex ordering.
  friend std::strong_ordering operator<=>(const HomologyVector& a, const HomologyVector& b);

  std::vector<double> to_doubles() const;
  std::string to_string() const;

 private:
  int genus_ = 0;
  std::vector<Rational> coords_;
};

void require_same_dimension(const HomologyVector& a, const HomologyVector& b);

/// Algebraic intersection number: sum_i (a_{2i-1} b_{2i} - a_{2i} b_{2i-1}).
Rational wedge(const HomologyVector& a, const HomologyVector& b);

Rational linf_norm(const HomologyVector& v);

/// A linear subspace of Q^{2g} carried by an explicit basis. Membership and
/// coordinates are computed through a cached reduced echelon form.
class Subspace {
 public:
  Subspace() = default;
  /// `basis` must be linearly independent; throws ValidationError otherwise.
  Subspace(int genus, std::vector<HomologyVector> basis);

  static Subspace zero(int genus) { return Subspace(genus, {}); }
  static Subspace full(int genus);
  /// Span of the given coordinate indices (0-based).
  static Subspace coordinates(int genus, std::span<const std::size_t> indices);

  int genus() const noexcept { return genus_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  const std::vector<HomologyVector>& basis() const noexcept { return basis_; }

  bool contains(const HomologyVector& v) const;
  /// Coefficients of v in the basis; nullopt if v is outside the subspace.
  std::optional<std::vector<Rational>> coordinates_of(const HomologyVector& v) const;

  /// The restriction of the intersection form is nondegenerate (and dim > 0).
  bool is_symplectic() const;

 private:
  int genus_ = 0;
  std::vector<HomologyVector> basis_;
};

/// Exact basis (reduced echelon rows) of the linear span. Empty input gives the zero subspace.
Subspace span_of(std::span<const HomologyVector> vectors, int genus);

/// Ordered list of subspaces assumed (and checked) to be in direct sum.
class BlockDecomposition {
 public:
  BlockDecomposition() = default;
  /// Throws ValidationError if the blocks are not in direct sum.
  BlockDecomposition(int genus, std::vector<Subspace> blocks);

  int genus() const noexcept { return genus_; }
  const std::vector<Subspace>& blocks() const noexcept { return blocks_; }
  std::size_t total_dim() const noexcept { return total_dim_; }

  struct Components {
    std::vector<std::vector<Rational>> coefficients;  // per block, in the block's basis
    std::vector<HomologyVector> parts;                // v_i, with v = sum of parts
  };
  /// Throws ValidationError carrying the residual when v is outside the sum.
  Components decompose(const HomologyVector& v) const;

  /// This decomposition followed by a complement block of standard basis
  /// vectors, so that the blocks span all of Q^{2g}.
  BlockDecomposition completed() const;

 private:
  int genus_ = 0;
  std::vector<Subspace> blocks_;
  std::size_t total_dim_ = 0;
};

/// max_i of the l-infinity norm of v_i's coordinates in block i's basis.
Rational block_sup_norm(const HomologyVector& v, const BlockDecomposition& d);

struct DecompositionCheck {
  bool ok = true;
  std::string witness;                 // human-readable description on failure
  std::optional<HomologyVector> vector;  // witness vector on failure, when one exists
};

struct DecompositionReport {
  DecompositionCheck orthogonal;   // u ^ v = 0 across distinct blocks
  DecompositionCheck direct_sum;   // dim of sum = sum of dims
  DecompositionCheck symplectic;   // form nondegenerate on each block
  DecompositionCheck spans_all;    // sum is all of Q^{2g}
};

DecompositionReport validate_decomposition(std::span<const Subspace> spans, int genus);

}  // namespace rotset
