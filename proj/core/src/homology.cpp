#include "rotset/homology.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "rotset/errors.hpp"
#include "rotset/linalg.hpp"

namespace rotset {

HomologyVector::HomologyVector(int genus) : genus_(genus), coords_(2 * static_cast<std::size_t>(genus)) {
  if (genus < 0) throw ValidationError("negative genus", {{"genus", genus}});
}

HomologyVector::HomologyVector(int genus, std::vector<Rational> coords)
    : genus_(genus), coords_(std::move(coords)) {
  if (genus < 0) throw ValidationError("negative genus", {{"genus", genus}});
  if (coords_.size() != 2 * static_cast<std::size_t>(genus))
    throw ValidationError("vector length " + std::to_string(coords_.size()) + " != " +
                              std::to_string(2 * genus),
                          {{"length", coords_.size()}, {"expected", 2 * genus}});
}

HomologyVector HomologyVector::from_integers(int genus, std::span<const std::int64_t> coords) {
  std::vector<Rational> c;
  c.reserve(coords.size());
  for (auto x : coords) c.emplace_back(x);
  return HomologyVector(genus, std::move(c));
}

HomologyVector HomologyVector::unit(int genus, std::size_t index) {
  HomologyVector v(genus);
  v.coords_.at(index) = 1;
  return v;
}

bool HomologyVector::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Rational& q) { return q == 0; });
}

void require_same_dimension(const HomologyVector& a, const HomologyVector& b) {
  if (a.dim() != b.dim())
    throw ValidationError("dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                              std::to_string(b.dim()),
                          {{"left", a.dim()}, {"right", b.dim()}});
}

HomologyVector& HomologyVector::operator+=(const HomologyVector& o) {
  require_same_dimension(*this, o);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

HomologyVector& HomologyVector::operator-=(const HomologyVector& o) {
  require_same_dimension(*this, o);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
  return *this;
}

HomologyVector& HomologyVector::operator*=(const Rational& s) {
  for (auto& c : coords_) c *= s;
  return *this;
}

HomologyVector& HomologyVector::operator/=(const Rational& s) {
  if (s == 0) throw ValidationError("division of a homology vector by zero");
  for (auto& c : coords_) c /= s;
  return *this;
}

std::strong_ordering operator<=>(const HomologyVector& a, const HomologyVector& b) {
  if (auto c = a.genus_ <=> b.genus_; c != 0) return c;
  for (std::size_t i = 0; i < a.coords_.size(); ++i) {
    if (a.coords_[i] < b.coords_[i]) return std::strong_ordering::less;
    if (b.coords_[i] < a.coords_[i]) return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

std::vector<double> HomologyVector::to_doubles() const {
  std::vector<double> out;
  out.reserve(coords_.size());
  for (const auto& c : coords_) out.push_back(to_double(c));
  return out;
}

std::string HomologyVector::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < coords_.size(); ++i) os << (i ? "," : "") << rotset::to_string(coords_[i]);
  os << ')';
  return os.str();
}

Rational wedge(const HomologyVector& a, const HomologyVector& b) {
  require_same_dimension(a, b);
  Rational sum = 0;
  for (std::size_t i = 0; i + 1 < a.dim(); i += 2) sum += a[i] * b[i + 1] - a[i + 1] * b[i];
  return sum;
}

Rational linf_norm(const HomologyVector& v) {
  Rational best = 0;
  for (const auto& c : v.coords()) best = std::max(best, abs(c));
  return best;
}

namespace {

linalg::Matrix rows_of(const std::vector<HomologyVector>& vs) {
  linalg::Matrix m;
  m.reserve(vs.size());
  for (const auto& v : vs) m.emplace_back(v.coords().begin(), v.coords().end());
  return m;
}

}  // namespace

Subspace::Subspace(int genus, std::vector<HomologyVector> basis) : genus_(genus), basis_(std::move(basis)) {
  for (const auto& b : basis_)
    if (b.genus() != genus)
      throw ValidationError("basis vector genus mismatch", {{"expected", genus}, {"got", b.genus()}});
  if (linalg::rank(rows_of(basis_), 2 * static_cast<std::size_t>(genus)) != basis_.size())
    throw ValidationError("subspace basis is linearly dependent", {{"size", basis_.size()}});
}

Subspace Subspace::full(int genus) {
  std::vector<HomologyVector> basis;
  for (std::size_t i = 0; i < 2 * static_cast<std::size_t>(genus); ++i)
    basis.push_back(HomologyVector::unit(genus, i));
  return Subspace(genus, std::move(basis));
}

Subspace Subspace::coordinates(int genus, std::span<const std::size_t> indices) {
  std::vector<HomologyVector> basis;
  for (auto i : indices) basis.push_back(HomologyVector::unit(genus, i));
  return Subspace(genus, std::move(basis));
}

std::optional<std::vector<Rational>> Subspace::coordinates_of(const HomologyVector& v) const {
  if (v.genus() != genus_) throw ValidationError("vector genus does not match subspace");
  if (basis_.empty()) {
    if (v.is_zero()) return std::vector<Rational>{};
    return std::nullopt;
  }
  // Solve B^T c = v, columns of B^T are the basis vectors.
  const std::size_t n = v.dim();
  linalg::Matrix a(n, linalg::Row(basis_.size()));
  for (std::size_t j = 0; j < basis_.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) a[i][j] = basis_[j][i];
  linalg::Row b(v.coords().begin(), v.coords().end());
  return linalg::solve(a, b, basis_.size());
}

bool Subspace::contains(const HomologyVector& v) const { return coordinates_of(v).has_value(); }

bool Subspace::is_symplectic() const {
  const std::size_t k = basis_.size();
  linalg::Matrix gram(k, linalg::Row(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) gram[i][j] = wedge(basis_[i], basis_[j]);
  return linalg::rank(gram, k) == k;
}

Subspace span_of(std::span<const HomologyVector> vectors, int genus) {
  std::vector<HomologyVector> vs;
  for (const auto& v : vectors) {
    if (v.genus() != genus) throw ValidationError("vector genus mismatch in span_of");
    vs.push_back(v);
  }
  auto r = linalg::row_reduce(rows_of(vs), 2 * static_cast<std::size_t>(genus));
  std::vector<HomologyVector> basis;
  for (auto& row : r.rows) basis.emplace_back(genus, std::move(row));
  return Subspace(genus, std::move(basis));
}

BlockDecomposition::BlockDecomposition(int genus, std::vector<Subspace> blocks)
    : genus_(genus), blocks_(std::move(blocks)) {
  std::vector<HomologyVector> all;
  for (const auto& b : blocks_) {
    if (b.genus() != genus) throw ValidationError("block genus mismatch");
    all.insert(all.end(), b.basis().begin(), b.basis().end());
  }
  total_dim_ = all.size();
  if (linalg::rank(rows_of(all), 2 * static_cast<std::size_t>(genus)) != total_dim_)
    throw ValidationError("blocks are not in direct sum");
}

BlockDecomposition::Components BlockDecomposition::decompose(const HomologyVector& v) const {
  if (v.genus() != genus_)
    throw ValidationError("vector genus does not match decomposition",
                          {{"expected", 2 * genus_}, {"got", v.dim()}});
  const std::size_t n = v.dim();
  linalg::Matrix a(n, linalg::Row(total_dim_));
  std::size_t col = 0;
  for (const auto& b : blocks_)
    for (const auto& basis_vec : b.basis()) {
      for (std::size_t i = 0; i < n; ++i) a[i][col] = basis_vec[i];
      ++col;
    }
  linalg::Row rhs(v.coords().begin(), v.coords().end());
  auto sol = linalg::solve(a, rhs, total_dim_);
  if (!sol) {
    // Residual: v minus its component along the span, reported via the
    // least informative but exact choice of zeroing the solvable part.
    HomologyVector residual = v;
    std::vector<HomologyVector> all;
    for (const auto& b : blocks_) all.insert(all.end(), b.basis().begin(), b.basis().end());
    Subspace sum = span_of(all, genus_);
    // Reduce v by the echelon basis of the sum to get a canonical residual.
    for (const auto& row : sum.basis()) {
      std::size_t pivot = 0;
      while (row[pivot] == 0) ++pivot;
      Rational f = residual[pivot] / row[pivot];
      if (f != 0) residual -= row * f;
    }
    throw ValidationError("vector " + v.to_string() + " is outside the span of the blocks",
                          {{"residual", residual.to_string()}});
  }
  Components out;
  col = 0;
  for (const auto& b : blocks_) {
    std::vector<Rational> coeff(sol->begin() + static_cast<std::ptrdiff_t>(col),
                                sol->begin() + static_cast<std::ptrdiff_t>(col + b.dim()));
    HomologyVector part(genus_);
    for (std::size_t k = 0; k < b.dim(); ++k) part += b.basis()[k] * coeff[k];
    out.coefficients.push_back(std::move(coeff));
    out.parts.push_back(std::move(part));
    col += b.dim();
  }
  return out;
}

BlockDecomposition BlockDecomposition::completed() const {
  std::vector<HomologyVector> all;
  for (const auto& b : blocks_) all.insert(all.end(), b.basis().begin(), b.basis().end());
  std::vector<HomologyVector> extra;
  const std::size_t n = 2 * static_cast<std::size_t>(genus_);
  for (std::size_t i = 0; i < n && all.size() < n; ++i) {
    auto e = HomologyVector::unit(genus_, i);
    all.push_back(e);
    if (linalg::rank(rows_of(all), n) == all.size())
      extra.push_back(e);
    else
      all.pop_back();
  }
  auto blocks = blocks_;
  if (!extra.empty()) blocks.emplace_back(genus_, std::move(extra));
  return BlockDecomposition(genus_, std::move(blocks));
}

Rational block_sup_norm(const HomologyVector& v, const BlockDecomposition& d) {
  auto comps = d.decompose(v);
  Rational best = 0;
  for (const auto& coeff : comps.coefficients)
    for (const auto& c : coeff) best = std::max(best, abs(c));
  return best;
}

DecompositionReport validate_decomposition(std::span<const Subspace> spans, int genus) {
  DecompositionReport report;
  const std::size_t n = 2 * static_cast<std::size_t>(genus);

  for (std::size_t i = 0; i < spans.size() && report.orthogonal.ok; ++i)
    for (std::size_t j = i + 1; j < spans.size() && report.orthogonal.ok; ++j)
      for (const auto& u : spans[i].basis())
        for (const auto& v : spans[j].basis())
          if (report.orthogonal.ok && wedge(u, v) != 0) {
            report.orthogonal.ok = false;
            report.orthogonal.witness = "blocks " + std::to_string(i) + "," + std::to_string(j) + ": " +
                                        u.to_string() + " ^ " + v.to_string() + " = " +
                                        to_string(wedge(u, v));
            report.orthogonal.vector = u;
          }

  // Direct sum: a nontrivial relation sum_k c_k b_k = 0 among all basis vectors.
  std::vector<HomologyVector> all;
  std::vector<std::size_t> owner;
  for (std::size_t i = 0; i < spans.size(); ++i)
    for (const auto& b : spans[i].basis()) {
      all.push_back(b);
      owner.push_back(i);
    }
  {
    linalg::Matrix a(n, linalg::Row(all.size()));
    for (std::size_t j = 0; j < all.size(); ++j)
      for (std::size_t r = 0; r < n; ++r) a[r][j] = all[j][r];
    auto kernel = linalg::null_space(a, all.size());
    if (!kernel.empty()) {
      const auto& c = kernel.front();
      std::size_t first = 0;
      while (c[first] == 0) ++first;
      std::size_t block = owner[first];
      HomologyVector w(genus);
      for (std::size_t k = 0; k < all.size(); ++k)
        if (owner[k] == block) w += all[k] * c[k];
      report.direct_sum.ok = false;
      report.direct_sum.witness = "block " + std::to_string(block) + " meets the sum of the others in " +
                                  w.to_string();
      report.direct_sum.vector = w;
    }
  }

  for (std::size_t i = 0; i < spans.size() && report.symplectic.ok; ++i) {
    const auto& basis = spans[i].basis();
    const std::size_t k = basis.size();
    linalg::Matrix gram(k, linalg::Row(k));
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) gram[a][b] = wedge(basis[a], basis[b]);
    auto kernel = linalg::null_space(gram, k);
    if (!kernel.empty()) {
      HomologyVector w(genus);
      for (std::size_t a = 0; a < k; ++a) w += basis[a] * kernel.front()[a];
      report.symplectic.ok = false;
      report.symplectic.witness = "block " + std::to_string(i) + " has radical vector " + w.to_string();
      report.symplectic.vector = w;
    }
  }

  {
    Subspace sum = span_of(all, genus);
    if (sum.dim() < n) {
      for (std::size_t i = 0; i < n; ++i) {
        auto e = HomologyVector::unit(genus, i);
        if (!sum.contains(e)) {
          report.spans_all.ok = false;
          report.spans_all.witness = "sum has dimension " + std::to_string(sum.dim()) + " < " +
                                     std::to_string(n) + "; missing " + e.to_string();
          report.spans_all.vector = e;
          break;
        }
      }
    }
  }
  return report;
}

}  // namespace rotset
