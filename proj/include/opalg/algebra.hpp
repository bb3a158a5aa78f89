#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <vector>

#include "opalg/common.hpp"
#include "opalg/rng.hpp"

namespace opalg {

/// One full matrix block M_dim carrying a strictly positive trace weight.
struct Block {
  int dim = 0;
  double weight = 1.0;
};

/// A finite-dimensional von Neumann algebra: an ordered direct sum of full
/// complex matrix blocks with a weighted faithful trace
/// tau(x) = sum_i weight_i * tr(x_i).
///
/// Values are immutable after construction and safe to share across threads.
/// The default-constructed instance is the zero algebra (no blocks); it only
/// arises as the degenerate result of splitting operations.
class Algebra {
 public:
  Algebra() = default;
  explicit Algebra(std::vector<Block> blocks);

  const std::vector<Block>& blocks() const { return blocks_; }
  std::size_t block_count() const { return blocks_.size(); }
  int block_dim(std::size_t i) const { return blocks_[i].dim; }
  double block_weight(std::size_t i) const { return blocks_[i].weight; }

  /// Vector-space dimension: sum of dim_i^2.  Vectorized coordinates are the
  /// row-major flattened blocks concatenated in block order.
  std::size_t dim() const { return dim_; }
  /// Dimension of the underlying Hilbert space: sum of dim_i.
  std::size_t hilbert_dim() const { return hilbert_dim_; }
  std::size_t block_offset(std::size_t i) const { return offsets_[i]; }
  std::size_t hilbert_offset(std::size_t i) const { return hilbert_offsets_[i]; }

  /// tau(1) = sum weight_i * dim_i.
  double unit_trace() const;

  /// The k-fold matrix amplification: each block dim becomes k*dim, weights
  /// unchanged.
  Algebra amplified(int k) const;

  /// Sub-algebra spanned by the selected blocks (order preserved).
  Algebra sub_algebra(const std::vector<std::size_t>& keep) const;

  bool operator==(const Algebra& other) const;
  bool operator!=(const Algebra& other) const { return !(*this == other); }

 private:
  std::vector<Block> blocks_;
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> hilbert_offsets_;
  std::size_t dim_ = 0;
  std::size_t hilbert_dim_ = 0;
};

/// A block-diagonal element of an Algebra: one dense complex matrix per block.
/// Carrier of operators, projections, partial isometries and densities.
class Element {
 public:
  /// Zero element of the given algebra.
  explicit Element(Algebra parent);
  Element(Algebra parent, std::vector<Eigen::MatrixXcd> blocks);

  static Element identity(const Algebra& a);
  /// Matrix unit e_{r,c} of block `b`.
  static Element basis_unit(const Algebra& a, std::size_t b, int r, int c);

  const Algebra& parent() const { return parent_; }
  const std::vector<Eigen::MatrixXcd>& blocks() const { return blocks_; }
  const Eigen::MatrixXcd& block(std::size_t i) const { return blocks_[i]; }
  Eigen::MatrixXcd& block(std::size_t i) { return blocks_[i]; }

  Eigen::VectorXcd vectorize() const;
  static Element devectorize(const Algebra& a, const Eigen::VectorXcd& v);

  /// Dense matrix on the full Hilbert space (block-diagonal embedding).
  Eigen::MatrixXcd to_dense() const;

  Element adjoint() const;
  double hs_norm() const;   // unweighted Hilbert-Schmidt norm
  double max_abs() const;   // largest entry magnitude

  Element& operator+=(const Element& rhs);
  Element& operator-=(const Element& rhs);
  Element& operator*=(Complex s);

 private:
  Algebra parent_;
  std::vector<Eigen::MatrixXcd> blocks_;
};

Element operator+(Element lhs, const Element& rhs);
Element operator-(Element lhs, const Element& rhs);
Element operator*(Complex s, Element x);
Element operator*(const Element& x, const Element& y);  // blockwise product

/// Unweighted Hilbert-Schmidt inner product <x,y> = sum_i tr(x_i^* y_i).
Complex hs_inner(const Element& x, const Element& y);
/// Symmetrized (Jordan) product (xy + yx)/2.
Element sym_product(const Element& x, const Element& y);
double max_abs_diff(const Element& x, const Element& y);

/// Weighted trace tau(x) = sum_i weight_i * tr(x_i).
Complex trace(const Algebra& a, const Element& x);
Complex trace(const Element& x);

/// Noncommutative L^p norm: tau(|x|^p)^{1/p} for finite p >= 1, the operator
/// norm for p = infinity.  p < 1 is rejected.
double lp_norm(const Algebra& a, const Element& x, double p);
double lp_norm(const Element& x, double p);

/// |x|^r = (x^* x)^{r/2}, computed by Hermitian spectral factorization.
Element abs_power(const Element& x, double r);

/// Spectral power b^r of a positive b, clamping eigenvalues below `cutoff`
/// to zero.  cutoff < 0 selects the default relative rule
/// (kSupportCutoff * largest eigenvalue).
Element psd_power(const Element& b, double r, double cutoff = -1.0);

/// Spectral projection of a positive b onto its strictly positive spectrum.
Element support_projection(const Element& b, double cutoff = -1.0);

/// Moore-Penrose-style inverse square root on the support:
/// pinv_sqrt(b) * b * pinv_sqrt(b) = support_projection(b).
Element pinv_sqrt(const Element& b, double cutoff = -1.0);

double min_eigenvalue(const Element& x);  // over all blocks; x Hermitian

bool is_hermitian(const Element& x, double tolerance = tol::kAlgebraic);
bool is_positive_semidefinite(const Element& x,
                              double tolerance = tol::kEigenFloor);
bool is_projection(const Element& x, double tolerance = tol::kAlgebraic);
bool is_partial_isometry(const Element& x, double tolerance = tol::kAlgebraic);

/// Seeded samplers (Ginibre entries; positives via x*x).
Element random_element(const Algebra& a, Rng& rng);
Element random_hermitian(const Algebra& a, Rng& rng);
Element random_positive(const Algebra& a, Rng& rng);
Element random_unitary(const Algebra& a, Rng& rng);

}  // namespace opalg
