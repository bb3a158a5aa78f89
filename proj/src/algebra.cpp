#include "opalg/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace opalg {

Algebra::Algebra(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
  offsets_.reserve(blocks_.size());
  hilbert_offsets_.reserve(blocks_.size());
  for (const Block& b : blocks_) {
    if (b.dim < 1) throw InvalidInput("Algebra: block dim must be >= 1");
    if (!(b.weight > 0.0)) throw InvalidInput("Algebra: block weight must be > 0");
    offsets_.push_back(dim_);
    hilbert_offsets_.push_back(hilbert_dim_);
    dim_ += static_cast<std::size_t>(b.dim) * b.dim;
    hilbert_dim_ += static_cast<std::size_t>(b.dim);
  }
}

double Algebra::unit_trace() const {
  double t = 0.0;
  for (const Block& b : blocks_) t += b.weight * b.dim;
  return t;
}

Algebra Algebra::amplified(int k) const {
  if (k < 1) throw InvalidInput("amplified: k must be >= 1");
  std::vector<Block> out;
  out.reserve(blocks_.size());
  for (const Block& b : blocks_) out.push_back({b.dim * k, b.weight});
  return Algebra(out);
}

Algebra Algebra::sub_algebra(const std::vector<std::size_t>& keep) const {
  std::vector<Block> out;
  out.reserve(keep.size());
  for (std::size_t i : keep) {
    if (i >= blocks_.size()) throw InvalidInput("sub_algebra: block index out of range");
    out.push_back(blocks_[i]);
  }
  return Algebra(out);
}

bool Algebra::operator==(const Algebra& other) const {
  if (blocks_.size() != other.blocks_.size()) return false;
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (blocks_[i].dim != other.blocks_[i].dim) return false;
    if (blocks_[i].weight != other.blocks_[i].weight) return false;
  }
  return true;
}

//============================================================================
// Element
//============================================================================

Element::Element(Algebra parent) : parent_(std::move(parent)) {
  blocks_.reserve(parent_.block_count());
  for (std::size_t i = 0; i < parent_.block_count(); ++i) {
    const int d = parent_.block_dim(i);
    blocks_.push_back(Eigen::MatrixXcd::Zero(d, d));
  }
}

Element::Element(Algebra parent, std::vector<Eigen::MatrixXcd> blocks)
    : parent_(std::move(parent)), blocks_(std::move(blocks)) {
  if (blocks_.size() != parent_.block_count())
    throw InvalidInput("Element: block count does not match the parent algebra");
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    const int d = parent_.block_dim(i);
    if (blocks_[i].rows() != d || blocks_[i].cols() != d)
      throw InvalidInput("Element: block shape does not match the parent algebra");
  }
}

Element Element::identity(const Algebra& a) {
  Element x(a);
  for (std::size_t i = 0; i < a.block_count(); ++i)
    x.block(i) = Eigen::MatrixXcd::Identity(a.block_dim(i), a.block_dim(i));
  return x;
}

Element Element::basis_unit(const Algebra& a, std::size_t b, int r, int c) {
  if (b >= a.block_count()) throw InvalidInput("basis_unit: block index out of range");
  const int d = a.block_dim(b);
  if (r < 0 || c < 0 || r >= d || c >= d)
    throw InvalidInput("basis_unit: entry index out of range");
  Element x(a);
  x.block(b)(r, c) = Complex(1.0, 0.0);
  return x;
}

Eigen::VectorXcd Element::vectorize() const {
  Eigen::VectorXcd v(parent_.dim());
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    const int d = parent_.block_dim(i);
    const std::size_t off = parent_.block_offset(i);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) v(off + static_cast<std::size_t>(r) * d + c) = blocks_[i](r, c);
  }
  return v;
}

Element Element::devectorize(const Algebra& a, const Eigen::VectorXcd& v) {
  if (static_cast<std::size_t>(v.size()) != a.dim())
    throw InvalidInput("devectorize: coordinate length does not match the algebra");
  Element x(a);
  for (std::size_t i = 0; i < a.block_count(); ++i) {
    const int d = a.block_dim(i);
    const std::size_t off = a.block_offset(i);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) x.block(i)(r, c) = v(off + static_cast<std::size_t>(r) * d + c);
  }
  return x;
}

Eigen::MatrixXcd Element::to_dense() const {
  const std::size_t n = parent_.hilbert_dim();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    const std::size_t off = parent_.hilbert_offset(i);
    m.block(off, off, parent_.block_dim(i), parent_.block_dim(i)) = blocks_[i];
  }
  return m;
}

Element Element::adjoint() const {
  Element x(parent_);
  for (std::size_t i = 0; i < blocks_.size(); ++i) x.block(i) = blocks_[i].adjoint();
  return x;
}

double Element::hs_norm() const {
  double s = 0.0;
  for (const auto& b : blocks_) s += b.squaredNorm();
  return std::sqrt(s);
}

double Element::max_abs() const {
  double m = 0.0;
  for (const auto& b : blocks_)
    for (int r = 0; r < b.rows(); ++r)
      for (int c = 0; c < b.cols(); ++c) m = std::max(m, std::abs(b(r, c)));
  return m;
}

Element& Element::operator+=(const Element& rhs) {
  if (parent_ != rhs.parent_) throw InvalidInput("Element: mismatched algebras in +");
  for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] += rhs.blocks_[i];
  return *this;
}

Element& Element::operator-=(const Element& rhs) {
  if (parent_ != rhs.parent_) throw InvalidInput("Element: mismatched algebras in -");
  for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] -= rhs.blocks_[i];
  return *this;
}

Element& Element::operator*=(Complex s) {
  for (auto& b : blocks_) b *= s;
  return *this;
}

Element operator+(Element lhs, const Element& rhs) { return lhs += rhs; }
Element operator-(Element lhs, const Element& rhs) { return lhs -= rhs; }
Element operator*(Complex s, Element x) { return x *= s; }

Element operator*(const Element& x, const Element& y) {
  if (x.parent() != y.parent()) throw InvalidInput("Element: mismatched algebras in *");
  Element z(x.parent());
  for (std::size_t i = 0; i < x.blocks().size(); ++i) z.block(i) = x.block(i) * y.block(i);
  return z;
}

Complex hs_inner(const Element& x, const Element& y) {
  if (x.parent() != y.parent()) throw InvalidInput("hs_inner: mismatched algebras");
  Complex s(0, 0);
  for (std::size_t i = 0; i < x.blocks().size(); ++i)
    s += (x.block(i).adjoint() * y.block(i)).trace();
  return s;
}

Element sym_product(const Element& x, const Element& y) {
  Element z = x * y + y * x;
  z *= Complex(0.5, 0.0);
  return z;
}

double max_abs_diff(const Element& x, const Element& y) {
  Element d = x - y;
  return d.max_abs();
}

//============================================================================
// Trace and norms
//============================================================================

Complex trace(const Algebra& a, const Element& x) {
  if (x.parent() != a) throw InvalidInput("trace: element does not belong to the algebra");
  Complex t(0, 0);
  for (std::size_t i = 0; i < a.block_count(); ++i)
    t += a.block_weight(i) * x.block(i).trace();
  return t;
}

Complex trace(const Element& x) { return trace(x.parent(), x); }

namespace {

// Eigenvalues of x^* x per block, clamped at zero.
std::vector<Eigen::VectorXd> gram_eigenvalues(const Element& x) {
  std::vector<Eigen::VectorXd> out;
  out.reserve(x.blocks().size());
  for (const auto& b : x.blocks()) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(b.adjoint() * b);
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
    out.push_back(ev);
  }
  return out;
}

}  // namespace

double lp_norm(const Algebra& a, const Element& x, double p) {
  if (x.parent() != a) throw InvalidInput("lp_norm: element does not belong to the algebra");
  if (std::isinf(p)) {
    double top = 0.0;
    for (const auto& ev : gram_eigenvalues(x))
      if (ev.size() > 0) top = std::max(top, ev.maxCoeff());
    return std::sqrt(top);
  }
  if (!(p >= 1.0)) throw InvalidInput("lp_norm: p < 1 rejected");
  double s = 0.0;
  const auto evs = gram_eigenvalues(x);
  for (std::size_t i = 0; i < evs.size(); ++i) {
    double block_sum = 0.0;
    for (int j = 0; j < evs[i].size(); ++j) block_sum += std::pow(evs[i](j), p / 2.0);
    s += a.block_weight(i) * block_sum;
  }
  return std::pow(s, 1.0 / p);
}

double lp_norm(const Element& x, double p) { return lp_norm(x.parent(), x, p); }

//============================================================================
// Spectral calculus
//============================================================================

Element abs_power(const Element& x, double r) {
  if (!(r > 0.0)) throw InvalidInput("abs_power: exponent must be positive");
  Element out(x.parent());
  for (std::size_t i = 0; i < x.blocks().size(); ++i) {
    const Eigen::MatrixXcd& b = x.block(i);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(b.adjoint() * b);
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
    Eigen::VectorXd powd(ev.size());
    for (int j = 0; j < ev.size(); ++j) powd(j) = std::pow(ev(j), r / 2.0);
    out.block(i) = es.eigenvectors() * powd.asDiagonal() * es.eigenvectors().adjoint();
  }
  return out;
}

namespace {

double default_cutoff(const Element& b) {
  double top = 0.0;
  for (const auto& m : b.blocks()) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().size() > 0) top = std::max(top, es.eigenvalues().maxCoeff());
  }
  return tol::kSupportCutoff * top;
}

// Hermitian functional calculus: f applied to eigenvalues above the cutoff,
// zero below.
template <typename F>
Element spectral_map(const Element& b, double cutoff, F f) {
  Element out(b.parent());
  for (std::size_t i = 0; i < b.blocks().size(); ++i) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(b.block(i));
    Eigen::VectorXd mapped(es.eigenvalues().size());
    for (int j = 0; j < mapped.size(); ++j) {
      const double lambda = es.eigenvalues()(j);
      mapped(j) = (lambda > cutoff) ? f(lambda) : 0.0;
    }
    out.block(i) = es.eigenvectors() * mapped.asDiagonal() * es.eigenvectors().adjoint();
  }
  return out;
}

}  // namespace

Element psd_power(const Element& b, double r, double cutoff) {
  if (cutoff < 0.0) cutoff = default_cutoff(b);
  return spectral_map(b, cutoff, [r](double l) { return std::pow(l, r); });
}

Element support_projection(const Element& b, double cutoff) {
  if (!is_positive_semidefinite(b, 1e-7))
    throw InvalidInput("support_projection: input is not positive");
  if (cutoff < 0.0) cutoff = default_cutoff(b);
  return spectral_map(b, cutoff, [](double) { return 1.0; });
}

Element pinv_sqrt(const Element& b, double cutoff) {
  if (cutoff < 0.0) cutoff = default_cutoff(b);
  return spectral_map(b, cutoff, [](double l) { return 1.0 / std::sqrt(l); });
}

double min_eigenvalue(const Element& x) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& b : x.blocks()) {
    if (b.rows() == 0) continue;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(b, Eigen::EigenvaluesOnly);
    m = std::min(m, es.eigenvalues().minCoeff());
  }
  return std::isfinite(m) ? m : 0.0;
}

//============================================================================
// Predicates
//============================================================================

bool is_hermitian(const Element& x, double tolerance) {
  return max_abs_diff(x, x.adjoint()) < tolerance;
}

bool is_positive_semidefinite(const Element& x, double tolerance) {
  if (!is_hermitian(x, std::max(tolerance, tol::kAlgebraic))) return false;
  Element h = x + x.adjoint();
  h *= Complex(0.5, 0.0);
  const double scale = std::max(1.0, h.max_abs());
  return min_eigenvalue(h) >= -tolerance * scale;
}

bool is_projection(const Element& x, double tolerance) {
  if (!is_hermitian(x, tolerance)) return false;
  return max_abs_diff(x * x, x) < tolerance;
}

bool is_partial_isometry(const Element& x, double tolerance) {
  return is_projection(x.adjoint() * x, tolerance);
}

//============================================================================
// Samplers
//============================================================================

Element random_element(const Algebra& a, Rng& rng) {
  Element x(a);
  for (std::size_t i = 0; i < a.block_count(); ++i)
    x.block(i) = rng.ginibre(a.block_dim(i), a.block_dim(i));
  return x;
}

Element random_hermitian(const Algebra& a, Rng& rng) {
  Element g = random_element(a, rng);
  Element h = g + g.adjoint();
  h *= Complex(0.5, 0.0);
  return h;
}

Element random_positive(const Algebra& a, Rng& rng) {
  Element g = random_element(a, rng);
  return g.adjoint() * g;
}

Element random_unitary(const Algebra& a, Rng& rng) {
  Element u(a);
  for (std::size_t i = 0; i < a.block_count(); ++i) u.block(i) = rng.unitary(a.block_dim(i));
  return u;
}

}  // namespace opalg
