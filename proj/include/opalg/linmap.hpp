#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "opalg/algebra.hpp"
#include "opalg/common.hpp"

namespace opalg {

/// A linear map between two Algebras, stored as a dense complex matrix acting
/// on vectorized coordinates (row-major per block, blocks concatenated in
/// order).  Composition is a matrix product under this convention.
class LinMap {
 public:
  LinMap(Algebra domain, Algebra codomain, Eigen::MatrixXcd matrix);

  static LinMap identity(const Algebra& a);
  static LinMap zero(const Algebra& domain, const Algebra& codomain);

  /// Builds the matrix column-by-column from images of the matrix-unit basis.
  template <typename F>
  static LinMap from_function(const Algebra& domain, const Algebra& codomain, F f) {
    Eigen::MatrixXcd m(codomain.dim(), domain.dim());
    for (std::size_t b = 0; b < domain.block_count(); ++b) {
      const int d = domain.block_dim(b);
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) {
          const Element image = f(Element::basis_unit(domain, b, r, c));
          m.col(domain.block_offset(b) + static_cast<std::size_t>(r) * d + c) =
              image.vectorize();
        }
    }
    return LinMap(domain, codomain, std::move(m));
  }

  const Algebra& domain() const { return domain_; }
  const Algebra& codomain() const { return codomain_; }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }

  Element apply(const Element& x) const;
  Element operator()(const Element& x) const { return apply(x); }

  /// this ∘ inner (apply `inner` first).
  LinMap compose(const LinMap& inner) const;

  /// Adjoint with respect to the unweighted Hilbert-Schmidt inner products;
  /// its matrix is the conjugate transpose.
  LinMap hs_adjoint() const;

  double frobenius_norm() const { return matrix_.norm(); }

 private:
  Algebra domain_;
  Algebra codomain_;
  Eigen::MatrixXcd matrix_;
};

/// id_{M_k} ⊗ T between the k-fold amplifications, materialized as a matrix.
LinMap amplify(const LinMap& t, int k);

/// Applies id_{M_k} ⊗ T without materializing the amplified matrix: the
/// amplified input is read as a k × k grid of T-domain elements and T is
/// applied cellwise.
class AmplifiedApply {
 public:
  AmplifiedApply(const LinMap& t, int k);

  const Algebra& domain() const { return domain_; }
  const Algebra& codomain() const { return codomain_; }
  int level() const { return k_; }

  Element operator()(const Element& x) const;

 private:
  const LinMap* t_;
  int k_;
  Algebra domain_;
  Algebra codomain_;
};

/// The identity onto the opposite algebra, realized as the blockwise
/// transpose map a -> a.  A linear involution and a Jordan *-homomorphism.
LinMap opposite_transfer(const Algebra& a);

/// Choi data of a map: one Hermitian-testable matrix per domain block,
/// C_i[(a,r),(b,s)] = T(e^{(i)}_{ab})[r,s] with r,s Hilbert-space indices of
/// the codomain.  The full Choi matrix is the direct sum of the blocks; it is
/// positive semidefinite exactly when the map is completely positive.
struct ChoiMatrix {
  std::vector<Eigen::MatrixXcd> blocks;

  std::size_t side() const;
  bool hermitian(double tolerance = tol::kAlgebraic) const;
  double min_eigenvalue() const;
  Eigen::MatrixXcd dense() const;
};

ChoiMatrix choi(const LinMap& t);
bool is_completely_positive(const LinMap& t, double tolerance = tol::kEigenFloor);

struct PositivityBudget {
  int restarts = 24;
  int max_iters = 300;
  double tolerance = tol::kSearch;
  std::uint64_t seed = kDefaultSeed;
};

/// Outcome of an n-positivity search.  `certified_no` comes with a witness:
/// a positive amplified input whose image has a verified negative eigenvalue.
/// A yes is only exact when the search delegated to the Choi test.
struct PositivityVerdict {
  bool certified_no = false;
  bool exact = false;
  std::optional<Element> witness;  // element of the level-n amplified domain
  double objective = 0.0;          // most negative image eigenvalue found
  int level = 1;
  std::uint64_t seed = 0;
  int restarts_used = 0;
};

PositivityVerdict is_n_positive(const LinMap& t, int n,
                                const PositivityBudget& budget = {});

/// Sampled isometry probes.  `ok == true` is a non-certified verdict; a
/// failure records a replayable counterexample.
struct ProbeResult {
  bool ok = true;
  int level = 1;
  std::optional<Element> counterexample;  // at the recorded amplification level
  double worst_deviation = 0.0;
  std::uint64_t seed = 0;
};

ProbeResult probe_isometry(const LinMap& t, double p, int trials = 20,
                           std::uint64_t seed = kDefaultSeed,
                           double tolerance = tol::kSearch);

ProbeResult probe_complete_isometry(const LinMap& t, double p, int k_max = 3,
                                    int trials = 8,
                                    std::uint64_t seed = kDefaultSeed,
                                    double tolerance = tol::kSearch);

}  // namespace opalg
