#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>

#include "opalg/common.hpp"

namespace opalg {

/// splitmix64 step; used to derive independent stream seeds from a base seed.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Seeded random source for all probes and generators.  Ginibre-style complex
/// Gaussian entries; positives are formed as x*x by callers.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed), seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  double uniform(double a, double b) {
    std::uniform_real_distribution<double> d(a, b);
    return d(eng_);
  }

  int uniform_int(int a, int b) {  // inclusive bounds
    std::uniform_int_distribution<int> d(a, b);
    return d(eng_);
  }

  double gaussian() {
    std::normal_distribution<double> d(0.0, 1.0);
    return d(eng_);
  }

  Complex complex_gaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return Complex(re, im) / std::sqrt(2.0);
  }

  Eigen::MatrixXcd ginibre(int rows, int cols) {
    Eigen::MatrixXcd m(rows, cols);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) m(r, c) = complex_gaussian();
    return m;
  }

  /// Haar-ish unitary: QR of a Ginibre matrix with phase-fixed diagonal.
  Eigen::MatrixXcd unitary(int n) {
    Eigen::MatrixXcd g = ginibre(n, n);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ();
    Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < n; ++i) {
      const Complex d = r(i, i);
      q.col(i) *= (std::abs(d) > 0) ? d / std::abs(d) : Complex(1, 0);
    }
    return q;
  }

  Eigen::VectorXcd unit_vector(int n) {
    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; ++i) v(i) = complex_gaussian();
    const double nv = v.norm();
    if (nv > 0) v /= nv;
    return v;
  }

 private:
  std::mt19937_64 eng_;
  std::uint64_t seed_;
};

}  // namespace opalg
