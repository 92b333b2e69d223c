#include "zenolab/random.hpp"

#include <cmath>

#include "zenolab/errors.hpp"

namespace zenolab {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : engine_(mix_seed(seed, stream)) {}

double Rng::normal() { return normal_(engine_); }

double Rng::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return Complex(re, im) / std::sqrt(2.0);
}

ComplexMatrix ginibre(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  ComplexMatrix g(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) g(i, j) = rng.complex_normal();
  }
  return g;
}

ComplexMatrix random_unitary(Rng& rng, Eigen::Index d) {
  const ComplexMatrix g = ginibre(rng, d, d);
  Eigen::HouseholderQR<ComplexMatrix::Storage> qr(g.values());
  ComplexMatrix::Storage q = qr.householderQ();
  const ComplexMatrix::Storage r = qr.matrixQR();
  // Fix the column phases so the distribution is Haar.
  for (Eigen::Index j = 0; j < d; ++j) {
    const Complex rjj = r(j, j);
    const double mag = std::abs(rjj);
    if (mag > 0) q.col(j) *= rjj / mag;
  }
  return ComplexMatrix(std::move(q));
}

ComplexMatrix random_hermitian(Rng& rng, Eigen::Index d) {
  const ComplexMatrix g = ginibre(rng, d, d);
  return Complex(0.5) * (g + adjoint(g));
}

ComplexMatrix random_density(Rng& rng, Eigen::Index d, Eigen::Index support) {
  if (support < 1 || support > d) {
    throw InvariantViolation("random_density: support must be in [1, d]");
  }
  ComplexMatrix g(d, d);
  for (Eigen::Index i = 0; i < support; ++i) {
    for (Eigen::Index j = 0; j < support; ++j) g(i, j) = rng.complex_normal();
  }
  ComplexMatrix rho = matmul(g, adjoint(g));
  rho *= Complex(1.0 / rho.trace().real());
  return rho;
}

ComplexMatrix random_pure(Rng& rng, Eigen::Index d, Eigen::Index support) {
  if (support < 1 || support > d) {
    throw InvariantViolation("random_pure: support must be in [1, d]");
  }
  ComplexMatrix psi(d, 1);
  double norm2 = 0.0;
  for (Eigen::Index i = 0; i < support; ++i) {
    psi(i, 0) = rng.complex_normal();
    norm2 += std::norm(psi(i, 0));
  }
  psi *= Complex(1.0 / std::sqrt(norm2));
  return matmul(psi, adjoint(psi));
}

}  // namespace zenolab
