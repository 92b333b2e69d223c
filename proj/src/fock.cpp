#include "zenolab/fock.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "zenolab/errors.hpp"

namespace zenolab {

FockSpace::FockSpace(Eigen::Index dim) : dim_(dim) {
  if (dim < 2) {
    throw InvariantViolation("Fock space dimension must be >= 2, got " +
                             std::to_string(dim));
  }
}

DensityMatrix::DensityMatrix(FockSpace space, ComplexMatrix matrix,
                             TraceContract contract)
    : space_(space), matrix_(std::move(matrix)), contract_(contract) {
  if (matrix_.rows() != space_.dim() || matrix_.cols() != space_.dim()) {
    throw DimensionError("density matrix shape does not match Fock space");
  }
  const double skew = (matrix_.values() - matrix_.values().adjoint()).norm();
  if (skew > kStateTol) {
    throw InvariantViolation("density matrix is not Hermitian (skew " +
                             std::to_string(skew) + ")");
  }
  const double min_eig = herm_eig(matrix_).values.back();
  if (min_eig < -kStateTol) {
    throw InvariantViolation("density matrix has negative eigenvalue " +
                             std::to_string(min_eig));
  }
  const double tr = matrix_.trace().real();
  if (contract_ == TraceContract::unit && std::abs(tr - 1.0) > kStateTol) {
    throw InvariantViolation("density matrix trace " + std::to_string(tr) +
                             " differs from 1");
  }
  if (contract_ == TraceContract::subnormalized && tr > 1.0 + kStateTol) {
    throw InvariantViolation("density matrix trace " + std::to_string(tr) +
                             " exceeds 1");
  }
}

ComplexMatrix CoherentVector::ket() const {
  return ComplexMatrix::column(coefficients);
}

ComplexMatrix CoherentVector::projector() const {
  const ComplexMatrix k = ket();
  return matmul(k, adjoint(k));
}

ComplexMatrix number_operator(const FockSpace& space) {
  ComplexMatrix n(space.dim(), space.dim());
  for (Eigen::Index i = 0; i < space.dim(); ++i) n(i, i) = static_cast<double>(i);
  return n;
}

ComplexMatrix annihilation(const FockSpace& space) {
  ComplexMatrix a(space.dim(), space.dim());
  for (Eigen::Index n = 1; n < space.dim(); ++n) {
    a(n - 1, n) = std::sqrt(static_cast<double>(n));
  }
  return a;
}

ComplexMatrix creation(const FockSpace& space) {
  return adjoint(annihilation(space));
}

double coherent_tail_mass(Complex alpha, Eigen::Index d) {
  const double x = std::norm(alpha);
  if (x == 0.0) return 0.0;
  if (x >= static_cast<double>(d)) {
    // Tail is not small; the head sum is accurate enough.
    double term = std::exp(-x), head = 0.0;
    for (Eigen::Index n = 0; n < d; ++n) {
      head += term;
      term *= x / static_cast<double>(n + 1);
    }
    return std::clamp(1.0 - head, 0.0, 1.0);
  }
  // Sum the tail directly starting from its first term.
  const double dd = static_cast<double>(d);
  double term = std::exp(-x + dd * std::log(x) - std::lgamma(dd + 1.0));
  double tail = 0.0;
  for (Eigen::Index n = d; n < d + 10000; ++n) {
    tail += term;
    term *= x / static_cast<double>(n + 1);
    if (term <= tail * 1e-17) break;
  }
  return std::clamp(tail, 0.0, 1.0);
}

CoherentVector coherent_vector(Complex alpha, const FockSpace& space) {
  CoherentVector out{space, alpha, {}, 0.0};
  out.coefficients.resize(static_cast<std::size_t>(space.dim()));
  Complex c = std::exp(-0.5 * std::norm(alpha));
  for (Eigen::Index n = 0; n < space.dim(); ++n) {
    out.coefficients[static_cast<std::size_t>(n)] = c;
    c *= alpha / std::sqrt(static_cast<double>(n + 1));
  }
  out.tail_mass = coherent_tail_mass(alpha, space.dim());
  return out;
}

Complex coherent_overlap_exact(Complex alpha, Complex beta) {
  return std::exp(-0.5 * (std::norm(alpha) + std::norm(beta) -
                          2.0 * std::conj(alpha) * beta));
}

DensityMatrix vacuum_state(const FockSpace& space) { return fock_state(space, 0); }

DensityMatrix fock_state(const FockSpace& space, Eigen::Index n) {
  if (n < 0 || n >= space.dim()) {
    throw InvariantViolation("Fock level " + std::to_string(n) +
                             " outside truncated space");
  }
  ComplexMatrix m(space.dim(), space.dim());
  m(n, n) = 1.0;
  return DensityMatrix(space, std::move(m));
}

DensityMatrix pure_state(const FockSpace& space, const ComplexMatrix& ket) {
  if (ket.cols() != 1 || ket.rows() != space.dim()) {
    throw DimensionError("pure_state: ket has wrong shape");
  }
  const double norm2 = ket.values().squaredNorm();
  if (norm2 == 0.0) throw InvariantViolation("pure_state: zero vector");
  ComplexMatrix rho = matmul(ket, adjoint(ket));
  rho *= Complex(1.0 / norm2);
  return DensityMatrix(space, std::move(rho));
}

double particle_number(const DensityMatrix& rho) {
  double total = 0.0;
  const auto& m = rho.matrix();
  for (Eigen::Index n = 1; n < m.rows(); ++n) {
    total += static_cast<double>(n) * m(n, n).real();
  }
  return total;
}

double weighted_trace(const ComplexMatrix& x) {
  if (!x.is_square()) throw DimensionError("weighted_trace: non-square input");
  double total = 0.0;
  for (Eigen::Index n = 0; n < x.rows(); ++n) {
    total += static_cast<double>(n + 1) * x(n, n).real();
  }
  return total;
}

double trace_distance(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) {
    throw DimensionError("trace_distance: operands differ in shape");
  }
  const ComplexMatrix diff = rho - sigma;
  // Hermitise so the eigen route is taken even with roundoff-level skew.
  const ComplexMatrix h = Complex(0.5) * (diff + adjoint(diff));
  double sum = 0.0;
  for (double v : herm_eig(h).values) sum += std::abs(v);
  return 0.5 * sum;
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (!(rho.space() == sigma.space())) {
    throw DimensionError("trace_distance: states live on different spaces");
  }
  return trace_distance(rho.matrix(), sigma.matrix());
}

}  // namespace zenolab
