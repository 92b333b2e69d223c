#pragma once

#include "zenolab/linalg.hpp"

namespace zenolab {

/// Truncated single-mode Fock space with basis |0>, ..., |d-1>.
class FockSpace {
 public:
  explicit FockSpace(Eigen::Index dim);
  Eigen::Index dim() const noexcept { return dim_; }
  friend bool operator==(const FockSpace&, const FockSpace&) = default;

 private:
  Eigen::Index dim_;
};

/// Whether a density matrix must have unit trace or only trace <= 1
/// (outputs of trace-non-increasing operations).
enum class TraceContract { unit, subnormalized };

inline constexpr double kStateTol = 1e-10;

/// Hermitian positive semidefinite matrix with trace 1 (or <= 1).
class DensityMatrix {
 public:
  DensityMatrix(FockSpace space, ComplexMatrix matrix,
                TraceContract contract = TraceContract::unit);

  const FockSpace& space() const noexcept { return space_; }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  TraceContract contract() const noexcept { return contract_; }

 private:
  FockSpace space_;
  ComplexMatrix matrix_;
  TraceContract contract_;
};

/// Truncated coherent state. Coefficients are not renormalised; the missing
/// probability is carried in `tail_mass`.
struct CoherentVector {
  FockSpace space;
  Complex amplitude;
  std::vector<Complex> coefficients;
  double tail_mass;

  ComplexMatrix ket() const;
  /// |alpha><alpha| built from the truncated coefficients (trace 1 - tail).
  ComplexMatrix projector() const;
};

ComplexMatrix number_operator(const FockSpace& space);
ComplexMatrix annihilation(const FockSpace& space);
ComplexMatrix creation(const FockSpace& space);

CoherentVector coherent_vector(Complex alpha, const FockSpace& space);
/// exp(-|alpha|^2) sum_{n >= d} |alpha|^{2n} / n!, evaluated without
/// cancellation when the tail is small.
double coherent_tail_mass(Complex alpha, Eigen::Index d);
/// Series-derived overlap exp(-(|a|^2 + |b|^2 - 2 conj(a) b) / 2).
Complex coherent_overlap_exact(Complex alpha, Complex beta);

DensityMatrix vacuum_state(const FockSpace& space);
DensityMatrix fock_state(const FockSpace& space, Eigen::Index n);
/// |psi><psi| / <psi|psi>.
DensityMatrix pure_state(const FockSpace& space, const ComplexMatrix& ket);

/// sum_n n Re(rho_nn).
double particle_number(const DensityMatrix& rho);
/// Tr((N + 1) x) for an arbitrary square matrix, real part.
double weighted_trace(const ComplexMatrix& x);
/// (1/2) || rho - sigma ||_1.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);
double trace_distance(const ComplexMatrix& rho, const ComplexMatrix& sigma);

}  // namespace zenolab
