#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "zenolab/fock.hpp"
#include "zenolab/linalg.hpp"

namespace zenolab {

/// Linear map on d x d operators as a d^2 x d^2 matrix acting on
/// column-stacked vectors (see vectorize).
class Superoperator {
 public:
  Superoperator(Eigen::Index dim, ComplexMatrix matrix, std::string label = {});

  static Superoperator identity(Eigen::Index dim);
  static Superoperator zero(Eigen::Index dim);

  Eigen::Index dim() const noexcept { return dim_; }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  const std::string& label() const noexcept { return label_; }

  ComplexMatrix apply(const ComplexMatrix& x) const;

 private:
  Eigen::Index dim_;
  ComplexMatrix matrix_;
  std::string label_;
};

/// Composition: (a * b)(x) = a(b(x)).
Superoperator operator*(const Superoperator& a, const Superoperator& b);
Superoperator operator+(const Superoperator& a, const Superoperator& b);
Superoperator operator-(const Superoperator& a, const Superoperator& b);
Superoperator operator*(Complex s, const Superoperator& a);

/// S^n by binary exponentiation.
Superoperator power(const Superoperator& s, long n);
Superoperator exp(const Superoperator& s, double tol = kDefaultExpTol);

enum class KrausKind { trace_preserving, trace_non_increasing };

class KrausChannel {
 public:
  /// Validates sum K^dagger K against `kind` with tolerance 1e-10.
  KrausChannel(Eigen::Index dim, std::vector<ComplexMatrix> ops,
               KrausKind kind = KrausKind::trace_preserving);

  Eigen::Index dim() const noexcept { return dim_; }
  const std::vector<ComplexMatrix>& ops() const noexcept { return ops_; }
  KrausKind kind() const noexcept { return kind_; }

 private:
  Eigen::Index dim_;
  std::vector<ComplexMatrix> ops_;
  KrausKind kind_;
};

Superoperator to_superoperator(const KrausChannel& c);
ComplexMatrix apply(const KrausChannel& c, const ComplexMatrix& x);
ComplexMatrix apply(const Superoperator& s, const ComplexMatrix& x);

/// sum_ij |i><j| (x) c(|i><j|), block (i, j) holding c(E_ij). d <= 32.
ComplexMatrix choi_matrix(const Superoperator& s);
ComplexMatrix choi_matrix(const KrausChannel& c);
bool is_completely_positive(const Superoperator& s, double tol = 1e-10);
bool is_completely_positive(const KrausChannel& c, double tol = 1e-10);

/// rho -> -i[H, rho].
struct HamiltonianCommutator {
  ComplexMatrix hamiltonian;
};
/// rho -> rate (N rho N - {N^2, rho}/2).
struct Dephasing {
  double rate;
};
struct ExplicitSuperoperator {
  ComplexMatrix matrix;
};
using GeneratorSpec =
    std::variant<HamiltonianCommutator, Dephasing, ExplicitSuperoperator>;

Superoperator generator_superoperator(const GeneratorSpec& spec, Eigen::Index dim);

/// Kraus operators K_l(eta), l = 0..d-1, of the truncated attenuator.
KrausChannel attenuator_kraus(Complex eta, const FockSpace& space);
Superoperator attenuator_superop(Complex eta, const FockSpace& space);
/// rho -> 2 a rho a^dagger - N rho - rho N.
Superoperator attenuator_generator(const FockSpace& space);
/// x -> Tr(x) |0><0|.
Superoperator vacuum_projection_superop(const FockSpace& space);

/// (Phi_eta - P)(x) evaluated entrywise from the Kraus formula. The vacuum
/// entry is formed from expm1 so the result keeps full relative accuracy
/// when Phi_eta(x) is within roundoff of P(x).
ComplexMatrix attenuator_deviation(Complex eta, const ComplexMatrix& x);

struct MixingPoint {
  long n;
  double raw;  // ||(M^n - P) x||_1
  double sup;  // max of raw over grid points >= n
};

struct MixingProfile {
  std::vector<MixingPoint> points;
  /// The supremum over n' >= n is taken over the grid only.
  std::string estimator = "grid-sup";
};

/// Empirical s_n(x) on an ascending grid. Powers are built by iterated
/// application of M to x.
MixingProfile mixing_speed_empirical(const Superoperator& m,
                                     const Superoperator& p,
                                     const ComplexMatrix& x,
                                     const std::vector<long>& n_grid);

/// Same quantity for the attenuator, using Phi_eta^n = Phi_{eta^n} and
/// attenuator_deviation.
MixingProfile attenuator_mixing_profile(Complex eta, const ComplexMatrix& x,
                                        const std::vector<long>& n_grid);

/// 4 |eta|^n Tr((N + 1) rho).
double attenuator_mixing_bound(Complex eta, long n, const ComplexMatrix& rho);
/// 4 e^{-gamma} Tr((N + 1) rho).
double attenuator_semigroup_mixing_bound(double gamma, const ComplexMatrix& rho);

/// (1/n) sum_{k=1}^n M^k.
Superoperator cesaro_mean(const Superoperator& m, long n);

struct PositiveParts {
  ComplexMatrix x1, x2, x3, x4;  // x = x1 - x2 + i (x3 - x4)
};
PositiveParts positive_part_decomposition(const ComplexMatrix& x);

struct NormEstimate {
  double value;       // lower bound on the 1 -> 1 norm
  std::size_t probes;
};

/// max ||L(x)||_1 / ||x||_1 over matrix units plus random Hermitian and random
/// PSD probes; at least 200 probes in total.
NormEstimate one_to_one_norm_estimate(const Superoperator& l,
                                      std::uint64_t seed,
                                      std::size_t random_probes = 100);

/// lim M^{2^k} by repeated squaring; throws InvariantViolation if the powers
/// have not settled after 64 squarings.
Superoperator fixed_point_projection(const Superoperator& m, double tol = 1e-12);

/// Random trace-preserving channel on C^d with `rank` Kraus operators,
/// obtained from a random isometry C^d -> C^d (x) C^rank.
KrausChannel random_channel(std::uint64_t seed, std::uint64_t stream,
                            Eigen::Index d, Eigen::Index rank);

}  // namespace zenolab
