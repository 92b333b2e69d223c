#pragma once

#include <cstdint>
#include <random>

#include "zenolab/linalg.hpp"

namespace zenolab {

/// Deterministic random stream keyed by (seed, stream id). Two streams with
/// different ids are independent of each other and of the order in which they
/// are created, which keeps parallel sweeps reproducible.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream);

  double normal();
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi);
  Complex complex_normal();  // E|z|^2 = 1

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// splitmix64 finaliser, exposed for deriving sub-seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

/// Matrix with i.i.d. standard complex Gaussian entries.
ComplexMatrix ginibre(Rng& rng, Eigen::Index rows, Eigen::Index cols);
/// Haar-distributed unitary (QR of a Ginibre matrix with phase fix).
ComplexMatrix random_unitary(Rng& rng, Eigen::Index d);
/// Hermitian matrix (G + G^dagger)/2.
ComplexMatrix random_hermitian(Rng& rng, Eigen::Index d);
/// Density matrix G G^dagger / Tr supported on the first `support` levels.
ComplexMatrix random_density(Rng& rng, Eigen::Index d, Eigen::Index support);
/// Random pure state |psi><psi| supported on the first `support` levels.
ComplexMatrix random_pure(Rng& rng, Eigen::Index d, Eigen::Index support);

}  // namespace zenolab
