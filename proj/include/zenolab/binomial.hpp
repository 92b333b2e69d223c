#pragma once

#include <vector>

#include "zenolab/channels.hpp"
#include "zenolab/engine.hpp"

namespace zenolab {

/// Polynomial in a formal parameter s with square matrix coefficients;
/// coeffs[j] multiplies s^j.
struct MatrixPolynomial {
  Eigen::Index dim;
  std::vector<ComplexMatrix> coeffs;

  std::size_t max_degree() const { return coeffs.size() - 1; }
};

/// Cauchy product p q with terms above `max_degree` dropped.
MatrixPolynomial poly_mul_truncated(const MatrixPolynomial& p,
                                    const MatrixPolynomial& q,
                                    std::size_t max_degree);

/// y_{n,k} for k = 0..k_max: the s^k coefficient of (M + s L_n / n)^n,
/// built by n successive truncated multiplications by (M + s L_n / n).
/// y_{n,0} = M^n. Requires n >= 1 and k_max <= n.
std::vector<Superoperator> expansion_terms(const Superoperator& M,
                                           const Superoperator& L_n, long n,
                                           long k_max);

/// Matrix-level variant used for plain (non-superoperator) square matrices.
std::vector<ComplexMatrix> expansion_terms(const ComplexMatrix& M,
                                           const ComplexMatrix& L_n, long n,
                                           long k_max);

/// (M + L_n / n)^n by binary exponentiation.
Superoperator binomial_product(const Superoperator& M, const Superoperator& L_n,
                               long n);
ComplexMatrix binomial_product(const ComplexMatrix& M, const ComplexMatrix& L_n,
                               long n);

struct WorkhorseResult {
  std::vector<ConvergenceRecord> records;  // error = ||y_{n,k} x - (PLP)^k/k! x||_1
  bool decreasing = false;                 // strictly decreasing along the grid
};

WorkhorseResult workhorse_limit_check(const Superoperator& M,
                                      const Superoperator& L,
                                      const Superoperator& P, long k,
                                      const std::vector<long>& n_grid,
                                      const ComplexMatrix& x);

}  // namespace zenolab
