#include "zenolab/binomial.hpp"

#include <chrono>
#include <string>

#include "zenolab/errors.hpp"
#include "zenolab/parallel.hpp"

namespace zenolab {

MatrixPolynomial poly_mul_truncated(const MatrixPolynomial& p,
                                    const MatrixPolynomial& q,
                                    std::size_t max_degree) {
  if (p.dim != q.dim) throw DimensionError("poly_mul_truncated: dimension mismatch");
  if (p.coeffs.empty() || q.coeffs.empty()) {
    throw InvariantViolation("poly_mul_truncated: empty polynomial");
  }
  const std::size_t top = std::min(max_degree, p.max_degree() + q.max_degree());
  MatrixPolynomial out{p.dim, {}};
  out.coeffs.assign(top + 1, ComplexMatrix::zeros(p.dim, p.dim));
  for (std::size_t i = 0; i <= p.max_degree() && i <= top; ++i) {
    for (std::size_t j = 0; j <= q.max_degree() && i + j <= top; ++j) {
      out.coeffs[i + j] += matmul(p.coeffs[i], q.coeffs[j]);
    }
  }
  return out;
}

std::vector<ComplexMatrix> expansion_terms(const ComplexMatrix& M,
                                           const ComplexMatrix& L_n, long n,
                                           long k_max) {
  if (n < 1) throw InvariantViolation("expansion_terms: n must be >= 1");
  if (k_max < 0 || k_max > n) {
    throw InvariantViolation("expansion_terms: k_max = " + std::to_string(k_max) +
                             " exceeds n = " + std::to_string(n));
  }
  if (!M.is_square() || M.rows() != L_n.rows() || M.cols() != L_n.cols()) {
    throw DimensionError("expansion_terms: M and L_n must be square and equal-sized");
  }
  using Storage = ComplexMatrix::Storage;
  const Storage& m = M.values();
  const Storage l = L_n.values() / static_cast<double>(n);
  const auto top = static_cast<std::size_t>(k_max);

  // Left-multiplying by (M + s L/n) each step keeps the word order
  // M^{i_{k+1}} L ... L M^{i_1} with the leftmost factor applied last.
  std::vector<Storage> coeffs{Storage::Identity(M.rows(), M.cols())};
  for (long step = 0; step < n; ++step) {
    const std::size_t deg = std::min(top, coeffs.size());
    std::vector<Storage> next(deg + 1);
    for (std::size_t j = 0; j <= deg; ++j) {
      if (j < coeffs.size()) {
        next[j] = m * coeffs[j];
      } else {
        next[j] = Storage::Zero(M.rows(), M.cols());
      }
      if (j >= 1) next[j] += l * coeffs[j - 1];
    }
    coeffs = std::move(next);
  }
  std::vector<ComplexMatrix> out;
  for (std::size_t j = 0; j <= top; ++j) {
    out.emplace_back(j < coeffs.size() ? coeffs[j]
                                       : Storage::Zero(M.rows(), M.cols()));
  }
  return out;
}

std::vector<Superoperator> expansion_terms(const Superoperator& M,
                                           const Superoperator& L_n, long n,
                                           long k_max) {
  if (M.dim() != L_n.dim()) throw DimensionError("expansion_terms: dimension mismatch");
  std::vector<Superoperator> out;
  for (auto& c : expansion_terms(M.matrix(), L_n.matrix(), n, k_max)) {
    out.emplace_back(M.dim(), std::move(c));
  }
  return out;
}

ComplexMatrix binomial_product(const ComplexMatrix& M, const ComplexMatrix& L_n,
                               long n) {
  if (n < 1) throw InvariantViolation("binomial_product: n must be >= 1");
  return matrix_power(M + Complex(1.0 / static_cast<double>(n)) * L_n, n);
}

Superoperator binomial_product(const Superoperator& M, const Superoperator& L_n,
                               long n) {
  if (M.dim() != L_n.dim()) throw DimensionError("binomial_product: dimension mismatch");
  return Superoperator(M.dim(), binomial_product(M.matrix(), L_n.matrix(), n));
}

WorkhorseResult workhorse_limit_check(const Superoperator& M,
                                      const Superoperator& L,
                                      const Superoperator& P, long k,
                                      const std::vector<long>& n_grid,
                                      const ComplexMatrix& x) {
  if (k < 0) throw InvariantViolation("workhorse_limit_check: k must be >= 0");
  Superoperator plp_k = Superoperator::identity(M.dim());
  const Superoperator plp = P * L * P;
  double fact = 1.0;
  for (long j = 1; j <= k; ++j) {
    plp_k = plp * plp_k;
    fact *= static_cast<double>(j);
  }
  // Trailing P only matters for k = 0, where the limit is Px.
  const ComplexMatrix target = Complex(1.0 / fact) * (plp_k * P).apply(x);

  WorkhorseResult result;
  result.records = parallel_map<ConvergenceRecord>(n_grid.size(), [&](std::size_t i) {
    const auto start = std::chrono::steady_clock::now();
    const long n = n_grid[i];
    const auto terms = expansion_terms(M, L, n, k);
    ConvergenceRecord rec;
    rec.parameter = static_cast<double>(n);
    rec.error = trace_norm(terms[static_cast<std::size_t>(k)].apply(x) - target);
    rec.state_id = "x";
    rec.wall_time = std::chrono::steady_clock::now() - start;
    return rec;
  });
  result.decreasing = true;
  for (std::size_t i = 1; i < result.records.size(); ++i) {
    if (!(result.records[i].error < result.records[i - 1].error)) {
      result.decreasing = false;
    }
  }
  return result;
}

}  // namespace zenolab
