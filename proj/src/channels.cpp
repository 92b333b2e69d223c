#include "zenolab/channels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "zenolab/errors.hpp"
#include "zenolab/random.hpp"

namespace zenolab {

namespace {

void require_dim(const ComplexMatrix& x, Eigen::Index d, const char* what) {
  if (x.rows() != d || x.cols() != d) {
    throw DimensionError(std::string(what) + ": expected " + std::to_string(d) +
                         "x" + std::to_string(d) + " operand");
  }
}

void require_same_dim(const Superoperator& a, const Superoperator& b) {
  if (a.dim() != b.dim()) {
    throw DimensionError("superoperators act on different dimensions");
  }
}

// table[l][n] = sqrt(C(n+l, n) (1-|eta|^2)^l) eta^n for n + l < d.
std::vector<std::vector<Complex>> attenuator_coefficients(Complex eta,
                                                          Eigen::Index d) {
  const double r = std::abs(eta);
  if (r > 1.0 + 1e-15) {
    throw InvariantViolation("attenuator parameter |eta| = " +
                             std::to_string(r) + " exceeds 1");
  }
  const double loss = std::max(0.0, (1.0 - r) * (1.0 + r));
  std::vector<Complex> eta_pow(static_cast<std::size_t>(d));
  eta_pow[0] = 1.0;
  for (Eigen::Index n = 1; n < d; ++n) eta_pow[n] = eta_pow[n - 1] * eta;

  std::vector<std::vector<Complex>> table(static_cast<std::size_t>(d));
  for (Eigen::Index l = 0; l < d; ++l) {
    auto& row = table[static_cast<std::size_t>(l)];
    row.resize(static_cast<std::size_t>(d - l));
    const double loss_l = std::pow(loss, static_cast<double>(l));
    double binom = 1.0;  // C(n + l, n)
    for (Eigen::Index n = 0; n + l < d; ++n) {
      if (n > 0) binom = binom * static_cast<double>(n + l) / static_cast<double>(n);
      row[static_cast<std::size_t>(n)] = std::sqrt(binom * loss_l) * eta_pow[n];
    }
  }
  return table;
}

}  // namespace

Superoperator::Superoperator(Eigen::Index dim, ComplexMatrix matrix,
                             std::string label)
    : dim_(dim), matrix_(std::move(matrix)), label_(std::move(label)) {
  if (matrix_.rows() != dim * dim || matrix_.cols() != dim * dim) {
    throw DimensionError("superoperator matrix must be d^2 x d^2 with d = " +
                         std::to_string(dim));
  }
}

Superoperator Superoperator::identity(Eigen::Index dim) {
  return Superoperator(dim, ComplexMatrix::identity(dim * dim), "identity");
}

Superoperator Superoperator::zero(Eigen::Index dim) {
  return Superoperator(dim, ComplexMatrix::zeros(dim * dim, dim * dim), "zero");
}

ComplexMatrix Superoperator::apply(const ComplexMatrix& x) const {
  require_dim(x, dim_, "Superoperator::apply");
  return devectorize(matmul(matrix_, vectorize(x)), dim_);
}

Superoperator operator*(const Superoperator& a, const Superoperator& b) {
  require_same_dim(a, b);
  return Superoperator(a.dim(), matmul(a.matrix(), b.matrix()));
}

Superoperator operator+(const Superoperator& a, const Superoperator& b) {
  require_same_dim(a, b);
  return Superoperator(a.dim(), a.matrix() + b.matrix());
}

Superoperator operator-(const Superoperator& a, const Superoperator& b) {
  require_same_dim(a, b);
  return Superoperator(a.dim(), a.matrix() - b.matrix());
}

Superoperator operator*(Complex s, const Superoperator& a) {
  return Superoperator(a.dim(), s * a.matrix(), a.label());
}

Superoperator power(const Superoperator& s, long n) {
  return Superoperator(s.dim(), matrix_power(s.matrix(), n));
}

Superoperator exp(const Superoperator& s, double tol) {
  return Superoperator(s.dim(), matrix_exp(s.matrix(), tol));
}

KrausChannel::KrausChannel(Eigen::Index dim, std::vector<ComplexMatrix> ops,
                           KrausKind kind)
    : dim_(dim), ops_(std::move(ops)), kind_(kind) {
  if (ops_.empty()) throw InvariantViolation("Kraus list is empty");
  ComplexMatrix sum(dim, dim);
  for (const auto& k : ops_) {
    require_dim(k, dim, "KrausChannel");
    sum += matmul(adjoint(k), k);
  }
  const ComplexMatrix id = ComplexMatrix::identity(dim);
  if (kind_ == KrausKind::trace_preserving) {
    const double dev = (sum - id).frobenius_norm();
    if (dev > 1e-10) {
      throw InvariantViolation("Kraus operators are not trace preserving (" +
                               std::to_string(dev) + ")");
    }
  } else {
    const double top = herm_eig(sum).values.front();
    if (top > 1.0 + 1e-10) {
      throw InvariantViolation("Kraus operators increase trace (" +
                               std::to_string(top) + ")");
    }
  }
}

Superoperator to_superoperator(const KrausChannel& c) {
  const Eigen::Index d = c.dim();
  ComplexMatrix total(d * d, d * d);
  for (const auto& k : c.ops()) total += kron(conjugate(k), k);
  return Superoperator(d, std::move(total), "kraus");
}

ComplexMatrix apply(const KrausChannel& c, const ComplexMatrix& x) {
  require_dim(x, c.dim(), "apply");
  ComplexMatrix out(c.dim(), c.dim());
  for (const auto& k : c.ops()) out += matmul(matmul(k, x), adjoint(k));
  return out;
}

ComplexMatrix apply(const Superoperator& s, const ComplexMatrix& x) {
  return s.apply(x);
}

ComplexMatrix choi_matrix(const Superoperator& s) {
  const Eigen::Index d = s.dim();
  if (d > 32) {
    throw DimensionError("choi_matrix: dimension " + std::to_string(d) +
                         " exceeds the limit of 32");
  }
  ComplexMatrix choi(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      for (Eigen::Index k = 0; k < d; ++k) {
        for (Eigen::Index l = 0; l < d; ++l) {
          choi(i * d + k, j * d + l) = s.matrix()(k + l * d, i + j * d);
        }
      }
    }
  }
  return choi;
}

ComplexMatrix choi_matrix(const KrausChannel& c) {
  return choi_matrix(to_superoperator(c));
}

bool is_completely_positive(const Superoperator& s, double tol) {
  const ComplexMatrix choi = choi_matrix(s);
  if (!is_hermitian(choi, 1e-8)) return false;
  return herm_eig(choi).values.back() >= -tol;
}

bool is_completely_positive(const KrausChannel& c, double tol) {
  return is_completely_positive(to_superoperator(c), tol);
}

Superoperator generator_superoperator(const GeneratorSpec& spec,
                                      Eigen::Index dim) {
  const ComplexMatrix id = ComplexMatrix::identity(dim);
  return std::visit(
      [&](const auto& g) -> Superoperator {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, HamiltonianCommutator>) {
          const ComplexMatrix& h = g.hamiltonian;
          require_dim(h, dim, "HamiltonianCommutator");
          if (!is_hermitian(h, 1e-10)) {
            throw InvariantViolation("Hamiltonian is not Hermitian");
          }
          ComplexMatrix m = kron(id, h) - kron(transpose(h), id);
          return Superoperator(dim, Complex(0, -1) * m, "hamiltonian");
        } else if constexpr (std::is_same_v<T, Dephasing>) {
          if (!(g.rate >= 0.0)) {
            throw InvariantViolation("dephasing rate must be >= 0");
          }
          const ComplexMatrix n = number_operator(FockSpace(dim));
          const ComplexMatrix n2 = matmul(n, n);
          ComplexMatrix m = kron(n, n) - Complex(0.5) * (kron(id, n2) + kron(n2, id));
          return Superoperator(dim, Complex(g.rate) * m, "dephasing");
        } else {
          return Superoperator(dim, g.matrix, "explicit");
        }
      },
      spec);
}

KrausChannel attenuator_kraus(Complex eta, const FockSpace& space) {
  const Eigen::Index d = space.dim();
  const auto table = attenuator_coefficients(eta, d);
  std::vector<ComplexMatrix> ops;
  ops.reserve(static_cast<std::size_t>(d));
  for (Eigen::Index l = 0; l < d; ++l) {
    ComplexMatrix k(d, d);
    for (Eigen::Index n = 0; n + l < d; ++n) {
      k(n, n + l) = table[static_cast<std::size_t>(l)][static_cast<std::size_t>(n)];
    }
    ops.push_back(std::move(k));
  }
  return KrausChannel(d, std::move(ops));
}

Superoperator attenuator_superop(Complex eta, const FockSpace& space) {
  Superoperator s = to_superoperator(attenuator_kraus(eta, space));
  return Superoperator(s.dim(), s.matrix(), "attenuator");
}

Superoperator attenuator_generator(const FockSpace& space) {
  const Eigen::Index d = space.dim();
  const ComplexMatrix a = annihilation(space);
  const ComplexMatrix n = number_operator(space);
  const ComplexMatrix id = ComplexMatrix::identity(d);
  ComplexMatrix m = Complex(2.0) * kron(conjugate(a), a) - kron(id, n) -
                    kron(transpose(n), id);
  return Superoperator(d, std::move(m), "attenuator-generator");
}

Superoperator vacuum_projection_superop(const FockSpace& space) {
  const Eigen::Index d = space.dim();
  ComplexMatrix m(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i) m(0, i + i * d) = 1.0;
  return Superoperator(d, std::move(m), "vacuum-projection");
}

ComplexMatrix attenuator_deviation(Complex eta, const ComplexMatrix& x) {
  if (!x.is_square()) throw DimensionError("attenuator_deviation: non-square input");
  const Eigen::Index d = x.rows();
  const auto c = attenuator_coefficients(eta, d);
  ComplexMatrix out(d, d);
  for (Eigen::Index m = 0; m < d; ++m) {
    for (Eigen::Index mp = 0; mp < d; ++mp) {
      if (m == 0 && mp == 0) continue;
      Complex acc = 0.0;
      for (Eigen::Index l = 0; m + l < d && mp + l < d; ++l) {
        const auto& row = c[static_cast<std::size_t>(l)];
        acc += row[static_cast<std::size_t>(m)] * x(m + l, mp + l) *
               std::conj(row[static_cast<std::size_t>(mp)]);
      }
      out(m, mp) = acc;
    }
  }
  // Vacuum entry: sum_l ((1 - |eta|^2)^l - 1) x_ll.
  const double r = std::abs(eta);
  const double log_loss = std::log1p(-r * r);
  Complex vac = 0.0;
  for (Eigen::Index l = 1; l < d; ++l) {
    const double factor = std::isinf(log_loss)
                              ? -1.0
                              : std::expm1(static_cast<double>(l) * log_loss);
    vac += factor * x(l, l);
  }
  out(0, 0) = vac;
  return out;
}

MixingProfile mixing_speed_empirical(const Superoperator& m,
                                     const Superoperator& p,
                                     const ComplexMatrix& x,
                                     const std::vector<long>& n_grid) {
  require_same_dim(m, p);
  if (n_grid.empty()) throw InvariantViolation("mixing_speed_empirical: empty grid");
  if (!std::is_sorted(n_grid.begin(), n_grid.end()) || n_grid.front() < 0) {
    throw InvariantViolation("mixing_speed_empirical: grid must be ascending and >= 0");
  }
  const ComplexMatrix px = p.apply(x);
  MixingProfile profile;
  ComplexMatrix::Storage v = vectorize(x).values();
  long reached = 0;
  for (long n : n_grid) {
    for (; reached < n; ++reached) v = m.matrix().values() * v;
    const ComplexMatrix current = devectorize(ComplexMatrix(v), m.dim());
    profile.points.push_back({n, trace_norm(current - px), 0.0});
  }
  double running = 0.0;
  for (auto it = profile.points.rbegin(); it != profile.points.rend(); ++it) {
    running = std::max(running, it->raw);
    it->sup = running;
  }
  return profile;
}

MixingProfile attenuator_mixing_profile(Complex eta, const ComplexMatrix& x,
                                        const std::vector<long>& n_grid) {
  if (n_grid.empty()) throw InvariantViolation("attenuator_mixing_profile: empty grid");
  if (!std::is_sorted(n_grid.begin(), n_grid.end()) || n_grid.front() < 0) {
    throw InvariantViolation("attenuator_mixing_profile: grid must be ascending and >= 0");
  }
  MixingProfile profile;
  for (long n : n_grid) {
    Complex eta_n = 1.0;
    for (long k = 0; k < n; ++k) eta_n *= eta;
    profile.points.push_back({n, trace_norm(attenuator_deviation(eta_n, x)), 0.0});
  }
  double running = 0.0;
  for (auto it = profile.points.rbegin(); it != profile.points.rend(); ++it) {
    running = std::max(running, it->raw);
    it->sup = running;
  }
  return profile;
}

double attenuator_mixing_bound(Complex eta, long n, const ComplexMatrix& rho) {
  return 4.0 * std::pow(std::abs(eta), static_cast<double>(n)) * weighted_trace(rho);
}

double attenuator_semigroup_mixing_bound(double gamma, const ComplexMatrix& rho) {
  return 4.0 * std::exp(-gamma) * weighted_trace(rho);
}

Superoperator cesaro_mean(const Superoperator& m, long n) {
  if (n < 1) throw InvariantViolation("cesaro_mean: n must be >= 1");
  ComplexMatrix::Storage pow = m.matrix().values();
  ComplexMatrix::Storage sum = pow;
  for (long k = 2; k <= n; ++k) {
    pow = pow * m.matrix().values();
    sum += pow;
  }
  sum /= static_cast<double>(n);
  return Superoperator(m.dim(), ComplexMatrix(std::move(sum)), "cesaro");
}

PositiveParts positive_part_decomposition(const ComplexMatrix& x) {
  if (!x.is_square()) throw DimensionError("positive_part_decomposition: non-square");
  const Eigen::Index d = x.rows();
  const ComplexMatrix re = Complex(0.5) * (x + adjoint(x));
  const ComplexMatrix im = Complex(0, -0.5) * (x - adjoint(x));

  auto split = [d](const ComplexMatrix& h) {
    std::pair<ComplexMatrix, ComplexMatrix> parts{ComplexMatrix(d, d),
                                                  ComplexMatrix(d, d)};
    if (h.frobenius_norm() == 0.0) return parts;
    const SpectralData eig = herm_eig(h);
    const auto& v = eig.vectors->values();
    ComplexMatrix::Storage pos = ComplexMatrix::Storage::Zero(d, d);
    ComplexMatrix::Storage neg = ComplexMatrix::Storage::Zero(d, d);
    for (Eigen::Index k = 0; k < d; ++k) {
      const double lambda = eig.values[static_cast<std::size_t>(k)];
      const auto outer = v.col(k) * v.col(k).adjoint();
      if (lambda > 0) pos += lambda * outer;
      if (lambda < 0) neg -= lambda * outer;
    }
    parts.first = ComplexMatrix(std::move(pos));
    parts.second = ComplexMatrix(std::move(neg));
    return parts;
  };
  auto [x1, x2] = split(re);
  auto [x3, x4] = split(im);
  return {std::move(x1), std::move(x2), std::move(x3), std::move(x4)};
}

NormEstimate one_to_one_norm_estimate(const Superoperator& l, std::uint64_t seed,
                                      std::size_t random_probes) {
  const Eigen::Index d = l.dim();
  double best = 0.0;
  std::size_t count = 0;
  auto probe = [&](const ComplexMatrix& x) {
    const double in = trace_norm(x);
    if (in == 0.0) return;
    best = std::max(best, trace_norm(l.apply(x)) / in);
    ++count;
  };
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      ComplexMatrix e(d, d);
      e(i, j) = 1.0;
      probe(e);
    }
  }
  // Pad the random part so the total never drops below 200 probes.
  const std::size_t units = static_cast<std::size_t>(d * d);
  const std::size_t extra = std::max<std::size_t>(
      random_probes, units >= 200 ? 0 : (200 - units + 1) / 2);
  Rng rng(seed, 0x6e6f726dULL);
  for (std::size_t k = 0; k < extra; ++k) {
    probe(random_hermitian(rng, d));
    probe(random_density(rng, d, d));
  }
  return {best, count};
}

Superoperator fixed_point_projection(const Superoperator& m, double tol) {
  ComplexMatrix::Storage current = m.matrix().values();
  for (int k = 0; k < 64; ++k) {
    ComplexMatrix::Storage next = current * current;
    const double diff = (next - current).stableNorm();
    current = std::move(next);
    if (!current.allFinite()) break;
    if (diff <= tol * std::max(1.0, current.stableNorm())) {
      return Superoperator(m.dim(), ComplexMatrix(std::move(current)), "fixed-point");
    }
  }
  throw InvariantViolation("fixed_point_projection: powers did not converge");
}

KrausChannel random_channel(std::uint64_t seed, std::uint64_t stream,
                            Eigen::Index d, Eigen::Index rank) {
  if (rank < 1) throw InvariantViolation("random_channel: rank must be >= 1");
  Rng rng(seed, stream);
  const ComplexMatrix g = ginibre(rng, d * rank, d);
  Eigen::HouseholderQR<ComplexMatrix::Storage> qr(g.values());
  const ComplexMatrix::Storage q =
      qr.householderQ() * ComplexMatrix::Storage::Identity(d * rank, d);
  std::vector<ComplexMatrix> ops;
  for (Eigen::Index r = 0; r < rank; ++r) {
    ops.emplace_back(ComplexMatrix::Storage(q.block(r * d, 0, d, d)));
  }
  return KrausChannel(d, std::move(ops));
}

}  // namespace zenolab
