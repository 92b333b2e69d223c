#include "zenolab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "zenolab/errors.hpp"

namespace zenolab {

namespace {

void require_finite(const ComplexMatrix::Storage& m) {
  if (m.rows() < 1 || m.cols() < 1) {
    throw DimensionError("matrix must have at least one row and one column");
  }
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const Complex z = m.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw InvariantViolation("matrix entry " + std::to_string(i) +
                               " is not finite");
    }
  }
}

void require_square(const ComplexMatrix& a, const char* what) {
  if (!a.is_square()) {
    throw DimensionError(std::string(what) + ": expected a square matrix, got " +
                         std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()));
  }
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("shape mismatch: " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " vs " +
                         std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(Eigen::Index rows, Eigen::Index cols) {
  if (rows < 1 || cols < 1) {
    throw DimensionError("matrix must have at least one row and one column");
  }
  m_ = Storage::Zero(rows, cols);
}

ComplexMatrix::ComplexMatrix(Storage values) : m_(std::move(values)) {
  require_finite(m_);
}

ComplexMatrix::ComplexMatrix(
    std::initializer_list<std::initializer_list<Complex>> rows) {
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto c = r > 0 ? static_cast<Eigen::Index>(rows.begin()->size()) : 0;
  if (r < 1 || c < 1) {
    throw DimensionError("matrix must have at least one row and one column");
  }
  m_.resize(r, c);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    if (static_cast<Eigen::Index>(row.size()) != c) {
      throw DimensionError("ragged initializer list");
    }
    Eigen::Index j = 0;
    for (const auto& z : row) m_(i, j++) = z;
    ++i;
  }
  require_finite(m_);
}

ComplexMatrix ComplexMatrix::identity(Eigen::Index n) {
  return ComplexMatrix(Storage::Identity(n, n));
}

ComplexMatrix ComplexMatrix::zeros(Eigen::Index rows, Eigen::Index cols) {
  return ComplexMatrix(rows, cols);
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> entries) {
  const auto n = static_cast<Eigen::Index>(entries.size());
  ComplexMatrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) out.m_(i, i) = entries[i];
  require_finite(out.m_);
  return out;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<Complex> entries) {
  return diagonal(std::span<const Complex>(entries.begin(), entries.size()));
}

ComplexMatrix ComplexMatrix::column(std::span<const Complex> entries) {
  const auto n = static_cast<Eigen::Index>(entries.size());
  ComplexMatrix out(n, 1);
  for (Eigen::Index i = 0; i < n; ++i) out.m_(i, 0) = entries[i];
  require_finite(out.m_);
  return out;
}

Complex ComplexMatrix::trace() const {
  require_square(*this, "trace");
  return m_.trace();
}

double ComplexMatrix::one_norm() const {
  return m_.cwiseAbs().colwise().sum().maxCoeff();
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other);
  m_ += other.m_;
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other);
  m_ -= other.m_;
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  m_ *= scale;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
  a += b;
  return a;
}

ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
  a -= b;
  return a;
}

ComplexMatrix operator*(Complex s, ComplexMatrix a) {
  a *= s;
  return a;
}

ComplexMatrix operator*(ComplexMatrix a, Complex s) {
  a *= s;
  return a;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  return matmul(a, b);
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("matmul: " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " times " +
                         std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
  }
  ComplexMatrix::Storage out = a.values() * b.values();
  return ComplexMatrix(std::move(out));
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
  return ComplexMatrix(ComplexMatrix::Storage(a.values().adjoint()));
}

ComplexMatrix transpose(const ComplexMatrix& a) {
  return ComplexMatrix(ComplexMatrix::Storage(a.values().transpose()));
}

ComplexMatrix conjugate(const ComplexMatrix& a) {
  return ComplexMatrix(ComplexMatrix::Storage(a.values().conjugate()));
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const Eigen::Index rb = b.rows(), cb = b.cols();
  ComplexMatrix::Storage out(a.rows() * rb, a.cols() * cb);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * rb, j * cb, rb, cb) = a(i, j) * b.values();
    }
  }
  return ComplexMatrix(std::move(out));
}

ComplexMatrix vectorize(const ComplexMatrix& x) {
  require_square(x, "vectorize");
  const Eigen::Index d = x.rows();
  ComplexMatrix::Storage v(d * d, 1);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) v(i + j * d, 0) = x(i, j);
  }
  return ComplexMatrix(std::move(v));
}

ComplexMatrix devectorize(const ComplexMatrix& v, Eigen::Index dim) {
  if (dim < 1 || v.cols() != 1 || v.rows() != dim * dim) {
    throw DimensionError("devectorize: expected a column of length " +
                         std::to_string(dim * dim));
  }
  ComplexMatrix::Storage x(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index i = 0; i < dim; ++i) x(i, j) = v(i + j * dim, 0);
  }
  return ComplexMatrix(std::move(x));
}

bool is_hermitian(const ComplexMatrix& a, double rel_tol) {
  if (!a.is_square()) return false;
  const double scale = a.frobenius_norm();
  const double skew = (a.values() - a.values().adjoint()).norm();
  return skew <= rel_tol * scale;
}

SpectralData herm_eig(const ComplexMatrix& a) {
  require_square(a, "herm_eig");
  if (!is_hermitian(a, 1e-8)) {
    throw InvariantViolation("herm_eig: input is not Hermitian");
  }
  using Dense = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
  const Dense h = 0.5 * (a.values() + a.values().adjoint());
  Eigen::SelfAdjointEigenSolver<Dense> solver(h);
  if (solver.info() != Eigen::Success) {
    throw InvariantViolation("herm_eig: eigensolver did not converge");
  }
  // Eigen returns ascending order; flip.
  const Eigen::Index n = h.rows();
  SpectralData out;
  out.values.resize(static_cast<std::size_t>(n));
  ComplexMatrix::Storage vecs(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values[static_cast<std::size_t>(k)] = solver.eigenvalues()(n - 1 - k);
    vecs.col(k) = solver.eigenvectors().col(n - 1 - k);
  }
  out.vectors = ComplexMatrix(std::move(vecs));
  return out;
}

SpectralData singular_values(const ComplexMatrix& a) {
  Eigen::JacobiSVD<ComplexMatrix::Storage> svd(a.values());
  SpectralData out;
  const auto& s = svd.singularValues();
  out.values.assign(s.data(), s.data() + s.size());
  return out;
}

double trace_norm(const ComplexMatrix& a) {
  if (a.is_square() && is_hermitian(a, 1e-14)) {
    double sum = 0.0;
    for (double v : herm_eig(a).values) sum += std::abs(v);
    return sum;
  }
  double sum = 0.0;
  for (double v : singular_values(a).values) sum += v;
  return sum;
}

double spectral_norm(const ComplexMatrix& a) {
  return singular_values(a).values.front();
}

ComplexMatrix matrix_exp(const ComplexMatrix& a, double tol) {
  require_square(a, "matrix_exp");
  if (!(tol > 0.0)) throw InvariantViolation("matrix_exp: tol must be > 0");
  const Eigen::Index n = a.rows();
  using Storage = ComplexMatrix::Storage;

  const double norm = a.one_norm();
  int squarings = 0;
  if (norm > 0.5) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  }
  const double b = norm / std::ldexp(1.0, squarings);

  // Smallest degree m whose Taylor remainder bound b^{m+1}/(m+1)! /
  // (1 - b/(m+2)) is below the per-step budget. Squaring multiplies the
  // relative error by roughly 2^s, hence the scaled target.
  const double target = std::max(tol * std::ldexp(1.0, -squarings), 1e-18);
  int degree = 1;
  double term = b;  // b^m / m!
  for (; degree < 40; ++degree) {
    const double next = term * b / (degree + 1);
    const double remainder = next / (1.0 - b / (degree + 2));
    if (remainder <= target * std::exp(-b)) break;
    term = next;
  }

  const Storage scaled = a.values() / std::ldexp(1.0, squarings);
  Storage result = Storage::Identity(n, n);
  for (int k = degree; k >= 1; --k) {
    result = Storage::Identity(n, n) + (scaled * result) / static_cast<double>(k);
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return ComplexMatrix(std::move(result));
}

ComplexMatrix matrix_power(const ComplexMatrix& a, long n) {
  require_square(a, "matrix_power");
  if (n < 0) throw InvariantViolation("matrix_power: negative exponent");
  using Storage = ComplexMatrix::Storage;
  Storage result = Storage::Identity(a.rows(), a.cols());
  Storage base = a.values();
  bool first = true;
  while (n > 0) {
    if (n & 1) {
      if (first) {
        result = base;
        first = false;
      } else {
        result = result * base;
      }
    }
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return ComplexMatrix(std::move(result));
}

}  // namespace zenolab
