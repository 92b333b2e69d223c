#pragma once

#include <complex>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace zenolab {

using Complex = std::complex<double>;

/// Dense complex matrix with row-major storage.
///
/// Every instance has at least one row and one column and only finite
/// entries; both are checked on construction.
class ComplexMatrix {
 public:
  using Storage =
      Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  /// Zero matrix of the given shape.
  ComplexMatrix(Eigen::Index rows, Eigen::Index cols);
  explicit ComplexMatrix(Storage values);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(Eigen::Index n);
  static ComplexMatrix zeros(Eigen::Index rows, Eigen::Index cols);
  static ComplexMatrix diagonal(std::span<const Complex> entries);
  static ComplexMatrix diagonal(std::initializer_list<Complex> entries);
  /// Column vector holding `entries`.
  static ComplexMatrix column(std::span<const Complex> entries);

  Eigen::Index rows() const noexcept { return m_.rows(); }
  Eigen::Index cols() const noexcept { return m_.cols(); }
  bool is_square() const noexcept { return m_.rows() == m_.cols(); }

  const Complex& operator()(Eigen::Index r, Eigen::Index c) const {
    return m_(r, c);
  }
  Complex& operator()(Eigen::Index r, Eigen::Index c) { return m_(r, c); }

  const Storage& values() const noexcept { return m_; }

  Complex trace() const;
  double frobenius_norm() const { return m_.norm(); }
  /// Maximum absolute column sum.
  double one_norm() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale);

 private:
  Storage m_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, Complex s);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

/// Standard product; throws DimensionError when a.cols() != b.rows().
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix adjoint(const ComplexMatrix& a);
ComplexMatrix transpose(const ComplexMatrix& a);
ComplexMatrix conjugate(const ComplexMatrix& a);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Column-stacking vectorization: vec(X)[i + j*d] = X(i, j), so that
/// vec(A X B) = (B^T kron A) vec(X).
ComplexMatrix vectorize(const ComplexMatrix& x);
/// Inverse of vectorize for a length d*d column vector.
ComplexMatrix devectorize(const ComplexMatrix& v, Eigen::Index dim);

/// ||a - a^dagger||_F <= rel_tol * ||a||_F.
bool is_hermitian(const ComplexMatrix& a, double rel_tol = 1e-8);

struct SpectralData {
  /// Eigenvalues (Hermitian case) or singular values, sorted descending.
  std::vector<double> values;
  /// Column i is the eigenvector for values[i], when requested.
  std::optional<ComplexMatrix> vectors;
};

/// Eigendecomposition of a Hermitian matrix. Throws InvariantViolation when
/// ||a - a^dagger||_F > 1e-8 ||a||_F.
SpectralData herm_eig(const ComplexMatrix& a);
SpectralData singular_values(const ComplexMatrix& a);

/// Sum of singular values (sum of |eigenvalues| for Hermitian input).
double trace_norm(const ComplexMatrix& a);
/// Largest singular value.
double spectral_norm(const ComplexMatrix& a);

inline constexpr double kDefaultExpTol = 1e-12;

/// e^a by scaling and squaring of a truncated Taylor series. The truncation
/// degree is chosen so that the series remainder, amplified by the squaring
/// phase, stays below `tol` relative to ||e^a||.
ComplexMatrix matrix_exp(const ComplexMatrix& a, double tol = kDefaultExpTol);

/// a^n by binary exponentiation (n >= 0).
ComplexMatrix matrix_power(const ComplexMatrix& a, long n);

}  // namespace zenolab
