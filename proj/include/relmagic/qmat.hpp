#pragma once

// Dense complex matrices of dimension <= 8: Hermitian eigensystems, Kronecker
// and entrywise products, and the entropies built on top of them.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "relmagic/errors.hpp"

namespace relmagic {

using cplx = std::complex<double>;

// Square complex matrix, row-major.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}
  Matrix(std::initializer_list<std::initializer_list<cplx>> rows) : dim_(rows.size()) {
    data_.reserve(dim_ * dim_);
    for (const auto& row : rows) {
      if (row.size() != dim_) throw InvalidInput("Matrix: rows must form a square matrix");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t dim) {
    Matrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }
  static Matrix ones(std::size_t dim) {
    Matrix m(dim);
    std::fill(m.data_.begin(), m.data_.end(), cplx{1.0});
    return m;
  }
  static Matrix diagonal(std::span<const double> d) {
    Matrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }
  // |v><v|
  static Matrix outer(std::span<const cplx> v) {
    Matrix m(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[i] * std::conj(v[j]);
    return m;
  }

  std::size_t dim() const { return dim_; }
  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }
  std::span<const cplx> data() const { return data_; }

  Matrix adjoint() const {
    Matrix m(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) m(i, j) = std::conj((*this)(j, i));
    return m;
  }

  cplx trace() const {
    cplx t{};
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
  }

  Matrix& operator+=(const Matrix& o) {
    require_same(o, "+");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    require_same(o, "-");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Matrix& operator*=(cplx s) {
    for (auto& v : data_) v *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, cplx s) { return a *= s; }
  friend Matrix operator*(cplx s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    a.require_same(b, "*");
    Matrix m(a.dim_);
    for (std::size_t i = 0; i < a.dim_; ++i)
      for (std::size_t k = 0; k < a.dim_; ++k) {
        const cplx aik = a(i, k);
        if (aik == cplx{}) continue;
        for (std::size_t j = 0; j < a.dim_; ++j) m(i, j) += aik * b(k, j);
      }
    return m;
  }

 private:
  void require_same(const Matrix& o, const char* op) const {
    if (o.dim_ != dim_)
      throw InvalidInput(std::string("Matrix ") + op + ": dimension mismatch " +
                         std::to_string(dim_) + " vs " + std::to_string(o.dim_));
  }

  std::size_t dim_ = 0;
  std::vector<cplx> data_;
};

// Largest entrywise modulus of a - b.
inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.dim() != b.dim()) throw InvalidInput("max_abs_diff: dimension mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

inline double max_abs(const Matrix& a) {
  double m = 0.0;
  for (const auto& v : a.data()) m = std::max(m, std::abs(v));
  return m;
}

inline bool is_hermitian(const Matrix& m, double tol) {
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = i; j < m.dim(); ++j)
      if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) return false;
  return true;
}

inline Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

// Re Tr(a b) without forming the product.
inline double trace_product(const Matrix& a, const Matrix& b) {
  if (a.dim() != b.dim()) throw InvalidInput("trace_product: dimension mismatch");
  cplx t{};
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t k = 0; k < a.dim(); ++k) t += a(i, k) * b(k, i);
  return t.real();
}

// <v|m|v>, real part.
inline double expectation(const Matrix& m, std::span<const cplx> v) {
  if (v.size() != m.dim()) throw InvalidInput("expectation: dimension mismatch");
  cplx acc{};
  for (std::size_t i = 0; i < v.size(); ++i) {
    cplx row{};
    for (std::size_t j = 0; j < v.size(); ++j) row += m(i, j) * v[j];
    acc += std::conj(v[i]) * row;
  }
  return acc.real();
}

inline Matrix tensor(const Matrix& a, const Matrix& b) {
  const std::size_t da = a.dim(), db = b.dim();
  Matrix m(da * db);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j)
      for (std::size_t k = 0; k < db; ++k)
        for (std::size_t l = 0; l < db; ++l) m(i * db + k, j * db + l) = a(i, j) * b(k, l);
  return m;
}

inline Matrix tensor(std::span<const Matrix> factors) {
  if (factors.empty()) throw InvalidInput("tensor: no factors");
  Matrix m = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) m = tensor(m, factors[i]);
  return m;
}

inline Matrix hadamard(const Matrix& a, const Matrix& b) {
  if (a.dim() != b.dim()) throw InvalidInput("hadamard: shape mismatch");
  Matrix m(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) m(i, j) = a(i, j) * b(i, j);
  return m;
}

// Entrywise a / b. Entries where b vanishes must vanish in a as well.
inline Matrix hadamard_divide(const Matrix& a, const Matrix& b) {
  if (a.dim() != b.dim()) throw InvalidInput("hadamard_divide: shape mismatch");
  Matrix m(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) {
      if (b(i, j) == cplx{}) {
        if (a(i, j) != cplx{}) throw InvalidInput("hadamard_divide: division by zero entry");
        continue;
      }
      m(i, j) = a(i, j) / b(i, j);
    }
  return m;
}

struct EigenSystem {
  std::vector<double> eigenvalues;  // descending
  Matrix basis;                     // columns are eigenvectors

  Matrix reconstruct() const {
    return basis * Matrix::diagonal(eigenvalues) * basis.adjoint();
  }
  std::vector<cplx> vector(std::size_t k) const {
    std::vector<cplx> v(basis.dim());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = basis(i, k);
    return v;
  }
};

namespace detail {

// Eigen-decomposition of the Hermitian block [[a, b], [conj(b), d]]: the unitary
// whose first column belongs to the larger eigenvalue.
struct Rotation2 {
  double hi, lo;
  cplx g00, g01, g10, g11;
};

inline Rotation2 hermitian_2x2(double a, cplx b, double d) {
  const double mod_b = std::abs(b);
  const double mean = 0.5 * (a + d);
  const double half = std::hypot(0.5 * (a - d), mod_b);
  if (mod_b == 0.0) {
    if (a >= d) return {a, d, 1.0, 0.0, 0.0, 1.0};
    return {d, a, 0.0, 1.0, 1.0, 0.0};
  }
  const double theta = 0.5 * std::atan2(2.0 * mod_b, a - d);
  const double c = std::cos(theta), s = std::sin(theta);
  const cplx phase = std::conj(b) / mod_b;  // e^{-i arg b}
  return {mean + half, mean - half, c, -s, phase * s, phase * c};
}

}  // namespace detail

// Hermitian eigensolver. 2x2 blocks are solved in closed form; larger matrices
// by cyclic complex Jacobi rotations built from the same 2x2 solution.
inline EigenSystem hermitian_eig(const Matrix& m) {
  const std::size_t n = m.dim();
  if (n == 0) throw InvalidInput("hermitian_eig: empty matrix");
  if (!is_hermitian(m, 1e-10)) throw InvalidInput("hermitian_eig: matrix is not Hermitian");

  Matrix a = m;
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = a(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx v = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = v;
      a(j, i) = std::conj(v);
    }
  }
  Matrix v = Matrix::identity(n);

  const double scale = std::max(max_abs(a), std::numeric_limits<double>::min());
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
    if (off <= 1e-17 * scale) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) <= 1e-18 * scale) continue;
        const auto r = detail::hermitian_2x2(a(p, p).real(), a(p, q), a(q, q).real());
        // a <- G^dagger a G acting on rows/columns p, q.
        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * r.g00 + akq * r.g10;
          a(k, q) = akp * r.g01 + akq * r.g11;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(r.g00) * apk + std::conj(r.g10) * aqk;
          a(q, k) = std::conj(r.g01) * apk + std::conj(r.g11) * aqk;
        }
        a(p, p) = r.hi;
        a(q, q) = r.lo;
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * r.g00 + vkq * r.g10;
          v(k, q) = vkp * r.g01 + vkq * r.g11;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });
  EigenSystem es{std::vector<double>(n), Matrix(n)};
  for (std::size_t k = 0; k < n; ++k) {
    es.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) es.basis(i, k) = v(i, order[k]);
  }
  return es;
}

// f(M) for Hermitian M via its eigensystem.
template <class F>
Matrix apply_function(const EigenSystem& es, F&& f) {
  std::vector<double> fd(es.eigenvalues.size());
  std::transform(es.eigenvalues.begin(), es.eigenvalues.end(), fd.begin(), f);
  return es.basis * Matrix::diagonal(fd) * es.basis.adjoint();
}

inline bool is_power_of_two(std::size_t d) { return d != 0 && (d & (d - 1)) == 0; }

inline int log2_dim(std::size_t d) {
  int n = 0;
  while ((std::size_t{1} << n) < d) ++n;
  return n;
}

// Hermitian, unit-trace, positive semidefinite matrix on n qubits.
class DensityMatrix {
 public:
  static constexpr double kTol = 1e-12;

  DensityMatrix() = default;
  explicit DensityMatrix(Matrix m) : m_(std::move(m)) {
    if (!is_power_of_two(m_.dim()))
      throw InvalidInput("DensityMatrix: dimension must be a power of two");
    if (!is_hermitian(m_, kTol)) throw InvalidInput("DensityMatrix: matrix is not Hermitian");
    if (std::abs(m_.trace() - cplx{1.0}) > kTol)
      throw InvalidInput("DensityMatrix: trace is not 1");
    const auto es = hermitian_eig(m_);
    if (es.eigenvalues.back() < -kTol)
      throw InvalidInput("DensityMatrix: negative eigenvalue " + std::to_string(es.eigenvalues.back()));
  }

  static DensityMatrix pure(std::span<const cplx> amplitudes) {
    double norm = 0.0;
    for (const auto& a : amplitudes) norm += std::norm(a);
    Matrix m = Matrix::outer(amplitudes);
    m *= 1.0 / norm;
    return DensityMatrix(std::move(m));
  }

  const Matrix& matrix() const { return m_; }
  std::size_t dim() const { return m_.dim(); }
  int qubits() const { return log2_dim(m_.dim()); }

 private:
  Matrix m_;
};

inline DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(tensor(a.matrix(), b.matrix()));
}

// Eigenvalue cutoff defining the support of a state.
inline constexpr double kSupportCutoff = 1e-12;

// -Tr(rho log2 rho).
inline double von_neumann_entropy(const DensityMatrix& rho) {
  double s = 0.0;
  for (double l : hermitian_eig(rho.matrix()).eigenvalues)
    if (l > kSupportCutoff) s -= l * std::log2(l);
  return s;
}

// S(rho || tau) in bits; +infinity when supp(rho) is not inside supp(tau).
inline double relative_entropy(const DensityMatrix& rho, const DensityMatrix& tau) {
  if (rho.dim() != tau.dim()) throw InvalidInput("relative_entropy: dimension mismatch");
  const auto es = hermitian_eig(tau.matrix());
  double cross = 0.0;  // Tr(rho log2 tau)
  for (std::size_t k = 0; k < es.eigenvalues.size(); ++k) {
    const auto v = es.vector(k);
    const double weight = expectation(rho.matrix(), v);
    const double lam = es.eigenvalues[k];
    if (lam <= kSupportCutoff) {
      if (weight > kSupportCutoff) return std::numeric_limits<double>::infinity();
      continue;
    }
    cross += weight * std::log2(lam);
  }
  return -von_neumann_entropy(rho) - cross;
}

}  // namespace relmagic
