// Copyright 2026 The kellyq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Dense complex linear algebra for small Hilbert spaces.
//
// Tensor-product convention: in A (x) B the leftmost factor is the
// slowest-varying index, i.e. basis state |a b> sits at row a * dim(B) + b.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kellyq/error.hpp"

namespace kellyq {

using Complex = std::complex<double>;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdTol = 1e-10;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {}
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
      throw Error(ErrorCode::DimensionMismatch,
                  "matrix entry count " + std::to_string(data_.size()) + " != " +
                      std::to_string(rows_) + "x" + std::to_string(cols_));
    }
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix diagonal(std::span<const double> diag) {
    ComplexMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
  }

  /// |v><v| for a (not necessarily normalized) column vector v.
  static ComplexMatrix outer(std::span<const Complex> v) {
    ComplexMatrix m(v.size(), v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[i] * std::conj(v[j]);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  std::span<const Complex> data() const noexcept { return data_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<Complex> column(std::size_t j) const {
    std::vector<Complex> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  ComplexMatrix adjoint() const {
    ComplexMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = std::conj((*this)(i, j));
    return t;
  }

  Complex trace() const {
    Complex t{0.0, 0.0};
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  ComplexMatrix& operator*=(Complex s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_) {
      throw Error(ErrorCode::DimensionMismatch, "matrix product of incompatible shapes");
    }
    ComplexMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Complex aik = a(i, k);
        if (aik == Complex{0.0, 0.0}) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  void require_same_shape(const ComplexMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
      throw Error(ErrorCode::DimensionMismatch, "matrix shapes differ");
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

/// Largest entrywise modulus of a - b.
inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "matrix shapes differ");
  }
  double m = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k) m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
  return m;
}

inline double hermiticity_error(const ComplexMatrix& m) {
  double err = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j) err = std::max(err, std::abs(m(i, j) - std::conj(m(j, i))));
  return err;
}

/// Kronecker product; bilinear, dims multiply.
inline ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) c(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return c;
}

inline std::vector<Complex> tensor(std::span<const Complex> a, std::span<const Complex> b) {
  std::vector<Complex> c;
  c.reserve(a.size() * b.size());
  for (const Complex& x : a)
    for (const Complex& y : b) c.push_back(x * y);
  return c;
}

// ---------------------------------------------------------------------------
// Hermitian eigendecomposition

struct Spectrum {
  std::vector<double> eigenvalues;  // descending
  ComplexMatrix eigenvectors;       // column k pairs with eigenvalues[k]
};

namespace detail {

inline constexpr int kJacobiMaxSweeps = 100;
inline constexpr double kJacobiOffDiagTol = 1e-12;
inline constexpr double kDegeneracyTol = 1e-10;
inline constexpr double kPhaseTol = 1e-12;

// Rotate column v so that its first component with modulus above kPhaseTol
// is real and positive.
inline void normalize_phase(ComplexMatrix& v, std::size_t col) {
  for (std::size_t i = 0; i < v.rows(); ++i) {
    const double mag = std::abs(v(i, col));
    if (mag > kPhaseTol) {
      const Complex phase = std::conj(v(i, col)) / mag;
      for (std::size_t r = 0; r < v.rows(); ++r) v(r, col) *= phase;
      v(i, col) = mag;
      return;
    }
  }
}

// Lexicographic "greater" over (re, im) of the phase-normalized entries.
inline bool column_lex_greater(const ComplexMatrix& v, std::size_t a, std::size_t b) {
  for (std::size_t i = 0; i < v.rows(); ++i) {
    const Complex x = v(i, a);
    const Complex y = v(i, b);
    if (std::abs(x.real() - y.real()) > kPhaseTol) return x.real() > y.real();
    if (std::abs(x.imag() - y.imag()) > kPhaseTol) return x.imag() > y.imag();
  }
  return false;
}

}  // namespace detail

/// Cyclic complex Jacobi.  Each rotation first removes the phase of the
/// pivot a_pq and then applies a real Givens rotation.  Eigenvalues come back
/// descending; ties (within 1e-10) are ordered by descending lexicographic
/// order of the phase-normalized eigenvectors.
inline Spectrum eig_hermitian(const ComplexMatrix& m) {
  if (!m.is_square()) throw Error(ErrorCode::DimensionMismatch, "eig_hermitian needs a square matrix");
  const double herm_err = hermiticity_error(m);
  if (herm_err > kHermitianTol) {
    throw Error(ErrorCode::NotHermitian, "max |M - M^dagger| = " + std::to_string(herm_err));
  }
  const std::size_t n = m.rows();
  ComplexMatrix a = m;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const Complex avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = avg;
      a(j, i) = std::conj(avg);
    }
  ComplexMatrix v = ComplexMatrix::identity(n);

  double scale = 0.0;
  for (const Complex& x : a.data()) scale = std::max(scale, std::abs(x));
  const double threshold = detail::kJacobiOffDiagTol * std::max(1.0, scale);

  auto off_diag_max = [&] {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
    return off;
  };

  int sweep = 0;
  while (off_diag_max() > threshold) {
    if (++sweep > detail::kJacobiMaxSweeps) {
      throw Error(ErrorCode::NoConvergence, "Jacobi exceeded " + std::to_string(detail::kJacobiMaxSweeps) + " sweeps");
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double mag = std::abs(a(p, q));
        if (mag <= threshold * 1e-3) continue;
        const Complex phase = a(p, q) / mag;  // e^{i phi}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // Rotation R acting on columns (p, q).
        const Complex rpp = c;
        const Complex rpq = s;
        const Complex rqp = -s * std::conj(phase);
        const Complex rqq = c * std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * rpp + akq * rqp;
          a(k, q) = akp * rpq + akq * rqq;
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * rpp + vkq * rqp;
          v(k, q) = vkp * rpq + vkq * rqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(rpp) * apk + std::conj(rqp) * aqk;
          a(q, k) = std::conj(rpq) * apk + std::conj(rqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  for (std::size_t k = 0; k < n; ++k) detail::normalize_phase(v, k);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() > a(y, y).real(); });
  // Within each degenerate cluster, order by eigenvector.
  for (std::size_t start = 0; start < n;) {
    std::size_t end = start + 1;
    while (end < n && a(order[end - 1], order[end - 1]).real() - a(order[end], order[end]).real() <= detail::kDegeneracyTol)
      ++end;
    std::stable_sort(order.begin() + static_cast<std::ptrdiff_t>(start), order.begin() + static_cast<std::ptrdiff_t>(end),
                     [&](std::size_t x, std::size_t y) { return detail::column_lex_greater(v, x, y); });
    start = end;
  }

  Spectrum out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
  }
  return out;
}

/// V f(Lambda) V^dagger for a Hermitian matrix.
inline ComplexMatrix apply_function(const ComplexMatrix& m, const std::function<Complex(double)>& f) {
  const Spectrum s = eig_hermitian(m);
  const std::size_t n = m.rows();
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const Complex fk = f(s.eigenvalues[k]);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        out(i, j) += s.eigenvectors(i, k) * fk * std::conj(s.eigenvectors(j, k));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Density matrices

class DensityMatrix;
DensityMatrix validate_density(const ComplexMatrix& m);

/// Trace-one positive-semidefinite Hermitian matrix.  Only constructible
/// through validate_density and the named factories, all of which validate.
class DensityMatrix {
 public:
  std::size_t dim() const noexcept { return m_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return m_; }

  static DensityMatrix pure(std::span<const Complex> ket) {
    double norm2 = 0.0;
    for (const Complex& x : ket) norm2 += std::norm(x);
    if (norm2 <= 0.0) throw Error(ErrorCode::InvalidArgument, "zero state vector");
    ComplexMatrix m = ComplexMatrix::outer(ket);
    m *= 1.0 / norm2;
    return validate_density(m);
  }

  static DensityMatrix maximally_mixed(std::size_t dim) {
    ComplexMatrix m = ComplexMatrix::identity(dim);
    m *= 1.0 / static_cast<double>(dim);
    return validate_density(m);
  }

  static DensityMatrix diagonal(std::span<const double> probs) {
    return validate_density(ComplexMatrix::diagonal(probs));
  }

 private:
  explicit DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {}
  friend DensityMatrix validate_density(const ComplexMatrix& m);

  ComplexMatrix m_;
};

/// Checks Hermiticity, unit trace and positivity.  The only repair applied is
/// replacing M by (M + M^dagger)/2 once Hermiticity is within tolerance.
inline DensityMatrix validate_density(const ComplexMatrix& m) {
  if (!m.is_square() || m.rows() == 0) {
    throw Error(ErrorCode::DimensionMismatch,
                "density matrix must be square, got " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  const double herm_err = hermiticity_error(m);
  if (herm_err > kHermitianTol) {
    throw Error(ErrorCode::NotHermitian, "max |M - M^dagger| = " + std::to_string(herm_err));
  }
  ComplexMatrix h = m;
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = i; j < h.cols(); ++j) {
      const Complex avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
      h(i, j) = avg;
      h(j, i) = std::conj(avg);
    }
  const double tr = h.trace().real();
  if (std::abs(tr - 1.0) > kTraceTol) {
    std::ostringstream os;
    os.precision(17);
    os << "trace = " << tr << ", |trace - 1| = " << std::abs(tr - 1.0);
    throw Error(ErrorCode::TraceNotOne, os.str());
  }
  const Spectrum s = eig_hermitian(h);
  if (s.eigenvalues.back() < -kPsdTol) {
    std::ostringstream os;
    os.precision(17);
    os << "smallest eigenvalue = " << s.eigenvalues.back();
    throw Error(ErrorCode::NotPSD, os.str());
  }
  return DensityMatrix(std::move(h));
}

inline std::size_t product_of(std::span<const std::size_t> dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

/// Traces out every subsystem not listed in `keep`.  Works on arbitrary
/// square operators, not only states.  Kept subsystems retain their
/// relative order.
inline ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const std::size_t> dims,
                                   std::span<const std::size_t> keep) {
  const std::size_t total = product_of(dims);
  if (!m.is_square() || m.rows() != total) {
    throw Error(ErrorCode::DimensionMismatch, "subsystem dims multiply to " + std::to_string(total) +
                                                  ", operator is " + std::to_string(m.rows()) + "x" +
                                                  std::to_string(m.cols()));
  }
  if (keep.empty()) throw Error(ErrorCode::DimensionMismatch, "partial_trace needs at least one kept subsystem");
  std::vector<bool> kept(dims.size(), false);
  for (std::size_t k : keep) {
    if (k >= dims.size() || kept[k]) throw Error(ErrorCode::DimensionMismatch, "bad kept subsystem index");
    kept[k] = true;
  }
  const std::size_t nsys = dims.size();
  // Strides in the full space (leftmost slowest).
  std::vector<std::size_t> stride(nsys, 1);
  for (std::size_t s = nsys; s-- > 1;) stride[s - 1] = stride[s] * dims[s];

  std::vector<std::size_t> keep_sorted(keep.begin(), keep.end());
  std::sort(keep_sorted.begin(), keep_sorted.end());
  std::vector<std::size_t> traced;
  for (std::size_t s = 0; s < nsys; ++s)
    if (!kept[s]) traced.push_back(s);

  std::size_t kept_dim = 1;
  for (std::size_t s : keep_sorted) kept_dim *= dims[s];
  std::size_t traced_dim = 1;
  for (std::size_t s : traced) traced_dim *= dims[s];

  // Offset in the full space contributed by a multi-index over a subsystem list.
  auto offset = [&](std::size_t flat, const std::vector<std::size_t>& systems) {
    std::size_t off = 0;
    for (std::size_t s = systems.size(); s-- > 0;) {
      const std::size_t d = dims[systems[s]];
      off += (flat % d) * stride[systems[s]];
      flat /= d;
    }
    return off;
  };

  std::vector<std::size_t> kept_off(kept_dim), traced_off(traced_dim);
  for (std::size_t i = 0; i < kept_dim; ++i) kept_off[i] = offset(i, keep_sorted);
  for (std::size_t t = 0; t < traced_dim; ++t) traced_off[t] = offset(t, traced);

  ComplexMatrix out(kept_dim, kept_dim);
  for (std::size_t i = 0; i < kept_dim; ++i)
    for (std::size_t j = 0; j < kept_dim; ++j) {
      Complex acc{0.0, 0.0};
      for (std::size_t t = 0; t < traced_dim; ++t) acc += m(kept_off[i] + traced_off[t], kept_off[j] + traced_off[t]);
      out(i, j) = acc;
    }
  return out;
}

inline DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> dims,
                                   std::span<const std::size_t> keep) {
  return validate_density(partial_trace(rho.matrix(), dims, keep));
}

inline DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return validate_density(tensor(a.matrix(), b.matrix()));
}

// ---------------------------------------------------------------------------
// Matrix literal text format: one row per line, whitespace-separated entries
// written `re+imj` / `re-imj` (a bare real or `imj` is also accepted).

namespace detail {

inline bool parse_double(std::string_view s, double& out) {
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace detail

inline Complex parse_complex(std::string_view tok) {
  auto fail = [&] { return Error(ErrorCode::ConfigError, "malformed complex literal '" + std::string(tok) + "'"); };
  if (tok.empty()) throw fail();
  if (tok.back() != 'j') {
    double re = 0.0;
    if (!detail::parse_double(tok, re)) throw fail();
    return {re, 0.0};
  }
  std::string_view body = tok.substr(0, tok.size() - 1);
  // Split at the last sign that is not a leading sign or an exponent sign.
  std::size_t split = std::string_view::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  double re = 0.0, im = 0.0;
  if (split == std::string_view::npos) {
    if (!detail::parse_double(body, im)) throw fail();
    return {0.0, im};
  }
  if (!detail::parse_double(body.substr(0, split), re)) throw fail();
  std::string_view imag = body.substr(split);
  if (imag == "+" || imag == "-") {
    im = imag == "+" ? 1.0 : -1.0;
  } else if (!detail::parse_double(imag, im)) {
    throw fail();
  }
  return {re, im};
}

inline std::vector<Complex> parse_complex_row(std::string_view line) {
  std::vector<Complex> row;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) row.push_back(parse_complex(line.substr(i, j - i)));
    i = j;
  }
  return row;
}

/// Parses a whole literal.  Errors name the 1-based offending row.
inline ComplexMatrix parse_matrix(std::span<const std::string> lines) {
  std::vector<Complex> data;
  std::size_t cols = 0;
  for (std::size_t r = 0; r < lines.size(); ++r) {
    std::vector<Complex> row;
    try {
      row = parse_complex_row(lines[r]);
    } catch (const Error& e) {
      throw Error(ErrorCode::ConfigError, "row " + std::to_string(r + 1) + ": " + e.detail());
    }
    if (r == 0) cols = row.size();
    if (row.empty() || row.size() != cols) {
      throw Error(ErrorCode::ConfigError, "row " + std::to_string(r + 1) + ": expected " + std::to_string(cols) +
                                              " entries, got " + std::to_string(row.size()));
    }
    data.insert(data.end(), row.begin(), row.end());
  }
  return ComplexMatrix(lines.size(), cols, std::move(data));
}

}  // namespace kellyq
