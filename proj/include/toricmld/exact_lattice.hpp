#pragma once

// Exact integer/rational linear algebra and sublattice bookkeeping.
//
// Scalars are GMP integers and rationals. Every Rat produced by this layer is
// in canonical form (lowest terms, positive denominator).

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "toricmld/error.hpp"

namespace toric {

using Int = mpz_class;
using Rat = mpq_class;
using IntVector = std::vector<Int>;
using RatVector = std::vector<Rat>;

Rat make_rat(const Int& num, const Int& den);
std::string to_string(const Int& x);
/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rat& x);
Rat parse_rat(const std::string& text);
std::string to_string(const IntVector& v);
std::string to_string(const RatVector& v);

Int floor_div(const Int& a, const Int& b);
Int floor(const Rat& x);
Int ceil(const Rat& x);

RatVector to_rat(const IntVector& v);
bool is_integral(const RatVector& v);
/// Requires is_integral(v).
IntVector to_int(const RatVector& v);
/// Least common multiple of the coordinate denominators (1 for the empty vector).
Int denominator_lcm(const RatVector& v);
/// gcd of the coordinates; 0 for the zero vector.
Int content(const IntVector& v);
IntVector primitive(const IntVector& v);
bool is_zero(const IntVector& v);
bool is_zero(const RatVector& v);

Int dot(const IntVector& a, const IntVector& b);
Rat dot(const RatVector& a, const RatVector& b);
Rat dot(const RatVector& a, const IntVector& b);

RatVector operator+(const RatVector& a, const RatVector& b);
RatVector operator-(const RatVector& a, const RatVector& b);
RatVector operator-(const RatVector& a);
RatVector operator*(const Rat& t, const RatVector& a);
IntVector operator+(const IntVector& a, const IntVector& b);
IntVector operator-(const IntVector& a, const IntVector& b);
IntVector operator*(const Int& t, const IntVector& a);

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }
  std::vector<T> col(std::size_t j) const {
    std::vector<T> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }
  void set_row(std::size_t i, const std::vector<T>& values) {
    if (values.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "row length");
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = values[j];
  }
  std::vector<std::vector<T>> to_rows() const {
    std::vector<std::vector<T>> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
    return out;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorCode::DimensionMismatch, "matrix product");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;

RatMatrix to_rat(const IntMatrix& m);
/// Row vector times matrix: returns v·M.
RatVector mul(const RatVector& v, const RatMatrix& m);
IntVector mul(const IntVector& v, const IntMatrix& m);
/// Matrix times column vector: returns M·v.
IntVector mul(const IntMatrix& m, const IntVector& v);
RatVector mul(const RatMatrix& m, const RatVector& v);

Int determinant(const IntMatrix& m);  // fraction-free (Bareiss)
Rat determinant(const RatMatrix& m);
std::size_t rank(const RatMatrix& m);
std::size_t rank(const IntMatrix& m);
/// Throws DimensionMismatch when m is singular or not square.
RatMatrix inverse(const RatMatrix& m);
/// Exact integer inverse of a unimodular matrix.
IntMatrix unimodular_inverse(const IntMatrix& m);
/// Some x with m·x = rhs, or nullopt when the system is inconsistent.
std::optional<RatVector> solve(const RatMatrix& m, const RatVector& rhs);
/// Basis of {x : m·x = 0} over Q (reduced row-echelon parametrization).
std::vector<RatVector> nullspace(const RatMatrix& m);

struct HermiteForm {
  IntMatrix h;  // U·M = H
  IntMatrix u;  // unimodular
};
/// Row-style Hermite normal form: pivots positive, entries above each pivot
/// reduced into [0, pivot), zero rows last.
HermiteForm hermite_normal_form(const IntMatrix& m);

struct SmithForm {
  IntMatrix d;  // U·M·V = D, diagonal with d_1 | d_2 | ...
  IntMatrix u;
  IntMatrix v;
};
SmithForm smith_normal_form(const IntMatrix& m);

/// Generalized cross product of the rows of a (D-1) × D matrix.
IntVector cofactor_normal(const IntMatrix& rows);

/// Rows form an HNF basis of {x in Z^n : m·x = 0}.
IntMatrix integer_kernel(const IntMatrix& m);

/// A lattice given by linearly independent integer basis rows inside Z^d.
/// Coordinates are row-vector coefficients: x = c·B.
class SublatticeBasis {
 public:
  SublatticeBasis() = default;
  SublatticeBasis(std::size_t ambient_dim, IntMatrix basis);

  static SublatticeBasis standard(std::size_t d);
  /// Z^d ∩ span(rows).
  static SublatticeBasis saturation_of(std::size_t ambient_dim, const std::vector<IntVector>& spanning);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t rank() const { return basis_.rows(); }
  const IntMatrix& basis() const { return basis_; }
  IntVector vector(std::size_t i) const { return basis_.row(i); }

  /// Throws NotInSpan if x is outside the rational span.
  RatVector to_coords(const RatVector& x) const;
  RatVector from_coords(const RatVector& c) const;
  IntVector from_coords(const IntVector& c) const;
  bool in_span(const RatVector& x) const;
  bool contains(const RatVector& x) const;
  bool is_saturated() const;
  /// |det B| for full-rank lattices: the covolume inside Z^d.
  Int index() const;

  /// Z × L, the first coordinate being the new one.
  SublatticeBasis prepend_unit_axis() const;

  friend bool operator==(const SublatticeBasis& a, const SublatticeBasis& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  std::size_t ambient_ = 0;
  IntMatrix basis_;
  std::vector<std::size_t> pivots_;
  RatMatrix pivot_inverse_;
};

/// {v in Z^d : <psi, v> = 0}; saturated, rank d-1 for nonzero psi.
SublatticeBasis kernel_sublattice(const RatVector& psi);

struct ValueGroup {
  Rat generator;  // positive generator of <psi, Z^d>
  Int index;      // least n >= 1 with n·psi integral
  bool generator_is_inverse_index = false;
};
ValueGroup value_group(const RatVector& psi);

/// Some e in Z^d with <psi, e> = 1/n. Throws ValueGroupMismatch when the
/// value group is not (1/n)Z.
IntVector base_point(const RatVector& psi);

struct QuotientMap {
  IntMatrix projection;  // (d-k) × d, kernel = span(S) ∩ Z^d
  IntMatrix section;     // d × (d-k), projection·section = identity
};
QuotientMap quotient_lattice(const SublatticeBasis& s);

}  // namespace toric
