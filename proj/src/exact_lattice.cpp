#include "toricmld/exact_lattice.hpp"

#include <algorithm>
#include <sstream>

namespace toric {

Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw Error(ErrorCode::DimensionMismatch, "zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Int& x) { return x.get_str(); }
std::string to_string(const Rat& x) { return x.get_str(); }

Rat parse_rat(const std::string& text) {
  Rat r;
  if (text.empty() || r.set_str(text, 10) != 0 || r.get_den() == 0)
    throw Error(ErrorCode::InvalidDocument, "not a rational: '" + text + "'");
  r.canonicalize();
  return r;
}

template <class V>
static std::string join_vector(const V& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += to_string(v[i]);
  }
  return out + ")";
}

std::string to_string(const IntVector& v) { return join_vector(v); }
std::string to_string(const RatVector& v) { return join_vector(v); }

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int floor(const Rat& x) { return floor_div(x.get_num(), x.get_den()); }

Int ceil(const Rat& x) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

RatVector to_rat(const IntVector& v) {
  RatVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i];
  return out;
}

bool is_integral(const RatVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x.get_den() == 1; });
}

IntVector to_int(const RatVector& v) {
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].get_den() != 1) throw Error(ErrorCode::NotInSpan, "non-integral coordinate");
    out[i] = v[i].get_num();
  }
  return out;
}

Int denominator_lcm(const RatVector& v) {
  Int l = 1;
  for (const auto& x : v) l = lcm(l, Int(x.get_den()));
  return l;
}

Int content(const IntVector& v) {
  Int g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g;
}

IntVector primitive(const IntVector& v) {
  Int g = content(v);
  if (g == 0) return v;
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / g;
  return out;
}

bool is_zero(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}
bool is_zero(const RatVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x == 0; });
}

static void require_same(std::size_t a, std::size_t b) {
  if (a != b) throw Error(ErrorCode::DimensionMismatch, "vector lengths differ");
}

Int dot(const IntVector& a, const IntVector& b) {
  require_same(a.size(), b.size());
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rat dot(const RatVector& a, const RatVector& b) {
  require_same(a.size(), b.size());
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rat dot(const RatVector& a, const IntVector& b) {
  require_same(a.size(), b.size());
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

RatVector operator+(const RatVector& a, const RatVector& b) {
  require_same(a.size(), b.size());
  RatVector c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}
RatVector operator-(const RatVector& a, const RatVector& b) {
  require_same(a.size(), b.size());
  RatVector c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return c;
}
RatVector operator-(const RatVector& a) {
  RatVector c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = -a[i];
  return c;
}
RatVector operator*(const Rat& t, const RatVector& a) {
  RatVector c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = t * a[i];
  return c;
}
IntVector operator+(const IntVector& a, const IntVector& b) {
  require_same(a.size(), b.size());
  IntVector c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}
IntVector operator-(const IntVector& a, const IntVector& b) {
  require_same(a.size(), b.size());
  IntVector c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return c;
}
IntVector operator*(const Int& t, const IntVector& a) {
  IntVector c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = t * a[i];
  return c;
}

RatMatrix to_rat(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
  return r;
}

RatVector mul(const RatVector& v, const RatMatrix& m) {
  require_same(v.size(), m.rows());
  RatVector out(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += v[i] * m(i, j);
  }
  return out;
}

IntVector mul(const IntVector& v, const IntMatrix& m) {
  require_same(v.size(), m.rows());
  IntVector out(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += v[i] * m(i, j);
  }
  return out;
}

IntVector mul(const IntMatrix& m, const IntVector& v) {
  require_same(v.size(), m.cols());
  IntVector out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
  return out;
}

RatVector mul(const RatMatrix& m, const RatVector& v) {
  require_same(v.size(), m.cols());
  RatVector out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
  return out;
}

Int determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

namespace {

// In-place Gauss-Jordan; returns pivot columns.
std::vector<std::size_t> row_reduce(RatMatrix& a) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(r, p);
    Rat inv = 1 / a(r, c);
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0) continue;
      Rat f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

Rat determinant(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "determinant of non-square matrix");
  RatMatrix a = m;
  const std::size_t n = a.rows();
  Rat det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k) == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      a.swap_rows(k, p);
      det = -det;
    }
    det *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      Rat f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

std::size_t rank(const RatMatrix& m) {
  RatMatrix a = m;
  return row_reduce(a).size();
}

std::size_t rank(const IntMatrix& m) { return rank(to_rat(m)); }

RatMatrix inverse(const RatMatrix& m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw Error(ErrorCode::DimensionMismatch, "inverse of non-square matrix");
  RatMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto pivots = row_reduce(aug);
  if (pivots.size() < n || (n > 0 && pivots[n - 1] >= n))
    throw Error(ErrorCode::DimensionMismatch, "singular matrix");
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

IntMatrix unimodular_inverse(const IntMatrix& m) {
  RatMatrix inv = inverse(to_rat(m));
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (inv(i, j).get_den() != 1) throw Error(ErrorCode::DimensionMismatch, "matrix is not unimodular");
      out(i, j) = inv(i, j).get_num();
    }
  return out;
}

std::optional<RatVector> solve(const RatMatrix& m, const RatVector& rhs) {
  require_same(m.rows(), rhs.size());
  RatMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = rhs[i];
  }
  auto pivots = row_reduce(aug);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  RatVector x(m.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, m.cols());
  return x;
}

std::vector<RatVector> nullspace(const RatMatrix& m) {
  RatMatrix a = m;
  auto pivots = row_reduce(a);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<RatVector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    RatVector v(m.cols());
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

namespace {

template <class M>
void combine_rows(M& a, std::size_t r, std::size_t i, const Int& x, const Int& y, const Int& s, const Int& t) {
  // row_r <- x·row_r + y·row_i ; row_i <- s·row_r + t·row_i
  for (std::size_t j = 0; j < a.cols(); ++j) {
    Int ar = a(r, j);
    Int ai = a(i, j);
    a(r, j) = x * ar + y * ai;
    a(i, j) = s * ar + t * ai;
  }
}

void add_row_multiple(IntMatrix& a, std::size_t target, std::size_t source, const Int& f) {
  if (f == 0) return;
  for (std::size_t j = 0; j < a.cols(); ++j) a(target, j) += f * a(source, j);
}

void add_col_multiple(IntMatrix& a, std::size_t target, std::size_t source, const Int& f) {
  if (f == 0) return;
  for (std::size_t i = 0; i < a.rows(); ++i) a(i, target) += f * a(i, source);
}

void negate_row(IntMatrix& a, std::size_t r) {
  for (std::size_t j = 0; j < a.cols(); ++j) a(r, j) = -a(r, j);
}

}  // namespace

HermiteForm hermite_normal_form(const IntMatrix& m) {
  HermiteForm out{m, IntMatrix::identity(m.rows())};
  IntMatrix& h = out.h;
  IntMatrix& u = out.u;
  std::size_t r = 0;
  for (std::size_t c = 0; c < h.cols() && r < h.rows(); ++c) {
    for (std::size_t i = r + 1; i < h.rows(); ++i) {
      if (h(i, c) == 0) continue;
      Int g, x, y;
      mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), h(r, c).get_mpz_t(), h(i, c).get_mpz_t());
      Int s = -h(i, c) / g;
      Int t = h(r, c) / g;
      combine_rows(h, r, i, x, y, s, t);
      combine_rows(u, r, i, x, y, s, t);
    }
    if (h(r, c) == 0) continue;
    if (h(r, c) < 0) {
      negate_row(h, r);
      negate_row(u, r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Int f = -floor_div(h(i, c), h(r, c));
      add_row_multiple(h, i, r, f);
      add_row_multiple(u, i, r, f);
    }
    ++r;
  }
  return out;
}

SmithForm smith_normal_form(const IntMatrix& m) {
  SmithForm out{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols())};
  IntMatrix& d = out.d;
  IntMatrix& u = out.u;
  IntMatrix& v = out.v;
  const std::size_t rows = d.rows();
  const std::size_t cols = d.cols();

  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    // Move the smallest nonzero entry of the trailing block to (t, t).
    auto bring_min = [&](bool whole_block) {
      std::size_t bi = rows, bj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          if (!whole_block && i != t && j != t) continue;
          if (d(i, j) == 0) continue;
          if (bi == rows || abs(d(i, j)) < abs(d(bi, bj))) {
            bi = i;
            bj = j;
          }
        }
      if (bi == rows) return false;
      d.swap_rows(t, bi);
      u.swap_rows(t, bi);
      d.swap_cols(t, bj);
      v.swap_cols(t, bj);
      return true;
    };
    if (!bring_min(true)) break;

    while (true) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (d(i, t) == 0) continue;
        Int f = -floor_div(d(i, t), d(t, t));
        add_row_multiple(d, i, t, f);
        add_row_multiple(u, i, t, f);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (d(t, j) == 0) continue;
        Int f = -floor_div(d(t, j), d(t, t));
        add_col_multiple(d, j, t, f);
        add_col_multiple(v, j, t, f);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) {
        bring_min(false);
        continue;
      }
      // Divisibility: fold an offending row into row t and repeat.
      bool divisible = true;
      for (std::size_t i = t + 1; i < rows && divisible; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (d(i, j) % d(t, t) != 0) {
            add_row_multiple(d, t, i, 1);
            add_row_multiple(u, t, i, 1);
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    if (d(t, t) < 0) {
      negate_row(d, t);
      negate_row(u, t);
    }
  }
  return out;
}

IntVector cofactor_normal(const IntMatrix& rows) {
  if (rows.rows() + 1 != rows.cols()) throw Error(ErrorCode::DimensionMismatch, "cofactor normal needs (D-1) x D");
  const std::size_t dim = rows.cols();
  IntVector n(dim);
  for (std::size_t skip = 0; skip < dim; ++skip) {
    IntMatrix minor(dim - 1, dim - 1);
    for (std::size_t i = 0; i + 1 < dim; ++i) {
      std::size_t jj = 0;
      for (std::size_t j = 0; j < dim; ++j) {
        if (j == skip) continue;
        minor(i, jj++) = rows(i, j);
      }
    }
    Int det = determinant(minor);
    n[skip] = (skip % 2 == 0) ? det : Int(-det);
  }
  return n;
}

IntMatrix integer_kernel(const IntMatrix& m) {
  const std::size_t n = m.cols();
  if (m.rows() == 0) return IntMatrix::identity(n);
  HermiteForm hf = hermite_normal_form(m.transpose());
  std::vector<IntVector> rows;
  for (std::size_t i = 0; i < hf.h.rows(); ++i)
    if (is_zero(hf.h.row(i))) rows.push_back(hf.u.row(i));
  if (rows.empty()) return IntMatrix(0, n);
  return hermite_normal_form(IntMatrix::from_rows(rows, n)).h;
}

SublatticeBasis::SublatticeBasis(std::size_t ambient_dim, IntMatrix basis)
    : ambient_(ambient_dim), basis_(std::move(basis)) {
  if (basis_.rows() > 0 && basis_.cols() != ambient_)
    throw Error(ErrorCode::DimensionMismatch, "basis rows must have the ambient length");
  if (basis_.rows() == 0) basis_ = IntMatrix(0, ambient_);
  // Pick pivot columns so that x_J · B_J^{-1} recovers coordinates.
  RatMatrix t = to_rat(basis_);
  RatMatrix reduced = t;
  pivots_ = row_reduce(reduced);
  if (pivots_.size() != basis_.rows())
    throw Error(ErrorCode::DimensionMismatch, "sublattice basis rows are linearly dependent");
  RatMatrix block(rank(), rank());
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t k = 0; k < rank(); ++k) block(i, k) = t(i, pivots_[k]);
  pivot_inverse_ = inverse(block);
}

SublatticeBasis SublatticeBasis::standard(std::size_t d) { return SublatticeBasis(d, IntMatrix::identity(d)); }

SublatticeBasis SublatticeBasis::saturation_of(std::size_t ambient_dim, const std::vector<IntVector>& spanning) {
  IntMatrix span = IntMatrix::from_rows(spanning, ambient_dim);
  IntMatrix orth = integer_kernel(span);
  return SublatticeBasis(ambient_dim, integer_kernel(orth));
}

RatVector SublatticeBasis::to_coords(const RatVector& x) const {
  if (x.size() != ambient_) throw Error(ErrorCode::DimensionMismatch, "point has wrong ambient dimension");
  RatVector xj(rank());
  for (std::size_t k = 0; k < rank(); ++k) xj[k] = x[pivots_[k]];
  RatVector c = mul(xj, pivot_inverse_);
  if (from_coords(c) != x) throw Error(ErrorCode::NotInSpan, "point " + to_string(x) + " is outside the sublattice span");
  return c;
}

RatVector SublatticeBasis::from_coords(const RatVector& c) const {
  if (c.size() != rank()) throw Error(ErrorCode::DimensionMismatch, "coordinate vector has wrong rank");
  if (rank() == 0) return RatVector(ambient_);
  return mul(c, to_rat(basis_));
}

IntVector SublatticeBasis::from_coords(const IntVector& c) const {
  if (c.size() != rank()) throw Error(ErrorCode::DimensionMismatch, "coordinate vector has wrong rank");
  if (rank() == 0) return IntVector(ambient_);
  return mul(c, basis_);
}

bool SublatticeBasis::in_span(const RatVector& x) const {
  try {
    to_coords(x);
    return true;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotInSpan) return false;
    throw;
  }
}

bool SublatticeBasis::contains(const RatVector& x) const {
  if (!in_span(x)) return false;
  return is_integral(to_coords(x));
}

bool SublatticeBasis::is_saturated() const {
  if (rank() == 0) return true;
  SmithForm s = smith_normal_form(basis_);
  for (std::size_t i = 0; i < rank(); ++i)
    if (s.d(i, i) != 1) return false;
  return true;
}

Int SublatticeBasis::index() const {
  if (rank() != ambient_) throw Error(ErrorCode::DimensionMismatch, "index requires a full-rank sublattice");
  return abs(determinant(basis_));
}

SublatticeBasis SublatticeBasis::prepend_unit_axis() const {
  IntMatrix b(rank() + 1, ambient_ + 1);
  b(0, 0) = 1;
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t j = 0; j < ambient_; ++j) b(i + 1, j + 1) = basis_(i, j);
  return SublatticeBasis(ambient_ + 1, std::move(b));
}

SublatticeBasis kernel_sublattice(const RatVector& psi) {
  const std::size_t d = psi.size();
  Int n = denominator_lcm(psi);
  IntMatrix row(1, d);
  for (std::size_t i = 0; i < d; ++i) row(0, i) = Rat(psi[i] * n).get_num();
  return SublatticeBasis(d, integer_kernel(row));
}

ValueGroup value_group(const RatVector& psi) {
  if (is_zero(psi)) throw Error(ErrorCode::ZeroFunctional, "value group of the zero functional");
  Int num_gcd = 0;
  Int den_lcm = 1;
  for (const auto& x : psi) {
    num_gcd = gcd(num_gcd, Int(x.get_num()));
    den_lcm = lcm(den_lcm, Int(x.get_den()));
  }
  ValueGroup g;
  g.generator = make_rat(num_gcd, den_lcm);
  g.index = den_lcm;
  g.generator_is_inverse_index = g.generator == make_rat(1, den_lcm);
  return g;
}

IntVector base_point(const RatVector& psi) {
  ValueGroup g = value_group(psi);
  if (!g.generator_is_inverse_index)
    throw Error(ErrorCode::ValueGroupMismatch,
                "value group generated by " + to_string(g.generator) + ", not 1/" + to_string(g.index));
  const std::size_t d = psi.size();
  IntVector w(d);
  for (std::size_t i = 0; i < d; ++i) w[i] = Rat(psi[i] * g.index).get_num();
  // Running extended gcd: acc·w = running gcd.
  IntVector e(d);
  Int running = 0;
  for (std::size_t i = 0; i < d; ++i) {
    if (w[i] == 0) continue;
    Int g2, x, y;
    mpz_gcdext(g2.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), running.get_mpz_t(), w[i].get_mpz_t());
    for (std::size_t k = 0; k < i; ++k) e[k] *= x;
    e[i] = y;
    running = g2;
  }
  if (running != 1) throw Error(ErrorCode::ValueGroupMismatch, "integer functional is not primitive");
  return e;
}

QuotientMap quotient_lattice(const SublatticeBasis& s) {
  const std::size_t d = s.ambient_dim();
  const std::size_t k = s.rank();
  if (k >= d) throw Error(ErrorCode::DimensionMismatch, "quotient needs rank < ambient dimension");
  if (k == 0) return {IntMatrix::identity(d), IntMatrix::identity(d)};
  SmithForm sf = smith_normal_form(s.basis());
  for (std::size_t i = 0; i < k; ++i)
    if (sf.d(i, i) != 1) throw Error(ErrorCode::NotSaturated, "sublattice has invariant factor " + to_string(sf.d(i, i)));
  // U·B·V = [I | 0], so S is spanned by the first k rows of V^{-1}; in the
  // coordinates y = V^T x it is {y_k = ... = y_{d-1} = 0}.
  IntMatrix vinv = unimodular_inverse(sf.v);
  QuotientMap q{IntMatrix(d - k, d), IntMatrix(d, d - k)};
  for (std::size_t i = 0; i < d - k; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      q.projection(i, j) = sf.v(j, k + i);
      q.section(j, i) = vinv(k + i, j);
    }
  return q;
}

}  // namespace toric
