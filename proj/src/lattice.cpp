#include "dlcomp/lattice.hpp"

#include <algorithm>
#include <optional>
#include <ostream>
#include <sstream>
#include <utility>

#include "dlcomp/error.hpp"

namespace dlcomp::lattice {

namespace {

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer floor_mod(const Integer& a, const Integer& b) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw Error(ErrorKind::InvalidArgument, std::string("dimension mismatch in ") + what);
  }
}

}  // namespace

IntVector make_vector(std::initializer_list<long> entries) {
  IntVector v;
  v.reserve(entries.size());
  for (long e : entries) v.emplace_back(e);
  return v;
}

Integer content(const IntVector& v) {
  Integer g = 0;
  for (const auto& e : v) g = gcd(g, e);
  return g;
}

bool is_primitive(const IntVector& v) { return content(v) == 1; }

bool is_zero(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& e) { return e == 0; });
}

IntVector operator+(const IntVector& a, const IntVector& b) {
  require_same_size(a.size(), b.size(), "vector sum");
  IntVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

IntVector operator-(const IntVector& a, const IntVector& b) {
  require_same_size(a.size(), b.size(), "vector difference");
  IntVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

IntVector operator*(const Integer& s, const IntVector& v) {
  IntVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = s * v[i];
  return r;
}

std::string to_string(const IntVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

std::string to_string(const RatVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

// ---------------------------------------------------------------------------
// IntMatrix

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}

IntMatrix IntMatrix::identity(std::size_t n) { return scalar(n, 1); }

IntMatrix IntMatrix::scalar(std::size_t n, const Integer& s) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = s;
  return m;
}

IntMatrix IntMatrix::diagonal(const IntVector& d) {
  IntMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

IntMatrix IntMatrix::from_rows(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<IntVector> rs;
  for (const auto& r : rows) rs.push_back(make_vector(r));
  return from_rows(rs);
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows) {
  if (rows.empty()) return {};
  IntMatrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require_same_size(rows[i].size(), m.cols_, "from_rows");
    for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVector>& columns, std::size_t rows) {
  IntMatrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    require_same_size(columns[j].size(), rows, "from_columns");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
  }
  return m;
}

IntVector IntMatrix::row(std::size_t r) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

IntVector IntMatrix::column(std::size_t c) const {
  IntVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, c);
  return v;
}

std::vector<IntVector> IntMatrix::columns() const {
  std::vector<IntVector> cs;
  cs.reserve(cols_);
  for (std::size_t j = 0; j < cols_; ++j) cs.push_back(column(j));
  return cs;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::hconcat(const IntMatrix& other) const {
  require_same_size(rows_, other.rows_, "hconcat");
  IntMatrix m(rows_, cols_ + other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
    for (std::size_t j = 0; j < other.cols_; ++j) m(i, cols_ + j) = other(i, j);
  }
  return m;
}

IntMatrix IntMatrix::pow(unsigned e) const {
  if (!is_square()) throw Error(ErrorKind::InvalidArgument, "pow of a non-square matrix");
  IntMatrix result = identity(rows_);
  IntMatrix base = *this;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return result;
}

bool IntMatrix::is_scalar(Integer* value) const {
  if (!is_square() || rows_ == 0) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (i != j ? (*this)(i, j) != 0 : (*this)(i, j) != (*this)(0, 0)) return false;
  if (value) *value = (*this)(0, 0);
  return true;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  require_same_size(a.rows_, b.rows_, "matrix sum");
  require_same_size(a.cols_, b.cols_, "matrix sum");
  IntMatrix r = a;
  for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] += b.data_[k];
  return r;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  require_same_size(a.rows_, b.rows_, "matrix difference");
  require_same_size(a.cols_, b.cols_, "matrix difference");
  IntMatrix r = a;
  for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] -= b.data_[k];
  return r;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  require_same_size(a.cols_, b.rows_, "matrix product");
  IntMatrix r(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

IntMatrix operator*(const Integer& s, const IntMatrix& a) {
  IntMatrix r = a;
  for (auto& e : r.data_) e *= s;
  return r;
}

IntVector operator*(const IntMatrix& a, const IntVector& v) {
  require_same_size(a.cols_, v.size(), "matrix-vector product");
  IntVector r(a.rows_, Integer(0));
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < a.cols_; ++j) r[i] += a(i, j) * v[j];
  return r;
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
}

void IntMatrix::add_row_multiple(std::size_t i, std::size_t j, const Integer& k) {
  if (k == 0) return;
  for (std::size_t c = 0; c < cols_; ++c) (*this)(i, c) += k * (*this)(j, c);
}

void IntMatrix::add_col_multiple(std::size_t i, std::size_t j, const Integer& k) {
  if (k == 0) return;
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, i) += k * (*this)(r, j);
}

void IntMatrix::negate_row(std::size_t i) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(i, c) = -(*this)(i, c);
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? "," : "") << '[';
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j);
    os << ']';
  }
  os << ']';
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) { return os << m.to_string(); }

// ---------------------------------------------------------------------------
// Determinant

Integer determinant(const IntMatrix& a) {
  if (!a.is_square()) throw Error(ErrorKind::InvalidArgument, "determinant of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t swap_with = k + 1;
      while (swap_with < n && m(swap_with, k) == 0) ++swap_with;
      if (swap_with == n) return 0;
      m.swap_rows(k, swap_with);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = t;
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

// ---------------------------------------------------------------------------
// Smith normal form

IntVector SNFDecomposition::diagonal() const {
  const std::size_t k = std::min(S.rows(), S.cols());
  IntVector d(k);
  for (std::size_t i = 0; i < k; ++i) d[i] = S(i, i);
  return d;
}

namespace {

struct Pivot {
  std::size_t row;
  std::size_t col;
};

std::optional<Pivot> find_pivot(const IntMatrix& s, std::size_t t) {
  std::optional<Pivot> best;
  Integer best_abs;
  for (std::size_t i = t; i < s.rows(); ++i)
    for (std::size_t j = t; j < s.cols(); ++j) {
      const Integer& e = s(i, j);
      if (e == 0) continue;
      Integer a = abs(e);
      if (!best || a < best_abs) {
        best = Pivot{i, j};
        best_abs = a;
      }
    }
  return best;
}

}  // namespace

SNFDecomposition snf(const IntMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  SNFDecomposition out{IntMatrix::identity(m), a, IntMatrix::identity(n), 0};
  IntMatrix& s = out.S;
  IntMatrix& u = out.U;
  IntMatrix& v = out.V;

  std::size_t t = 0;
  for (; t < std::min(m, n); ++t) {
    bool exhausted = false;
    for (;;) {
      auto pivot = find_pivot(s, t);
      if (!pivot) {
        exhausted = true;
        break;
      }
      s.swap_rows(t, pivot->row);
      u.swap_rows(t, pivot->row);
      s.swap_cols(t, pivot->col);
      v.swap_cols(t, pivot->col);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (s(i, t) == 0) continue;
        Integer q = -floor_div(s(i, t), s(t, t));
        s.add_row_multiple(i, t, q);
        u.add_row_multiple(i, t, q);
        if (s(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (s(t, j) == 0) continue;
        Integer q = -floor_div(s(t, j), s(t, t));
        s.add_col_multiple(j, t, q);
        v.add_col_multiple(j, t, q);
        if (s(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // The pivot must divide the whole remaining block.
      std::optional<std::size_t> offending;
      for (std::size_t i = t + 1; i < m && !offending; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (floor_mod(s(i, j), s(t, t)) != 0) {
            offending = i;
            break;
          }
      if (!offending) break;
      s.add_row_multiple(t, *offending, 1);
      u.add_row_multiple(t, *offending, 1);
    }
    if (exhausted) break;
    if (s(t, t) < 0) {
      s.negate_row(t);
      u.negate_row(t);
    }
  }
  out.rank = t;
  return out;
}

// ---------------------------------------------------------------------------
// Finite abelian groups

FiniteAbelianGroup cokernel(const IntMatrix& relations) {
  const std::size_t n = relations.rows();
  FiniteAbelianGroup g;
  g.relations_ = relations;
  if (n == 0) return g;

  const SNFDecomposition dec = snf(relations);
  const IntVector diag = dec.diagonal();
  std::vector<std::size_t> torsion_rows;
  std::vector<std::size_t> free_rows;
  for (std::size_t j = 0; j < n; ++j) {
    const Integer d = j < diag.size() ? diag[j] : Integer(0);
    if (d == 0) {
      free_rows.push_back(j);
    } else if (d > 1) {
      torsion_rows.push_back(j);
      g.factors_.push_back(d);
    }
  }
  g.free_rank_ = free_rows.size();
  g.projection_ = IntMatrix(torsion_rows.size() + free_rows.size(), n);
  std::size_t r = 0;
  for (auto rows : {&torsion_rows, &free_rows})
    for (std::size_t src : *rows) {
      for (std::size_t c = 0; c < n; ++c) g.projection_(r, c) = dec.U(src, c);
      ++r;
    }
  return g;
}

Integer FiniteAbelianGroup::order() const {
  if (!is_finite()) throw Error(ErrorKind::InvalidArgument, "order of an infinite group");
  Integer o = 1;
  for (const auto& d : factors_) o *= d;
  return o;
}

Integer FiniteAbelianGroup::exponent() const {
  if (!is_finite()) throw Error(ErrorKind::InvalidArgument, "exponent of an infinite group");
  return factors_.empty() ? Integer(1) : factors_.back();
}

FiniteAbelianGroup::Element FiniteAbelianGroup::class_of(const IntVector& v) const {
  require_same_size(v.size(), ambient_dimension(), "class_of");
  if (projection_.rows() == 0) return {};
  Element e = projection_ * v;
  for (std::size_t j = 0; j < factors_.size(); ++j) e[j] = floor_mod(e[j], factors_[j]);
  return e;
}

FiniteAbelianGroup::Element FiniteAbelianGroup::identity() const {
  return Element(factors_.size() + free_rank_, Integer(0));
}

bool FiniteAbelianGroup::is_identity(const Element& e) const { return is_zero(e); }

Integer FiniteAbelianGroup::element_order(const Element& e) const {
  require_same_size(e.size(), factors_.size() + free_rank_, "element_order");
  for (std::size_t j = factors_.size(); j < e.size(); ++j)
    if (e[j] != 0) throw Error(ErrorKind::InvalidArgument, "element of infinite order");
  Integer o = 1;
  for (std::size_t j = 0; j < factors_.size(); ++j) {
    Integer local = factors_[j] / gcd(e[j], factors_[j]);
    mpz_lcm(o.get_mpz_t(), o.get_mpz_t(), local.get_mpz_t());
  }
  return o;
}

bool FiniteAbelianGroup::isomorphic_to(const FiniteAbelianGroup& other) const {
  return factors_ == other.factors_ && free_rank_ == other.free_rank_;
}

std::string FiniteAbelianGroup::to_string() const {
  std::ostringstream os;
  if (is_trivial()) return "1";
  bool first = true;
  for (const auto& d : factors_) {
    os << (first ? "" : " x ") << "Z/" << d;
    first = false;
  }
  for (std::size_t i = 0; i < free_rank_; ++i) {
    os << (first ? "" : " x ") << "Z";
    first = false;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Rational solving and primitivity

RatVector solve_rational(const IntMatrix& a, const IntVector& b) {
  if (!a.is_square()) throw Error(ErrorKind::InvalidArgument, "solve_rational needs a square matrix");
  require_same_size(a.rows(), b.size(), "solve_rational");
  const std::size_t n = a.rows();
  std::vector<RatVector> m(n, RatVector(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = a(i, j);
    m[i][n] = b[i];
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) throw Error(ErrorKind::SingularMatrix, "matrix " + a.to_string() + " is singular");
    std::swap(m[p], m[c]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m[i][c] == 0) continue;
      const Rational f = m[i][c] / m[c][c];
      for (std::size_t j = c; j <= n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  RatVector x(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = m[i][n] / m[i][i];
    x[i].canonicalize();
  }
  return x;
}

PrimitivePart primitive_part(const RatVector& v) {
  Integer den_lcm = 1;
  for (const auto& e : v)
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), e.get_den_mpz_t());
  IntVector scaled(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rational s = v[i] * den_lcm;
    s.canonicalize();
    scaled[i] = s.get_num();
  }
  const Integer c = content(scaled);
  if (c == 0) throw Error(ErrorKind::ZeroVector, "primitive_part of the zero vector");
  PrimitivePart out;
  out.u.resize(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out.u[i] = scaled[i] / c;
  Rational ratio(c, den_lcm);
  ratio.canonicalize();
  out.num = ratio.get_num();
  out.den = ratio.get_den();
  return out;
}

// ---------------------------------------------------------------------------
// Subgroups and congruence kernels

FiniteAbelianGroup subgroup_image(const FiniteAbelianGroup& ambient,
                                  const std::vector<IntVector>& gens) {
  if (!ambient.is_finite())
    throw Error(ErrorKind::InvalidArgument, "subgroup_image needs a finite ambient group");
  if (gens.empty()) return {};
  const std::size_t n = ambient.ambient_dimension();
  const IntMatrix& rel = ambient.relations();
  const IntMatrix joined = rel.hconcat(IntMatrix::from_columns(gens, n));

  // joined has full row rank; its column span L + G has basis U^{-1} diag(d),
  // and X = diag(d)^{-1} U rel expresses L in that basis.
  const SNFDecomposition dec = snf(joined);
  if (dec.rank != n) throw Error(ErrorKind::InvariantViolation, "ambient relations not of full rank");
  IntMatrix x = dec.U * rel;
  Integer quotient_order = 1;
  for (std::size_t i = 0; i < n; ++i) {
    const Integer& d = dec.S(i, i);
    quotient_order *= d;
    for (std::size_t j = 0; j < x.cols(); ++j) {
      if (floor_mod(x(i, j), d) != 0)
        throw Error(ErrorKind::InvariantViolation, "non-integral change of basis in subgroup_image");
      x(i, j) /= d;
    }
  }
  FiniteAbelianGroup sub = cokernel(x);
  if (!sub.is_finite() || sub.order() * quotient_order != ambient.order())
    throw Error(ErrorKind::InvariantViolation, "subgroup order does not match index");
  return sub;
}

Integer lcm(const IntVector& values) {
  Integer l = 1;
  for (const auto& v : values) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_mpz_t());
  return l;
}

FiniteAbelianGroup kernel_mod(const IntMatrix& a, const IntVector& moduli,
                              const Integer& modulus) {
  const std::size_t n = a.rows();
  const std::size_t k = a.cols();
  require_same_size(k, moduli.size(), "kernel_mod moduli");
  for (const auto& m : moduli)
    if (m < 1) throw Error(ErrorKind::InvalidArgument, "kernel_mod moduli must be positive");
  if (lcm(moduli) != modulus)
    throw Error(ErrorKind::InvalidArgument, "kernel_mod modulus must be the lcm of the moduli");
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (floor_mod(moduli[j] * a(i, j), modulus) != 0)
        throw Error(ErrorKind::InvalidArgument,
                    "kernel_mod condition is not well defined on residues (column " +
                        std::to_string(j + 1) + ")");
  if (k == 0) return {};

  // Integer kernel of [A | M Id]: the last columns of V in U B V = S.
  const IntMatrix b = a.hconcat(IntMatrix::scalar(n, modulus));
  const SNFDecomposition dec = snf(b);
  std::vector<IntVector> gens;
  for (std::size_t c = dec.rank; c < b.cols(); ++c) {
    IntVector e(k);
    for (std::size_t i = 0; i < k; ++i) e[i] = dec.V(i, c);
    if (!is_zero(e)) gens.push_back(std::move(e));
  }
  return subgroup_image(cokernel(IntMatrix::diagonal(moduli)), gens);
}

}  // namespace dlcomp::lattice
