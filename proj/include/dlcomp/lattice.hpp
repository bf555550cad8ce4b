#pragma once

// Exact integer and rational linear algebra over Z^n: Smith normal form,
// cokernels of integer matrices presented as finite(ly generated) abelian
// groups, subgroup images and congruence kernels.

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace dlcomp::lattice {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

IntVector make_vector(std::initializer_list<long> entries);

// gcd of the entries (nonnegative); zero for the zero vector.
Integer content(const IntVector& v);
bool is_primitive(const IntVector& v);
bool is_zero(const IntVector& v);

IntVector operator+(const IntVector& a, const IntVector& b);
IntVector operator-(const IntVector& a, const IntVector& b);
IntVector operator*(const Integer& s, const IntVector& v);

std::string to_string(const IntVector& v);
std::string to_string(const RatVector& v);

// Dense row-major integer matrix. Zero-sized dimensions are allowed (an empty
// generator list is an n x 0 matrix).
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);

  static IntMatrix identity(std::size_t n);
  static IntMatrix scalar(std::size_t n, const Integer& s);
  static IntMatrix diagonal(const IntVector& d);
  static IntMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows);
  static IntMatrix from_rows(const std::vector<IntVector>& rows);
  // Every column must have the same length; `rows` fixes the height of the
  // result when `columns` is empty.
  static IntMatrix from_columns(const std::vector<IntVector>& columns, std::size_t rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVector row(std::size_t r) const;
  IntVector column(std::size_t c) const;
  std::vector<IntVector> columns() const;

  IntMatrix transpose() const;
  // [*this | other]
  IntMatrix hconcat(const IntMatrix& other) const;
  IntMatrix pow(unsigned e) const;

  bool is_scalar(Integer* value = nullptr) const;

  friend bool operator==(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator*(const Integer& s, const IntMatrix& a);
  friend IntVector operator*(const IntMatrix& a, const IntVector& v);

  // Elementary operations, used by the normal-form routines.
  void swap_rows(std::size_t i, std::size_t j);
  void swap_cols(std::size_t i, std::size_t j);
  // row i += k * row j
  void add_row_multiple(std::size_t i, std::size_t j, const Integer& k);
  // col i += k * col j
  void add_col_multiple(std::size_t i, std::size_t j, const Integer& k);
  void negate_row(std::size_t i);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

// Fraction-free (Bareiss) determinant.
Integer determinant(const IntMatrix& a);

// U * A * V = S with U, V unimodular and S diagonal, d_1 | d_2 | ... with the
// zero entries last. Pivoting: smallest nonzero |entry| of the active block,
// ties broken by row then column index.
struct SNFDecomposition {
  IntMatrix U;
  IntMatrix S;
  IntMatrix V;
  std::size_t rank = 0;

  // The min(rows, cols) diagonal entries of S.
  IntVector diagonal() const;
};

SNFDecomposition snf(const IntMatrix& a);

// Z^n / L for a lattice L given by generating columns. Elements are written as
// canonical tuples: one residue in [0, d_j) per invariant factor d_j > 1,
// followed by one unreduced integer per free coordinate.
class FiniteAbelianGroup {
 public:
  using Element = IntVector;

  // The trivial group (ambient dimension 0).
  FiniteAbelianGroup() = default;

  const std::vector<Integer>& invariant_factors() const noexcept { return factors_; }
  std::size_t free_rank() const noexcept { return free_rank_; }
  std::size_t ambient_dimension() const noexcept { return relations_.rows(); }
  const IntMatrix& relations() const noexcept { return relations_; }
  const IntMatrix& projection() const noexcept { return projection_; }

  bool is_finite() const noexcept { return free_rank_ == 0; }
  bool is_trivial() const noexcept { return factors_.empty() && free_rank_ == 0; }
  bool is_cyclic() const noexcept { return factors_.size() <= 1 && free_rank_ == 0; }
  // Throws InvalidArgument for infinite groups.
  Integer order() const;
  Integer exponent() const;

  Element class_of(const IntVector& v) const;
  Element identity() const;
  bool is_identity(const Element& e) const;
  Integer element_order(const Element& e) const;

  // Same invariant factors and free rank.
  bool isomorphic_to(const FiniteAbelianGroup& other) const;

  std::string to_string() const;

 private:
  friend FiniteAbelianGroup cokernel(const IntMatrix& relations);

  IntMatrix relations_;
  std::vector<Integer> factors_;
  std::size_t free_rank_ = 0;
  IntMatrix projection_;
};

FiniteAbelianGroup cokernel(const IntMatrix& relations);

// Exact solution of A x = b for square nonsingular A.
RatVector solve_rational(const IntMatrix& a, const IntVector& b);

// v = (num / den) * u with u primitive, num, den > 0 and coprime.
struct PrimitivePart {
  IntVector u;
  Integer num;
  Integer den;
};

PrimitivePart primitive_part(const RatVector& v);

// The subgroup of a finite ambient group generated by the classes of `gens`,
// presented on its own basis.
FiniteAbelianGroup subgroup_image(const FiniteAbelianGroup& ambient,
                                  const std::vector<IntVector>& gens);

// {e in prod Z/m_j : A e = 0 mod M}. Requires m_j * A[:, j] = 0 mod M for
// every column.
FiniteAbelianGroup kernel_mod(const IntMatrix& a, const IntVector& moduli,
                              const Integer& modulus);

Integer lcm(const IntVector& values);

}  // namespace dlcomp::lattice

namespace dlcomp {
using lattice::FiniteAbelianGroup;
using lattice::IntMatrix;
using lattice::Integer;
using lattice::IntVector;
using lattice::Rational;
using lattice::RatVector;
using lattice::operator+;
using lattice::operator-;
using lattice::operator*;
}  // namespace dlcomp
