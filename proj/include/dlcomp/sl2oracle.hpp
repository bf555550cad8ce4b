#pragma once

// Brute-force layer over small finite fields: the function phi(g) = c on
// SL_2(F_q), checked exhaustively, and point counts of the Drinfeld curve
// x y^q - x^q y = 1 (the variety Y(s) for SL_2).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace dlcomp::sl2 {

// Largest field order with precomputed tables.
inline constexpr unsigned kMaxFieldOrder = 16;

// F_q as addition/multiplication tables. Elements are indices 0..q-1 encoding
// polynomial coefficients in base p, reduced modulo a fixed irreducible:
// F_4: t^2+t+1, F_8: t^3+t+1, F_9: t^2+1, F_16: t^4+t+1; prime fields use
// residues. The field axioms are verified exhaustively when a table is built.
class FiniteField {
 public:
  using Element = std::uint16_t;

  static bool supported(unsigned q);
  // Throws FieldUnsupported.
  static FiniteField make(unsigned q);

  unsigned order() const noexcept { return q_; }
  unsigned characteristic() const noexcept { return p_; }
  unsigned degree() const noexcept { return degree_; }

  static constexpr Element zero() noexcept { return 0; }
  static constexpr Element one() noexcept { return 1; }

  Element add(Element a, Element b) const { return add_[a * q_ + b]; }
  Element mul(Element a, Element b) const { return mul_[a * q_ + b]; }
  Element neg(Element a) const { return neg_[a]; }
  Element sub(Element a, Element b) const { return add(a, neg(b)); }
  // Throws InvalidArgument on zero.
  Element inv(Element a) const;
  Element pow(Element a, unsigned long e) const;

  std::vector<Element> units() const;

 private:
  FiniteField(unsigned q, unsigned p, unsigned degree) : q_(q), p_(p), degree_(degree) {}
  void verify_axioms() const;

  unsigned q_;
  unsigned p_;
  unsigned degree_;
  std::vector<Element> add_;
  std::vector<Element> mul_;
  std::vector<Element> neg_;
  std::vector<Element> inv_;
};

struct SL2Element {
  FiniteField::Element a, b, c, d;

  friend bool operator==(const SL2Element&, const SL2Element&) = default;
};

SL2Element multiply(const FiniteField& f, const SL2Element& x, const SL2Element& y);
bool has_unit_determinant(const FiniteField& f, const SL2Element& g);
// All of SL_2(F_q), in lexicographic (a, b, c, d) order.
std::vector<SL2Element> enumerate_sl2(const FiniteField& f);

// The lower-left entry.
inline FiniteField::Element phi(const SL2Element& g) { return g.c; }

struct PhiReport {
  unsigned q = 0;
  std::size_t group_order = 0;
  bool torus_equivariance = false;  // phi(tg) = z^{-1} phi(g), phi(gt) = z phi(g)
  bool twisted_conjugation = false; // phi(t^{-1} g (s t s^{-1})) = phi(g)
  bool zero_locus_is_borel = false; // phi(g) = 0  <=>  g in B_2
  bool one_locus_is_cell = false;   // phi(g) = 1  <=>  g in U_2 s U_2
  bool bi_invariance = false;       // phi(u g v) = phi(g), u, v in U_2
  std::size_t failures = 0;

  bool all_passed() const noexcept {
    return group_order == std::size_t{q} * q * q - q && torus_equivariance &&
           twisted_conjugation && zero_locus_is_borel && one_locus_is_cell && bi_invariance;
  }
};

// Bi-invariance is only the pointwise consequence of phi generating the
// U_2 x U_2-invariant functions; the ring statement itself is not checked.
PhiReport check_phi_properties(unsigned q);

struct DrinfeldReport {
  unsigned q = 0;
  unsigned k = 0;
  std::size_t count = 0;
  // Present when (q + 1) | q^k - 1, i.e. mu_{q+1} lies in F_{q^k}.
  std::optional<std::size_t> orbits;
  std::optional<bool> free_action;
};

// Points (x, y) != (0, 0) of F_{q^k}^2 with x y^q - x^q y = 1. Requires
// q^k <= kMaxFieldOrder; throws FieldUnsupported otherwise.
DrinfeldReport drinfeld_points(unsigned q, unsigned k);

}  // namespace dlcomp::sl2
