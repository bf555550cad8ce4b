#pragma once

// Arithmetic invariants of the compactification attached to a word w in the
// simple reflections: the twisted torus T^{wF} = Y / (wF - 1) Y, the pairs
// (lambda_i, m_i), boundary stabilizers, the gamma maps and the finite groups
// H_I, together with the per-stratum and per-divisor reports built from them.
//
// T^{wF} is handled through the isomorphism with Y / (wF - 1) Y induced by the
// norm map, so no root of unity is ever chosen: every quantity computed here
// (orders, subgroup structures, isomorphism classes) is independent of it.

#include <cstddef>
#include <string>
#include <vector>

#include "dlcomp/frobenius.hpp"
#include "dlcomp/lattice.hpp"
#include "dlcomp/rootdata.hpp"

namespace dlcomp::invariants {

using frobenius::DQCertificate;
using frobenius::FrobeniusTwist;
using rootdata::RootDatum;
using rootdata::SubwordMask;
using rootdata::Word;

// A validated (root datum, twist, word) triple with wF and its (d, q)
// certificate precomputed. Construction throws on invalid root data,
// mismatched ranks, a missing certificate or det(wF - Id) = 0.
class WordProblem {
 public:
  WordProblem(RootDatum rd, FrobeniusTwist twist, Word word,
              unsigned d_cap = frobenius::kDefaultDCap);

  const RootDatum& root_datum() const noexcept { return rd_; }
  const FrobeniusTwist& twist() const noexcept { return twist_; }
  const Word& word() const noexcept { return word_; }
  std::size_t length() const noexcept { return word_.length(); }
  std::size_t rank() const noexcept { return rd_.rank; }

  const IntMatrix& wf() const noexcept { return wf_; }
  // x o F for the subword with positions `mask` removed.
  IntMatrix wf(const SubwordMask& mask) const;
  const DQCertificate& certificate() const noexcept { return cert_; }
  IntVector beta(std::size_t i) const;

 private:
  RootDatum rd_;
  FrobeniusTwist twist_;
  Word word_;
  IntMatrix wf_;
  DQCertificate cert_;
};

// lambda - wF(lambda) = m * beta_i^vee, lambda primitive, m > 0.
struct LambdaM {
  std::size_t position = 0;
  IntVector lambda;
  Integer m;
};

// Throws NoIntegralSolution when (Id - wF)^{-1} beta_i^vee is not of the form
// lambda / m with lambda primitive, and InvariantViolation if any of
// m | q - 1, gcd(m, p) = 1 fails on the result.
LambdaM lambda_m(const WordProblem& problem, std::size_t i);
std::vector<LambdaM> lambda_m_all(const WordProblem& problem);

// Y / (xF - Id) Y for the subword given by `mask` (full word by default).
FiniteAbelianGroup torus_group(const WordProblem& problem);
FiniteAbelianGroup torus_group(const WordProblem& problem, const SubwordMask& mask);

// Class of lambda in Y / (wF - 1) Y; the identity exactly when
// lambda is in (wF - 1) Y.
FiniteAbelianGroup::Element norm_class(const FiniteAbelianGroup& torus, const IntVector& lambda);

// N_w(Y_{w,x}) as a subgroup of T^{wF}, with Y_{w,x} spanned by the
// beta_i^vee for i in the mask.
FiniteAbelianGroup stabilizer(const WordProblem& problem, const SubwordMask& mask);

// Gamma_1 .. Gamma_{r+1}, each rank x r: the exponent matrices of the
// cocharacter maps gamma_i : (G_m)^r -> T. Gamma_1 has columns lambda_j and
// Gamma_{i+1} = M(s_i) Gamma_i + m_i alpha_i^vee e_i^T.
std::vector<IntMatrix> gamma_matrices(const WordProblem& problem);

// F_Y Gamma_1 = Gamma_{r+1}.
bool f_gamma_check(const WordProblem& problem);

// H_I. Since every gamma_j is trivial, alpha_i^vee injective forces
// z_i^{m_i} = 1 and the recursion leaves only gamma_1 = 1, so with
// M = lcm(m_i : i in I):
//   H_I = { e in prod_{i in I} Z/m_i : sum (M/m_i) e_i lambda_i = 0 mod M Y }.
// For small moduli the reduction is re-checked against every gamma_j by
// enumeration; a mismatch throws InvariantViolation.
FiniteAbelianGroup h_group(const WordProblem& problem, const SubwordMask& mask);

struct QuotientIsoResult {
  bool equal = false;
  FiniteAbelianGroup left;   // Y / ((wF - 1) Y + Y_{w,x})
  FiniteAbelianGroup right;  // Y / ((xF - 1) Y + Y_{w,x})
};

// Compares T^{wF} / N_w(Y_{w,x}) with T^{xF} / N_x(Y_{w,x}).
QuotientIsoResult quotient_iso_check(const WordProblem& problem, const SubwordMask& mask);

enum class SmoothFlag { GuaranteedSmooth, SmoothByH, PossiblySingular };

std::string to_string(SmoothFlag flag);

struct StratumReport {
  SubwordMask mask;
  FiniteAbelianGroup stabilizer;
  FiniteAbelianGroup h_group;
  SmoothFlag flag = SmoothFlag::GuaranteedSmooth;
};

inline constexpr std::size_t kDefaultStrataGuard = 20;

// One report per subset I of {1..r}, in binary counting order (bit b of the
// index is position b + 1). Throws TooManyStrata when r exceeds `guard`.
std::vector<StratumReport> strata_report(const WordProblem& problem,
                                         std::size_t guard = kDefaultStrataGuard);

struct RamificationEntry {
  std::size_t position = 0;
  IntVector beta;
  Integer m;
  Integer stabilizer_order;
};

// The order of N_w(Z beta_i^vee) is m_i for every i; a mismatch throws
// InvariantViolation.
std::vector<RamificationEntry> ramification_report(const WordProblem& problem);

// Applying N = sum_{j<d} (wF)^j to lambda_i - wF(lambda_i) = m_i beta_i^vee
// telescopes to N (m_i beta_i^vee) = (1 - q) lambda_i, i.e. (q - 1) lambda_i
// up to the orientation sign of the norm. Checks that exact identity.
bool norm_identity_check(const WordProblem& problem, std::size_t i);

}  // namespace dlcomp::invariants
