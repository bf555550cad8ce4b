#include "dlcomp/invariants.hpp"

#include <cstdint>

#include "dlcomp/error.hpp"

namespace dlcomp::invariants {

namespace {

// Enumeration budget for re-checking the H_I congruence against all gamma_j.
constexpr unsigned long kGammaRecheckBudget = 4096;

Integer floor_mod(const Integer& a, const Integer& b) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

void require_mask(const WordProblem& problem, const SubwordMask& mask) {
  if (mask.word_length() != problem.length())
    throw Error(ErrorKind::InvalidArgument, "mask " + mask.to_string() +
                                                " built for a word of length " +
                                                std::to_string(mask.word_length()));
}

IntMatrix minus_identity(const IntMatrix& m) {
  return m - IntMatrix::identity(m.rows());
}

std::vector<IntMatrix> gammas_from(const WordProblem& problem, const std::vector<LambdaM>& lms) {
  const std::size_t n = problem.rank();
  const std::size_t r = problem.length();
  std::vector<IntVector> cols;
  for (const auto& lm : lms) cols.push_back(lm.lambda);
  std::vector<IntMatrix> gammas;
  gammas.push_back(IntMatrix::from_columns(cols, n));
  for (std::size_t i = 1; i <= r; ++i) {
    const std::size_t letter = problem.word().at(i);
    IntMatrix next = rootdata::reflection_on_Y(problem.root_datum(), letter) * gammas.back();
    const IntVector& coroot = problem.root_datum().coroot(letter);
    for (std::size_t row = 0; row < n; ++row) next(row, i - 1) += lms[i - 1].m * coroot[row];
    gammas.push_back(std::move(next));
  }
  return gammas;
}

// Enumerates e in prod Z/m_i, keeps the solutions of the lambda congruence and
// checks that they are exactly the tuples killed by every gamma_j.
void recheck_h_group(const std::vector<IntMatrix>& gammas, const std::vector<LambdaM>& lms,
                     const SubwordMask& mask, const Integer& modulus,
                     const FiniteAbelianGroup& h) {
  unsigned long total = 1;
  for (std::size_t i : mask.positions()) {
    if (!lms[i - 1].m.fits_ulong_p()) return;
    total *= lms[i - 1].m.get_ui();
    if (total > kGammaRecheckBudget) return;
  }
  const std::size_t r = lms.size();
  const std::size_t n = gammas.front().rows();
  std::vector<unsigned long> e(mask.size(), 0);
  unsigned long solutions = 0;
  for (unsigned long idx = 0; idx < total; ++idx) {
    unsigned long rest = idx;
    for (std::size_t k = 0; k < mask.size(); ++k) {
      const unsigned long mk = lms[mask.positions()[k] - 1].m.get_ui();
      e[k] = rest % mk;
      rest /= mk;
    }
    // Exponents of z_i = zeta_M^{k_i}; positions outside I stay 0.
    IntVector exps(r, Integer(0));
    for (std::size_t k = 0; k < mask.size(); ++k) {
      const std::size_t i = mask.positions()[k];
      exps[i - 1] = (modulus / lms[i - 1].m) * e[k];
    }
    IntVector g1 = gammas.front() * exps;
    bool congruence = true;
    for (std::size_t row = 0; row < n && congruence; ++row)
      congruence = floor_mod(g1[row], modulus) == 0;
    bool all_gammas = true;
    for (const auto& g : gammas) {
      const IntVector v = g * exps;
      for (std::size_t row = 0; row < n && all_gammas; ++row)
        all_gammas = floor_mod(v[row], modulus) == 0;
    }
    if (congruence != all_gammas)
      throw Error(ErrorKind::InvariantViolation,
                  "H_I congruence disagrees with the gamma conditions for mask " +
                      mask.to_string());
    if (congruence) ++solutions;
  }
  if (h.order() != solutions)
    throw Error(ErrorKind::InvariantViolation,
                "H_I order " + h.order().get_str() + " does not match " +
                    std::to_string(solutions) + " enumerated solutions");
}

FiniteAbelianGroup h_group_from(const WordProblem& problem, const std::vector<LambdaM>& lms,
                                const std::vector<IntMatrix>& gammas, const SubwordMask& mask) {
  if (mask.empty()) return {};
  IntVector moduli;
  for (std::size_t i : mask.positions()) moduli.push_back(lms[i - 1].m);
  const Integer modulus = lattice::lcm(moduli);
  std::vector<IntVector> cols;
  for (std::size_t i : mask.positions())
    cols.push_back(Integer(modulus / lms[i - 1].m) * lms[i - 1].lambda);
  FiniteAbelianGroup h =
      lattice::kernel_mod(IntMatrix::from_columns(cols, problem.rank()), moduli, modulus);
  recheck_h_group(gammas, lms, mask, modulus, h);
  return h;
}

}  // namespace

// ---------------------------------------------------------------------------

WordProblem::WordProblem(RootDatum rd, FrobeniusTwist twist, Word word, unsigned d_cap)
    : rd_(std::move(rd)), twist_(std::move(twist)), word_(std::move(word)) {
  rootdata::validate(rd_);
  word_ = rootdata::make_word(rd_, word_.letters);
  if (twist_.on_Y.rows() != rd_.rank || twist_.on_Y.cols() != rd_.rank)
    throw Error(ErrorKind::InvalidArgument, "Frobenius matrix does not match the rank of " + rd_.name);
  wf_ = frobenius::wf_matrix(rd_, twist_, word_);
  cert_ = frobenius::discover_dq(wf_, twist_.p, d_cap);
  if (lattice::determinant(minus_identity(wf_)) == 0)
    throw Error(ErrorKind::SingularMatrix, "wF - Id is singular");
}

IntMatrix WordProblem::wf(const SubwordMask& mask) const {
  require_mask(*this, mask);
  return frobenius::wf_matrix(rd_, twist_, word_, mask);
}

IntVector WordProblem::beta(std::size_t i) const { return rootdata::beta_coroot(rd_, word_, i); }

// ---------------------------------------------------------------------------

LambdaM lambda_m(const WordProblem& problem, std::size_t i) {
  const IntVector beta = problem.beta(i);
  const IntMatrix a = IntMatrix::identity(problem.rank()) - problem.wf();
  const auto pp = lattice::primitive_part(lattice::solve_rational(a, beta));
  if (pp.num != 1)
    throw Error(ErrorKind::NoIntegralSolution,
                "(Id - wF)^{-1} beta_" + std::to_string(i) + " = (" + pp.num.get_str() + "/" +
                    pp.den.get_str() + ") " + lattice::to_string(pp.u) +
                    "; no primitive lambda with lambda - wF(lambda) = m beta");
  LambdaM out{i, pp.u, pp.den};

  const Integer& q = problem.certificate().q;
  const Integer& p = problem.twist().p;
  if (out.lambda - problem.wf() * out.lambda != out.m * beta)
    throw Error(ErrorKind::InvariantViolation, "lambda - wF(lambda) != m beta");
  if (!lattice::is_primitive(out.lambda) || out.m <= 0)
    throw Error(ErrorKind::InvariantViolation, "lambda not primitive or m not positive");
  if (floor_mod(q - 1, out.m) != 0)
    throw Error(ErrorKind::InvariantViolation,
                "m_" + std::to_string(i) + " = " + out.m.get_str() + " does not divide q - 1");
  if (floor_mod(out.m, p) == 0)
    throw Error(ErrorKind::InvariantViolation,
                "m_" + std::to_string(i) + " = " + out.m.get_str() + " divisible by p");
  return out;
}

std::vector<LambdaM> lambda_m_all(const WordProblem& problem) {
  std::vector<LambdaM> out;
  for (std::size_t i = 1; i <= problem.length(); ++i) out.push_back(lambda_m(problem, i));
  return out;
}

FiniteAbelianGroup torus_group(const WordProblem& problem) {
  return lattice::cokernel(minus_identity(problem.wf()));
}

FiniteAbelianGroup torus_group(const WordProblem& problem, const SubwordMask& mask) {
  const IntMatrix a = minus_identity(problem.wf(mask));
  if (lattice::determinant(a) == 0)
    throw Error(ErrorKind::SingularMatrix, "xF - Id is singular for mask " + mask.to_string());
  return lattice::cokernel(a);
}

FiniteAbelianGroup::Element norm_class(const FiniteAbelianGroup& torus, const IntVector& lambda) {
  return torus.class_of(lambda);
}

FiniteAbelianGroup stabilizer(const WordProblem& problem, const SubwordMask& mask) {
  require_mask(problem, mask);
  return lattice::subgroup_image(
      torus_group(problem),
      rootdata::subword_lattice_generators(problem.root_datum(), problem.word(), mask));
}

std::vector<IntMatrix> gamma_matrices(const WordProblem& problem) {
  return gammas_from(problem, lambda_m_all(problem));
}

bool f_gamma_check(const WordProblem& problem) {
  const auto gammas = gamma_matrices(problem);
  return problem.twist().on_Y * gammas.front() == gammas.back();
}

FiniteAbelianGroup h_group(const WordProblem& problem, const SubwordMask& mask) {
  require_mask(problem, mask);
  const auto lms = lambda_m_all(problem);
  return h_group_from(problem, lms, gammas_from(problem, lms), mask);
}

QuotientIsoResult quotient_iso_check(const WordProblem& problem, const SubwordMask& mask) {
  require_mask(problem, mask);
  const std::size_t n = problem.rank();
  const IntMatrix gens = IntMatrix::from_columns(
      rootdata::subword_lattice_generators(problem.root_datum(), problem.word(), mask), n);
  const IntMatrix xf_minus = minus_identity(problem.wf(mask));
  if (lattice::determinant(xf_minus) == 0)
    throw Error(ErrorKind::SingularMatrix, "xF - Id is singular for mask " + mask.to_string());
  QuotientIsoResult res;
  res.left = lattice::cokernel(minus_identity(problem.wf()).hconcat(gens));
  res.right = lattice::cokernel(xf_minus.hconcat(gens));
  res.equal = res.left.isomorphic_to(res.right);
  return res;
}

std::string to_string(SmoothFlag flag) {
  switch (flag) {
    case SmoothFlag::GuaranteedSmooth: return "guaranteed-smooth";
    case SmoothFlag::SmoothByH: return "smooth-by-H";
    case SmoothFlag::PossiblySingular: return "possibly-singular";
  }
  return "unknown";
}

std::vector<StratumReport> strata_report(const WordProblem& problem, std::size_t guard) {
  const std::size_t r = problem.length();
  if (r > guard || r >= 64)
    throw Error(ErrorKind::TooManyStrata, "word length " + std::to_string(r) +
                                              " exceeds the strata guard " + std::to_string(guard));
  const auto lms = lambda_m_all(problem);
  const auto gammas = gammas_from(problem, lms);
  const FiniteAbelianGroup torus = torus_group(problem);
  const Integer torus_order = torus.order();

  std::vector<StratumReport> out;
  out.reserve(std::size_t{1} << r);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << r); ++bits) {
    StratumReport rep;
    rep.mask = SubwordMask::from_bits(bits, r);
    rep.stabilizer = lattice::subgroup_image(
        torus, rootdata::subword_lattice_generators(problem.root_datum(), problem.word(), rep.mask));
    rep.h_group = h_group_from(problem, lms, gammas, rep.mask);
    const bool h_trivial = rep.h_group.order() == 1;
    if (rep.mask.size() <= 1) {
      if (!h_trivial)
        throw Error(ErrorKind::InvariantViolation,
                    "nontrivial H_I for |I| <= 1 at mask " + rep.mask.to_string());
      rep.flag = SmoothFlag::GuaranteedSmooth;
    } else {
      rep.flag = h_trivial ? SmoothFlag::SmoothByH : SmoothFlag::PossiblySingular;
    }
    if (floor_mod(torus_order, rep.stabilizer.order()) != 0)
      throw Error(ErrorKind::InvariantViolation, "stabilizer order does not divide |T^wF|");
    out.push_back(std::move(rep));
  }
  return out;
}

std::vector<RamificationEntry> ramification_report(const WordProblem& problem) {
  const FiniteAbelianGroup torus = torus_group(problem);
  std::vector<RamificationEntry> out;
  for (const auto& lm : lambda_m_all(problem)) {
    RamificationEntry e;
    e.position = lm.position;
    e.beta = problem.beta(lm.position);
    e.m = lm.m;
    e.stabilizer_order = lattice::subgroup_image(torus, {e.beta}).order();
    if (e.stabilizer_order != e.m || torus.element_order(torus.class_of(e.beta)) != e.m)
      throw Error(ErrorKind::InvariantViolation,
                  "order of the class of beta_" + std::to_string(e.position) + " is " +
                      e.stabilizer_order.get_str() + ", expected m = " + e.m.get_str());
    out.push_back(std::move(e));
  }
  return out;
}

bool norm_identity_check(const WordProblem& problem, std::size_t i) {
  const LambdaM lm = lambda_m(problem, i);
  const IntMatrix n = frobenius::norm_matrix(problem.wf(), problem.certificate().d);
  const Integer& q = problem.certificate().q;
  return n * (lm.m * problem.beta(i)) == Integer(1 - q) * lm.lambda;
}

}  // namespace dlcomp::invariants
