#include "dlcomp/frobenius.hpp"

#include <algorithm>
#include <numeric>

#include "dlcomp/error.hpp"

namespace dlcomp::frobenius {

namespace {

constexpr unsigned kAutomorphismOrderCap = 64;

bool is_prime(const Integer& n) { return n >= 2 && mpz_probab_prime_p(n.get_mpz_t(), 40) > 0; }

}  // namespace

std::string to_string(TwistKind kind) {
  switch (kind) {
    case TwistKind::Split: return "split";
    case TwistKind::Twisted: return "twisted";
    case TwistKind::Raw: return "raw";
  }
  return "unknown";
}

std::optional<PrimePower> as_prime_power(const Integer& n) {
  if (n < 2) return std::nullopt;
  Integer m = n;
  Integer p = 0;
  if (mpz_even_p(m.get_mpz_t())) {
    p = 2;
  } else {
    for (Integer f = 3; f * f <= m; f += 2) {
      if (mpz_divisible_p(m.get_mpz_t(), f.get_mpz_t())) {
        p = f;
        break;
      }
    }
    if (p == 0) p = m;
  }
  unsigned a = 0;
  while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
    m /= p;
    ++a;
  }
  if (m != 1) return std::nullopt;
  return PrimePower{p, a};
}

FrobeniusTwist make_split(const RootDatum& rd, const Integer& q0) {
  const auto pp = as_prime_power(q0);
  if (!pp) throw Error(ErrorKind::NotPrimePower, "q0 = " + q0.get_str() + " is not a prime power");
  FrobeniusTwist t;
  t.kind = TwistKind::Split;
  t.on_Y = IntMatrix::scalar(rd.rank, q0);
  t.p = pp->prime;
  t.q0 = q0;
  return t;
}

IntMatrix gl_flip_extension(std::size_t n) {
  IntMatrix d(n, n);
  for (std::size_t i = 0; i < n; ++i) d(i, n - 1 - i) = -1;
  return d;
}

FrobeniusTwist make_twisted(const RootDatum& rd, const Integer& q0,
                            std::vector<std::size_t> perm,
                            std::optional<IntMatrix> extension) {
  const std::size_t s = rd.num_simple();
  const std::size_t n = rd.rank;
  {
    std::vector<std::size_t> sorted = perm;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::size_t> expected(s);
    std::iota(expected.begin(), expected.end(), std::size_t{1});
    if (sorted != expected)
      throw Error(ErrorKind::NoSuchAutomorphism, "not a permutation of the simple roots");
  }
  bool identity = true;
  for (std::size_t j = 0; j < s; ++j) identity = identity && perm[j] == j + 1;
  if (identity && !extension) return make_split(rd, q0);

  FrobeniusTwist t = make_split(rd, q0);
  const IntMatrix coroots = IntMatrix::from_columns(rd.simple_coroots, n);
  std::vector<IntVector> permuted_cols;
  for (std::size_t j = 0; j < s; ++j) permuted_cols.push_back(rd.coroot(perm[j]));
  const IntMatrix permuted = IntMatrix::from_columns(permuted_cols, n);

  IntMatrix d;
  if (extension) {
    d = *extension;
    if (d.rows() != n || d.cols() != n)
      throw Error(ErrorKind::NoSuchAutomorphism, "extension matrix has the wrong size");
  } else if (s == n) {
    // D C = C_perm, solved row by row through C^T.
    d = IntMatrix(n, n);
    const IntMatrix ct = coroots.transpose();
    for (std::size_t r = 0; r < n; ++r) {
      const RatVector row = lattice::solve_rational(ct, permuted.row(r));
      for (std::size_t c = 0; c < n; ++c) {
        if (row[c].get_den() != 1)
          throw Error(ErrorKind::NoSuchAutomorphism,
                      "the permutation does not extend to an integral map on Y");
        d(r, c) = row[c].get_num();
      }
    }
  } else {
    throw Error(ErrorKind::NoSuchAutomorphism,
                "coroots of " + rd.name +
                    " do not span Y; an extension of the permutation must be supplied");
  }

  if (d * coroots != permuted)
    throw Error(ErrorKind::NoSuchAutomorphism, "extension does not permute the simple coroots");
  const Integer det = lattice::determinant(d);
  if (det != 1 && det != -1)
    throw Error(ErrorKind::NoSuchAutomorphism, "automorphism is not unimodular");
  // Contragredient action must permute the simple roots the same way.
  const IntMatrix dt = d.transpose();
  for (std::size_t j = 0; j < s; ++j)
    if (dt * rd.root(perm[j]) != rd.simple_roots[j])
      throw Error(ErrorKind::NoSuchAutomorphism,
                  "automorphism does not preserve the simple roots");
  IntMatrix power = d;
  unsigned order = 1;
  while (power != IntMatrix::identity(n)) {
    if (++order > kAutomorphismOrderCap)
      throw Error(ErrorKind::NoSuchAutomorphism, "automorphism has no small finite order");
    power = power * d;
  }

  t.kind = TwistKind::Twisted;
  t.on_Y = q0 * d;
  t.perm = std::move(perm);
  t.automorphism = std::move(d);
  return t;
}

FrobeniusTwist make_raw(const RootDatum& rd, IntMatrix on_Y, const Integer& p) {
  if (on_Y.rows() != rd.rank || on_Y.cols() != rd.rank)
    throw Error(ErrorKind::InvalidArgument, "raw Frobenius matrix must be rank x rank");
  if (!is_prime(p)) throw Error(ErrorKind::NotPrimePower, "p = " + p.get_str() + " is not prime");
  if (lattice::determinant(on_Y) == 0)
    throw Error(ErrorKind::SingularMatrix, "raw Frobenius matrix is singular");
  FrobeniusTwist t;
  t.kind = TwistKind::Raw;
  t.on_Y = std::move(on_Y);
  t.p = p;
  t.q0 = 0;
  return t;
}

IntMatrix wf_matrix(const RootDatum& rd, const FrobeniusTwist& twist, const Word& w,
                    const SubwordMask& mask) {
  if (mask.word_length() != w.length())
    throw Error(ErrorKind::InvalidArgument, "mask built for a word of another length");
  std::vector<std::size_t> kept;
  for (std::size_t i = 1; i <= w.length(); ++i)
    if (!mask.contains(i)) kept.push_back(w.at(i));
  return rootdata::word_matrix(rd, kept) * twist.on_Y;
}

IntMatrix wf_matrix(const RootDatum& rd, const FrobeniusTwist& twist, const Word& w) {
  return wf_matrix(rd, twist, w, SubwordMask::full(w.length()));
}

DQCertificate discover_dq(const IntMatrix& wf, const Integer& p, unsigned cap) {
  if (!wf.is_square()) throw Error(ErrorKind::InvalidArgument, "wF must be square");
  IntMatrix power = wf;
  for (unsigned d = 1; d <= cap; ++d) {
    Integer s;
    if (power.is_scalar(&s)) {
      const auto pp = as_prime_power(abs(s));
      if (!pp || pp->prime != p)
        throw Error(ErrorKind::NoCertificate, "(wF)^" + std::to_string(d) + " = " + s.get_str() +
                                                  " Id is not a power of p = " + p.get_str());
      // -q Id squares to q^2 Id.
      if (s > 0) return DQCertificate{d, s};
    }
    if (d < cap) power = power * wf;
  }
  throw Error(ErrorKind::NoCertificate,
              "no power (wF)^d with d <= " + std::to_string(cap) + " is scalar");
}

IntMatrix norm_matrix(const IntMatrix& wf, unsigned d) {
  IntMatrix sum(wf.rows(), wf.cols());
  IntMatrix power = IntMatrix::identity(wf.rows());
  for (unsigned j = 0; j < d; ++j) {
    sum = sum + power;
    power = power * wf;
  }
  return sum;
}

}  // namespace dlcomp::frobenius
