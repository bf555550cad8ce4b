#pragma once

// The isogeny F seen only through its action F_Y on the cocharacter lattice,
// the twisted endomorphisms x o F for subwords x of a word, and the (d, q)
// certificate (wF)^d = q Id.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dlcomp/lattice.hpp"
#include "dlcomp/rootdata.hpp"

namespace dlcomp::frobenius {

using rootdata::RootDatum;
using rootdata::SubwordMask;
using rootdata::Word;

enum class TwistKind { Split, Twisted, Raw };

std::string to_string(TwistKind kind);

struct FrobeniusTwist {
  TwistKind kind = TwistKind::Split;
  IntMatrix on_Y;
  Integer p;
  // Zero for raw twists.
  Integer q0;
  // Twisted only: alpha_j^vee -> alpha_{perm[j-1]}^vee.
  std::vector<std::size_t> perm;
  // Twisted only: the finite-order automorphism D with F_Y = q0 D.
  IntMatrix automorphism;
};

struct PrimePower {
  Integer prime;
  unsigned exponent = 0;
};

// Nullopt unless n = p^a with p prime and a >= 1.
std::optional<PrimePower> as_prime_power(const Integer& n);

FrobeniusTwist make_split(const RootDatum& rd, const Integer& q0);

// D is solved from D(alpha_j^vee) = alpha_{perm(j)}^vee when the coroots span
// a full-rank sublattice; otherwise `extension` must supply the whole of D
// (for GL(n), gl_flip_extension gives the standard choice). Throws
// NoSuchAutomorphism when no such integral finite-order D exists.
FrobeniusTwist make_twisted(const RootDatum& rd, const Integer& q0,
                            std::vector<std::size_t> perm,
                            std::optional<IntMatrix> extension = std::nullopt);

// Raw F_Y; beyond det != 0 and p prime, validation happens in discover_dq.
FrobeniusTwist make_raw(const RootDatum& rd, IntMatrix on_Y, const Integer& p);

// -w_0 on Y = Z^n: the anti-diagonal matrix with entries -1. It maps
// alpha_j^vee to alpha_{n-j}^vee.
IntMatrix gl_flip_extension(std::size_t n);

// Matrix of x o F on Y, where x is the product in word order of the letters
// at positions outside the mask: M(s_{i_1}) ... M(s_{i_r}) F_Y restricted to
// the kept letters.
IntMatrix wf_matrix(const RootDatum& rd, const FrobeniusTwist& twist, const Word& w,
                    const SubwordMask& mask);
IntMatrix wf_matrix(const RootDatum& rd, const FrobeniusTwist& twist, const Word& w);

struct DQCertificate {
  unsigned d = 0;
  Integer q;
};

inline constexpr unsigned kDefaultDCap = 1000;

// Smallest d <= cap with (wf)^d = q Id, q a power of p.
DQCertificate discover_dq(const IntMatrix& wf, const Integer& p, unsigned cap = kDefaultDCap);

// sum_{j < d} (wf)^j
IntMatrix norm_matrix(const IntMatrix& wf, unsigned d);

}  // namespace dlcomp::frobenius
