#include "doctest.h"

#include "battery.hpp"
#include "dlcomp/error.hpp"
#include "dlcomp/invariants.hpp"
#include "oracles.hpp"

using namespace dlcomp;
using invariants::SmoothFlag;
using invariants::WordProblem;
using lattice::make_vector;
using rootdata::SubwordMask;

namespace {

WordProblem split_problem(const char* name, long q0, std::vector<std::size_t> letters) {
  const auto rd = rootdata::preset(name);
  return WordProblem(rd, frobenius::make_split(rd, q0), rootdata::make_word(rd, std::move(letters)));
}

std::vector<Integer> factors(std::initializer_list<long> l) { return {l.begin(), l.end()}; }

}  // namespace

TEST_CASE("WordProblem construction") {
  const auto rd = rootdata::preset("SL(2)");
  const auto gl = rootdata::preset("GL(2)");
  CHECK_THROWS_AS(WordProblem(rd, frobenius::make_split(gl, 2), rootdata::make_word(rd, {1})),
                  Error);
  const auto p = split_problem("SL(2)", 3, {1});
  CHECK(p.wf() == IntMatrix::from_rows({{-3}}));
  CHECK(p.certificate().d == 2);
  CHECK(p.certificate().q == 9);
}

TEST_CASE("lambda_m") {
  SUBCASE("SL(2), w = s") {
    for (long q : {2, 3, 4, 5, 7}) {
      const auto lm = invariants::lambda_m(split_problem("SL(2)", q, {1}), 1);
      CHECK(lm.lambda == make_vector({1}));
      CHECK(lm.m == q + 1);
    }
  }
  SUBCASE("GL(2), w = s") {
    for (long q : {2, 3, 4, 5, 7}) {
      const auto lm = invariants::lambda_m(split_problem("GL(2)", q, {1}), 1);
      CHECK(lm.lambda == make_vector({1, -1}));
      CHECK(lm.m == q + 1);
    }
  }
  SUBCASE("GL(3) Coxeter") {
    for (long q0 : {2, 3, 5}) {
      const auto p = split_problem("GL(3)", q0, {1, 2});
      const auto all = invariants::lambda_m_all(p);
      REQUIRE(all.size() == 2);
      CHECK(all[0].lambda == make_vector({1 + q0, -1, -q0}));
      CHECK(all[1].lambda == make_vector({1, q0, -1 - q0}));
      CHECK(all[0].m == 1 + q0 + q0 * q0);
      CHECK(all[1].m == 1 + q0 + q0 * q0);
    }
  }
  SUBCASE("bad position") {
    CHECK_THROWS_AS(invariants::lambda_m(split_problem("SL(2)", 3, {1}), 2), Error);
  }
}

TEST_CASE("torus_group") {
  for (long q : {2, 3, 4, 5, 7}) {
    CHECK(invariants::torus_group(split_problem("SL(2)", q, {1})).invariant_factors() ==
          factors({q + 1}));
    const auto gl2 = invariants::torus_group(split_problem("GL(2)", q, {1}));
    CHECK(gl2.is_cyclic());
    CHECK(gl2.order() == q * q - 1);
  }
  for (long q0 : {2, 3, 5}) {
    const auto t = invariants::torus_group(split_problem("GL(3)", q0, {1, 2}));
    CHECK(t.is_cyclic());
    CHECK(t.order() == q0 * q0 * q0 - 1);
  }
  SUBCASE("subword torus") {
    const auto p = split_problem("GL(3)", 3, {1, 2});
    // x = 1: Y / (3 - 1) Y
    CHECK(invariants::torus_group(p, SubwordMask({1, 2}, 2)).invariant_factors() ==
          factors({2, 2, 2}));
  }
}

TEST_CASE("norm_class") {
  const auto p = split_problem("SL(2)", 4, {1});
  const auto t = invariants::torus_group(p);
  CHECK(t.is_identity(invariants::norm_class(t, make_vector({0}))));
  CHECK(t.is_identity(invariants::norm_class(t, (p.wf() - IntMatrix::identity(1)) * make_vector({3}))));
  CHECK(t.element_order(invariants::norm_class(t, make_vector({1}))) == 5);

  const auto g = split_problem("GL(3)", 2, {1, 2});
  const auto tg = invariants::torus_group(g);
  const IntMatrix a = g.wf() - IntMatrix::identity(3);
  for (const auto& mu : {make_vector({1, 0, 0}), make_vector({4, -7, 2})})
    CHECK(tg.is_identity(invariants::norm_class(tg, a * mu)));
}

TEST_CASE("stabilizer") {
  for (long q : {2, 3, 5}) {
    const auto p = split_problem("SL(2)", q, {1});
    CHECK(invariants::stabilizer(p, SubwordMask::full(1)).is_trivial());
    CHECK(invariants::stabilizer(p, SubwordMask({1}, 1)).order() == q + 1);
  }
  for (long q0 : {2, 3, 5}) {
    const auto p = split_problem("GL(3)", q0, {1, 2});
    const auto s = invariants::stabilizer(p, SubwordMask({1}, 2));
    CHECK(s.is_cyclic());
    CHECK(s.order() == 1 + q0 + q0 * q0);
  }
}

TEST_CASE("gamma matrices") {
  for (long q : {2, 3, 5}) {
    const auto p = split_problem("SL(2)", q, {1});
    const auto g = invariants::gamma_matrices(p);
    REQUIRE(g.size() == 2);
    CHECK(g[0] == IntMatrix::from_rows({{1}}));
    CHECK(g[1] == IntMatrix::from_rows({{q}}));
    CHECK(invariants::f_gamma_check(p));
  }
  for (long q0 : {2, 3, 5}) {
    const auto p = split_problem("GL(3)", q0, {1, 2});
    const auto g = invariants::gamma_matrices(p);
    REQUIRE(g.size() == 3);
    CHECK(g[0] == IntMatrix::from_rows({{1 + q0, 1}, {-1, q0}, {-q0, -1 - q0}}));
    CHECK(p.twist().on_Y * g[0] == g[2]);
    CHECK(invariants::f_gamma_check(p));
  }
}

TEST_CASE("h_group") {
  for (long q0 : {2, 3, 5}) {
    const auto p = split_problem("GL(3)", q0, {1, 2});
    CHECK(invariants::h_group(p, SubwordMask::full(2)).is_trivial());
    CHECK(invariants::h_group(p, SubwordMask({1}, 2)).is_trivial());
    CHECK(invariants::h_group(p, SubwordMask({2}, 2)).is_trivial());
    const auto h = invariants::h_group(p, SubwordMask({1, 2}, 2));
    CHECK(h.invariant_factors() == factors({1 + q0 + q0 * q0}));
  }
}

TEST_CASE("quotient_iso_check") {
  const auto sl2 = split_problem("SL(2)", 5, {1});
  for (const auto& mask : {SubwordMask::full(1), SubwordMask({1}, 1)}) {
    const auto r = invariants::quotient_iso_check(sl2, mask);
    CHECK(r.equal);
  }
  CHECK(invariants::quotient_iso_check(sl2, SubwordMask({1}, 1)).left.is_trivial());
  CHECK(invariants::quotient_iso_check(sl2, SubwordMask({1}, 1)).right.is_trivial());

  for (long q0 : {2, 3, 5}) {
    const auto r = invariants::quotient_iso_check(split_problem("GL(3)", q0, {1, 2}),
                                                  SubwordMask({1}, 2));
    CHECK(r.equal);
    CHECK(r.left.order() == q0 - 1);
    CHECK(r.right.order() == q0 - 1);
  }
}

TEST_CASE("strata_report") {
  for (long q : {2, 3, 4}) {
    const auto s = invariants::strata_report(split_problem("SL(2)", q, {1}));
    REQUIRE(s.size() == 2);
    CHECK(s[0].stabilizer.is_trivial());
    CHECK(s[1].stabilizer.order() == q + 1);
    for (const auto& st : s) {
      CHECK(st.h_group.is_trivial());
      CHECK(st.flag == SmoothFlag::GuaranteedSmooth);
    }
  }
  for (long q0 : {2, 3, 5}) {
    const auto s = invariants::strata_report(split_problem("GL(3)", q0, {1, 2}));
    REQUIRE(s.size() == 4);
    CHECK(s[3].mask == SubwordMask({1, 2}, 2));
    CHECK(s[3].flag == SmoothFlag::PossiblySingular);
    CHECK(s[3].h_group.order() == 1 + q0 + q0 * q0);
    for (std::size_t k = 0; k < 3; ++k) CHECK(s[k].flag == SmoothFlag::GuaranteedSmooth);
  }
  SUBCASE("guard") {
    std::vector<std::size_t> letters(21, 1);
    const auto p = split_problem("SL(2)", 2, letters);
    try {
      invariants::strata_report(p);
      FAIL("expected TooManyStrata");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::TooManyStrata);
    }
    CHECK_NOTHROW(invariants::strata_report(split_problem("SL(2)", 2, {1, 1, 1}), 3));
  }
}

TEST_CASE("ramification_report") {
  for (long q : {2, 3, 5}) {
    const auto sl2 = invariants::ramification_report(split_problem("SL(2)", q, {1}));
    REQUIRE(sl2.size() == 1);
    CHECK(sl2[0].beta == make_vector({1}));
    CHECK(sl2[0].m == q + 1);
    CHECK(sl2[0].stabilizer_order == q + 1);

    const auto gl2 = invariants::ramification_report(split_problem("GL(2)", q, {1}));
    CHECK(gl2[0].beta == make_vector({1, -1}));
    CHECK(gl2[0].m == q + 1);
    CHECK(gl2[0].stabilizer_order == q + 1);
  }
  for (long q0 : {2, 3, 5}) {
    const auto gl3 = invariants::ramification_report(split_problem("GL(3)", q0, {1, 2}));
    REQUIRE(gl3.size() == 2);
    for (const auto& e : gl3) {
      CHECK(e.m == 1 + q0 + q0 * q0);
      CHECK(e.stabilizer_order == e.m);
    }
  }
}

TEST_CASE("norm identity") {
  for (long q : {2, 3, 5}) {
    const auto p = split_problem("SL(2)", q, {1});
    const auto n = frobenius::norm_matrix(p.wf(), p.certificate().d);
    // (1 - q)(q + 1) = 1 - q^2
    CHECK(n * (Integer(q + 1) * p.beta(1)) == make_vector({1 - q * q}));
    CHECK(invariants::norm_identity_check(p, 1));
  }
  for (long q0 : {2, 3}) {
    const auto p = split_problem("GL(3)", q0, {1, 2});
    for (std::size_t i = 1; i <= 2; ++i) CHECK(invariants::norm_identity_check(p, i));
  }
}

TEST_CASE("twisted SL(3)") {
  const auto rd = rootdata::preset("SU(3)");
  for (long q0 : {2, 3}) {
    const auto twist = frobenius::make_twisted(rd, q0, {2, 1});
    // w = s1: (s1 D)^2 = s1 s2 has order 3
    const WordProblem p(rd, twist, rootdata::make_word(rd, {1}));
    CHECK(p.certificate().d == 6);
    CHECK(p.certificate().q == Integer(q0) * q0 * q0 * q0 * q0 * q0);
    const auto t = invariants::torus_group(p);
    CHECK(t.order() == abs(lattice::determinant(p.wf() - IntMatrix::identity(2))));
    for (const auto& lm : invariants::lambda_m_all(p)) CHECK((p.certificate().q - 1) % lm.m == 0);
  }
}

TEST_CASE("properties over the battery") {
  std::size_t cases = 0, h_brute = 0, iso_enumerated = 0;
  for (const auto& c : battery::cases(3)) {
    CAPTURE(c.label);
    const WordProblem p(c.rd, c.twist, c.word);
    const std::size_t r = p.length();
    const auto torus = invariants::torus_group(p);
    CHECK(torus.order() == abs(lattice::determinant(p.wf() - IntMatrix::identity(p.rank()))));

    const auto lms = invariants::lambda_m_all(p);
    const auto gammas = invariants::gamma_matrices(p);
    for (const auto& lm : lms) {
      const IntVector beta = p.beta(lm.position);
      CHECK(lm.lambda - p.wf() * lm.lambda == lm.m * beta);
      CHECK(lattice::is_primitive(lm.lambda));
      CHECK(torus.element_order(invariants::norm_class(torus, beta)) == lm.m);
    }

    const auto full = SubwordMask::from_bits((1u << r) - 1, r);
    const Integer h_full = invariants::h_group(p, full).order();
    std::vector<Integer> stab_orders;
    for (std::uint64_t bits = 0; bits < (1u << r); ++bits) {
      const auto mask = SubwordMask::from_bits(bits, r);
      const auto h = invariants::h_group(p, mask);
      const auto stab = invariants::stabilizer(p, mask);
      stab_orders.push_back(stab.order());
      if (mask.size() <= 1) CHECK(h.is_trivial());
      CHECK(h_full % h.order() == 0);
      if (mask.size() == 1) CHECK(stab.order() == lms[mask.positions()[0] - 1].m);

      for (std::uint64_t sub = bits; sub; sub = (sub - 1) & bits)
        CHECK(stab_orders.back() % stab_orders[sub] == 0);

      if (!mask.empty()) {
        IntVector ms;
        for (std::size_t i : mask.positions()) ms.push_back(lms[i - 1].m);
        const Integer modulus = lattice::lcm(ms);
        if (modulus.fits_ulong_p()) {
          const auto brute = oracle::brute_force_h_order(gammas, mask.positions(), modulus.get_ui(), 20000);
          if (brute) {
            CHECK(h.order() == *brute);
            ++h_brute;
          }
        }
      }

      const auto iso = invariants::quotient_iso_check(p, mask);
      CHECK(iso.equal);
      CHECK(iso.left.isomorphic_to(iso.right));
      if (iso.left.order() <= 100 && torus.order() <= 3000) {
        const auto gens = rootdata::subword_lattice_generators(p.root_datum(), p.word(), mask);
        const auto left = oracle::enumerate_quotient(p.wf() - IntMatrix::identity(p.rank()), gens);
        const auto right =
            oracle::enumerate_quotient(p.wf(mask) - IntMatrix::identity(p.rank()), gens, 3000);
        if (left && right) {
          CHECK(left->counts == oracle::predicted_counts(iso.left.invariant_factors(), iso.left.order()));
          CHECK(right->counts == oracle::predicted_counts(iso.right.invariant_factors(), iso.right.order()));
          ++iso_enumerated;
        }
      }
    }
    CHECK(invariants::f_gamma_check(p));
    for (std::size_t i = 1; i <= r; ++i) CHECK(invariants::norm_identity_check(p, i));
    ++cases;
  }
  MESSAGE("battery cases: " << cases << ", H_I brute-forced: " << h_brute
                            << ", quotients enumerated: " << iso_enumerated);
  CHECK(cases > 0);
  CHECK(h_brute > 0);
  CHECK(iso_enumerated > 0);
}
