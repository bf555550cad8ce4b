#include "doctest.h"

#include "dlcomp/error.hpp"
#include "dlcomp/report.hpp"

using namespace dlcomp;
using report::json;

namespace {

invariants::WordProblem problem_of(const json& doc) {
  const auto spec = report::parse_problem(doc);
  return invariants::WordProblem(spec.root_datum, spec.twist, spec.word);
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("integers") {
  CHECK(report::integer_to_json(Integer(-12)) == json(-12));
  const Integer big("340282366920938463463374607431768211456");
  CHECK(report::integer_to_json(big) == json("340282366920938463463374607431768211456"));
  CHECK(report::integer_from_json(report::integer_to_json(big)) == big);
  CHECK(report::integer_from_json(json(7)) == 7);
  CHECK(report::integer_from_json(json("-5")) == -5);
  CHECK_THROWS_AS(report::integer_from_json(json("1.5")), Error);
  CHECK_THROWS_AS(report::integer_from_json(json(1.5)), Error);
  const IntMatrix m = IntMatrix::from_rows({{1, -2}, {3, 4}});
  CHECK(report::matrix_from_json(report::matrix_to_json(m)) == m);
}

TEST_CASE("problem parsing") {
  SUBCASE("preset string or object") {
    const auto a = report::parse_problem(
        json::parse(R"j({"root_datum":"GL(3)","twist":{"kind":"split","q0":2},"word":[1,2]})j"));
    const auto b = report::parse_problem(json::parse(
        R"j({"root_datum":{"preset":"GL(3)"},"twist":{"kind":"split","q0":2},"word":[1,2],"mask":[2]})j"));
    CHECK(a.root_datum == b.root_datum);
    CHECK_FALSE(a.mask);
    REQUIRE(b.mask);
    CHECK(b.mask->positions() == std::vector<std::size_t>{2});
  }
  SUBCASE("explicit imprimitive datum") {
    const json doc = json::parse(
        R"j({"root_datum":{"name":"PGL(2)","rank":1,"simple_roots":[[1]],"simple_coroots":[[2]]},
            "twist":{"kind":"split","q0":3},"word":[1]})j");
    CHECK(kind_of([&] { report::parse_problem(doc); }) == ErrorKind::ImprimitiveCoroot);
  }
  SUBCASE("twisted and raw twists") {
    const auto t = report::parse_problem(json::parse(
        R"j({"root_datum":"SU(3)","twist":{"kind":"twisted","q0":2,"perm":[2,1]},"word":[1]})j"));
    CHECK(t.twist.kind == frobenius::TwistKind::Twisted);
    const auto g = report::parse_problem(json::parse(
        R"j({"root_datum":"GL(3)","twist":{"kind":"twisted","q0":2,"perm":[2,1],
            "extension":[[0,0,-1],[0,-1,0],[-1,0,0]]},"word":[1,2]})j"));
    CHECK(g.twist.automorphism == frobenius::gl_flip_extension(3));
    const auto r = report::parse_problem(json::parse(
        R"j({"root_datum":"SL(2)","twist":{"kind":"raw","p":3,"matrix":[[3]]},"word":[1]})j"));
    CHECK(r.twist.kind == frobenius::TwistKind::Raw);
  }
  SUBCASE("malformed documents") {
    CHECK(kind_of([] { report::parse_problem(json::parse(R"j({"twist":{},"word":[1]})j")); }) ==
          ErrorKind::InvalidArgument);
    CHECK(kind_of([] {
            report::parse_problem(json::parse(
                R"j({"root_datum":"SL(2)","twist":{"kind":"split","q0":6},"word":[1]})j"));
          }) == ErrorKind::NotPrimePower);
    CHECK(kind_of([] {
            report::parse_problem(json::parse(
                R"j({"root_datum":"SL(2)","twist":{"kind":"weird"},"word":[1]})j"));
          }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([] {
            report::parse_problem(json::parse(
                R"j({"root_datum":"SL(2)","twist":{"kind":"split","q0":3},"word":[2]})j"));
          }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([] {
            report::parse_problem(json::parse(
                R"j({"root_datum":"SL(2)","twist":{"kind":"split","q0":3,"p":2},"word":[1]})j"));
          }) == ErrorKind::InvalidArgument);
  }
  SUBCASE("masks") {
    CHECK(report::parse_mask("1,3", 3).positions() == std::vector<std::size_t>{1, 3});
    CHECK(report::parse_mask(" 2 ", 3).positions() == std::vector<std::size_t>{2});
    CHECK(report::parse_mask("", 3).empty());
    CHECK_THROWS_AS(report::parse_mask("1,x", 3), Error);
    CHECK_THROWS_AS(report::parse_mask("4", 3), Error);
  }
}

TEST_CASE("invariants report") {
  const auto p = problem_of(
      json::parse(R"j({"root_datum":"GL(3)","twist":{"kind":"split","q0":2},"word":[1,2]})j"));
  const json r = report::invariants_report(p);
  CHECK(r["torus"]["factors"] == json::array({7}));
  CHECK(r["torus"]["order"] == 7);
  CHECK(r["certificate"]["d"] == 3);
  CHECK(r["certificate"]["q"] == 8);
  REQUIRE(r["per_i"].size() == 2);
  CHECK(r["per_i"][0]["m"] == 7);
  CHECK(r["per_i"][1]["m"] == 7);
  CHECK(r["per_i"][0]["lambda"] == json::array({3, -1, -2}));
  CHECK(r["checks"]["f_gamma"] == true);
  CHECK(r["checks"]["nw"] == true);
  CHECK(r["checks"]["quotient_iso"] == true);
  CHECK_FALSE(report::render_text(r).empty());
}

TEST_CASE("strata, ramification and quotient reports") {
  const auto gl3 = problem_of(
      json::parse(R"j({"root_datum":"GL(3)","twist":{"kind":"split","q0":2},"word":[1,2]})j"));
  const json s = report::strata_report(gl3);
  REQUIRE(s["strata"].size() == 4);
  CHECK(s["strata"][3]["I"] == json::array({1, 2}));
  CHECK(s["strata"][3]["h_order"] == 7);
  CHECK(s["strata"][3]["flag"] == "possibly-singular");
  CHECK(s["strata"][0]["flag"] == "guaranteed-smooth");

  const auto sl2 = problem_of(
      json::parse(R"j({"root_datum":"SL(2)","twist":{"kind":"split","q0":5},"word":[1]})j"));
  const json ram = report::ramification_report(sl2);
  CHECK(ram["ramification"][0]["m"] == 6);
  CHECK(ram["ramification"][0]["stab"] == 6);

  const json q = report::quotient_iso_report(gl3, rootdata::SubwordMask({1}, 2));
  CHECK(q["quotient_iso"]["equal"] == true);
  CHECK(q["quotient_iso"]["left"]["order"] == 1);
  CHECK(q["quotient_iso"]["right"]["order"] == 1);

  for (const json* r : {&s, &ram, &q}) CHECK_FALSE(report::render_text(*r).empty());
}

TEST_CASE("round trip and determinism") {
  const std::vector<std::string> docs{
      R"j({"root_datum":"GL(3)","twist":{"kind":"split","q0":2},"word":[1,2]})j",
      R"j({"root_datum":"SL(2)","twist":{"kind":"split","q0":9},"word":[1,1,1]})j",
      R"j({"root_datum":"SU(3)","twist":{"kind":"twisted","q0":3,"perm":[2,1]},"word":[1,2]})j",
      R"j({"root_datum":"Sp(4)","twist":{"kind":"split","q0":3},"word":[2,1,2]})j",
      R"j({"root_datum":"G2","twist":{"kind":"split","q0":2},"word":[1,2]})j",
      R"j({"root_datum":"SL(2)","twist":{"kind":"raw","p":2,"matrix":[[4]]},"word":[1]})j"};
  for (const auto& text : docs) {
    CAPTURE(text);
    const auto p = problem_of(json::parse(text));
    const json first = report::strata_report(p);
    const json emitted = json::parse(first.dump(2));
    // The emitted header is itself a valid problem document.
    json again_doc{{"root_datum", emitted["root_datum"]},
                   {"twist", emitted["twist"]},
                   {"word", emitted["word"]}};
    const auto p2 = problem_of(again_doc);
    CHECK(p2.root_datum() == p.root_datum());
    CHECK(p2.wf() == p.wf());
    CHECK(report::strata_report(p2).dump(2) == first.dump(2));
    CHECK(report::strata_report(p).dump(2) == first.dump(2));
    CHECK(report::invariants_report(p).dump(2) == report::invariants_report(p2).dump(2));
  }
}

TEST_CASE("sl2 report") {
  const json r = report::sl2_report(sl2::check_phi_properties(2), sl2::drinfeld_points(2, 2));
  CHECK(r["passed"] == true);
  CHECK(r["group_order"] == 6);
  CHECK(r["drinfeld"]["k"] == 2);
  CHECK(r["drinfeld"]["count"] == 6);
  CHECK(r["drinfeld"]["orbits"] == 2);
  CHECK(r["drinfeld"]["free"] == true);
  CHECK_FALSE(report::render_text(r).empty());
}
