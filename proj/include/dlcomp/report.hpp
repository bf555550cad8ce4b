#pragma once

// Problem descriptions and report objects as JSON documents.
//
// A problem document looks like
//   {"root_datum": {"preset": "GL(3)"},
//    "twist": {"kind": "split", "q0": 2},
//    "word": [1, 2],
//    "mask": [1]}                                  (mask optional)
// where root_datum may also be explicit
//   {"name", "rank", "simple_roots", "simple_coroots"}
// and twist is one of
//   {"kind": "split", "q0"}
//   {"kind": "twisted", "q0", "perm", "extension"?}
//   {"kind": "raw", "p", "matrix"}.
// Integers are written as JSON numbers when they fit in 64 bits and as
// decimal strings otherwise; both forms are accepted on input.

#include <optional>
#include <string>

#include "json.hpp"

#include "dlcomp/frobenius.hpp"
#include "dlcomp/invariants.hpp"
#include "dlcomp/lattice.hpp"
#include "dlcomp/rootdata.hpp"
#include "dlcomp/sl2oracle.hpp"

namespace dlcomp::report {

using json = nlohmann::json;

struct ProblemSpec {
  rootdata::RootDatum root_datum;
  frobenius::FrobeniusTwist twist;
  rootdata::Word word;
  std::optional<rootdata::SubwordMask> mask;
};

json integer_to_json(const Integer& v);
Integer integer_from_json(const json& j);
json vector_to_json(const IntVector& v);
IntVector vector_from_json(const json& j);
json matrix_to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const json& j);

json root_datum_to_json(const rootdata::RootDatum& rd);
rootdata::RootDatum root_datum_from_json(const json& j);
json twist_to_json(const frobenius::FrobeniusTwist& t);
frobenius::FrobeniusTwist twist_from_json(const rootdata::RootDatum& rd, const json& j);
json group_to_json(const FiniteAbelianGroup& g);

// "1,3" or [1, 3].
rootdata::SubwordMask mask_from_json(const json& j, std::size_t word_length);
rootdata::SubwordMask parse_mask(const std::string& text, std::size_t word_length);

// Throws dlcomp::Error (InvalidArgument for malformed documents, or the
// validation error of the offending component).
ProblemSpec parse_problem(const json& j);

// Common header: root_datum, twist, word, certificate, torus.
json problem_header(const invariants::WordProblem& problem);

json invariants_report(const invariants::WordProblem& problem,
                       std::size_t guard = invariants::kDefaultStrataGuard);
json strata_report(const invariants::WordProblem& problem,
                   std::size_t guard = invariants::kDefaultStrataGuard);
json ramification_report(const invariants::WordProblem& problem);
json quotient_iso_report(const invariants::WordProblem& problem,
                         const rootdata::SubwordMask& mask);
json sl2_report(const sl2::PhiReport& phi, const sl2::DrinfeldReport& drinfeld);

// Human-readable rendering of any of the reports above.
std::string render_text(const json& report);

}  // namespace dlcomp::report
