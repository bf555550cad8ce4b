#include "dlcomp/report.hpp"

#include <climits>
#include <sstream>

#include "dlcomp/error.hpp"

namespace dlcomp::report {

namespace {

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorKind::InvalidArgument, "malformed document: " + what);
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::vector<std::size_t> indices_from_json(const json& j, const char* what) {
  if (!j.is_array()) malformed(std::string(what) + " must be an array");
  std::vector<std::size_t> out;
  for (const auto& e : j) {
    if (!e.is_number_integer() || e.get<long long>() < 1)
      malformed(std::string(what) + " entries must be positive integers");
    out.push_back(e.get<std::size_t>());
  }
  return out;
}

json factors_json(const FiniteAbelianGroup& g) {
  json f = json::array();
  for (const auto& d : g.invariant_factors()) f.push_back(integer_to_json(d));
  return f;
}

std::string factors_text(const json& factors) {
  if (factors.empty()) return "trivial";
  std::string s;
  for (const auto& d : factors) {
    if (!s.empty()) s += " x ";
    s += "Z/" + (d.is_string() ? d.get<std::string>() : d.dump());
  }
  return s;
}

std::string scalar_text(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

}  // namespace

json integer_to_json(const Integer& v) {
  if (v.fits_slong_p() && sizeof(long) * CHAR_BIT >= 64) return json(v.get_si());
  return json(v.get_str());
}

Integer integer_from_json(const json& j) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  if (j.is_string()) {
    Integer v;
    if (v.set_str(j.get<std::string>(), 10) != 0) malformed("bad integer string " + j.dump());
    return v;
  }
  malformed("expected an integer, got " + j.dump());
}

json vector_to_json(const IntVector& v) {
  json a = json::array();
  for (const auto& e : v) a.push_back(integer_to_json(e));
  return a;
}

IntVector vector_from_json(const json& j) {
  if (!j.is_array()) malformed("expected an integer vector, got " + j.dump());
  IntVector v;
  for (const auto& e : j) v.push_back(integer_from_json(e));
  return v;
}

json matrix_to_json(const IntMatrix& m) {
  json a = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) a.push_back(vector_to_json(m.row(r)));
  return a;
}

IntMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) malformed("expected a nonempty matrix (array of rows)");
  std::vector<IntVector> rows;
  for (const auto& r : j) rows.push_back(vector_from_json(r));
  return IntMatrix::from_rows(rows);
}

json root_datum_to_json(const rootdata::RootDatum& rd) {
  json j;
  j["name"] = rd.name;
  j["rank"] = rd.rank;
  j["simple_roots"] = json::array();
  j["simple_coroots"] = json::array();
  for (const auto& a : rd.simple_roots) j["simple_roots"].push_back(vector_to_json(a));
  for (const auto& c : rd.simple_coroots) j["simple_coroots"].push_back(vector_to_json(c));
  return j;
}

rootdata::RootDatum root_datum_from_json(const json& j) {
  if (j.is_string()) return rootdata::preset(j.get<std::string>());
  if (!j.is_object()) malformed("root_datum must be a preset name or an object");
  if (j.contains("preset")) {
    const json& p = j.at("preset");
    if (!p.is_string()) malformed("preset must be a string");
    return rootdata::preset(p.get<std::string>());
  }
  rootdata::RootDatum rd;
  rd.name = j.value("name", std::string("custom"));
  const json& rank = field(j, "rank");
  if (!rank.is_number_integer() || rank.get<long long>() < 1) malformed("rank must be positive");
  rd.rank = rank.get<std::size_t>();
  for (const auto& a : field(j, "simple_roots")) rd.simple_roots.push_back(vector_from_json(a));
  for (const auto& c : field(j, "simple_coroots")) rd.simple_coroots.push_back(vector_from_json(c));
  return rd;
}

json twist_to_json(const frobenius::FrobeniusTwist& t) {
  json j;
  j["kind"] = frobenius::to_string(t.kind);
  j["p"] = integer_to_json(t.p);
  j["matrix"] = matrix_to_json(t.on_Y);
  if (t.kind != frobenius::TwistKind::Raw) j["q0"] = integer_to_json(t.q0);
  if (t.kind == frobenius::TwistKind::Twisted) {
    j["perm"] = t.perm;
    j["extension"] = matrix_to_json(t.automorphism);
  }
  return j;
}

frobenius::FrobeniusTwist twist_from_json(const rootdata::RootDatum& rd, const json& j) {
  const json& kind = field(j, "kind");
  if (!kind.is_string()) malformed("twist kind must be a string");
  const std::string k = kind.get<std::string>();
  frobenius::FrobeniusTwist t;
  if (k == "split") {
    t = frobenius::make_split(rd, integer_from_json(field(j, "q0")));
  } else if (k == "twisted") {
    std::optional<IntMatrix> ext;
    if (j.contains("extension")) ext = matrix_from_json(j.at("extension"));
    t = frobenius::make_twisted(rd, integer_from_json(field(j, "q0")),
                                indices_from_json(field(j, "perm"), "perm"), ext);
  } else if (k == "raw") {
    return frobenius::make_raw(rd, matrix_from_json(field(j, "matrix")),
                               integer_from_json(field(j, "p")));
  } else {
    malformed("unknown twist kind '" + k + "'");
  }
  if (j.contains("p") && integer_from_json(j.at("p")) != t.p)
    malformed("twist p does not match q0");
  if (j.contains("matrix") && matrix_from_json(j.at("matrix")) != t.on_Y)
    malformed("twist matrix does not match the constructed Frobenius");
  return t;
}

json group_to_json(const FiniteAbelianGroup& g) {
  json j;
  j["factors"] = factors_json(g);
  if (g.is_finite()) {
    j["order"] = integer_to_json(g.order());
  } else {
    j["order"] = nullptr;
    j["free_rank"] = g.free_rank();
  }
  return j;
}

rootdata::SubwordMask mask_from_json(const json& j, std::size_t word_length) {
  if (j.is_string()) return parse_mask(j.get<std::string>(), word_length);
  return rootdata::SubwordMask(indices_from_json(j, "mask"), word_length);
}

rootdata::SubwordMask parse_mask(const std::string& text, std::size_t word_length) {
  std::vector<std::size_t> pos;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t b = item.find_first_not_of(" {}");
    std::size_t e = item.find_last_not_of(" {}");
    if (b == std::string::npos) continue;
    item = item.substr(b, e - b + 1);
    std::size_t consumed = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(item, &consumed);
    } catch (const std::exception&) {
      consumed = 0;
    }
    if (consumed != item.size() || v < 1) malformed("bad mask entry '" + item + "'");
    pos.push_back(v);
  }
  return rootdata::SubwordMask(std::move(pos), word_length);
}

ProblemSpec parse_problem(const json& j) {
  if (!j.is_object()) malformed("problem must be a JSON object");
  ProblemSpec spec;
  spec.root_datum = root_datum_from_json(field(j, "root_datum"));
  rootdata::validate(spec.root_datum);
  spec.twist = twist_from_json(spec.root_datum, field(j, "twist"));
  spec.word = rootdata::make_word(spec.root_datum, indices_from_json(field(j, "word"), "word"));
  if (j.contains("mask") && !j.at("mask").is_null())
    spec.mask = mask_from_json(j.at("mask"), spec.word.length());
  return spec;
}

// ---------------------------------------------------------------------------

json problem_header(const invariants::WordProblem& problem) {
  json j;
  j["root_datum"] = root_datum_to_json(problem.root_datum());
  j["twist"] = twist_to_json(problem.twist());
  j["word"] = problem.word().letters;
  j["certificate"] = {{"d", problem.certificate().d},
                      {"q", integer_to_json(problem.certificate().q)}};
  j["torus"] = group_to_json(invariants::torus_group(problem));
  return j;
}

json invariants_report(const invariants::WordProblem& problem, std::size_t guard) {
  json j = problem_header(problem);
  j["command"] = "invariants";
  j["per_i"] = json::array();
  bool nw = true;
  for (const auto& lm : invariants::lambda_m_all(problem)) {
    j["per_i"].push_back({{"i", lm.position},
                          {"beta", vector_to_json(problem.beta(lm.position))},
                          {"lambda", vector_to_json(lm.lambda)},
                          {"m", integer_to_json(lm.m)}});
    nw = nw && invariants::norm_identity_check(problem, lm.position);
  }
  json checks;
  checks["f_gamma"] = invariants::f_gamma_check(problem);
  checks["nw"] = nw;
  if (problem.length() <= guard && problem.length() < 64) {
    bool iso = true;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << problem.length()); ++bits)
      iso = iso && invariants::quotient_iso_check(
                       problem, rootdata::SubwordMask::from_bits(bits, problem.length()))
                       .equal;
    checks["quotient_iso"] = iso;
  } else {
    checks["quotient_iso"] = nullptr;
  }
  j["checks"] = checks;
  return j;
}

json strata_report(const invariants::WordProblem& problem, std::size_t guard) {
  json j = invariants_report(problem, guard);
  j["command"] = "strata";
  j["strata"] = json::array();
  for (const auto& s : invariants::strata_report(problem, guard)) {
    j["strata"].push_back({{"I", s.mask.positions()},
                           {"stab_factors", factors_json(s.stabilizer)},
                           {"stab_order", integer_to_json(s.stabilizer.order())},
                           {"h_factors", factors_json(s.h_group)},
                           {"h_order", integer_to_json(s.h_group.order())},
                           {"flag", invariants::to_string(s.flag)}});
  }
  return j;
}

json ramification_report(const invariants::WordProblem& problem) {
  json j = problem_header(problem);
  j["command"] = "ramification";
  j["ramification"] = json::array();
  for (const auto& e : invariants::ramification_report(problem)) {
    j["ramification"].push_back({{"i", e.position},
                                 {"beta", vector_to_json(e.beta)},
                                 {"m", integer_to_json(e.m)},
                                 {"stab", integer_to_json(e.stabilizer_order)}});
  }
  return j;
}

json quotient_iso_report(const invariants::WordProblem& problem,
                         const rootdata::SubwordMask& mask) {
  json j = problem_header(problem);
  j["command"] = "quotient-iso";
  j["mask"] = mask.positions();
  const auto res = invariants::quotient_iso_check(problem, mask);
  j["quotient_iso"] = {{"I", mask.positions()},
                       {"equal", res.equal},
                       {"left", group_to_json(res.left)},
                       {"right", group_to_json(res.right)}};
  return j;
}

json sl2_report(const sl2::PhiReport& phi, const sl2::DrinfeldReport& drinfeld) {
  json j;
  j["command"] = "verify-sl2";
  j["q"] = phi.q;
  j["group_order"] = phi.group_order;
  j["checks"] = {{"b", phi.torus_equivariance},
                 {"c", phi.twisted_conjugation},
                 {"d", phi.zero_locus_is_borel},
                 {"e", phi.one_locus_is_cell},
                 {"biinv", phi.bi_invariance}};
  json d;
  d["k"] = drinfeld.k;
  d["count"] = drinfeld.count;
  d["orbits"] = drinfeld.orbits ? json(*drinfeld.orbits) : json(nullptr);
  d["free"] = drinfeld.free_action ? json(*drinfeld.free_action) : json(nullptr);
  j["drinfeld"] = d;
  j["passed"] = phi.all_passed() && drinfeld.free_action.value_or(true);
  return j;
}

// ---------------------------------------------------------------------------

std::string render_text(const json& r) {
  std::ostringstream os;
  const std::string command = r.value("command", std::string());
  if (command == "verify-sl2") {
    os << "SL2(F_" << r["q"].dump() << "): " << r["group_order"].dump() << " elements\n";
    for (const auto& [k, v] : r["checks"].items())
      os << "  phi property " << k << ": " << (v.get<bool>() ? "pass" : "FAIL") << "\n";
    const json& d = r["drinfeld"];
    os << "Drinfeld curve over F_{q^" << d["k"].dump() << "}: " << d["count"].dump() << " points";
    if (!d["orbits"].is_null())
      os << ", " << d["orbits"].dump() << " orbits, action "
         << (d["free"].get<bool>() ? "free" : "NOT free");
    os << "\n";
    os << (r["passed"].get<bool>() ? "all checks passed" : "SOME CHECKS FAILED") << "\n";
    return os.str();
  }

  os << r["root_datum"]["name"].get<std::string>() << ", " << r["twist"]["kind"].get<std::string>();
  if (r["twist"].contains("q0")) os << " q0 = " << scalar_text(r["twist"]["q0"]);
  os << ", w = " << r["word"].dump() << "\n";
  os << "certificate: (wF)^" << r["certificate"]["d"].dump() << " = "
     << scalar_text(r["certificate"]["q"]) << " Id\n";
  os << "T^wF = " << factors_text(r["torus"]["factors"]) << " (order "
     << scalar_text(r["torus"]["order"]) << ")\n";

  if (r.contains("per_i")) {
    for (const auto& e : r["per_i"])
      os << "  i = " << e["i"].dump() << ": beta = " << e["beta"].dump()
         << ", lambda = " << e["lambda"].dump() << ", m = " << scalar_text(e["m"]) << "\n";
  }
  if (r.contains("checks")) {
    const json& c = r["checks"];
    auto verdict = [](const json& v) {
      return v.is_null() ? std::string("skipped") : std::string(v.get<bool>() ? "ok" : "FAILED");
    };
    os << "checks: F Gamma_1 = Gamma_{r+1} " << verdict(c["f_gamma"]) << ", norm identity "
       << verdict(c["nw"]) << ", quotient isomorphism " << verdict(c["quotient_iso"]) << "\n";
  }
  if (r.contains("strata")) {
    os << "strata:\n";
    for (const auto& s : r["strata"])
      os << "  I = " << s["I"].dump() << ": stabilizer " << factors_text(s["stab_factors"])
         << ", H_I " << factors_text(s["h_factors"]) << ", " << s["flag"].get<std::string>()
         << "\n";
  }
  if (r.contains("ramification")) {
    os << "ramification:\n";
    for (const auto& e : r["ramification"])
      os << "  i = " << e["i"].dump() << ": beta = " << e["beta"].dump()
         << ", m = " << scalar_text(e["m"]) << ", stabilizer order " << scalar_text(e["stab"])
         << "\n";
  }
  if (r.contains("quotient_iso")) {
    const json& q = r["quotient_iso"];
    os << "I = " << q["I"].dump() << ": T^wF / N_w(Y_wx) = " << factors_text(q["left"]["factors"])
       << ", T^xF / N_x(Y_wx) = " << factors_text(q["right"]["factors"]) << " -> "
       << (q["equal"].get<bool>() ? "isomorphic" : "NOT isomorphic") << "\n";
  }
  return os.str();
}

}  // namespace dlcomp::report
