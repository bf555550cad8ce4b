#include "dlcomp/rootdata.hpp"

#include <algorithm>
#include <charconv>
#include <optional>
#include <sstream>

#include "dlcomp/error.hpp"

namespace dlcomp::rootdata {

namespace {

IntVector unit(std::size_t n, std::size_t i) {
  IntVector v(n, Integer(0));
  v[i] = 1;
  return v;
}

// Datum whose Y is the coroot lattice (simply connected, coroots = standard
// basis), so the simple roots in X-coordinates are the rows of the Cartan
// matrix.
RootDatum simply_connected(std::string name, const IntMatrix& cartan) {
  RootDatum rd;
  rd.name = std::move(name);
  rd.rank = cartan.rows();
  for (std::size_t i = 0; i < rd.rank; ++i) {
    rd.simple_roots.push_back(cartan.row(i));
    rd.simple_coroots.push_back(unit(rd.rank, i));
  }
  return rd;
}

IntMatrix cartan_type_a(std::size_t n) {
  IntMatrix c(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    c(i, i) = 2;
    if (i + 1 < n) c(i, i + 1) = c(i + 1, i) = -1;
  }
  return c;
}

std::optional<std::size_t> parse_parenthesized(std::string_view s, std::string_view prefix) {
  if (!s.starts_with(prefix)) return std::nullopt;
  s.remove_prefix(prefix.size());
  if (s.starts_with('(') && s.ends_with(')')) s = s.substr(1, s.size() - 2);
  std::size_t n = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return n;
}

}  // namespace

Integer pairing(const IntVector& chi, const IntVector& lambda) {
  if (chi.size() != lambda.size())
    throw Error(ErrorKind::InvalidArgument, "pairing of vectors of different ranks");
  Integer s = 0;
  for (std::size_t i = 0; i < chi.size(); ++i) s += chi[i] * lambda[i];
  return s;
}

IntMatrix cartan_matrix(const RootDatum& rd) {
  const std::size_t s = rd.num_simple();
  IntMatrix c(s, s);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) c(i, j) = pairing(rd.simple_roots[i], rd.simple_coroots[j]);
  return c;
}

RootDatum preset(std::string_view name) {
  std::string compact;
  for (char ch : name)
    if (ch != ' ') compact.push_back(ch);
  std::string_view s = compact;

  if (s == "SU(3)" || s == "SU3") {
    RootDatum rd = simply_connected("SU(3)", cartan_type_a(2));
    return rd;
  }
  if (s == "Sp(4)" || s == "Sp4") {
    return simply_connected("Sp(4)", IntMatrix::from_rows({{2, -1}, {-2, 2}}));
  }
  if (s == "G2") {
    return simply_connected("G2", IntMatrix::from_rows({{2, -1}, {-3, 2}}));
  }
  if (auto n = parse_parenthesized(s, "SL")) {
    if (*n < 2) throw Error(ErrorKind::InvalidArgument, "SL(n) needs n >= 2");
    return simply_connected("SL(" + std::to_string(*n) + ")", cartan_type_a(*n - 1));
  }
  if (auto n = parse_parenthesized(s, "GL")) {
    if (*n < 2) throw Error(ErrorKind::InvalidArgument, "GL(n) needs n >= 2");
    RootDatum rd;
    rd.name = "GL(" + std::to_string(*n) + ")";
    rd.rank = *n;
    for (std::size_t i = 0; i + 1 < *n; ++i) {
      IntVector v = unit(*n, i) - unit(*n, i + 1);
      rd.simple_roots.push_back(v);
      rd.simple_coroots.push_back(v);
    }
    return rd;
  }
  throw Error(ErrorKind::UnknownPreset, "no root datum preset named '" + std::string(name) + "'");
}

void validate(const RootDatum& rd) {
  if (rd.rank == 0) throw Error(ErrorKind::BadCartan, "root datum of rank 0");
  if (rd.simple_roots.size() != rd.simple_coroots.size())
    throw Error(ErrorKind::BadCartan, "different numbers of simple roots and coroots");
  if (rd.simple_roots.empty()) throw Error(ErrorKind::BadCartan, "no simple roots");
  for (std::size_t j = 0; j < rd.num_simple(); ++j) {
    if (rd.simple_roots[j].size() != rd.rank || rd.simple_coroots[j].size() != rd.rank)
      throw Error(ErrorKind::BadCartan, "simple (co)root " + std::to_string(j + 1) +
                                            " does not have " + std::to_string(rd.rank) +
                                            " coordinates");
  }
  const IntMatrix c = cartan_matrix(rd);
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = 0; j < c.cols(); ++j) {
      if (i == j && c(i, j) != 2)
        throw Error(ErrorKind::BadCartan,
                    "<alpha_" + std::to_string(i + 1) + ", alpha_" + std::to_string(i + 1) +
                        "^vee> = " + c(i, j).get_str() + ", expected 2");
      if (i != j && (c(i, j) > 0 || (c(i, j) == 0) != (c(j, i) == 0)))
        throw Error(ErrorKind::BadCartan, "Cartan entry (" + std::to_string(i + 1) + "," +
                                              std::to_string(j + 1) + ") = " + c(i, j).get_str());
    }
  for (std::size_t j = 0; j < rd.num_simple(); ++j) {
    if (!lattice::is_primitive(rd.simple_coroots[j]))
      throw Error(ErrorKind::ImprimitiveCoroot,
                  "simple coroot " + std::to_string(j + 1) + " = " +
                      lattice::to_string(rd.simple_coroots[j]) + " has content " +
                      lattice::content(rd.simple_coroots[j]).get_str() +
                      "; the derived group is not simply connected");
  }
}

Word make_word(const RootDatum& rd, std::vector<std::size_t> letters) {
  if (letters.empty()) throw Error(ErrorKind::InvalidArgument, "empty word");
  for (std::size_t l : letters)
    if (l < 1 || l > rd.num_simple())
      throw Error(ErrorKind::InvalidArgument, "letter " + std::to_string(l) +
                                                  " is not a simple-root index of " + rd.name);
  return Word{std::move(letters)};
}

// ---------------------------------------------------------------------------

SubwordMask::SubwordMask(std::vector<std::size_t> positions, std::size_t word_length)
    : positions_(std::move(positions)), word_length_(word_length) {
  std::sort(positions_.begin(), positions_.end());
  if (std::adjacent_find(positions_.begin(), positions_.end()) != positions_.end())
    throw Error(ErrorKind::InvalidArgument, "repeated position in subword mask");
  for (std::size_t p : positions_)
    if (p < 1 || p > word_length_)
      throw Error(ErrorKind::InvalidArgument, "mask position " + std::to_string(p) +
                                                  " outside 1.." + std::to_string(word_length_));
}

SubwordMask SubwordMask::full(std::size_t word_length) { return SubwordMask({}, word_length); }

SubwordMask SubwordMask::from_bits(std::uint64_t bits, std::size_t word_length) {
  std::vector<std::size_t> pos;
  for (std::size_t b = 0; b < word_length && b < 64; ++b)
    if (bits >> b & 1u) pos.push_back(b + 1);
  return SubwordMask(std::move(pos), word_length);
}

bool SubwordMask::contains(std::size_t i) const {
  return std::binary_search(positions_.begin(), positions_.end(), i);
}

bool SubwordMask::is_subset_of(const SubwordMask& other) const {
  return std::includes(other.positions_.begin(), other.positions_.end(), positions_.begin(),
                       positions_.end());
}

std::string SubwordMask::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t k = 0; k < positions_.size(); ++k) os << (k ? "," : "") << positions_[k];
  os << '}';
  return os.str();
}

// ---------------------------------------------------------------------------

IntMatrix reflection_on_Y(const RootDatum& rd, std::size_t j) {
  if (j < 1 || j > rd.num_simple()) throw Error(ErrorKind::InvalidArgument, "bad reflection index");
  const IntVector& a = rd.root(j);
  const IntVector& c = rd.coroot(j);
  IntMatrix m = IntMatrix::identity(rd.rank);
  for (std::size_t r = 0; r < rd.rank; ++r)
    for (std::size_t k = 0; k < rd.rank; ++k) m(r, k) -= c[r] * a[k];
  return m;
}

IntMatrix reflection_on_X(const RootDatum& rd, std::size_t j) {
  if (j < 1 || j > rd.num_simple()) throw Error(ErrorKind::InvalidArgument, "bad reflection index");
  const IntVector& a = rd.root(j);
  const IntVector& c = rd.coroot(j);
  IntMatrix m = IntMatrix::identity(rd.rank);
  for (std::size_t r = 0; r < rd.rank; ++r)
    for (std::size_t k = 0; k < rd.rank; ++k) m(r, k) -= a[r] * c[k];
  return m;
}

IntMatrix word_matrix(const RootDatum& rd, const std::vector<std::size_t>& letters) {
  IntMatrix m = IntMatrix::identity(rd.rank);
  for (std::size_t l : letters) m = m * reflection_on_Y(rd, l);
  return m;
}

IntVector beta_coroot(const RootDatum& rd, const Word& w, std::size_t i) {
  if (i < 1 || i > w.length())
    throw Error(ErrorKind::InvalidArgument, "position " + std::to_string(i) + " outside the word");
  const std::vector<std::size_t> prefix(w.letters.begin(),
                                        w.letters.begin() + static_cast<std::ptrdiff_t>(i - 1));
  return word_matrix(rd, prefix) * rd.coroot(w.at(i));
}

std::vector<IntVector> subword_lattice_generators(const RootDatum& rd, const Word& w,
                                                  const SubwordMask& mask) {
  if (mask.word_length() != w.length())
    throw Error(ErrorKind::InvalidArgument, "mask built for a word of another length");
  std::vector<IntVector> gens;
  for (std::size_t i : mask.positions()) gens.push_back(beta_coroot(rd, w, i));
  return gens;
}

}  // namespace dlcomp::rootdata
