#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dlcomp/lattice.hpp"

namespace dlcomp::rootdata {

// Simple roots live in X-coordinates, simple coroots in Y-coordinates; the
// pairing <chi, lambda> is the dot product of coordinate vectors.
struct RootDatum {
  std::string name;
  std::size_t rank = 0;
  std::vector<IntVector> simple_roots;
  std::vector<IntVector> simple_coroots;

  std::size_t num_simple() const noexcept { return simple_roots.size(); }
  const IntVector& root(std::size_t j) const { return simple_roots.at(j - 1); }
  const IntVector& coroot(std::size_t j) const { return simple_coroots.at(j - 1); }

  friend bool operator==(const RootDatum&, const RootDatum&) = default;
};

Integer pairing(const IntVector& chi, const IntVector& lambda);

// Entry (i, j) is <alpha_i, alpha_j^vee>.
IntMatrix cartan_matrix(const RootDatum& rd);

// Accepted names: "SL(n)", "GL(n)" (n >= 2), "Sp(4)", "G2", "SU(3)" (the
// SL(3) datum, to be paired with the diagram flip).
RootDatum preset(std::string_view name);

// Throws BadCartan or ImprimitiveCoroot (every simple coroot must be primitive).
void validate(const RootDatum& rd);

// Letters are 1-based simple-root indices; repeated letters are allowed.
struct Word {
  std::vector<std::size_t> letters;

  std::size_t length() const noexcept { return letters.size(); }
  std::size_t at(std::size_t i) const { return letters.at(i - 1); }

  friend bool operator==(const Word&, const Word&) = default;
};

Word make_word(const RootDatum& rd, std::vector<std::size_t> letters);

// The positions I (1-based, sorted, distinct) where the subword keeps the unit
// instead of the reflection.
class SubwordMask {
 public:
  SubwordMask() = default;
  SubwordMask(std::vector<std::size_t> positions, std::size_t word_length);

  static SubwordMask full(std::size_t word_length);
  // Bit b (from 0) set means position b + 1 belongs to I.
  static SubwordMask from_bits(std::uint64_t bits, std::size_t word_length);

  const std::vector<std::size_t>& positions() const noexcept { return positions_; }
  std::size_t size() const noexcept { return positions_.size(); }
  bool empty() const noexcept { return positions_.empty(); }
  bool contains(std::size_t i) const;
  bool is_subset_of(const SubwordMask& other) const;
  std::size_t word_length() const noexcept { return word_length_; }

  std::string to_string() const;

  friend bool operator==(const SubwordMask&, const SubwordMask&) = default;

 private:
  std::vector<std::size_t> positions_;
  std::size_t word_length_ = 0;
};

// lambda -> lambda - <alpha_j, lambda> alpha_j^vee
IntMatrix reflection_on_Y(const RootDatum& rd, std::size_t j);
// chi -> chi - <chi, alpha_j^vee> alpha_j
IntMatrix reflection_on_X(const RootDatum& rd, std::size_t j);

// s_{i_1} ... s_{i_{k}} acting on Y; the empty product is the identity.
IntMatrix word_matrix(const RootDatum& rd, const std::vector<std::size_t>& letters);

// beta_i^vee = s_{i_1} ... s_{i_{i-1}} (alpha_{i_i}^vee)
IntVector beta_coroot(const RootDatum& rd, const Word& w, std::size_t i);

std::vector<IntVector> subword_lattice_generators(const RootDatum& rd, const Word& w,
                                                  const SubwordMask& mask);

}  // namespace dlcomp::rootdata
