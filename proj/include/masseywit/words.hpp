#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "masseywit/unitriangular.hpp"

namespace masseywit {

/// One letter x_g^e of a group word. Exponents are residues mod p^K for the
/// owning presentation's precision K; negative powers are stored as the
/// complementary residue, which is sound because every evaluation target has
/// exponent dividing p^K.
struct Letter {
  u32 gen = 0;
  u64 exp = 0;
  bool operator==(const Letter&) const = default;
};

class Word {
 public:
  Word() = default;

  /// p^K, the modulus all exponents of this word live under.
  static u64 exponent_modulus(u32 p, u32 precision);

  void push(u32 gen, i64 exp, u64 exp_mod);
  void push_residue(u32 gen, u64 exp_residue, u64 exp_mod);
  void append(const Word& w, u64 exp_mod);

  Word inverse(u64 exp_mod) const;
  static Word commutator(const Word& a, const Word& b, u64 exp_mod);  // a b a^-1 b^-1

  const std::vector<Letter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }

  /// Exponent sum of generator g modulo m.
  u64 exponent_sum(u32 g, u64 m) const;

  /// Human-readable form, e.g. "x1^3 x1 x2 x1^-1 x2^-1" (balanced exponents).
  std::string pretty(u64 exp_mod) const;

  bool operator==(const Word&) const = default;

 private:
  std::vector<Letter> letters_;
};

/// Product of the images substituted for the word's generators, with
/// exponents reduced modulo the target group's exponent p^M. Requires
/// precision K >= M; throws precision_error otherwise, since residues mod
/// p^K with K < M cannot faithfully represent the needed exponents.
UniTriangular evaluate_word(const Word& w, const std::vector<UniTriangular>& images, u32 p,
                            u32 precision);

}  // namespace masseywit
