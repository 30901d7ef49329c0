#include "masseywit/words.hpp"

#include <stdexcept>

namespace masseywit {

u64 Word::exponent_modulus(u32 p, u32 precision) {
  u64 m = 1;
  for (u32 t = 0; t < precision; ++t) {
    if (m > u64(1) << 58) throw input_error("exponent precision too large for u64 residues");
    m *= p;
  }
  return m;
}

void Word::push_residue(u32 gen, u64 exp_residue, u64 exp_mod) {
  const u64 e = exp_residue % exp_mod;
  if (e == 0) return;
  if (!letters_.empty() && letters_.back().gen == gen) {
    // merge adjacent powers of the same generator
    u64 merged = (letters_.back().exp + e) % exp_mod;
    if (merged == 0)
      letters_.pop_back();
    else
      letters_.back().exp = merged;
    return;
  }
  letters_.push_back(Letter{gen, e});
}

void Word::push(u32 gen, i64 exp, u64 exp_mod) {
  i64 r = exp % static_cast<i64>(exp_mod);
  if (r < 0) r += static_cast<i64>(exp_mod);
  push_residue(gen, static_cast<u64>(r), exp_mod);
}

void Word::append(const Word& w, u64 exp_mod) {
  for (const Letter& l : w.letters_) push_residue(l.gen, l.exp, exp_mod);
}

Word Word::inverse(u64 exp_mod) const {
  Word r;
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
    r.push_residue(it->gen, exp_mod - it->exp, exp_mod);
  return r;
}

Word Word::commutator(const Word& a, const Word& b, u64 exp_mod) {
  Word r = a;
  r.append(b, exp_mod);
  r.append(a.inverse(exp_mod), exp_mod);
  r.append(b.inverse(exp_mod), exp_mod);
  return r;
}

u64 Word::exponent_sum(u32 g, u64 m) const {
  u64 s = 0;
  for (const Letter& l : letters_)
    if (l.gen == g) s = (s + l.exp) % m;
  return s;
}

std::string Word::pretty(u64 exp_mod) const {
  if (letters_.empty()) return "1";
  std::string out;
  for (const Letter& l : letters_) {
    if (!out.empty()) out += ' ';
    out += "x" + std::to_string(l.gen + 1);
    // print the balanced representative so relator tails read as x^-q
    const i64 bal = (l.exp * 2 > exp_mod) ? static_cast<i64>(l.exp) - static_cast<i64>(exp_mod)
                                          : static_cast<i64>(l.exp);
    if (bal != 1) out += "^" + std::to_string(bal);
  }
  return out;
}

UniTriangular evaluate_word(const Word& w, const std::vector<UniTriangular>& images, u32 p,
                            u32 precision) {
  if (images.empty()) throw input_error("evaluate_word: no generator images");
  const u32 n = images[0].n();
  const u32 M = group_exponent_log(n, p);
  if (precision < M)
    throw precision_error("evaluate_word: exponent precision " + std::to_string(precision) +
                              " too low for U_" + std::to_string(n + 1) +
                              " (need at least " + std::to_string(M) + ")",
                          M);
  UniTriangular r = UniTriangular::identity(n, p);
  for (const Letter& l : w.letters()) {
    if (l.gen >= images.size())
      throw input_error("evaluate_word: letter references generator " + std::to_string(l.gen + 1) +
                        " beyond the assignment");
    r = mul(r, power_res(images[l.gen], l.exp));
  }
  return r;
}

}  // namespace masseywit
