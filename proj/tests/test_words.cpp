#include <doctest.h>

#include <random>

#include "masseywit/words.hpp"

using namespace masseywit;

namespace {
constexpr u64 kMod3 = 6561;  // 3^8
}

TEST_CASE("word construction and inverses") {
  Word w;
  w.push(0, 3, kMod3);
  w.push(0, 1, kMod3);  // merges into x1^4
  CHECK(w.letters().size() == 1);
  CHECK(w.letters()[0].exp == 4);

  const Word inv = w.inverse(kMod3);
  CHECK(inv.letters().size() == 1);
  CHECK(inv.letters()[0].exp == kMod3 - 4);

  Word c = Word::commutator(Word{}, w, kMod3);
  CHECK(c.empty());  // [1, w] collapses after merging
}

TEST_CASE("pretty printing uses balanced exponents") {
  Word w;
  w.push(0, 1, kMod3);
  w.push(1, -4, kMod3);
  CHECK(w.pretty(kMod3) == "x1 x2^-4");
}

TEST_CASE("evaluation of the Demushkin relator shape") {
  // x1^3 [x1,x2] with x1 -> A (full superdiagonal in U_4(F_3)), x2 -> I+E13
  Word x1p3;
  x1p3.push(0, 3, kMod3);
  Word c = Word::commutator([] {
    Word w;
    w.push(0, 1, kMod3);
    return w;
  }(), [] {
    Word w;
    w.push(1, 1, kMod3);
    return w;
  }(), kMod3);
  Word rel = x1p3;
  rel.append(c, kMod3);

  const UniTriangular A = UniTriangular::full_superdiagonal(3, 3);
  const UniTriangular B = UniTriangular::from_entries(3, 3, {{0, 2, 1}});
  CHECK(evaluate_word(rel, {A, B}, 3, 8).is_identity());

  // the same relator with x2 -> I fails: it evaluates to A^3 = I+E14
  CHECK(evaluate_word(rel, {A, UniTriangular::identity(3, 3)}, 3, 8) ==
        UniTriangular::from_entries(3, 3, {{0, 3, 1}}));
}

TEST_CASE("empty word evaluates to the identity") {
  CHECK(evaluate_word(Word{}, {UniTriangular::full_superdiagonal(2, 3)}, 3, 8).is_identity());
}

TEST_CASE("an order obstruction shows up in relator evaluation") {
  // x z x^-1 z^-4 with x -> I and z -> g of order 9 in U_4(F_3): evaluates to
  // g^-3 != I, so the assignment must fail the relator
  Word rel;
  rel.push(0, 1, kMod3);
  rel.push(1, 1, kMod3);
  rel.push(0, -1, kMod3);
  rel.push(1, -4, kMod3);
  const UniTriangular g = UniTriangular::full_superdiagonal(3, 3);
  const UniTriangular v = evaluate_word(rel, {UniTriangular::identity(3, 3), g}, 3, 8);
  CHECK(v == UniTriangular::from_entries(3, 3, {{0, 3, 2}}));  // g^-3 = I + 2 E14
  CHECK_FALSE(v.is_identity());
}

TEST_CASE("evaluation is a monoid homomorphism") {
  std::mt19937_64 rng(99);
  const std::vector<UniTriangular> imgs{UniTriangular::full_superdiagonal(3, 3),
                                        UniTriangular::from_entries(3, 3, {{0, 2, 2}, {1, 3, 1}})};
  for (int trial = 0; trial < 50; ++trial) {
    Word a, b;
    for (int l = 0; l < 4; ++l) {
      a.push(rng() % 2, static_cast<i64>(rng() % 17) - 8, kMod3);
      b.push(rng() % 2, static_cast<i64>(rng() % 17) - 8, kMod3);
    }
    Word ab = a;
    ab.append(b, kMod3);
    CHECK(evaluate_word(ab, imgs, 3, 8) ==
          mul(evaluate_word(a, imgs, 3, 8), evaluate_word(b, imgs, 3, 8)));
  }
}

TEST_CASE("exponent reduction is sound against slow multiplication") {
  std::mt19937_64 rng(4);
  const std::vector<UniTriangular> imgs{UniTriangular::full_superdiagonal(4, 2),
                                        UniTriangular::from_entries(4, 2, {{0, 2, 1}, {2, 4, 1}})};
  const u64 mod2 = Word::exponent_modulus(2, 8);
  for (int trial = 0; trial < 20; ++trial) {
    const u32 gen = rng() % 2;
    const i64 e = static_cast<i64>(rng() % 2001) - 1000;
    Word w;
    w.push(gen, e, mod2);
    UniTriangular slow = UniTriangular::identity(4, 2);
    const UniTriangular step = e >= 0 ? imgs[gen] : inverse(imgs[gen]);
    for (i64 t = 0; t < (e >= 0 ? e : -e); ++t) slow = mul(slow, step);
    CHECK(evaluate_word(w, imgs, 2, 8) == slow);
  }
}

TEST_CASE("insufficient precision is an error, not a truncation") {
  Word w;
  w.push(0, 1, 2);  // stored mod 2^1
  const std::vector<UniTriangular> imgs{UniTriangular::full_superdiagonal(3, 2)};
  CHECK_THROWS_AS(evaluate_word(w, imgs, 2, 1), precision_error);
  try {
    evaluate_word(w, imgs, 2, 1);
  } catch (const precision_error& e) {
    CHECK(e.required_precision == 2);
  }
}
