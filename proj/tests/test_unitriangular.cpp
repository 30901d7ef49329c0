#include <doctest.h>

#include <array>
#include <random>

#include "masseywit/unitriangular.hpp"

using namespace masseywit;

namespace {

UniTriangular random_element(std::mt19937_64& rng, u32 n, u32 p) {
  UniTriangular g(n, p);
  for (u32 i = 0; i < n; ++i)
    for (u32 j = i + 1; j <= n; ++j) g.set_entry(i, j, static_cast<u32>(rng() % p));
  return g;
}

u64 level_or(u32 lvl, u64 cap) { return lvl == UniTriangular::kInfiniteLevel ? cap : lvl; }

}  // namespace

TEST_CASE("power of the full superdiagonal matrix") {
  SUBCASE("three explicit multiplications, n=3 p=3") {
    const UniTriangular A = UniTriangular::full_superdiagonal(3, 3);
    const UniTriangular byhand = mul(mul(A, A), A);
    CHECK(power(A, 3) == byhand);
    CHECK(power(A, 3) == UniTriangular::from_entries(3, 3, {{0, 3, 1}}));
  }
  SUBCASE("q <= n keeps a shifted superdiagonal") {
    const UniTriangular A = UniTriangular::full_superdiagonal(4, 3);
    CHECK(power(A, 3) == UniTriangular::from_entries(4, 3, {{0, 3, 1}, {1, 4, 1}}));
  }
  SUBCASE("q > n collapses to the identity") {
    const UniTriangular A = UniTriangular::full_superdiagonal(2, 2);
    CHECK(power(A, 4).is_identity());
  }
}

TEST_CASE("group laws") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const u32 p = std::array<u32, 3>{2, 3, 5}[rng() % 3];
    const u32 n = 2 + rng() % 5;
    const UniTriangular g = random_element(rng, n, p), h = random_element(rng, n, p),
                       k = random_element(rng, n, p);
    CHECK(mul(mul(g, h), k) == mul(g, mul(h, k)));
    CHECK(mul(g, inverse(g)).is_identity());
    u64 exponent = 1;
    for (u32 t = 0; t < group_exponent_log(n, p); ++t) exponent *= p;
    CHECK(power_res(g, exponent).is_identity());
  }
}

TEST_CASE("negative powers go through the inverse") {
  const UniTriangular A = UniTriangular::full_superdiagonal(3, 5);
  CHECK(mul(power(A, -2), power(A, 2)).is_identity());
  CHECK(power(A, -1) == inverse(A));
}

TEST_CASE("commutator values") {
  SUBCASE("[I+E12, I+E23] = I+E13") {
    const auto g = UniTriangular::from_entries(2, 3, {{0, 1, 1}});
    const auto h = UniTriangular::from_entries(2, 3, {{1, 2, 1}});
    CHECK(commutator(g, h) == UniTriangular::from_entries(2, 3, {{0, 2, 1}}));
  }
  SUBCASE("element commutes with itself") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 20; ++t) {
      const UniTriangular g = random_element(rng, 4, 3);
      CHECK(commutator(g, g).is_identity());
    }
  }
  SUBCASE("[I+E13, full superdiagonal] = I+E14 in dimension 4") {
    const auto g = UniTriangular::from_entries(3, 3, {{0, 2, 1}});
    const auto A = UniTriangular::full_superdiagonal(3, 3);
    CHECK(commutator(g, A) == UniTriangular::from_entries(3, 3, {{0, 3, 1}}));
  }
}

TEST_CASE("product expansion identities for commutators") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const u32 p = std::array<u32, 3>{2, 3, 5}[rng() % 3];
    const u32 n = 2 + rng() % 4;
    const UniTriangular g1 = random_element(rng, n, p), g2 = random_element(rng, n, p),
                       h = random_element(rng, n, p);
    CHECK(commutator(mul(g1, g2), h) ==
          mul(mul(commutator(g1, commutator(g2, h)), commutator(g2, h)), commutator(g1, h)));
    CHECK(commutator(h, mul(g1, g2)) ==
          mul(mul(commutator(h, g1), commutator(g1, commutator(h, g2))), commutator(h, g2)));
  }
}

TEST_CASE("filtration level") {
  CHECK(filtration_level(UniTriangular::from_entries(3, 3, {{0, 2, 1}})) == 2);
  CHECK(filtration_level(UniTriangular::from_entries(3, 3, {{0, 1, 1}, {0, 3, 1}})) == 1);
  CHECK(filtration_level(UniTriangular::identity(3, 3)) == UniTriangular::kInfiniteLevel);

  std::mt19937_64 rng(5150);
  for (int trial = 0; trial < 200; ++trial) {
    const u32 p = std::array<u32, 3>{2, 3, 5}[rng() % 3];
    const u32 n = 2 + rng() % 5;
    const UniTriangular g = random_element(rng, n, p), h = random_element(rng, n, p);
    // [U_(k), U_(l)] lands in U_(k+l)
    const u64 cap = n + 1;
    CHECK(level_or(filtration_level(commutator(g, h)), cap) >=
          std::min<u64>(cap, level_or(filtration_level(g), cap) + level_or(filtration_level(h), cap)));
  }
}

TEST_CASE("graded image") {
  SUBCASE("reads the lowest nonzero diagonal") {
    const auto g = UniTriangular::from_entries(3, 3, {{0, 2, 1}, {0, 3, 1}});
    const GradedLieElement x = graded_image(g);
    CHECK(x.level == 2);
    CHECK(x.coeffs == std::vector<u32>{1, 0});
  }
  SUBCASE("level one") {
    const auto g = UniTriangular::from_entries(2, 3, {{1, 2, 2}});
    const GradedLieElement x = graded_image(g);
    CHECK(x.level == 1);
    CHECK(x.coeffs == std::vector<u32>{0, 2});

    const auto h = UniTriangular::from_entries(2, 3, {{0, 1, 1}, {1, 2, 1}});
    CHECK(graded_image(h).coeffs == std::vector<u32>{1, 1});
  }
  SUBCASE("identity has none") {
    CHECK_THROWS_AS(graded_image(UniTriangular::identity(2, 2)), input_error);
  }
}

TEST_CASE("lie bracket structure constants") {
  // [e_{1,2}, e_{2,3}] = e_{1,3} and the reversal picks up a sign
  const GradedLieElement e12{2, 3, 1, {1, 0}};
  const GradedLieElement e23{2, 3, 1, {0, 1}};
  CHECK(lie_bracket(e12, e23).coeffs == std::vector<u32>{1});
  CHECK(lie_bracket(e23, e12).coeffs == std::vector<u32>{2});

  // disjoint supports commute: [e_{1,2}, e_{3,4}] = 0 in dimension 4
  const GradedLieElement a{3, 3, 1, {1, 0, 0}};
  const GradedLieElement b{3, 3, 1, {0, 0, 1}};
  CHECK(lie_bracket(a, b).is_zero());

  // level overflow is the zero space
  const GradedLieElement top{2, 3, 2, {1}};
  CHECK(lie_bracket(top, top).is_zero());
}

TEST_CASE("bracket is compatible with commutators through the graded pieces") {
  std::mt19937_64 rng(31337);
  int checked = 0;
  while (checked < 50) {
    const u32 p = std::array<u32, 3>{2, 3, 5}[rng() % 3];
    const u32 n = 3 + rng() % 3;
    const UniTriangular g = random_element(rng, n, p), h = random_element(rng, n, p);
    if (g.is_identity() || h.is_identity()) continue;
    const u32 kg = filtration_level(g), kh = filtration_level(h);
    if (kg + kh > n) continue;
    const UniTriangular c = commutator(g, h);
    const GradedLieElement want = lie_bracket(graded_image(g), graded_image(h));
    if (want.is_zero()) continue;
    REQUIRE(!c.is_identity());
    const GradedLieElement got = graded_image(c);
    CHECK(got.level == kg + kh);
    CHECK(got == want);
    ++checked;
  }
}

TEST_CASE("commutator equation solver") {
  SUBCASE("documented instance p=3 n=3 k=3") {
    const UniTriangular A = UniTriangular::full_superdiagonal(3, 3);
    const UniTriangular C = UniTriangular::from_entries(3, 3, {{0, 3, 1}});
    // I+E13 is one valid solution; the solver must return some valid B
    CHECK(commutator(UniTriangular::from_entries(3, 3, {{0, 2, 1}}), A) == C);
    const UniTriangular B = solve_commutator_equation(A, C, 3);
    CHECK(commutator(B, A) == C);
    CHECK(filtration_level(B) >= 2);
  }
  SUBCASE("C = I returns the identity immediately") {
    const UniTriangular A = UniTriangular::full_superdiagonal(4, 5);
    CHECK(solve_commutator_equation(A, UniTriangular::identity(4, 5), 4).is_identity());
  }
  SUBCASE("p=2 n=4: A^4 = I+E15 is a commutator from U_(3)") {
    const UniTriangular A = UniTriangular::full_superdiagonal(4, 2);
    const UniTriangular C = power(A, 4);
    CHECK(C == UniTriangular::from_entries(4, 2, {{0, 4, 1}}));
    // exhaustive oracle over U_(3) in U_5(F_2): 8 candidates
    int found = 0;
    for (u32 bits = 0; bits < 8; ++bits) {
      UniTriangular B(4, 2);
      B.set_entry(0, 3, bits & 1);
      B.set_entry(1, 4, (bits >> 1) & 1);
      B.set_entry(0, 4, (bits >> 2) & 1);
      if (commutator(B, A) == C) ++found;
    }
    CHECK(found > 0);
    const UniTriangular B = solve_commutator_equation(A, C, 4);
    CHECK(commutator(B, A) == C);
    CHECK(filtration_level(B) >= 3);
  }
  SUBCASE("random instances with nonzero superdiagonal") {
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 200; ++trial) {
      const u32 p = std::array<u32, 3>{2, 3, 5}[rng() % 3];
      const u32 n = 3 + rng() % 3;
      const u32 k = 2 + rng() % (n - 1);
      UniTriangular A(n, p);
      for (u32 i = 0; i < n; ++i)
        for (u32 j = i + 1; j <= n; ++j)
          A.set_entry(i, j, j == i + 1 ? 1 + static_cast<u32>(rng() % (p - 1))
                                       : static_cast<u32>(rng() % p));
      UniTriangular C(n, p);
      for (u32 i = 0; i < n; ++i)
        for (u32 j = i + k; j <= n; ++j) C.set_entry(i, j, static_cast<u32>(rng() % p));
      const UniTriangular B = solve_commutator_equation(A, C, k);
      CHECK(commutator(B, A) == C);
      CHECK(filtration_level(B) >= k - 1);
    }
  }
  SUBCASE("input validation") {
    const UniTriangular A = UniTriangular::full_superdiagonal(3, 3);
    const UniTriangular C = UniTriangular::from_entries(3, 3, {{0, 1, 1}});
    CHECK_THROWS_AS(solve_commutator_equation(A, C, 2), input_error);  // C not in U_(2)
    CHECK_THROWS_AS(solve_commutator_equation(A, C, 7), input_error);
  }
}

TEST_CASE("diagonal conjugation") {
  SUBCASE("all-ones diagonal is a no-op") {
    std::mt19937_64 rng(1);
    const UniTriangular g = random_element(rng, 3, 5);
    const std::vector<u32> d{1, 1, 1, 1};
    CHECK(conj_by_diagonal(g, d) == g);
  }
  SUBCASE("scales an entry by d_i/d_j") {
    const auto g = UniTriangular::from_entries(2, 3, {{0, 1, 1}});
    const std::vector<u32> d{1, 2, 1};
    CHECK(conj_by_diagonal(g, d) == UniTriangular::from_entries(2, 3, {{0, 1, 2}}));
  }
  SUBCASE("is a homomorphism") {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 50; ++t) {
      const UniTriangular g = random_element(rng, 4, 5), h = random_element(rng, 4, 5);
      const std::vector<u32> d{1, 2, 3, 4, 1};
      CHECK(mul(conj_by_diagonal(g, d), conj_by_diagonal(h, d)) == conj_by_diagonal(mul(g, h), d));
    }
  }
  SUBCASE("rejects zero diagonal entries") {
    const auto g = UniTriangular::identity(2, 3);
    const std::vector<u32> d{1, 0, 1};
    CHECK_THROWS_AS(conj_by_diagonal(g, d), input_error);
  }
}

TEST_CASE("central quotient equality ignores the corner") {
  auto g = UniTriangular::from_entries(3, 3, {{0, 1, 1}, {0, 3, 2}});
  auto h = UniTriangular::from_entries(3, 3, {{0, 1, 1}, {0, 3, 1}});
  CHECK(CenterQuotientElement{g} == CenterQuotientElement{h});
  h.set_entry(1, 2, 1);
  CHECK_FALSE(CenterQuotientElement{g} == CenterQuotientElement{h});
  CHECK(is_central(UniTriangular::from_entries(3, 3, {{0, 3, 2}})));
  CHECK_FALSE(is_central(UniTriangular::from_entries(3, 3, {{0, 2, 1}})));
}
