#include <doctest.h>

#include <array>
#include <random>

#include "masseywit/fp.hpp"

using namespace masseywit;

namespace {

// brute-force reference: all vectors of F_p^n
std::vector<std::vector<u32>> all_vectors(u32 p, std::size_t n) {
  std::vector<std::vector<u32>> out;
  std::vector<u32> v(n, 0);
  while (true) {
    out.push_back(v);
    std::size_t i = 0;
    while (i < n && ++v[i] == p) v[i++] = 0;
    if (i == n) break;
  }
  return out;
}

std::vector<u32> apply(const FpMat& A, const std::vector<u32>& x) {
  const Fp fp(A.p);
  std::vector<u32> y(A.rows, 0);
  for (std::size_t i = 0; i < A.rows; ++i)
    for (std::size_t j = 0; j < A.cols; ++j) y[i] = fp.add(y[i], fp.mul(A.at(i, j), x[j]));
  return y;
}

}  // namespace

TEST_CASE("Fp context basics") {
  CHECK_THROWS_AS(Fp(4), input_error);
  CHECK_THROWS_AS(Fp(1), input_error);
  const Fp f5(5);
  CHECK(f5.reduce(-1) == 4);
  CHECK(f5.reduce(12) == 2);
  for (u32 a = 1; a < 5; ++a) CHECK(f5.mul(a, f5.inv(a)) == 1);
  CHECK_THROWS_AS(f5.inv(0), input_error);
}

TEST_CASE("gauss_solve identity case") {
  FpMat A(3, 2, 2);
  A.at(0, 0) = 1;
  A.at(1, 1) = 1;
  const std::vector<u32> b{2, 1};
  const auto sol = gauss_solve(A, b);
  REQUIRE(sol.has_value());
  CHECK(sol->particular == std::vector<u32>{2, 1});
  CHECK(sol->nullspace.empty());
}

TEST_CASE("gauss_solve underdetermined system over F_2 matches enumeration") {
  FpMat A(2, 1, 2);
  A.at(0, 0) = 1;
  A.at(0, 1) = 1;
  const std::vector<u32> b{1};

  // oracle: enumerate all 4 vectors
  std::vector<std::vector<u32>> solutions, kernel;
  for (const auto& v : all_vectors(2, 2)) {
    if (apply(A, v) == b) solutions.push_back(v);
    if (apply(A, v) == std::vector<u32>{0}) kernel.push_back(v);
  }
  CHECK(solutions.size() == 2);
  CHECK(kernel.size() == 2);  // zero and [1,1]

  const auto sol = gauss_solve(A, b);
  REQUIRE(sol.has_value());
  CHECK(sol->particular == std::vector<u32>{1, 0});  // free variable pinned to zero
  REQUIRE(sol->nullspace.size() == 1);
  CHECK(sol->nullspace[0] == std::vector<u32>{1, 1});
}

TEST_CASE("gauss_solve detects inconsistency over F_3") {
  FpMat A(3, 2, 2);
  A.at(0, 0) = 1;
  A.at(0, 1) = 2;
  A.at(1, 0) = 2;
  A.at(1, 1) = 1;  // 4 mod 3: second row is twice the first
  const std::vector<u32> b{1, 0};

  for (const auto& v : all_vectors(3, 2)) CHECK(apply(A, v) != b);  // oracle: exhaust 9 candidates
  CHECK_FALSE(gauss_solve(A, b).has_value());
}

TEST_CASE("gauss_solve properties on random consistent systems") {
  std::mt19937_64 rng(12345);
  for (int trial = 0; trial < 200; ++trial) {
    const u32 p = std::array<u32, 3>{2, 3, 5}[rng() % 3];
    const Fp fp(p);
    const std::size_t rows = 1 + rng() % 5, cols = 1 + rng() % 5;
    FpMat A(p, rows, cols);
    for (auto& v : A.a) v = rng() % p;
    std::vector<u32> x0(cols);
    for (auto& v : x0) v = rng() % p;
    const std::vector<u32> b = apply(A, x0);

    const auto sol = gauss_solve(A, b);
    REQUIRE(sol.has_value());
    CHECK(apply(A, sol->particular) == b);
    const std::vector<u32> zero(rows, 0);
    for (const auto& v : sol->nullspace) CHECK(apply(A, v) == zero);
    CHECK(sol->nullspace.size() == cols - rank(A));
  }
}

TEST_CASE("banded commutator matrix instances") {
  const Fp f3(3);
  SUBCASE("smallest legal instance n=2, k=2") {
    const std::vector<u32> a{1, 1};
    const FpMat m = banded_commutator_matrix(f3, a, 2);
    CHECK(m.rows == 1);
    CHECK(m.cols == 2);
    CHECK(m.at(0, 0) == 1);
    CHECK(m.at(0, 1) == 2);  // -1 mod 3
  }
  SUBCASE("n=3, k=3 bidiagonal row") {
    const std::vector<u32> a{1, 1, 1};
    const FpMat m = banded_commutator_matrix(f3, a, 3);
    CHECK(m.rows == 1);
    CHECK(m.cols == 2);
    CHECK(m.at(0, 0) == 1);
    CHECK(m.at(0, 1) == 2);
  }
  SUBCASE("n=4, k=2 with a zero coefficient") {
    const Fp f5(5);
    const std::vector<u32> a{1, 0, 1, 1};
    const FpMat m = banded_commutator_matrix(f5, a, 2);
    REQUIRE(m.rows == 3);
    REQUIRE(m.cols == 4);
    const std::vector<u32> want{0, 4, 0, 0, 0, 1, 0, 0, 0, 0, 1, 4};  // -1 = 4 mod 5
    CHECK(m.a == want);
  }
  SUBCASE("k out of range") {
    const std::vector<u32> a{1, 1, 1};
    CHECK_THROWS_AS(banded_commutator_matrix(f3, a, 1), input_error);
    CHECK_THROWS_AS(banded_commutator_matrix(f3, a, 4), input_error);
  }
}

TEST_CASE("banded matrix reproduces the bracket coefficients") {
  std::mt19937_64 rng(777);
  for (int trial = 0; trial < 100; ++trial) {
    const u32 p = std::array<u32, 3>{2, 3, 5}[rng() % 3];
    const Fp fp(p);
    const std::size_t n = 2 + rng() % 5;
    const std::size_t k = 2 + rng() % (n - 1);
    std::vector<u32> a(n), b(n + 2 - k);
    for (auto& v : a) v = rng() % p;
    for (auto& v : b) v = rng() % p;
    const FpMat m = banded_commutator_matrix(fp, a, k);
    const std::vector<u32> out = apply(m, b);
    for (std::size_t j = 0; j < out.size(); ++j)
      CHECK(out[j] == fp.sub(fp.mul(b[j], a[j + k - 1]), fp.mul(b[j + 1], a[j])));
  }
}
