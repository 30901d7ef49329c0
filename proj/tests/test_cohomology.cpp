#include <doctest.h>

#include <random>

#include "masseywit/cohomology.hpp"
#include "masseywit/homsearch.hpp"

using namespace masseywit;

namespace {

CohClass1 chi(u32 d, u32 g, u32 v = 1) {
  CohClass1 a(d, 0);
  a[g] = v;
  return a;
}

bool u3_witness_exists(const EtypePresentation& G, const CohClass1& a, const CohClass1& b) {
  HomSearch q;
  q.p = G.p();
  q.n = 2;
  q.precision = G.precision();
  q.d = G.generator_count();
  q.relators = &G.relators();
  q.superdiag = {a, b};
  return exists_hom(q);
}

}  // namespace

TEST_CASE("h1 evaluation") {
  const EtypePresentation G = demushkin(3, 2, 1);
  CHECK(h1_dim(G) == 2);
  CHECK(h1_dim(free_group(5, 4, Orientation{{1, 1, 1, 1}})) == 4);

  // relators lie in the Frattini subgroup: every class kills them
  for (u32 a0 = 0; a0 < 3; ++a0)
    for (u32 a1 = 0; a1 < 3; ++a1) CHECK(h1_eval(G, {a0, a1}, G.relators()[0]) == 0);

  Word w;
  w.push(0, 2, G.exponent_modulus());
  CHECK(h1_eval(G, chi(2, 0), w) == 2);
}

TEST_CASE("Demushkin cup pairing") {
  const EtypePresentation G = demushkin(3, 2, 1);
  const H2Element v = cup(G, chi(2, 0), chi(2, 1));
  CHECK_FALSE(v.is_zero());
  CHECK(v.demushkin_value == 1);  // sign normalization: (chi1, chi2) pairs to +1

  // the oracle agrees that no U_3 witness exists for a nonzero cup
  CHECK_FALSE(u3_witness_exists(G, chi(2, 0), chi(2, 1)));
  CHECK(u3_witness_exists(G, chi(2, 0), chi(2, 0)));
  CHECK(cup_vanishes(G, chi(2, 0), chi(2, 0)));
}

TEST_CASE("cup of a class with itself vanishes for odd p") {
  std::mt19937_64 rng(8);
  const auto groups = {demushkin(3, 2, 1), theta_abelian(3, 3, 1),
                       semidirect_zp(demushkin(3, 2, 1)),
                       free_product(demushkin(3, 2, 1), free_group(3, 1, Orientation{{1}}))};
  for (const auto& G : groups)
    for (int t = 0; t < 10; ++t) {
      CohClass1 a(G.generator_count());
      for (auto& v : a) v = rng() % G.p();
      CHECK(cup_vanishes(G, a, a));
    }
  // p=2 with torsion-free orientation (f >= 2): same conclusion
  const EtypePresentation D2 = demushkin(2, 2, 2);
  for (u32 t = 0; t < 4; ++t) CHECK(cup_vanishes(D2, {t & 1, (t >> 1) & 1}, {t & 1, (t >> 1) & 1}));
}

TEST_CASE("Demushkin pairing is nondegenerate") {
  for (const auto& G : {demushkin(2, 2, 2), demushkin(2, 4, 2), demushkin(3, 2, 1),
                        demushkin(3, 4, 1)}) {
    const u32 p = G.p(), d = G.generator_count();
    u64 total = 1;
    for (u32 g = 0; g < d; ++g) total *= p;
    for (u64 t = 1; t < total; ++t) {
      CohClass1 a(d);
      u64 rest = t;
      for (u32 g = 0; g < d; ++g) {
        a[g] = static_cast<u32>(rest % p);
        rest /= p;
      }
      bool paired = false;
      for (u64 s = 1; s < total && !paired; ++s) {
        CohClass1 b(d);
        u64 r2 = s;
        for (u32 g = 0; g < d; ++g) {
          b[g] = static_cast<u32>(r2 % p);
          r2 /= p;
        }
        paired = !cup_vanishes(G, a, b);
      }
      CHECK(paired);
    }
  }
}

TEST_CASE("cup is bilinear") {
  std::mt19937_64 rng(451);
  const EtypePresentation G = semidirect_zp(free_product(
      demushkin(3, 2, 1), free_group(3, 1, Orientation{{1}})));
  const Fp fp(3);
  const u32 d = G.generator_count();
  for (int t = 0; t < 25; ++t) {
    CohClass1 a(d), b(d), c(d);
    for (u32 g = 0; g < d; ++g) {
      a[g] = rng() % 3;
      b[g] = rng() % 3;
      c[g] = rng() % 3;
    }
    CohClass1 bc(d);
    for (u32 g = 0; g < d; ++g) bc[g] = fp.add(b[g], c[g]);
    // cup(a, b+c) = 0 iff cup(a,b) + cup(a,c) = 0 cannot be stated without
    // H^2 addition; check vanishing-compatible instances instead: scaling
    for (u32 lam = 1; lam < 3; ++lam) {
      CohClass1 la(d);
      for (u32 g = 0; g < d; ++g) la[g] = fp.mul(lam, a[g]);
      CHECK(cup_vanishes(G, a, b) == cup_vanishes(G, la, b));
      CHECK(cup_vanishes(G, a, b) == cup_vanishes(G, b, a));  // graded symmetry up to sign
    }
  }
}

TEST_CASE("semidirect split and cup formula") {
  const EtypePresentation G = semidirect_zp(demushkin(3, 2, 1));
  const u32 d = G.generator_count();

  const auto sz = semidirect_split(G, chi(d, 2));
  CHECK(sz.psi_coeff == 1);
  CHECK(sz.restriction == CohClass1{0, 0});

  const auto sx = semidirect_split(G, chi(d, 0));
  CHECK(sx.psi_coeff == 0);
  CHECK(sx.restriction == CohClass1{1, 0});

  CohClass1 mixed{1, 0, 2};
  const auto sm = semidirect_split(G, mixed);
  CHECK(sm.psi_coeff == 2);
  CHECK(sm.restriction == CohClass1{1, 0});

  CHECK(cup_vanishes(G, chi(d, 2), chi(d, 2)));  // psi cup psi = 0

  CHECK_THROWS_AS(semidirect_split(demushkin(3, 2, 1), chi(2, 0)), input_error);
}

TEST_CASE("structural cup matches the U_3 search on a semidirect product") {
  const EtypePresentation G = semidirect_zp(demushkin(3, 2, 1));
  const u32 d = G.generator_count(), p = G.p();
  u64 total = 1;
  for (u32 g = 0; g < 2 * d; ++g) total *= p;
  for (u64 t = 0; t < total; ++t) {
    CohClass1 a(d), b(d);
    u64 rest = t;
    for (u32 g = 0; g < d; ++g) {
      a[g] = static_cast<u32>(rest % p);
      rest /= p;
    }
    for (u32 g = 0; g < d; ++g) {
      b[g] = static_cast<u32>(rest % p);
      rest /= p;
    }
    CHECK(cup_vanishes(G, a, b) == u3_witness_exists(G, a, b));
  }
}

TEST_CASE("free products compute cup componentwise") {
  const EtypePresentation G = free_product(demushkin(3, 2, 1), demushkin(3, 2, 1));
  // classes from distinct factors have zero cup
  CHECK(cup_vanishes(G, chi(4, 0), chi(4, 2)));
  CHECK_FALSE(cup_vanishes(G, chi(4, 0), chi(4, 1)));
  CHECK_FALSE(cup_vanishes(G, chi(4, 2), chi(4, 3)));
}

TEST_CASE("triviality condition") {
  const EtypePresentation F = free_group(3, 2, Orientation{{1, 1}});
  CHECK(triviality_condition(F, {chi(2, 0), chi(2, 1), chi(2, 0)}));

  const EtypePresentation G = demushkin(3, 2, 1);
  const auto bad = first_nontrivial_cup(G, {chi(2, 0), chi(2, 1), chi(2, 0)});
  REQUIRE(bad.has_value());
  CHECK(*bad == 0);
  CHECK(triviality_condition(G, {chi(2, 0), chi(2, 0), chi(2, 0)}));
}

TEST_CASE("theta-abelian cup questions go to the oracle") {
  const EtypePresentation T = theta_abelian(3, 3, 1);
  const u32 d = 3;
  CHECK(cup_vanishes(T, chi(d, 0), chi(d, 0)));
  // the delegated answer must agree with a direct search by construction;
  // spot-check a few pairs for sanity
  for (u32 g = 0; g < d; ++g)
    CHECK(cup_vanishes(T, chi(d, g), chi(d, g)) == u3_witness_exists(T, chi(d, g), chi(d, g)));
}

TEST_CASE("summary JSON") {
  const std::string s = presentation_summary_json(demushkin(3, 2, 1));
  CHECK(s.find("\"h1_dim\": 2") != std::string::npos);
  CHECK(s.find("x1^4 x2 x1^-1 x2^-1") != std::string::npos);
}
