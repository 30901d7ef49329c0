#include <doctest.h>

#include <random>

#include "masseywit/presentation.hpp"

using namespace masseywit;

TEST_CASE("free presentations") {
  const EtypePresentation G = free_group(3, 2, Orientation{{1, 1}});
  CHECK(G.generator_count() == 2);
  CHECK(G.relators().empty());

  // 5 = 1 mod 4: a torsion-free value over p=2
  CHECK(free_group(2, 1, Orientation{{5}}).generator_count() == 1);
  CHECK_THROWS_AS(free_group(2, 1, Orientation{{3}}), input_error);
  CHECK_THROWS_AS(free_group(3, 0, Orientation{{}}), input_error);
  CHECK_THROWS_AS(free_group(3, 1, Orientation{{2}}), input_error);  // not 1 mod p
}

TEST_CASE("Demushkin presentations") {
  const EtypePresentation G = demushkin(3, 2, 1);
  CHECK(G.generator_count() == 2);
  REQUIRE(G.relators().size() == 1);
  CHECK(G.relators()[0].pretty(G.exponent_modulus()) == "x1^4 x2 x1^-1 x2^-1");
  CHECK(G.orientation().values == std::vector<u64>{1, 4});

  const EtypePresentation G4 = demushkin(3, 4, 1);
  CHECK(G4.generator_count() == 4);
  CHECK(G4.orientation().values == std::vector<u64>{1, 4, 1, 1});

  CHECK_THROWS_AS(demushkin(3, 3, 1), input_error);  // odd rank
  CHECK_THROWS_AS(demushkin(2, 2, 1), input_error);  // p=2 needs f >= 2
  CHECK_THROWS_AS(demushkin(3, 2, 0), input_error);
  CHECK_THROWS_AS(demushkin(3, 2, 9), input_error);  // beyond the default precision
}

TEST_CASE("theta-abelian presentations") {
  const EtypePresentation G = theta_abelian(3, 3, 1);
  CHECK(G.generator_count() == 3);
  // two action relators plus one commutator relator
  CHECK(G.relators().size() == 3);
  CHECK(G.orientation().values == std::vector<u64>{4, 1, 1});

  const EtypePresentation T = theta_abelian(3, 3, std::nullopt);
  CHECK(T.relators().size() == 3);  // all pairwise commutators
  CHECK(T.orientation().values == std::vector<u64>{1, 1, 1});
}

TEST_CASE("semidirect products append one kernel generator") {
  const EtypePresentation G = semidirect_zp(demushkin(3, 2, 1));
  CHECK(G.generator_count() == 3);
  REQUIRE(G.relators().size() == 3);
  CHECK(G.relators()[1].pretty(G.exponent_modulus()) == "x1 x3 x1^-1 x3^-1");
  CHECK(G.relators()[2].pretty(G.exponent_modulus()) == "x2 x3 x2^-1 x3^-4");
  CHECK(G.orientation().values == std::vector<u64>{1, 4, 1});
}

TEST_CASE("free products concatenate") {
  const EtypePresentation G =
      free_product(free_group(3, 1, Orientation{{1}}), free_group(3, 1, Orientation{{1}}));
  CHECK(G.generator_count() == 2);
  CHECK(G.relators().empty());

  const EtypePresentation H = free_product(demushkin(3, 2, 1), free_group(3, 1, Orientation{{1}}));
  CHECK(H.generator_count() == 3);
  CHECK(H.relators().size() == 1);
  CHECK(H.orientation().values == std::vector<u64>{1, 4, 1});

  CHECK_THROWS_AS(free_product(demushkin(3, 2, 1), demushkin(2, 2, 2)), input_error);
}

TEST_CASE("verify_hom on documented assignments") {
  const EtypePresentation G = demushkin(3, 2, 1);
  const UniTriangular A = UniTriangular::full_superdiagonal(3, 3);

  WitnessAssignment good{3, 3, {A, UniTriangular::from_entries(3, 3, {{0, 2, 1}})}};
  CHECK(static_cast<bool>(verify_hom(G, good)));

  WitnessAssignment bad{3, 3, {A, UniTriangular::identity(3, 3)}};
  const HomCheck check = verify_hom(G, bad);
  CHECK_FALSE(static_cast<bool>(check));
  CHECK(check.failing_relator == 0);

  // free groups have nothing to check
  const EtypePresentation F = free_group(3, 2, Orientation{{1, 1}});
  WitnessAssignment any{3, 3, {A, A}};
  CHECK(static_cast<bool>(verify_hom(F, any)));
}

TEST_CASE("semidirect relators restrict to the base through z -> I") {
  const EtypePresentation base = demushkin(3, 2, 1);
  const EtypePresentation G = semidirect_zp(base);
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 30; ++trial) {
    WitnessAssignment on_base{3, 3, {}};
    for (u32 g = 0; g < 2; ++g) {
      UniTriangular m(3, 3);
      for (u32 i = 0; i < 3; ++i)
        for (u32 j = i + 1; j <= 3; ++j) m.set_entry(i, j, static_cast<u32>(rng() % 3));
      on_base.images.push_back(std::move(m));
    }
    WitnessAssignment extended = on_base;
    extended.images.push_back(UniTriangular::identity(3, 3));
    CHECK(static_cast<bool>(verify_hom(G, extended)) ==
          static_cast<bool>(verify_hom(base, on_base)));
  }
}

TEST_CASE("group spec JSON round trip") {
  const EtypePresentation G =
      semidirect_zp(free_product(demushkin(3, 2, 1), free_group(3, 1, Orientation{{4}})));
  const std::string js = group_spec_to_json(G);
  const EtypePresentation back = parse_group_spec(js);
  CHECK(group_spec_to_json(back) == js);
  CHECK(back.generator_count() == G.generator_count());
  CHECK(back.orientation().values == G.orientation().values);
  REQUIRE(back.relators().size() == G.relators().size());
  for (std::size_t r = 0; r < G.relators().size(); ++r)
    CHECK(back.relators()[r] == G.relators()[r]);

  CHECK_THROWS_AS(parse_group_spec("not json"), input_error);
  CHECK_THROWS_AS(parse_group_spec(R"({"p":4,"tree":{"free":{"d":1,"theta":[1]}})"), input_error);
  CHECK_THROWS_AS(parse_group_spec(R"({"p":3,"tree":{"widget":{}})"), input_error);
}
