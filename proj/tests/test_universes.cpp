#include <catch2/catch.hpp>

#include "ninfty/universe.hpp"

using namespace ninfty;

namespace {

Subgroup sub_of_order(const LatticePtr& lat, int order) {
  for (const auto& s : lat->subgroups)
    if (s.order() == order) return s;
  throw std::runtime_error("no subgroup of that order");
}

}  // namespace

TEST_CASE("universe construction kinds", "[universes]") {
  auto g = construct_group("C4");
  auto lat = subgroup_lattice(g);

  SECTION("trivial universe has only the trivial constituent") {
    auto u = trivial_universe(g);
    CHECK(u.constituents.count() == 1);
    CHECK(u.constituents.test(0));
  }
  SECTION("complete universe of C4 has all 4 irreducibles") {
    auto u = complete_universe(g);
    CHECK(u.constituents.count() == 4);
  }
  SECTION("fixed(C2) in C4 is the two characters killed by C2") {
    auto u = fixed_universe(g, sub_of_order(lat, 2));
    CHECK(u.constituents.count() == 2);
    auto table = character_table(g);
    for (int i = u.constituents.first(); i >= 0; i = u.constituents.next(i))
      CHECK(fixed_dim(table->irr[i], sub_of_order(lat, 2)) == table->degrees[i]);
  }
  SECTION("fixed of a non-normal subgroup is rejected") {
    auto s3 = construct_group("S3");
    auto c2 = sub_of_order(subgroup_lattice(s3), 2);
    CHECK_THROWS_AS(fixed_universe(s3, c2), domain_error);
  }
}

TEST_CASE("universe generated by the regular character is complete", "[universes]") {
  for (const char* spec : {"C2", "C4", "S3", "D8", "Q8", "A4"}) {
    auto g = construct_group(spec);
    auto u = universe_generated_by(g, {regular_character(g)});
    CHECK(u == complete_universe(g));
  }
}

TEST_CASE("fixed(N) equals generated by the G/N permutation character", "[universes]") {
  for (const char* spec : {"C4", "C6", "S3", "D8", "Q8", "A4", "C12"}) {
    auto g = construct_group(spec);
    auto lat = subgroup_lattice(g);
    for (const auto& n : lat->subgroups) {
      if (!is_normal(n)) continue;
      auto byket = fixed_universe(g, n);
      auto bygen =
          universe_generated_by(g, {permutation_character(orbit_gset(n))});
      CHECK(byket == bygen);
    }
  }
}

TEST_CASE("universe restriction", "[universes]") {
  auto g = construct_group("C4");
  auto lat = subgroup_lattice(g);
  auto c2 = sub_of_order(lat, 2);

  SECTION("restrict to G is the identity") {
    auto u = fixed_universe(g, c2);
    auto r = restrict_universe(u, full_subgroup(g));
    CHECK(r == u);
  }
  SECTION("restrict complete(C4) to C2 is complete(C2)") {
    auto r = restrict_universe(complete_universe(g), c2);
    CHECK(r == complete_universe(subgroup_group(c2).group));
  }
  SECTION("restrict fixed(C2) of C4 to C2 is trivial") {
    auto r = restrict_universe(fixed_universe(g, c2), c2);
    CHECK(r == trivial_universe(subgroup_group(c2).group));
  }
  SECTION("restriction of the complete universe is complete for all subgroups") {
    for (const char* spec : {"S3", "D8", "A4"}) {
      auto gg = construct_group(spec);
      for (const auto& s : subgroup_lattice(gg)->subgroups) {
        auto r = restrict_universe(complete_universe(gg), s);
        CHECK(r == complete_universe(subgroup_group(s).group));
      }
    }
  }
}

TEST_CASE("universe spec parsing", "[universes]") {
  auto g = construct_group("C4");
  auto lat = subgroup_lattice(g);

  CHECK(parse_universe(g, "complete") == complete_universe(g));
  CHECK(parse_universe(g, "trivial") == trivial_universe(g));
  CHECK(parse_universe(g, "fixed:H1") ==
        fixed_universe(g, lat->subgroups[1]));
  CHECK(parse_universe(g, "gen:reg") == complete_universe(g));

  // the separating universe of C4: trivial + induced reduced regular of C2
  auto u = parse_universe(g, "gen:triv,regbar:H1");
  CHECK(u.constituents.count() == 3);
  CHECK(u.constituents.test(0));
  // conjugation closed
  auto table = character_table(g);
  for (int i = u.constituents.first(); i >= 0; i = u.constituents.next(i))
    CHECK(u.constituents.test(table->conj_pair[i]));

  CHECK_THROWS_AS(parse_universe(g, "gen:wat"), usage_error);
  CHECK_THROWS_AS(parse_universe(g, "nope"), usage_error);
}
