#include <catch2/catch.hpp>

#include "ninfty/cli.hpp"

using namespace ninfty;
using cli::run;

TEST_CASE("enumerate C2 reports two systems", "[cli]") {
  auto res = run({"enumerate", "--group", "C2"});
  REQUIRE(res.status == 0);
  auto doc = Json::parse(res.out);
  CHECK(doc["lattice"]["count"] == 2);
  CHECK(doc["group"]["order"] == 2);
}

TEST_CASE("unknown group name is a usage error", "[cli]") {
  auto res = run({"enumerate", "--group", "BADNAME"});
  CHECK(res.status == 1);
  CHECK(res.out.empty());
  CHECK_FALSE(res.err.empty());
}

TEST_CASE("byte-identical output across runs", "[cli]") {
  for (auto args : {std::vector<std::string>{"enumerate", "--group", "S3"},
                    std::vector<std::string>{"census", "--group", "C4"},
                    std::vector<std::string>{"separate", "--group", "C4",
                                             "--mode", "all-isometries"},
                    std::vector<std::string>{"admissibles", "--group", "D8",
                                             "--operad", "isometries",
                                             "--universe", "fixed:gen:(1 3)(2 4)"}}) {
    auto a = run(args), b = run(args);
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
    CHECK_FALSE(a.out.empty());
  }
}

TEST_CASE("separate verb matches the worked C4 answer", "[cli]") {
  auto res = run({"separate", "--group", "C4", "--mode", "pairwise"});
  REQUIRE(res.status == 0);
  auto doc = Json::parse(res.out);
  CHECK(doc["found"] == true);
  CHECK(doc["universe"]["spec"] == "gen:triv,regbar:H1");
  CHECK(doc["witness"][0] == "H2");  // full group
  CHECK(doc["witness"][1] == "H0");  // trivial subgroup
}

TEST_CASE("validate verb exits 2 with a report on invalid input", "[cli]") {
  auto res = run({"validate", "--group", "C4", "--pairs", "H2/H1,H1/H0"});
  CHECK(res.status == 2);
  auto doc = Json::parse(res.out);
  CHECK(doc["report"]["valid"] == false);
  bool saw_composition = false;
  for (const auto& v : doc["report"]["violations"])
    if (v["axiom"] == "composition") saw_composition = true;
  CHECK(saw_composition);

  auto ok = run({"validate", "--group", "C4", "--pairs", "H1/H0,H2/H0"});
  CHECK(ok.status == 0);
}

TEST_CASE("closure, meet, join, restrict verbs", "[cli]") {
  auto closure_res = run({"closure", "--group", "C4", "--pairs", "G/e"});
  REQUIRE(closure_res.status == 0);
  auto cdoc = Json::parse(closure_res.out);
  CHECK(cdoc["system"]["pairs"].size() == 5);

  auto meet_res = run({"meet", "--group", "C4", "--left", "complete",
                       "--right", "trivial"});
  REQUIRE(meet_res.status == 0);
  CHECK(Json::parse(meet_res.out)["system"]["pairs"].size() == 3);

  auto join_res =
      run({"join", "--group", "C4", "--left", "pairs:H1/H0", "--right",
           "pairs:H2/H1"});
  REQUIRE(join_res.status == 0);
  CHECK(Json::parse(join_res.out)["system"]["pair_instances"] == 6);

  auto restrict_res = run({"restrict", "--group", "C4", "--system", "complete",
                           "--to", "H1"});
  REQUIRE(restrict_res.status == 0);
  CHECK(Json::parse(restrict_res.out)["system"]["pairs"].size() == 3);
}

TEST_CASE("admissibles verb on the fixed universe", "[cli]") {
  auto res = run({"admissibles", "--group", "C4", "--operad", "disks",
                  "--universe", "fixed:H1"});
  REQUIRE(res.status == 0);
  auto doc = Json::parse(res.out);
  // diagonal classes plus (C4, C2)
  CHECK(doc["system"]["pairs"].size() == 4);
  auto res2 = run({"admissibles", "--group", "C4", "--operad", "steiner",
                   "--universe", "fixed:H1"});
  // steiner and disks share the computation
  CHECK(Json::parse(res.out)["system"] == Json::parse(res2.out)["system"]);
}

TEST_CASE("census, coinduce, cotensor, fixed-points verbs", "[cli]") {
  auto census = run({"census", "--group", "C4"});
  REQUIRE(census.status == 0);
  auto cdoc = Json::parse(census.out);
  CHECK(cdoc["systems"].size() == 5);
  CHECK(cdoc["universes_swept"] == 4);

  auto census_dot = run({"census", "--group", "C4", "--dot"});
  REQUIRE(census_dot.status == 0);
  CHECK(census_dot.out.find("digraph") != std::string::npos);
  CHECK(census_dot.out.find("fillcolor") != std::string::npos);

  auto coind = run({"coinduce", "--group", "C4", "--from", "H1", "--operad",
                    "trivial"});
  REQUIRE(coind.status == 0);
  // restriction-to-N∩K rule: diagonal classes plus (C4,C2)
  CHECK(Json::parse(coind.out)["system"]["pairs"].size() == 4);

  auto cot = run({"cotensor", "--group", "C4", "--family", "e", "--operad",
                  "trivial"});
  REQUIRE(cot.status == 0);
  CHECK(Json::parse(cot.out)["system"]["pair_instances"] == 6);  // complete

  auto bad_family = run({"cotensor", "--group", "C4", "--family", "G",
                         "--operad", "trivial"});
  CHECK(bad_family.status == 2);

  auto fix = run({"fixed-points", "--group", "C4", "--normal", "H1",
                  "--operad", "complete"});
  REQUIRE(fix.status == 0);
  auto fdoc = Json::parse(fix.out);
  CHECK(fdoc["quotient"]["order"] == 2);
  CHECK(fdoc["system"]["pair_instances"] == 3);
}

TEST_CASE("mackey-verify passes for complete C4", "[cli]") {
  auto res = run({"mackey-verify", "--group", "C4", "--system", "complete"});
  REQUIRE(res.status == 0);
  auto doc = Json::parse(res.out);
  REQUIRE(doc["reports"].size() == 3);
  for (const auto& r : doc["reports"]) CHECK(r["status"] == "pass");
}

TEST_CASE("hasse defaults to dot", "[cli]") {
  auto res = run({"hasse", "--group", "C4"});
  REQUIRE(res.status == 0);
  CHECK(res.out.rfind("digraph", 0) == 0);
}

TEST_CASE("system files round-trip through the documented schema", "[cli]") {
  auto adm = run({"admissibles", "--group", "S3", "--operad", "isometries",
                  "--universe", "fixed:H4"});
  REQUIRE(adm.status == 0);
  std::string path = "/tmp/ninfty_cli_roundtrip.json";
  {
    std::ofstream out(path);
    out << adm.out;
  }
  auto back = run({"mackey-verify", "--group", "S3",
                   "--system", "@" + path});
  REQUIRE(back.status == 0);
  auto doc = Json::parse(back.out);
  CHECK(doc["system"]["pairs"] == Json::parse(adm.out)["system"]["pairs"]);
}

TEST_CASE("help text mentions every verb", "[cli]") {
  auto res = run({"--help"});
  CHECK(res.status == 0);
  for (const char* verb :
       {"enumerate", "validate", "closure", "meet", "join", "restrict",
        "admissibles", "separate", "census", "coinduce", "cotensor",
        "fixed-points", "mackey-verify", "hasse"})
    CHECK(res.out.find(verb) != std::string::npos);
}

TEST_CASE("gset action tables round-trip through JSON", "[cli]") {
  auto g = construct_group("S3");
  auto lat = subgroup_lattice(g);
  auto t = disjoint_union(orbit_gset(lat->subgroups[1]), trivial_gset(g, 2));
  auto doc = gset_json(t);
  auto back = gset_from_json(g, doc);
  CHECK(back.act == t.act);
  // corrupted tables are rejected
  doc["action"][0][0] = doc["action"][0][1];
  CHECK_THROWS_AS(gset_from_json(g, doc), domain_error);
}

TEST_CASE("character table JSON export", "[cli]") {
  auto doc = character_table_json(construct_group("S3"));
  CHECK(doc["order"] == 6);
  CHECK(doc["irreducibles"].size() == 3);
  // values of the 2-dim are small lifted integers: 2, and -1 or 0 entries
  bool saw_negative = false;
  for (const auto& irr : doc["irreducibles"])
    for (const auto& v : irr["values"])
      if (v.is_number_integer() && v.get<int64_t>() < 0) saw_negative = true;
  CHECK(saw_negative);
}

TEST_CASE("order bound env var is honored", "[cli]") {
  setenv("NINFTY_ORDER_BOUND", "20", 1);
  auto res = run({"enumerate", "--group", "S4"});
  CHECK(res.status == 1);
  CHECK(res.err.find("bound") != std::string::npos);
  unsetenv("NINFTY_ORDER_BOUND");
  // S4 itself is fine without the tightened bound
  CHECK(construct_group("S4")->order() == 24);
}

TEST_CASE("structural subgroup names resolve when unambiguous", "[cli]") {
  // C4 has a single C2, so the name resolves; D8's C2s are ambiguous
  auto res = run({"separate", "--group", "C4", "--mode", "pairwise"});
  auto by_name = run({"admissibles", "--group", "C4", "--operad", "disks",
                      "--universe", "gen:triv,regbar:C2"});
  REQUIRE(by_name.status == 0);
  CHECK(Json::parse(by_name.out)["system"] ==
        Json::parse(res.out)["disks"]);

  auto ambiguous = run({"admissibles", "--group", "D8", "--operad", "disks",
                        "--universe", "fixed:C2"});
  CHECK(ambiguous.status == 1);
  CHECK(ambiguous.err.find("ambiguous") != std::string::npos);
}

TEST_CASE("pairs system specs read class representatives", "[cli]") {
  auto res = run({"mackey-verify", "--group", "S3", "--system", "pairs:C3/e"});
  REQUIRE(res.status == 0);
  auto doc = Json::parse(res.out);
  CHECK(doc["system"]["pair_instances"] == 7);  // diagonal(6) + (C3,e)

  // a class-representative spec whose expansion breaks restriction closure
  auto bad = run({"mackey-verify", "--group", "S3", "--system", "pairs:G/C2"});
  CHECK(bad.status == 2);
}
