#include <doctest.h>

#include "recsets/constructions.hpp"
#include "recsets/json_io.hpp"

using namespace recsets;

TEST_CASE("family round trip keeps the verdict and the points") {
  for (auto fam : {construct_d2(5), construct_general_q(3, 4, 2), construct_general_q(4, 3, 2)}) {
    const Json j = family_to_json(fam);
    const ParsedFamily back = family_from_json(Json::parse(j.dump()));
    CHECK(back.warnings.empty());
    CHECK(back.family.field == fam.field);
    CHECK(back.family.target == fam.target);
    REQUIRE(back.family.sets.size() == fam.sets.size());
    for (std::size_t i = 0; i < fam.sets.size(); ++i)
      for (std::size_t p = 0; p < fam.sets[i].points.size(); ++p)
        CHECK(back.family.sets[i].points[p] == canonical(fam.field, fam.sets[i].points[p]));
    CHECK(verify_family(back.family).valid());
    CHECK(family_to_json(back.family) == j);
  }
}

TEST_CASE("wrapped documents are accepted") {
  Json doc;
  doc["schemaVersion"] = 1;
  doc["payload"]["family"] = family_to_json(construct_d2(4));
  CHECK(family_from_json(doc).family.sets.size() == 5);
  Json bad;
  bad["payload"]["table"] = Json::array();
  CHECK_THROWS_AS(family_from_json(bad), FormatError);
}

TEST_CASE("non-canonical representatives are rescaled with a warning") {
  Json j = family_to_json(construct_general_q(3, 3, 2));
  auto& p = j["sets"][0][0];
  for (auto& x : p) x = (x.get<unsigned>() * 2) % 3;
  const ParsedFamily back = family_from_json(j);
  CHECK(back.warnings.size() == 1);
  CHECK(verify_family(back.family).valid());
}

TEST_CASE("malformed families are rejected") {
  const Json good = family_to_json(construct_d2(3));
  auto broken = [&](auto edit) {
    Json j = good;
    edit(j);
    CHECK_THROWS_AS(family_from_json(j), FormatError);
  };
  broken([](Json& j) { j.erase("k"); });
  broken([](Json& j) { j.erase("field"); });
  broken([](Json& j) { j["field"]["modulus"] = Json::array({1, 1, 1}); });
  broken([](Json& j) { j["sets"][0][0] = Json::array({0, 0, 0}); });
  broken([](Json& j) { j["sets"][0][0] = Json::array({1, 0}); });
  broken([](Json& j) { j["sets"][0][0] = Json::array({2, 0, 1}); });
  broken([](Json& j) { j["sets"][0][0] = Json::array({"1", 0, 1}); });
  broken([](Json& j) { j["target"] = Json::array({Json::array({0, 0, 1})}); });
  broken([](Json& j) { j["d"] = 4; });
  broken([](Json& j) { j["sets"] = 3; });
  CHECK_THROWS_AS(family_from_json(Json::array()), FormatError);
}

TEST_CASE("result serializers") {
  const Json b = bounds_to_json(bound(2, 7, 6));
  CHECK(b["lower"] == 19);
  CHECK(b["provenance"].is_array());
  CHECK(bounds_to_json(bound(2, 10, 5))["exact"].is_null());

  const IlpModel m = build_ilp_d2(4);
  const Json ilp = ilp_to_json(m, solve_ilp(m));
  CHECK(ilp["optimum"] == 5);
  CHECK(ilp["dualFeasible"] == true);
  CHECK(ilp["lpBound"] == "51/10");
  CHECK(ilp["assignment"]["Y3"] == 3);

  const Json o = oracle_to_json(exact_N(2, 3, 2));
  CHECK(o["status"] == "exact");
  CHECK(o["value"] == 2);
  CHECK(family_from_json(o["witness"]).family.sets.size() == 2);

  Certificate c;
  c.size_histogram[3] = 4;
  CHECK(certificate_to_json(c)["sizeHistogram"]["3"] == 4);
  CHECK(rational_string(Rational(6, 4)) == "3/2");
}
