#include <doctest.h>

#include <sstream>

#include "latmass/report.hpp"

using namespace latmass;
using nlohmann::json;

TEST_SUITE("cli-report") {
  TEST_CASE("known results table") {
    CHECK(known_results().size() == 5);
    for (std::int64_t d : {5, 2, 13, 6, 21}) {
      const auto a = annotations_for(d);
      REQUIRE(a.size() == 1);
      CHECK(a[0].provenance == "external literature, not verified by this tool");
    }
    CHECK(annotations_for(6)[0].D == 24);
    CHECK(annotations_for(33).empty());
  }

  TEST_CASE("record contents") {
    const auto r = make_record(verdict(make_discriminant_spec(21)));
    CHECK(r.outcome == "FeasibleK");
    CHECK(r.K == Rational(8));
    CHECK(r.rhs == Rational(1, 6));
    CHECK(r.annotations.size() == 1);
    CHECK(r.annotations[0].status == "not free");
    CHECK(r.ldata.lvalue == "8√21·π²/441");
    CHECK(r.classes.size() == 4);
    const json j = r;
    CHECK(j["K"] == "8/1");
    CHECK(j["rhs"]["value"] == "1/6");
    CHECK(j["classes"][0]["subset"] == json::array());
  }

  TEST_CASE("JSON round trip for every d <= 1000") {
    for (const auto& v : scan(2, 1000, Mode::Exact, 4)) {
      const auto r = make_record(v);
      const auto text = json(r).dump();
      const auto back = json::parse(text).get<ReportRecord>();
      CHECK_MESSAGE(back == r, "d=", r.d);
    }
    const auto bound = make_record(verdict(make_discriminant_spec(6), Mode::Bound));
    CHECK(json::parse(json(bound).dump()).get<ReportRecord>() == bound);
  }

  TEST_CASE("CSV shape") {
    const auto cols = csv_columns();
    CHECK(cols.size() == 16);
    CHECK(csv_header().find("d,D,residue,mode,outcome,K") == 0);
    for (std::int64_t d : {2, 6, 21, 33, 1155}) {
      const auto row = csv_row(make_record(verdict(make_discriminant_spec(d))));
      CHECK(std::count(row.begin(), row.end(), ',') == static_cast<long>(cols.size() - 1));
    }
    const auto row6 = csv_row(make_record(verdict(make_discriminant_spec(6))));
    CHECK(row6.find("FeasibleKAtMost,32/3,false,false,10,") != std::string::npos);
  }

  TEST_CASE("survivor summary") {
    std::vector<ReportRecord> records;
    for (const auto& v : scan(2, 40)) records.push_back(make_record(v));
    CHECK(survivor_summary(records) ==
          "survivors: residue 1 {5, 13, 21}; residue 2 {2, 6}; residue 3 {3}; all {2, 3, 5, 6, 13, 21}");
  }
}
