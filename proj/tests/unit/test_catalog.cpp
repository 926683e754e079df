#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>

#include "metriq/catalog.hpp"
#include "metriq/errors.hpp"

using namespace metriq;

namespace {

const std::string kTables = METRIQ_TEST_TABLES;

std::vector<TableRow> table(const std::string& id) { return load_tables(kTables + "/" + id + ".json"); }

}  // namespace

TEST_SUITE("catalog") {
  TEST_CASE("row counts") {
    const std::map<std::string, std::size_t> expected = {
        {"qhbar_metric", 6},
        {"new_q_relation1", 9},
        {"new_q_relation2_m1", 6},
        {"new_q_relation2_m2", 6},
        {"new_q_relation3", 6},
        {"dirac_new_q_relation1", 9},
        {"dirac_new_q_relation2_m1", 6},
        {"dirac_new_q_relation2_m2", 6},
        {"dirac_new_q_relation3", 6},
        {"dirac_qhbar", 3},
        {"embedding_specialization", 3},
        {"qgen_embedding_m2", 1},
        {"dirac_new_distinguished", 1},
        {"dirac_qgen", 1},
        {"presets", 2},
    };
    std::size_t files = 0;
    for (const auto& e : std::filesystem::directory_iterator(kTables)) files += e.path().extension() == ".json";
    CHECK(files == expected.size());
    for (const auto& [id, n] : expected) {
      CAPTURE(id);
      CHECK(table(id).size() == n);
    }
  }

  TEST_CASE("save and parse round trip") {
    for (const auto& e : std::filesystem::directory_iterator(kTables)) {
      std::ifstream in(e.path());
      std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
      Table t = parse_table(text, e.path().string());
      CHECK(parse_table(save_table(t)) == t);
    }
  }

  TEST_CASE("schema errors name the row and field") {
    const char* text = R"({"table_id": "t", "algebra": "M1",
      "rows": [{"key": {"j": 1}, "bindings": {"g00": "1"}, "target": "x*p_x"},
               {"key": {"j": 2}, "bindings": {"g00": "1"}, "colour": "red"}]})";
    try {
      parse_table(text, "mem.json");
      FAIL("no exception");
    } catch (const SchemaError& e) {
      CHECK(e.row() == 1);
      CHECK(e.field() == "colour");
    }
    CHECK_THROWS_AS(parse_table(R"({"table_id": "t", "algebra": "m3", "rows": []})"), SchemaError);
    CHECK_THROWS_AS(parse_table(R"({"table_id": "t", "rows": [{"key": {}, "target": "x*("}]})"), SchemaError);
    CHECK_THROWS_AS(parse_table("not json"), SchemaError);
  }

  TEST_CASE("specialization rows embed") {
    VerdictReport rep = run_suite(table("embedding_specialization"), Suite::embeddings);
    // three rows, each swept over n = 0..3
    REQUIRE(rep.rows.size() == 12);
    for (const auto& r : rep.rows) {
      CHECK(r.status == Status::pass);
      CHECK(r.scale == (r.matched == "x-y" ? "-1" : "1"));
    }
    CHECK_FALSE(rep.any_fail());
  }

  TEST_CASE("signature gate") {
    SuiteOptions strict;
    VerdictReport rep = run_suite(table("dirac_new_q_relation1"), Suite::dirac, strict);
    CHECK(rep.counts().at("SKIP") > 0);
    SuiteOptions any;
    any.allow_any_signature = true;
    VerdictReport bypass = run_suite(table("dirac_new_q_relation1"), Suite::dirac, any);
    CHECK(bypass.counts().at("SKIP") == 0);
  }

  TEST_CASE("confluence suite") {
    VerdictReport rep = run_suite(table("presets"), Suite::confluence);
    std::map<std::string, Status> by;
    for (const auto& r : rep.rows) by[r.table_id + "/" + r.algebra + "/" + std::to_string(r.row_index)] = r.status;
    CHECK(by.at("presets/M1/0") == Status::pass);
    CHECK(by.at("presets/M2/0") == Status::pass);
    CHECK(by.at("presets/M1/1") == Status::fail);
  }

  TEST_CASE("reports are deterministic and independent of threads") {
    auto rows = load_tables(kTables);
    SuiteOptions one, four;
    four.jobs = 4;
    std::string a = run_suite(rows, Suite::all, one).to_json();
    std::string b = run_suite(rows, Suite::all, four).to_json();
    CHECK(a == b);
    CHECK(a.find("\"metriq.report/1\"") != std::string::npos);
    CHECK(a.find("elapsed_ms") == std::string::npos);
    CHECK(a.back() == '\n');
  }

  TEST_CASE("sweep overrides") {
    SuiteOptions opt;
    opt.sweep = {{"n", {5}}};
    VerdictReport rep = run_suite(table("dirac_new_distinguished"), Suite::dirac, opt);
    REQUIRE(rep.rows.size() == 1);
    CHECK(rep.rows[0].instance.at("n") == 5);
    CHECK(rep.rows[0].status == Status::pass);
  }

  TEST_CASE("metric files") {
    auto path = std::filesystem::temp_directory_path() / "metriq_metric_test.json";
    {
      std::ofstream(path) << R"({"g00": "1", "g11": "-q", "g23": "i*Pi"})";
    }
    MetricSpec g = load_metric(path.string());
    CHECK(g.g(1, 1) == parse_coeff("-q"));
    CHECK(g.g(3, 2) == parse_coeff("i*Pi"));
    {
      std::ofstream(path) << R"({"g32": "1"})";
    }
    CHECK_THROWS_AS(load_metric(path.string()), SchemaError);
    std::filesystem::remove(path);
  }
}
