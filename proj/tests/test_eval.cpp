#include <doctest.h>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "nel/error.hpp"
#include "nel/eval.hpp"

using namespace nel;

namespace {

CandidateList list(std::initializer_list<const char*> ids) {
  CandidateList out;
  double score = 1.0;
  for (const char* id : ids) {
    out.push_back({id, score});
    score -= 0.1;
  }
  return out;
}

}  // namespace

TEST_CASE("recall at k") {
  std::vector<CandidateList> lists{list({"a", "b", "c"}), list({"x", "gold2"}), list({"z"})};
  std::vector<std::string> golds{"a", "gold2", "missing"};

  CHECK(recall_at_k(lists, golds, 1) == doctest::Approx(1.0 / 3.0));
  CHECK(recall_at_k(lists, golds, 2) == doctest::Approx(2.0 / 3.0));
  CHECK(recall_at_k(lists, golds, 50) == doctest::Approx(2.0 / 3.0));  // capped by list length

  // non-decreasing in k
  double prev = 0;
  for (int k = 1; k <= 6; ++k) {
    double r = recall_at_k(lists, golds, k);
    CHECK(r >= prev);
    prev = r;
  }

  CHECK_THROWS_AS(recall_at_k(lists, golds, 0), ConfigError);
  CHECK_THROWS_AS(recall_at_k(lists, {"a"}, 1), ConfigError);
  CHECK_THROWS_AS(recall_at_k({}, {}, 1), ConfigError);
}

TEST_CASE("precision at 1") {
  std::vector<std::optional<std::string>> predictions{"a", std::nullopt, "wrong", "d"};
  std::vector<std::string> golds{"a", "b", "c", "d"};
  CHECK(precision_at_1(predictions, golds) == 0.5);
  CHECK(precision_at_1({std::nullopt}, {"g"}) == 0.0);
  CHECK(precision_at_1({"g"}, {"g"}) == 1.0);
  CHECK_THROWS_AS(precision_at_1(predictions, {"a"}), ConfigError);
  CHECK_THROWS_AS(precision_at_1({}, {}), ConfigError);
}

TEST_CASE("evaluation report serialization") {
  EvalReport report;
  report.query_count = 12;
  report.p_at_1 = 0.75;
  report.recall_at = {{1, 0.8}, {5, 0.95}};
  report.timings.filter_s = 0.25;
  report.config = "method=sgm k=5";

  nlohmann::json j = nlohmann::json::parse(report.to_json());
  CHECK(j["queries"] == 12);
  CHECK(j["p_at_1"] == doctest::Approx(0.75));
  CHECK(j["recall_at"]["1"] == doctest::Approx(0.8));
  CHECK(j["recall_at"]["5"] == doctest::Approx(0.95));
  CHECK(j["timings"]["filter_s"] == doctest::Approx(0.25));
  CHECK(j["config"] == "method=sgm k=5");

  std::ostringstream out;
  report.print(out);
  CHECK(out.str().find("p@1") != std::string::npos);
  CHECK(out.str().find("recall@5") != std::string::npos);

  report.p_at_1.reset();
  nlohmann::json no_gold = nlohmann::json::parse(report.to_json());
  CHECK(no_gold["p_at_1"].is_null());
}
