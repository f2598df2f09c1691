#include <doctest.h>

#include <json.hpp>

#include "descent0/cli.hpp"

using namespace descent0::cli;
using nlohmann::json;

TEST_CASE("selmer command payload") {
  auto res = run({"selmer", "--A", "17", "--B", "5", "--r", "23"});
  CHECK(res.exit_code() == 0);
  auto doc = json::parse(res.output);
  CHECK(doc["schema"] == "descent0/v1");
  CHECK(doc["selmer_phi"] == json::array({"1"}));
  CHECK(doc["selmer_phihat"] == json::array({"-391", "-115", "1", "85"}));
  CHECK(doc["dim_phi"] == 0);
  CHECK(doc["dim_phihat"] == 2);
  CHECK(doc["rank_upper_bound"] == 0);
  CHECK(doc["bad_places"] == json::array({"inf", 2, 3, 5, 17, 23}));
}

TEST_CASE("reports are data, not errors") {
  auto res = run({"check-thm2", "--A", "16", "--B", "5", "--r", "23"});
  CHECK(res.exit_code() == 0);
  auto doc = json::parse(res.output);
  CHECK(doc["report"]["overall"] == false);
  bool saw_a_prime = false;
  for (const auto& it : doc["report"]["items"]) {
    if (it["condition_id"] == "T2.A_prime") {
      saw_a_prime = true;
      CHECK(it["holds"] == false);
    }
  }
  CHECK(saw_a_prime);
}

TEST_CASE("exit code contract") {
  CHECK(run({"rank-bound", "--A", "17", "--B", "5"}).exit_code() == 0);
  CHECK(run({"no-such-command"}).exit_code() == 2);
  CHECK(run({"selmer"}).exit_code() == 2);                       // missing curve
  CHECK(run({"selmer", "--A", "17"}).exit_code() == 2);          // half a curve
  CHECK(run({"selmer", "--A", "17", "--B", "5", "--a", "1", "--b", "2"}).exit_code() == 2);
  CHECK(run({"selmer", "--A", "3", "--B", "3"}).exit_code() == 2);  // singular
  CHECK(run({}).exit_code() == 2);
}

TEST_CASE("identical argv gives byte-identical output") {
  std::vector<std::string> argv = {"oracle-validate", "--seed", "42", "--count", "50"};
  auto a = run(argv);
  auto b = run(argv);
  CHECK(a.output == b.output);
  CHECK(a.exit_code() == b.exit_code());

  std::vector<std::string> sargv = {"search", "--family", "T2", "--A", "17", "--B", "5",
                                    "--variant", "proof", "--X", "100"};
  auto c = run(sargv);
  auto d = run(sargv);
  CHECK(c.exit_code() == 0);
  CHECK(c.output == d.output);
  auto doc = json::parse(c.output);
  CHECK(doc["twist_primes"] == json::array({"23"}));
}

TEST_CASE("json output is a serialization fixed point") {
  for (auto argv : std::vector<std::vector<std::string>>{
           {"selmer", "--A", "17", "--B", "5", "--r", "23"},
           {"check-thm4", "--a", "6", "--b", "6", "--r", "31"},
           {"density", "--family", "T2", "--A", "17", "--B", "5", "--variant", "proof",
            "--X", "10000"},
           {"point-search", "--a", "506", "--b", "44965", "--H", "20"}}) {
    auto res = run(argv);
    REQUIRE(res.exit_code() == 0);
    auto doc = json::parse(res.output);
    CHECK(json::parse(doc.dump()) == doc);
  }
}

TEST_CASE("oracle-validate agreement run") {
  auto res = run({"oracle-validate", "--seed", "7", "--count", "60", "--cmax", "500"});
  CHECK(res.exit_code() == 0);
  auto doc = json::parse(res.output);
  CHECK(doc["disagreements"].empty());
  CHECK(doc["checked"].get<long>() >= 60);
  CHECK(doc["agree"] == doc["checked"]);
}

TEST_CASE("text and csv formats render") {
  auto t = run({"rank-bound", "--A", "17", "--B", "5", "--r", "23", "--format", "text"});
  CHECK(t.exit_code() == 0);
  CHECK(!t.output.empty());
  auto c = run({"rank-bound", "--A", "17", "--B", "5", "--r", "23", "--format", "csv"});
  CHECK(c.exit_code() == 0);
  CHECK(c.output.find(',') != std::string::npos);
  CHECK(run({"rank-bound", "--A", "17", "--B", "5", "--format", "yaml"}).exit_code() == 2);
}
