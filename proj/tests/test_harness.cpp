#include <doctest.h>

#include "truthlab/harness.hpp"
#include "truthlab/json_io.hpp"

using namespace truthlab;
using namespace truthlab::harness;

namespace {

RunConfig quick_config() {
  RunConfig config;
  config.suite = 20;  // keep the seeded suites small in unit tests
  return config;
}

}  // namespace

TEST_CASE("reproduce confirms the fast bounds") {
  const RunConfig config = quick_config();
  for (const std::string id : {"thm2", "thm5", "routing-phi", "routing-rand", "maxmin", "envy"}) {
    const Report report = reproduce(id, config);
    CHECK(report.status == Status::confirmed);
    CHECK(report.error.empty());
  }
}

TEST_CASE("reproducing an unknown bound is an error report") {
  const Report report = reproduce("thm42", quick_config());
  CHECK(report.status == Status::error);
  CHECK(!report.error.empty());
  const std::vector<Report> reports = {report};
  CHECK(exit_code(reports) == 2);
}

TEST_CASE("budget exhaustion surfaces as an error status") {
  RunConfig config = quick_config();
  config.budget = 4;
  const Report report = reproduce("thm2", config);
  CHECK(report.status == Status::error);
}

TEST_CASE("reports are byte-identical across two runs with the same seed") {
  RunConfig config = quick_config();
  config.seed = 99;
  for (const std::string id : {"thm4", "nr-upper", "routing-n", "minmax-vcg"}) {
    const std::string first = report_to_json(reproduce(id, config), false);
    const std::string second = report_to_json(reproduce(id, config), false);
    CHECK(first == second);
    CHECK(report_to_csv_row(reproduce(id, config), false) ==
          report_to_csv_row(reproduce(id, config), false));
  }
}

TEST_CASE("reports echo the exact rational parameters") {
  RunConfig config = quick_config();
  config.epsilon = Rational(1, 50);
  const Report report = reproduce("thm2", config);
  CHECK(report.params.at("epsilon") == "1/50");
  CHECK(report.computed_value == (ExactScalar(2) / ExactScalar(Rational(51, 50))).to_string());
}

TEST_CASE("the checker subcommand mirrors the library checkers") {
  const io::json domain = io::json::parse(R"({
    "type": "scheduling-domain",
    "machines": 2,
    "tasks": 3,
    "players": [
      [{"name": "v1", "costs": [1, 100, 1]},
       {"name": "v'1", "costs": [0, 100, "101/100"]}],
      [{"name": "v2", "costs": [100, 1, 1]},
       {"name": "v'2", "costs": [100, 0, "101/100"]}]
    ]
  })");
  const RunConfig config = quick_config();

  const Report ok = check_mechanism("minwork-vcg", "wmon", domain, config);
  CHECK(ok.status == Status::confirmed);
  CHECK(ok.computed_value == "0");

  const Report violated = check_mechanism("opt-lex", "wmon", domain, config);
  CHECK(violated.status == Status::violated);
  CHECK(violated.certificate.at("violations").size() > 0);

  const Report truthful = check_mechanism("minwork-vcg", "dst", domain, config);
  CHECK(truthful.status == Status::confirmed);

  const Report bad = check_mechanism("opt-lex", "dst", domain, config);
  CHECK(bad.status == Status::error);

  const Report unknown = check_mechanism("minwork-vcg", "nope", domain, config);
  CHECK(unknown.status == Status::error);

  const io::json malformed = io::json::parse(R"({"type": "scheduling-domain"})");
  CHECK(check_mechanism("minwork-vcg", "wmon", malformed, config).status == Status::error);
}

TEST_CASE("the run subcommand executes mechanisms on instance files") {
  const RunConfig config = quick_config();
  const io::json one_task = io::json::parse(
      R"({"type": "scheduling", "machines": 2, "tasks": 1, "costs": [[1], [5]]})");

  const Report vcg = run_mechanism("minwork-vcg", one_task, std::nullopt, false, config);
  CHECK(vcg.status == Status::confirmed);
  CHECK(vcg.certificate.at("outcome").at("payments")[0] == io::json(5));

  const io::json nr_example = io::json::parse(
      R"({"type": "scheduling", "machines": 2, "tasks": 1, "costs": [[1], [2]]})");
  const Report coins =
      run_mechanism("nr-randomized", nr_example, scheduling::CoinSequence{0}, false, config);
  CHECK(coins.status == Status::confirmed);
  CHECK(coins.certificate.at("outcome").at("payments")[0] == io::json("8/3"));

  const Report expected = run_mechanism("nr-randomized", nr_example, std::nullopt, true, config);
  CHECK(expected.computed_value == "1");

  const Report missing = run_mechanism("nr-randomized", nr_example, std::nullopt, false, config);
  CHECK(missing.status == Status::error);

  const io::json figure1 = io::json::parse(R"({
    "type": "routing",
    "nodes": ["x", "y", "z", "d"],
    "dest": "d",
    "edges": [
      {"from": "x", "to": "d", "cost": 1},
      {"from": "y", "to": "x", "cost": 0},
      {"from": "y", "to": "d", "cost": "101/100"},
      {"from": "z", "to": "x", "cost": 0},
      {"from": "z", "to": "d", "cost": "101/100"}
    ],
    "traffic": {"x": 1, "y": 1, "z": 1}
  })");
  const Report tree = run_mechanism("costmin-tree", figure1, std::nullopt, false, config);
  CHECK(tree.status == Status::confirmed);
  CHECK(tree.certificate.at("tree").at("nexthop").at("y") == "x");
  CHECK(tree.certificate.at("tree").at("nexthop").at("z") == "x");
  CHECK(tree.computed_value == "3");

  // A mechanism refuses an instance of the wrong kind.
  CHECK(run_mechanism("minwork-vcg", figure1, std::nullopt, false, config).status ==
        Status::error);

  const io::json fair = io::json::parse(R"({
    "type": "fairness", "players": 2, "items": 3,
    "valuations": [{"additive": [1, 1, 1]}, {"additive": [1, 1, 1]}]
  })");
  const Report vcg_fair = run_mechanism("minmax-vcg", fair, std::nullopt, false, config);
  CHECK(vcg_fair.status == Status::confirmed);
  CHECK(vcg_fair.certificate.at("total_cost") == io::json("3"));
}

TEST_CASE("csv rows carry the fixed column set") {
  CHECK(csv_header() == "bound_id,m,epsilon,computed_value,paper_bound,status,wall_ms");
  const Report report = reproduce("thm2", quick_config());
  const std::string row = report_to_csv_row(report, false);
  std::size_t commas = 0;
  for (const char ch : row) commas += ch == ',' ? 1 : 0;
  CHECK(commas == 6);
  CHECK(row.substr(0, 5) == "thm2,");
}

TEST_CASE("exit codes rank error above violation above success") {
  Report ok;
  ok.status = Status::confirmed;
  Report bad;
  bad.status = Status::violated;
  Report broken;
  broken.status = Status::error;
  CHECK(exit_code(std::vector<Report>{ok}) == 0);
  CHECK(exit_code(std::vector<Report>{ok, bad}) == 1);
  CHECK(exit_code(std::vector<Report>{ok, bad, broken}) == 2);
}
