#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "truthlab/harness.hpp"

namespace {

using truthlab::harness::Report;
using truthlab::harness::RunConfig;

truthlab::io::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return truthlab::io::json::parse(in);
}

truthlab::scheduling::CoinSequence parse_coins(const std::string& bits) {
  truthlab::scheduling::CoinSequence coins;
  coins.reserve(bits.size());
  for (const char c : bits) {
    if (c != '0' && c != '1') throw std::runtime_error("coins must be a 0/1 string");
    coins.push_back(c == '1' ? 1 : 0);
  }
  return coins;
}

void emit(const std::vector<Report>& reports, const std::string& format, bool timings) {
  if (format == "csv") {
    std::cout << truthlab::harness::csv_header() << "\n";
    for (const Report& r : reports) {
      std::cout << truthlab::harness::report_to_csv_row(r, timings) << "\n";
    }
    return;
  }
  for (const Report& r : reports) {
    std::cout << truthlab::harness::report_to_json(r, timings) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"truthlab: truthful-mechanism harness (mechanisms, checkers, bound reproductions)"};
  app.require_subcommand(1);

  RunConfig config;
  std::string epsilon = "1/100";
  std::string c_param = "10";
  std::string format = "json";
  std::size_t m_flag = 0;

  if (const char* env = std::getenv("TRUTHLAB_BUDGET")) {
    config.budget = static_cast<std::size_t>(std::strtoull(env, nullptr, 10));
  }

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--epsilon", epsilon, "epsilon as an exact rational p/q");
    cmd->add_option("--seed", config.seed, "seed for the deterministic suites");
    cmd->add_option("--suite", config.suite, "override a bound's suite size");
    cmd->add_option("--budget", config.budget, "enumeration budget");
    cmd->add_option("--format", format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_flag("--timings", config.timings, "include measured wall time in reports");
  };

  auto* reproduce = app.add_subcommand("reproduce", "reproduce a lower/upper bound");
  std::vector<std::string> bounds;
  reproduce->add_option("--bound", bounds, "bound id(s)")->required();
  reproduce->add_option("--m", m_flag, "machine / source count");
  reproduce->add_option("--c", c_param, "approximation target for the maxmin demo");
  add_common(reproduce);

  auto* check = app.add_subcommand("check", "run a monotonicity/truthfulness checker");
  std::string mechanism, property, domain_path;
  check->add_option("--mechanism", mechanism, "mechanism id")->required();
  check->add_option("--property", property, "property id (wmon|smon|dst)")->required();
  check->add_option("--domain", domain_path, "domain file")->required();
  add_common(check);

  auto* run = app.add_subcommand("run", "execute one mechanism on one instance");
  std::string run_mechanism, instance_path, coins;
  bool expected = false;
  run->add_option("--mechanism", run_mechanism, "mechanism id")->required();
  run->add_option("--instance", instance_path, "instance file")->required();
  run->add_option("--coins", coins, "coin bits for the randomized mechanism");
  run->add_flag("--expected", expected, "evaluate the full coin distribution");
  add_common(run);

  CLI11_PARSE(app, argc, argv);

  std::vector<Report> reports;
  try {
    config.epsilon = truthlab::rational_from_string(epsilon);
    config.c = truthlab::rational_from_string(c_param);
    if (m_flag != 0) config.m = m_flag;

    if (reproduce->parsed()) {
      for (const std::string& bound : bounds) {
        reports.push_back(truthlab::harness::reproduce(bound, config));
      }
    } else if (check->parsed()) {
      reports.push_back(
          truthlab::harness::check_mechanism(mechanism, property, load_json(domain_path), config));
    } else if (run->parsed()) {
      std::optional<truthlab::scheduling::CoinSequence> coin_seq;
      if (run->count("--coins") > 0) coin_seq = parse_coins(coins);
      reports.push_back(truthlab::harness::run_mechanism(
          run_mechanism, load_json(instance_path), coin_seq, expected, config));
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }

  emit(reports, format, config.timings);
  return truthlab::harness::exit_code(reports);
}
