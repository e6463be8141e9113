// Acceptance suite: runs every stated criterion at its exact tolerance and
// prints one PASS/FAIL line per criterion. Exit status is the failure count.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "truthlab/fairness.hpp"
#include "truthlab/harness.hpp"
#include "truthlab/instance_gen.hpp"
#include "truthlab/lowerbounds.hpp"
#include "truthlab/monotonicity.hpp"
#include "truthlab/prng.hpp"
#include "truthlab/routing.hpp"
#include "truthlab/scheduling.hpp"

using namespace truthlab;
using harness::Report;
using harness::RunConfig;
using harness::Status;

namespace {

struct Criterion {
  std::string name;
  double limit_seconds = 0;
  bool (*run)() = nullptr;
};

const Rational kEps(1, 100);

bool confirmed(const Report& report) { return report.status == Status::confirmed; }

// 1. Worst-case weak-monotonicity search on the two-machine family.
bool criterion1() {
  RunConfig config;
  const Report report = harness::reproduce("thm2", config);
  const ExactScalar bound = ExactScalar(2) / ExactScalar(Rational(101, 100));
  return confirmed(report) && report.paper_bound == bound.to_string();
}

// 2. Expected-ratio search over the distribution family for m in {2, 3}.
bool criterion2() {
  for (const std::size_t m : {std::size_t(2), std::size_t(3)}) {
    RunConfig config;
    config.m = m;
    if (!confirmed(harness::reproduce("thm4", config))) return false;
  }
  return true;
}

// 3. The marginal-probability cap holds exactly on the stated grid.
bool criterion3() {
  for (const std::size_t m : {std::size_t(2), std::size_t(3), std::size_t(5)}) {
    for (const Rational& eps : {Rational(1, 10), Rational(1, 100)}) {
      const ExactScalar value = lowerbounds::lemma3_max_marginal(m, eps);
      if (!(value <= ExactScalar(Rational(1, static_cast<long long>(m)) + eps))) return false;
    }
  }
  return true;
}

// 4. Bayesian search with the two-cycle filter; the case-analysis rules must
//    be infeasible individually.
bool criterion4() {
  RunConfig config;
  const Report report = harness::reproduce("thm6", config);
  if (!confirmed(report)) return false;
  return report.certificate.at("case1_feasible") == io::json(false) &&
         report.certificate.at("case2_feasible") == io::json(false);
}

// 5. The adversarial construction drives the task-wise VCG mechanism to ratio m
//    with a final optimum of exactly one.
bool criterion5() {
  for (const std::size_t m : {std::size_t(2), std::size_t(3)}) {
    RunConfig config;
    config.m = m;
    const Report report = harness::reproduce("thm3", config);
    if (!confirmed(report)) return false;
    if (report.certificate.at("optimal_makespan") != io::json("1")) return false;
    if (report.certificate.at("smon_violations") != io::json(0)) return false;
  }
  return true;
}

// 6. Randomized mechanism guarantee plus per-task truthfulness over the grid,
//    on 1000 seeded instances with m in {2, 4}.
bool criterion6() {
  RunConfig config;
  config.suite = 1000;
  const Report report = harness::reproduce("nr-upper", config);
  return confirmed(report) &&
         report.certificate.at("per_task_ds_violations") == io::json(0);
}

// 7. Routing: the exact star ratio, both golden-ratio bounds, and the random
//    n-approximation suite.
bool criterion7() {
  RunConfig config;
  config.suite = 200;
  const Report star = harness::reproduce("routing-n", config);
  if (!confirmed(star)) return false;
  if (star.computed_value != (ExactScalar(3) / ExactScalar(Rational(101, 100))).to_string()) {
    return false;
  }
  if (star.certificate.at("suite_ok") != io::json(true)) return false;
  return confirmed(harness::reproduce("routing-phi", config)) &&
         confirmed(harness::reproduce("routing-rand", config));
}

// 8. The lexicographic single-dimensional mechanism passes the packet
//    monotonicity sweep on every 4-node topology with out-degree <= 2 over the
//    cost grid {0, 1/4, ..., 4}.
bool criterion8() {
  std::vector<ExactScalar> grid;
  for (int step = 0; step <= 16; ++step) grid.push_back(ExactScalar(Rational(step, 4)));

  // Out-neighbor choices for one source: nonempty subsets of the other three
  // nodes with at most two elements.
  const std::size_t dest = 3;
  std::vector<std::vector<std::size_t>> choices[3];
  for (std::size_t node = 0; node < 3; ++node) {
    std::vector<std::size_t> others;
    for (std::size_t other = 0; other < 4; ++other) {
      if (other != node) others.push_back(other);
    }
    for (std::size_t i = 0; i < others.size(); ++i) {
      choices[node].push_back({others[i]});
      for (std::size_t j = i + 1; j < others.size(); ++j) {
        choices[node].push_back({others[i], others[j]});
      }
    }
  }

  std::size_t topologies = 0;
  for (const auto& ca : choices[0]) {
    for (const auto& cb : choices[1]) {
      for (const auto& cc : choices[2]) {
        routing::RoutingInstance inst;
        inst.names = {"a", "b", "c", "d"};
        inst.dest = dest;
        inst.out.resize(4);
        inst.traffic = {1, 1, 1, 0};
        const std::vector<std::vector<std::size_t>> picked = {ca, cb, cc};
        for (std::size_t node = 0; node < 3; ++node) {
          for (const std::size_t to : picked[node]) {
            inst.out[node].push_back(routing::Edge{to, ExactScalar(1)});
          }
        }
        try {
          inst.validate();
        } catch (const std::invalid_argument&) {
          continue;  // some source cannot reach d
        }
        ++topologies;

        routing::SingleDimRoutingInstance sd{inst};
        // packets through each node for every grid assignment
        const std::size_t g = grid.size();
        std::vector<std::vector<Rational>> packets(g * g * g);
        for (std::size_t ia = 0; ia < g; ++ia) {
          const auto level_a = sd.with_node_cost(0, grid[ia]);
          for (std::size_t ib = 0; ib < g; ++ib) {
            const auto level_ab = level_a.with_node_cost(1, grid[ib]);
            for (std::size_t ic = 0; ic < g; ++ic) {
              const auto swept = level_ab.with_node_cost(2, grid[ic]);
              const auto tree = routing::lex_optimal_mechanism(swept);
              packets[(ia * g + ib) * g + ic] =
                  routing::packets_through(swept.instance, tree);
            }
          }
        }
        // Along each axis, raising the node's cost must not raise its packets.
        for (std::size_t ia = 0; ia < g; ++ia) {
          for (std::size_t ib = 0; ib < g; ++ib) {
            for (std::size_t ic = 0; ic < g; ++ic) {
              const auto& here = packets[(ia * g + ib) * g + ic];
              if (ia + 1 < g && packets[((ia + 1) * g + ib) * g + ic][0] > here[0]) return false;
              if (ib + 1 < g && packets[(ia * g + ib + 1) * g + ic][1] > here[1]) return false;
              if (ic + 1 < g && packets[(ia * g + ib) * g + ic + 1][2] > here[2]) return false;
            }
          }
        }
      }
    }
  }
  return topologies > 0;
}

// 9. Fairness: the max-min demo at c in {1, 10}, the min-max n-approximation
//    suite, and the envy demo with its alpha-existence suite.
bool criterion9() {
  for (const Rational& c : {Rational(1), Rational(10)}) {
    RunConfig config;
    config.c = c;
    if (!confirmed(harness::reproduce("maxmin", config))) return false;
  }
  RunConfig config;
  config.suite = 500;
  if (!confirmed(harness::reproduce("minmax-vcg", config))) return false;

  RunConfig envy_config;
  const Report envy = harness::reproduce("envy", envy_config);
  if (!confirmed(envy)) return false;
  if (envy.certificate.at("holds") != io::json(true)) return false;
  if (envy.certificate.at("min_envy_within_alpha") != io::json(true)) return false;
  for (const auto& entry : envy.certificate.at("split_cases")) {
    if (entry.at("final_envy") != io::json("1")) return false;
    if (entry.at("altered_min_envy") != io::json("0")) return false;
    if (entry.at("altered_alpha") != io::json("101/100")) return false;
  }
  return true;
}

// 10. Every reproduce report is byte-identical across two runs with one seed.
bool criterion10() {
  for (const std::string& id : harness::kBoundIds) {
    RunConfig config;
    config.seed = 7;
    config.suite = 25;
    const std::string first = harness::report_to_json(harness::reproduce(id, config), false);
    const std::string second = harness::report_to_json(harness::reproduce(id, config), false);
    if (first != second) return false;
  }
  return true;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"1. worst-case WMON ratio >= 2/(1+eps) on the two-machine family", 1, criterion1},
      {"2. expected WMON ratio meets the distribution bound for m in {2,3}", 10, criterion2},
      {"3. marginal cap p <= 1/m + eps on {2,3,5} x {1/10,1/100}", 5, criterion3},
      {"4. Bayesian search >= 5/4 - delta; case rules infeasible", 5, criterion4},
      {"5. strong-monotonicity adversary reaches ratio m with OPT 1", 30, criterion5},
      {"6. randomized guarantee and per-task truthfulness on 1000 instances", 300, criterion6},
      {"7. routing star ratio, golden-ratio bounds, n-approximation suite", 60, criterion7},
      {"8. packet monotonicity sweep over all small topologies", 60, criterion8},
      {"9. fairness demos and suites", 120, criterion9},
      {"10. byte-identical reports across repeated seeded runs", 600, criterion10},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    const auto started = std::chrono::steady_clock::now();
    bool ok = false;
    std::string note;
    try {
      ok = criterion.run();
    } catch (const std::exception& ex) {
      note = std::string(" (exception: ") + ex.what() + ")";
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    const bool in_time = seconds <= criterion.limit_seconds;
    if (!ok || !in_time) ++failures;
    std::printf("%s %s [%.2fs%s]%s\n", ok && in_time ? "PASS" : "FAIL", criterion.name.c_str(),
                seconds, in_time ? "" : " OVER BUDGET", note.c_str());
  }
  return failures;
}
