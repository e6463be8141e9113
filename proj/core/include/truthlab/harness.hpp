#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "truthlab/common.hpp"
#include "truthlab/json_io.hpp"
#include "truthlab/scheduling.hpp"

namespace truthlab::harness {

/// Shared knobs for reproduce/check/run. Every report echoes the exact values used.
struct RunConfig {
  std::optional<std::size_t> m;  // bound-specific default when absent
  Rational epsilon{1, 100};
  Rational c{10};                // approximation target for the Max-Min demo
  std::uint64_t seed = 1;
  std::size_t budget = kDefaultEnumerationBudget;
  std::size_t suite = 0;         // 0 = bound default suite size
  bool timings = false;          // measured wall time in reports (off keeps them byte-stable)
};

enum class Status { confirmed, violated, error };

std::string status_name(Status status);

struct Report {
  std::string id;  // bound or mechanism id
  io::json params = io::json::object();
  std::string computed_value;
  std::string paper_bound;
  Status status = Status::error;
  io::json certificate = io::json::object();
  std::string error;  // reason when status == error
  std::int64_t wall_ms = 0;
};

inline const std::vector<std::string> kBoundIds = {
    "thm2",        "thm3",        "thm4",   "thm5",       "thm6", "nr-upper",
    "routing-n",   "routing-phi", "routing-rand", "maxmin", "minmax-vcg", "envy"};

/// Runs one bound reproduction; unknown ids and exceeded budgets come back as
/// status ERROR with the reason attached.
Report reproduce(const std::string& bound_id, const RunConfig& config);

/// Dispatches a mechanism/property pair over a scheduling domain file.
Report check_mechanism(const std::string& mechanism_id, const std::string& property_id,
                       const io::json& domain, const RunConfig& config);

/// Executes one mechanism on one instance file.
Report run_mechanism(const std::string& mechanism_id, const io::json& instance,
                     const std::optional<scheduling::CoinSequence>& coins, bool expected,
                     const RunConfig& config);

std::string report_to_json(const Report& report, bool include_timings);
std::string csv_header();
std::string report_to_csv_row(const Report& report, bool include_timings);

/// 0 when all reports confirmed, 1 when any violated, 2 when any errored.
int exit_code(std::span<const Report> reports);

}  // namespace truthlab::harness
