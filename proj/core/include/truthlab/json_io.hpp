#pragma once

#include <nlohmann/json.hpp>

#include "truthlab/exact_scalar.hpp"
#include "truthlab/fairness.hpp"
#include "truthlab/lowerbounds.hpp"
#include "truthlab/monotonicity.hpp"
#include "truthlab/routing.hpp"
#include "truthlab/scheduling.hpp"

namespace truthlab::io {

using json = nlohmann::ordered_json;

/// Scalar wire form: integer, "p/q", {"r":"p/q","s":"p/q"} meaning r + s*sqrt5,
/// or "inf".
json scalar_to_json(const ExactScalar& value);
ExactScalar scalar_from_json(const json& j);

json rational_to_json(const Rational& value);
Rational rational_from_json(const json& j);

json instance_to_json(const scheduling::SchedulingInstance& inst);
scheduling::SchedulingInstance scheduling_instance_from_json(const json& j);

json allocation_to_json(const scheduling::TaskAllocation& alloc);
scheduling::TaskAllocation allocation_from_json(const json& j);

json instance_to_json(const routing::RoutingInstance& inst);
routing::RoutingInstance routing_instance_from_json(const json& j);

json tree_to_json(const routing::RoutingInstance& inst, const routing::RoutingTree& tree);
routing::RoutingTree tree_from_json(const routing::RoutingInstance& inst, const json& j);

json instance_to_json(const fairness::FairnessInstance& inst);
fairness::FairnessInstance fairness_instance_from_json(const json& j);

json domain_to_json(const scheduling::SchedulingTypeDomain& domain);
scheduling::SchedulingTypeDomain scheduling_domain_from_json(const json& j);

json violation_report_to_json(const monotonicity::ViolationReport& report,
                              const FiniteTypeDomain& domain);

json outcome_to_json(const MechanismOutcome& outcome);

/// Any instance file: dispatches on the "type" tag.
enum class InstanceKind { scheduling, routing, fairness };
InstanceKind instance_kind(const json& j);

}  // namespace truthlab::io
