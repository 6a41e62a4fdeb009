#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "railplan/model.hpp"
#include "railplan/network.hpp"

namespace railplan {

struct WorkloadInputs {
  int cars_present = 0;
  int shunting_locos = 0;
  int draw_out_tracks = 0;
  int cars_per_loco = 30;
  double sigma_max = 3.0;
};

// Default workload factor when a station has no override:
// clamp(1 + cars_present / (shunting_locos * cars_per_loco), 1, sigma_max).
// Throws std::invalid_argument when cars are present but no locomotive is.
double workload_factor(const WorkloadInputs& inputs);

struct DistributorConfig {
  // Default: 1 + number of scheduled departures. Each iteration that leaves
  // supply undistributed exhausts at least one train, so that always suffices.
  std::optional<int> max_iterations;
  int cars_per_loco = 30;
  double sigma_max = 3.0;
};

// Station workload factor: the override when present, else workload_factor.
double station_sigma(const Station& station, const DistributorConfig& config);

// Workload factors for every station of the network, in station order.
std::vector<double> station_sigmas(const Network& network, const DistributorConfig& config);

struct AssignmentLeg {
  std::string from;
  std::string to;
  std::optional<std::string> train;  // nullopt on a free span

  bool operator==(const AssignmentLeg&) const = default;
};

// A committed movement of `count` cars along `route`, riding the recorded
// train on every scheduled leg.
struct Assignment {
  std::string group_id;
  std::string origin;
  std::string destination;
  int count = 0;
  Minutes cost = 0;                // delivery time per car
  std::vector<std::string> route;  // origin .. destination
  std::vector<AssignmentLeg> legs;

  bool operator==(const Assignment&) const = default;
};

struct CarryoverEntry {
  std::string group_id;
  std::string origin;
  std::string destination;
  int count = 0;

  bool operator==(const CarryoverEntry&) const = default;
};

struct DistributionPlan {
  std::vector<Assignment> assignments;
  std::vector<CarryoverEntry> carryover;  // deferred to the next base period
  int iterations_used = 0;
  std::int64_t total_cost = 0;  // sum of cost * count over assignments

  bool operator==(const DistributionPlan&) const = default;
};

class InfeasibleError : public std::runtime_error {
 public:
  InfeasibleError(std::string group_id, std::string origin);
  const std::string& group_id() const { return group_id_; }
  const std::string& origin() const { return origin_; }

 private:
  std::string group_id_;
  std::string origin_;
};

// Remaining work between iterations: per-group balanced supplies/demands and
// the capacity ledger.
struct DistributionState {
  std::vector<BalancedGroup> groups;
  CapacityLedger ledger;

  BalancedGroup* find_group(const std::string& group_id);
};

// Applies committed assignments to the state: supplies and demands shrink by
// the committed counts and every scheduled leg debits its train. Supply that
// stayed undistributed is untouched and remains at its origin.
DistributionState next_iteration_state(DistributionState state,
                                       const std::vector<Assignment>& committed);

// Runs the full iterative distribution: route tables per origin against the
// current ledger, one transportation solve per group, commitment in ascending
// cost order under per-train capacity, and re-iteration over whatever stayed
// undistributed. Throws InfeasibleError when some supply cannot reach any
// demand even with every train available.
DistributionPlan distribute(const Instance& instance, const DistributorConfig& config = {});

struct CarryoverDiagnostic {
  CarryoverEntry entry;
  // Trains with the smallest original capacity on the cheapest full-capacity
  // route; raising their capacity is what would admit this carryover.
  std::vector<std::string> bottleneck_trains;

  bool operator==(const CarryoverDiagnostic&) const = default;
};

struct CarryoverReport {
  std::vector<CarryoverDiagnostic> entries;

  bool operator==(const CarryoverReport&) const = default;
};

CarryoverReport carryover_report(const DistributionPlan& plan, const Instance& instance,
                                 const DistributorConfig& config = {});

}  // namespace railplan
