#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "railplan/model.hpp"

namespace railplan {

// A balanced single-group transportation problem. Total supply must equal
// total demand; a nullopt cost marks an unreachable origin/destination pair.
struct TransportInstance {
  std::vector<std::string> origin_ids;
  std::vector<int> supply;
  std::vector<std::string> destination_ids;
  std::vector<int> demand;
  std::vector<std::vector<std::optional<Minutes>>> cost;  // [origin][destination]
};

struct TransportSolution {
  std::vector<std::vector<int>> flow;  // integral, row sums = supply, column sums = demand
  std::int64_t objective = 0;          // over reachable cells
  // Origins whose supply could only be placed on unreachable pairs. Empty for
  // a feasible instance; when non-empty, flow still balances but carries the
  // stranded amounts on unreachable cells.
  std::vector<std::string> blocked_origins;

  bool feasible() const { return blocked_origins.empty(); }
};

// Exact tableau simplex (u-v method) with a north-west-corner start.
// Entering cell: most negative reduced cost, ties to the smallest (row,
// column); after 1000 pivots the entering rule switches to Bland's to
// guarantee termination. Unreachable pairs carry a big-M cost of
// (1 + max finite cost) * total supply, so any positive flow left on them at
// the optimum is an exact infeasibility signal.
TransportSolution solve_transportation(const TransportInstance& instance);

// Dual-feasibility certificate: true iff potentials u, v exist with
// u_i + v_j = cost on every positive-flow cell and u_i + v_j <= cost on every
// reachable cell. Returns false when the flow is not a balanced feasible
// integral solution of the instance.
bool verify_optimality(const TransportInstance& instance, const TransportSolution& solution);

}  // namespace railplan
