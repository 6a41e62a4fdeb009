#include "railplan/distributor.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>

#include "railplan/transport_lp.hpp"

namespace railplan {

double workload_factor(const WorkloadInputs& inputs) {
  if (inputs.cars_per_loco <= 0) throw std::invalid_argument("cars_per_loco must be positive");
  if (inputs.sigma_max < 1.0) throw std::invalid_argument("sigma_max must be at least 1");
  if (inputs.cars_present <= 0) return 1.0;
  if (inputs.shunting_locos <= 0) {
    throw std::invalid_argument(
        "station holds cars but has no shunting locomotive and no workload override");
  }
  const double sigma =
      1.0 + static_cast<double>(inputs.cars_present) /
                (static_cast<double>(inputs.shunting_locos) * inputs.cars_per_loco);
  return std::clamp(sigma, 1.0, inputs.sigma_max);
}

double station_sigma(const Station& station, const DistributorConfig& config) {
  if (station.workload_override) return *station.workload_override;
  WorkloadInputs inputs;
  inputs.cars_present = station.cars_present;
  inputs.shunting_locos = station.shunting_locos;
  inputs.draw_out_tracks = station.draw_out_tracks;
  inputs.cars_per_loco = config.cars_per_loco;
  inputs.sigma_max = config.sigma_max;
  try {
    return workload_factor(inputs);
  } catch (const std::invalid_argument& err) {
    throw std::invalid_argument("station " + station.id + ": " + err.what());
  }
}

std::vector<double> station_sigmas(const Network& network, const DistributorConfig& config) {
  std::vector<double> out;
  out.reserve(network.stations.size());
  for (const Station& s : network.stations) out.push_back(station_sigma(s, config));
  return out;
}

InfeasibleError::InfeasibleError(std::string group_id, std::string origin)
    : std::runtime_error("group " + group_id + ": supply at " + origin +
                         " cannot reach any demand station within the base period"),
      group_id_(std::move(group_id)),
      origin_(std::move(origin)) {}

BalancedGroup* DistributionState::find_group(const std::string& group_id) {
  for (auto& g : groups) {
    if (g.group_id == group_id) return &g;
  }
  return nullptr;
}

namespace {

void shrink(std::map<std::string, int>& counts, const std::string& key, int by,
            const char* what) {
  auto it = counts.find(key);
  if (it == counts.end() || it->second < by) {
    throw std::logic_error(std::string("commitment exceeds remaining ") + what + " at " + key);
  }
  it->second -= by;
  if (it->second == 0) counts.erase(it);
}

void apply_assignment(DistributionState& state, const Assignment& a) {
  BalancedGroup* group = state.find_group(a.group_id);
  if (group == nullptr) throw std::logic_error("unknown group " + a.group_id);
  shrink(group->supply, a.origin, a.count, "supply");
  shrink(group->demand, a.destination, a.count, "demand");
  for (const AssignmentLeg& leg : a.legs) {
    if (leg.train) state.ledger.debit(*leg.train, a.count);
  }
}

// Groups with a stated priority come first, higher rank first; the rest
// follow in group-id order.
struct GroupOrderKey {
  bool unprioritized = false;
  int negated_rank = 0;
  std::string group_id;

  auto operator<=>(const GroupOrderKey&) const = default;
};

GroupOrderKey group_order_key(const BalancedGroup& g) {
  if (g.priority) return {false, -*g.priority, g.group_id};
  return {true, 0, g.group_id};
}

struct Proposal {
  Minutes cost = 0;
  GroupOrderKey order;
  std::string origin;
  std::string destination;
  size_t group_index = 0;
  int count = 0;

  bool operator<(const Proposal& other) const {
    if (cost != other.cost) return cost < other.cost;
    if (order != other.order) return order < other.order;
    if (origin != other.origin) return origin < other.origin;
    return destination < other.destination;
  }
};

std::vector<AssignmentLeg> legs_along(const RouteTable& table, const Network& net,
                                      const std::vector<int>& route) {
  std::vector<AssignmentLeg> legs;
  for (size_t k = 0; k + 1 < route.size(); ++k) {
    const auto& entry = table.entries[static_cast<size_t>(route[k + 1])];
    legs.push_back({net.station(route[k]).id, net.station(route[k + 1]).id, entry->leg_train});
  }
  return legs;
}

}  // namespace

DistributionState next_iteration_state(DistributionState state,
                                       const std::vector<Assignment>& committed) {
  for (const Assignment& a : committed) apply_assignment(state, a);
  return state;
}

DistributionPlan distribute(const Instance& instance, const DistributorConfig& config) {
  require_valid(instance);

  const Network net = build_network(instance);
  const std::vector<double> sigma = station_sigmas(net, config);

  const std::string& connecting = instance.connecting_station();
  DistributionState state{{}, CapacityLedger(net)};
  for (const CarGroup& g : instance.groups) {
    state.groups.push_back(balance_group(g, instance.demands, connecting));
  }

  // Hard infeasibility: even with every train available some supply reaches
  // no demand station of its group. Anything weaker is carryover, not error.
  {
    std::map<int, RouteTable> full_tables;
    const CapacityLedger full(net);
    for (const BalancedGroup& g : state.groups) {
      for (const auto& [origin, count] : g.supply) {
        const int origin_idx = net.index_of(origin);
        auto [it, inserted] = full_tables.try_emplace(origin_idx);
        if (inserted) it->second = route_table_from(origin_idx, net, sigma, full);
        bool reaches_demand = false;
        for (const auto& [dest, wanted] : g.demand) {
          if (it->second.reachable(net.index_of(dest))) {
            reaches_demand = true;
            break;
          }
        }
        if (!reaches_demand) throw InfeasibleError(g.group_id, origin);
      }
    }
  }

  const int max_iterations = std::max(
      1, config.max_iterations.value_or(1 + static_cast<int>(instance.departures.size())));

  DistributionPlan plan;
  std::vector<CarryoverEntry> last_unplaced;

  while (plan.iterations_used < max_iterations) {
    bool any_supply = false;
    for (const BalancedGroup& g : state.groups) any_supply |= !g.supply.empty();
    if (!any_supply) break;
    ++plan.iterations_used;

    // Route tables for every origin still holding supply, against the
    // current ledger. Costs are group-independent, so tables are shared.
    std::map<int, RouteTable> tables;
    for (const BalancedGroup& g : state.groups) {
      for (const auto& [origin, count] : g.supply) {
        const int origin_idx = net.index_of(origin);
        if (!tables.count(origin_idx)) {
          tables.emplace(origin_idx, route_table_from(origin_idx, net, sigma, state.ledger));
        }
      }
    }

    // One transportation solve per group on its remaining supplies/demands.
    std::vector<Proposal> proposals;
    std::vector<CarryoverEntry> unplaced;
    for (size_t gi = 0; gi < state.groups.size(); ++gi) {
      const BalancedGroup& g = state.groups[gi];
      if (g.supply.empty()) continue;

      TransportInstance lp;
      for (const auto& [station, count] : g.supply) {
        lp.origin_ids.push_back(station);
        lp.supply.push_back(count);
      }
      for (const auto& [station, count] : g.demand) {
        lp.destination_ids.push_back(station);
        lp.demand.push_back(count);
      }
      lp.cost.assign(lp.origin_ids.size(), {});
      for (size_t i = 0; i < lp.origin_ids.size(); ++i) {
        const RouteTable& table = tables.at(net.index_of(lp.origin_ids[i]));
        for (const auto& dest : lp.destination_ids) {
          lp.cost[i].push_back(delivery_cost(table, net.index_of(dest)));
        }
      }

      const TransportSolution lp_solution = solve_transportation(lp);
      for (size_t i = 0; i < lp.origin_ids.size(); ++i) {
        for (size_t j = 0; j < lp.destination_ids.size(); ++j) {
          const int flow = lp_solution.flow[i][j];
          if (flow == 0) continue;
          if (lp.cost[i][j]) {
            proposals.push_back({*lp.cost[i][j], group_order_key(g), lp.origin_ids[i],
                                 lp.destination_ids[j], gi, flow});
          } else {
            // No route this iteration; the cars stay at their origin.
            unplaced.push_back({g.group_id, lp.origin_ids[i], lp.destination_ids[j], flow});
          }
        }
      }
    }
    std::sort(proposals.begin(), proposals.end());

    // Commit in ascending cost order; each commitment is capped by the
    // tightest remaining train capacity along its route and debits every
    // scheduled leg.
    int committed_total = 0;
    for (const Proposal& p : proposals) {
      const RouteTable& table = tables.at(net.index_of(p.origin));
      const std::vector<int> route = table.route_to(net.index_of(p.destination));
      const std::vector<AssignmentLeg> legs = legs_along(table, net, route);

      int cap = std::numeric_limits<int>::max();
      for (const AssignmentLeg& leg : legs) {
        if (leg.train) cap = std::min(cap, state.ledger.remaining(*leg.train));
      }
      const int take = std::min(p.count, cap);
      if (take > 0) {
        Assignment a;
        a.group_id = state.groups[p.group_index].group_id;
        a.origin = p.origin;
        a.destination = p.destination;
        a.count = take;
        a.cost = p.cost;
        a.route.reserve(route.size());
        for (int idx : route) a.route.push_back(net.station(idx).id);
        a.legs = legs;
        state = next_iteration_state(std::move(state), {a});
        plan.assignments.push_back(std::move(a));
        committed_total += take;
      }
      if (take < p.count) {
        unplaced.push_back(
            {state.groups[p.group_index].group_id, p.origin, p.destination, p.count - take});
      }
    }

    last_unplaced = std::move(unplaced);
    if (last_unplaced.empty()) break;     // everything placed
    if (committed_total == 0) break;      // no remaining train can move the rest
  }

  plan.carryover = std::move(last_unplaced);
  for (const Assignment& a : plan.assignments) {
    plan.total_cost += static_cast<std::int64_t>(a.cost) * a.count;
  }
  return plan;
}

CarryoverReport carryover_report(const DistributionPlan& plan, const Instance& instance,
                                 const DistributorConfig& config) {
  CarryoverReport report;
  if (plan.carryover.empty()) return report;

  const Network net = build_network(instance);
  const std::vector<double> sigma = station_sigmas(net, config);
  const CapacityLedger full(net);

  std::map<int, RouteTable> tables;
  for (const CarryoverEntry& entry : plan.carryover) {
    const int origin_idx = net.index_of(entry.origin);
    auto [it, inserted] = tables.try_emplace(origin_idx);
    if (inserted) it->second = route_table_from(origin_idx, net, sigma, full);

    CarryoverDiagnostic diag{entry, {}};
    const std::vector<int> route = it->second.route_to(net.index_of(entry.destination));
    int min_capacity = std::numeric_limits<int>::max();
    std::vector<std::string> trains_by_capacity;
    for (size_t k = 0; k + 1 < route.size(); ++k) {
      const auto& leg_train = it->second.entries[static_cast<size_t>(route[k + 1])]->leg_train;
      if (!leg_train) continue;
      const int capacity = net.train_capacity.at(*leg_train);
      if (capacity < min_capacity) {
        min_capacity = capacity;
        trains_by_capacity = {*leg_train};
      } else if (capacity == min_capacity) {
        trains_by_capacity.push_back(*leg_train);
      }
    }
    diag.bottleneck_trains = std::move(trains_by_capacity);
    report.entries.push_back(std::move(diag));
  }
  return report;
}

}  // namespace railplan
