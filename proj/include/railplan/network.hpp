#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "railplan/model.hpp"

namespace railplan {

struct Departure {
  std::string train_id;
  Minutes depart_time = 0;
  int capacity = 0;

  bool operator==(const Departure&) const = default;
};

struct NetworkArc {
  int from = -1;
  int to = -1;
  Minutes travel_time = 0;
  SpanMode mode = SpanMode::free;
  // Sorted by depart_time; departures at the same minute keep input order.
  std::vector<Departure> departures;
};

// Immutable adjacency over an instance. Stations keep instance order; arcs
// are directed.
struct Network {
  std::vector<Station> stations;
  std::vector<NetworkArc> arcs;
  std::vector<std::vector<int>> out_arcs;  // station index -> arc indices
  std::map<std::string, int> station_index;
  std::map<std::string, int> train_capacity;  // original capacity per train

  int index_of(const std::string& station_id) const;
  int find_arc(int from, int to) const;  // -1 when no such span
  const Station& station(int idx) const { return stations[static_cast<size_t>(idx)]; }
};

Network build_network(const Instance& instance);

// Remaining capacity per train. A train at zero remaining is treated as
// nonexistent by arc costing.
class CapacityLedger {
 public:
  CapacityLedger() = default;
  explicit CapacityLedger(const Network& net) : remaining_(net.train_capacity) {}

  int remaining(const std::string& train_id) const;
  bool available(const std::string& train_id) const { return remaining(train_id) > 0; }
  void debit(const std::string& train_id, int count);
  const std::map<std::string, int>& remaining_by_train() const { return remaining_; }

 private:
  std::map<std::string, int> remaining_;
};

// Dwell before the cars can leave: processing time scaled by the workload
// factor, rounded half-up to whole minutes (a single rounding).
Minutes station_dwell(const Station& station, double sigma);

struct ArcCost {
  Minutes cost = 0;                     // span estimate p_ij
  Minutes wait = 0;                     // cost minus travel time
  std::optional<std::string> train_id;  // set iff the span is scheduled
};

// Free span: cost = dwell + travel time. Throws std::logic_error on a
// scheduled arc.
ArcCost static_arc_cost(const Station& origin, double sigma, const NetworkArc& arc);

// Scheduled span: the cars are ready at p_i + dwell and board the earliest
// departure at or after that moment that still has capacity; exhausted trains
// are skipped. Cost = (depart - p_i) + travel time. Returns nullopt when no
// departure in the base period can take them.
std::optional<ArcCost> scheduled_arc_cost(const Station& origin, double sigma, Minutes p_i,
                                          const NetworkArc& arc, const CapacityLedger& ledger);

struct RouteEntry {
  Minutes potential = 0;                // cumulative least travel time from the origin
  int predecessor = -1;                 // station index, -1 at the origin
  std::optional<std::string> leg_train; // train on the arc predecessor -> here
  int legs = 0;
};

struct RouteTable {
  int origin = -1;
  std::vector<std::optional<RouteEntry>> entries;  // by station index; nullopt = unreachable

  bool reachable(int station) const;
  // Station indices origin..station; empty when unreachable.
  std::vector<int> route_to(int station) const;
};

// Label-setting shortest-path expansion over the current ledger. Equal
// potentials are broken by fewer legs, then by the smaller predecessor
// station id, so plans are reproducible.
RouteTable route_table_from(int origin, const Network& net, const std::vector<double>& sigma,
                            const CapacityLedger& ledger);

// The delivery time estimate for the whole route: the destination potential.
std::optional<Minutes> delivery_cost(const RouteTable& table, int station);

}  // namespace railplan
