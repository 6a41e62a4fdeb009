#include "railplan/network.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace railplan {

int Network::index_of(const std::string& station_id) const {
  auto it = station_index.find(station_id);
  if (it == station_index.end()) {
    throw std::out_of_range("unknown station " + station_id);
  }
  return it->second;
}

int Network::find_arc(int from, int to) const {
  for (int arc : out_arcs[static_cast<size_t>(from)]) {
    if (arcs[static_cast<size_t>(arc)].to == to) return arc;
  }
  return -1;
}

Network build_network(const Instance& instance) {
  Network net;
  net.stations = instance.stations;
  for (size_t i = 0; i < net.stations.size(); ++i) {
    net.station_index[net.stations[i].id] = static_cast<int>(i);
  }
  net.out_arcs.resize(net.stations.size());

  for (const Span& sp : instance.spans) {
    NetworkArc arc;
    arc.from = net.index_of(sp.from);
    arc.to = net.index_of(sp.to);
    arc.travel_time = sp.travel_time;
    arc.mode = sp.mode;
    for (const TrainDeparture& d : instance.departures) {
      if (d.span.from == sp.from && d.span.to == sp.to) {
        arc.departures.push_back({d.train_id, d.depart_time, d.capacity});
      }
    }
    std::stable_sort(arc.departures.begin(), arc.departures.end(),
                     [](const Departure& a, const Departure& b) {
                       return a.depart_time < b.depart_time;
                     });
    net.out_arcs[static_cast<size_t>(arc.from)].push_back(static_cast<int>(net.arcs.size()));
    net.arcs.push_back(std::move(arc));
  }
  for (const TrainDeparture& d : instance.departures) {
    net.train_capacity[d.train_id] = d.capacity;
  }
  return net;
}

int CapacityLedger::remaining(const std::string& train_id) const {
  auto it = remaining_.find(train_id);
  return it == remaining_.end() ? 0 : it->second;
}

void CapacityLedger::debit(const std::string& train_id, int count) {
  auto it = remaining_.find(train_id);
  if (it == remaining_.end()) throw std::out_of_range("unknown train " + train_id);
  if (count < 0 || count > it->second) {
    throw std::logic_error("debit of " + std::to_string(count) + " cars exceeds remaining " +
                           std::to_string(it->second) + " on train " + train_id);
  }
  it->second -= count;
}

Minutes station_dwell(const Station& station, double sigma) {
  return static_cast<Minutes>(std::floor(static_cast<double>(station.processing_time) * sigma + 0.5));
}

ArcCost static_arc_cost(const Station& origin, double sigma, const NetworkArc& arc) {
  if (arc.mode != SpanMode::free) {
    throw std::logic_error("static_arc_cost called on a scheduled span");
  }
  const Minutes dwell = station_dwell(origin, sigma);
  return {dwell + arc.travel_time, dwell, std::nullopt};
}

std::optional<ArcCost> scheduled_arc_cost(const Station& origin, double sigma, Minutes p_i,
                                          const NetworkArc& arc, const CapacityLedger& ledger) {
  if (arc.mode != SpanMode::scheduled) {
    throw std::logic_error("scheduled_arc_cost called on a free span");
  }
  const Minutes ready = p_i + station_dwell(origin, sigma);
  for (const Departure& dep : arc.departures) {
    if (!ledger.available(dep.train_id)) continue;  // exhausted trains do not exist
    if (ready <= dep.depart_time) {
      return ArcCost{(dep.depart_time - p_i) + arc.travel_time, dep.depart_time - p_i,
                     dep.train_id};
    }
  }
  return std::nullopt;
}

bool RouteTable::reachable(int station) const {
  return station >= 0 && static_cast<size_t>(station) < entries.size() &&
         entries[static_cast<size_t>(station)].has_value();
}

std::vector<int> RouteTable::route_to(int station) const {
  if (!reachable(station)) return {};
  std::vector<int> route;
  for (int cur = station; cur != -1; cur = entries[static_cast<size_t>(cur)]->predecessor) {
    route.push_back(cur);
  }
  std::reverse(route.begin(), route.end());
  return route;
}

namespace {

struct Label {
  Minutes potential;
  int legs;
  std::string pred_id;  // "" for the origin label
  int station;
  int predecessor;
  std::optional<std::string> train;
};

struct LabelWorse {
  bool operator()(const Label& a, const Label& b) const {
    if (a.potential != b.potential) return a.potential > b.potential;
    if (a.legs != b.legs) return a.legs > b.legs;
    if (a.pred_id != b.pred_id) return a.pred_id > b.pred_id;
    return a.station > b.station;
  }
};

}  // namespace

RouteTable route_table_from(int origin, const Network& net, const std::vector<double>& sigma,
                            const CapacityLedger& ledger) {
  RouteTable table;
  table.origin = origin;
  table.entries.assign(net.stations.size(), std::nullopt);

  std::priority_queue<Label, std::vector<Label>, LabelWorse> frontier;
  frontier.push({0, 0, "", origin, -1, std::nullopt});

  while (!frontier.empty()) {
    Label label = frontier.top();
    frontier.pop();
    auto& entry = table.entries[static_cast<size_t>(label.station)];
    if (entry.has_value()) continue;  // already settled with the preferred label
    entry = RouteEntry{label.potential, label.predecessor, label.train, label.legs};

    const Station& here = net.station(label.station);
    for (int arc_idx : net.out_arcs[static_cast<size_t>(label.station)]) {
      const NetworkArc& arc = net.arcs[static_cast<size_t>(arc_idx)];
      if (table.entries[static_cast<size_t>(arc.to)].has_value()) continue;
      std::optional<ArcCost> cost;
      if (arc.mode == SpanMode::free) {
        cost = static_arc_cost(here, sigma[static_cast<size_t>(label.station)], arc);
      } else {
        cost = scheduled_arc_cost(here, sigma[static_cast<size_t>(label.station)],
                                  label.potential, arc, ledger);
      }
      if (!cost) continue;
      frontier.push({label.potential + cost->cost, label.legs + 1, here.id, arc.to,
                     label.station, cost->train_id});
    }
  }
  return table;
}

std::optional<Minutes> delivery_cost(const RouteTable& table, int station) {
  if (!table.reachable(station)) return std::nullopt;
  return table.entries[static_cast<size_t>(station)]->potential;
}

}  // namespace railplan
