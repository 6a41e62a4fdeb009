#include "railplan/model.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace railplan {

const Station* Instance::find_station(const std::string& id) const {
  for (const auto& s : stations) {
    if (s.id == id) return &s;
  }
  return nullptr;
}

const std::string& Instance::connecting_station() const {
  for (const auto& s : stations) {
    if (s.is_connecting) return s.id;
  }
  throw std::logic_error("instance has no connecting station");
}

ValidationError::ValidationError(std::vector<Violation> violations)
    : std::runtime_error([&violations] {
        std::ostringstream msg;
        msg << "invalid instance (" << violations.size() << " violation"
            << (violations.size() == 1 ? "" : "s") << ")";
        for (const auto& v : violations) msg << "\n  " << v.path << ": " << v.message;
        return msg.str();
      }()),
      violations_(std::move(violations)) {}

void require_valid(const Instance& instance) {
  auto violations = validate_instance(instance);
  if (!violations.empty()) throw ValidationError(std::move(violations));
}

namespace {

void add(std::vector<Violation>& out, std::string path, std::string message) {
  out.push_back({std::move(path), std::move(message)});
}

std::string at(const char* field, size_t i) {
  return std::string(field) + "[" + std::to_string(i) + "]";
}

}  // namespace

std::vector<Violation> validate_instance(const Instance& in) {
  std::vector<Violation> v;

  if (in.base_period_length <= 0) {
    add(v, "base_period_length", "base period must be a positive number of minutes");
  }

  std::unordered_map<std::string, size_t> station_index;
  int connecting_count = 0;
  for (size_t i = 0; i < in.stations.size(); ++i) {
    const Station& s = in.stations[i];
    if (s.id.empty()) add(v, at("stations", i) + ".id", "empty station id");
    if (!station_index.emplace(s.id, i).second) {
      add(v, at("stations", i) + ".id", "duplicate station id " + s.id);
    }
    if (s.processing_time < 0) add(v, at("stations", i) + ".processing_time", "negative time");
    if (s.cars_present < 0) add(v, at("stations", i) + ".cars_present", "negative count");
    if (s.shunting_locos < 0) add(v, at("stations", i) + ".shunting_locos", "negative count");
    if (s.draw_out_tracks < 0) add(v, at("stations", i) + ".draw_out_tracks", "negative count");
    if (s.workload_override && *s.workload_override <= 0.0) {
      add(v, at("stations", i) + ".workload_override", "workload factor must be positive");
    }
    if (s.is_connecting) ++connecting_count;
  }
  if (connecting_count != 1) {
    add(v, "stations", "exactly one connecting station required (found " +
                           std::to_string(connecting_count) + ")");
  }

  auto known = [&](const std::string& id) { return station_index.count(id) > 0; };

  std::set<SpanRef> span_refs;
  for (size_t i = 0; i < in.spans.size(); ++i) {
    const Span& sp = in.spans[i];
    if (!known(sp.from)) add(v, at("spans", i) + ".from", "unknown station " + sp.from);
    if (!known(sp.to)) add(v, at("spans", i) + ".to", "unknown station " + sp.to);
    if (sp.from == sp.to) add(v, at("spans", i), "span endpoints must differ");
    if (sp.travel_time <= 0) add(v, at("spans", i) + ".travel_time", "travel time must be positive");
    if (!span_refs.insert({sp.from, sp.to}).second) {
      add(v, at("spans", i), "duplicate span " + sp.from + " -> " + sp.to);
    }
  }

  std::unordered_set<std::string> train_ids;
  std::set<SpanRef> spans_with_departures;
  for (size_t i = 0; i < in.departures.size(); ++i) {
    const TrainDeparture& d = in.departures[i];
    if (d.train_id.empty()) add(v, at("departures", i) + ".train_id", "empty train id");
    if (!train_ids.insert(d.train_id).second) {
      add(v, at("departures", i) + ".train_id", "duplicate train id " + d.train_id);
    }
    if (d.station != d.span.from) {
      add(v, at("departures", i) + ".station", "station must equal span.from");
    }
    auto span_it = std::find_if(in.spans.begin(), in.spans.end(), [&](const Span& sp) {
      return sp.from == d.span.from && sp.to == d.span.to;
    });
    if (span_it == in.spans.end()) {
      add(v, at("departures", i) + ".span",
          "no span " + d.span.from + " -> " + d.span.to + " in the instance");
    } else if (span_it->mode != SpanMode::scheduled) {
      add(v, at("departures", i) + ".span",
          "span " + d.span.from + " -> " + d.span.to + " is not scheduled");
    }
    if (d.depart_time < 0 || d.depart_time > in.base_period_length) {
      add(v, at("departures", i) + ".depart_time", "departure outside the base period");
    }
    if (d.capacity < 1) add(v, at("departures", i) + ".capacity", "capacity must be at least 1");
    spans_with_departures.insert(d.span);
  }
  for (size_t i = 0; i < in.spans.size(); ++i) {
    const Span& sp = in.spans[i];
    if (sp.mode == SpanMode::scheduled && !spans_with_departures.count({sp.from, sp.to})) {
      add(v, at("spans", i), "scheduled span " + sp.from + " -> " + sp.to +
                                 " has no train departures");
    }
  }

  std::unordered_set<std::string> group_ids;
  for (size_t i = 0; i < in.groups.size(); ++i) {
    const CarGroup& g = in.groups[i];
    if (g.group_id.empty()) add(v, at("groups", i) + ".group_id", "empty group id");
    if (!group_ids.insert(g.group_id).second) {
      add(v, at("groups", i) + ".group_id", "duplicate group id " + g.group_id);
    }
    if (g.total < 0) add(v, at("groups", i) + ".total", "negative count");
    int located_sum = 0;
    for (const auto& [station, count] : g.located) {
      if (!known(station)) {
        add(v, at("groups", i) + ".located." + station, "unknown station " + station);
      }
      if (count < 0) add(v, at("groups", i) + ".located." + station, "negative count");
      located_sum += count;
    }
    if (located_sum != g.total) {
      add(v, at("groups", i) + ".total",
          "located counts sum to " + std::to_string(located_sum) + ", total is " +
              std::to_string(g.total));
    }
  }

  std::set<std::pair<std::string, std::string>> demand_keys;
  for (size_t i = 0; i < in.demands.size(); ++i) {
    const Demand& d = in.demands[i];
    if (!group_ids.count(d.group_id)) {
      add(v, at("demands", i) + ".group_id", "unknown group " + d.group_id);
    }
    if (!known(d.destination)) {
      add(v, at("demands", i) + ".destination", "unknown station " + d.destination);
    }
    if (d.count < 0) add(v, at("demands", i) + ".count", "negative count");
    if (!demand_keys.insert({d.group_id, d.destination}).second) {
      add(v, at("demands", i), "duplicate demand for group " + d.group_id + " at " +
                                   d.destination);
    }
  }

  // Every station that carries supply or demand must sit in one connected
  // component of the span graph (ignoring direction; a two-way link is two
  // spans anyway). Schedule-level reachability is checked at routing time.
  if (v.empty()) {
    std::vector<std::vector<size_t>> adj(in.stations.size());
    for (const Span& sp : in.spans) {
      size_t a = station_index.at(sp.from);
      size_t b = station_index.at(sp.to);
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    std::vector<bool> carries(in.stations.size(), false);
    for (const CarGroup& g : in.groups) {
      for (const auto& [station, count] : g.located) {
        if (count > 0) carries[station_index.at(station)] = true;
      }
    }
    for (const Demand& d : in.demands) {
      if (d.count > 0) carries[station_index.at(d.destination)] = true;
    }
    size_t start = in.stations.size();
    for (size_t i = 0; i < carries.size(); ++i) {
      if (carries[i]) {
        start = i;
        break;
      }
    }
    if (start < in.stations.size()) {
      std::vector<bool> seen(in.stations.size(), false);
      std::vector<size_t> stack{start};
      seen[start] = true;
      while (!stack.empty()) {
        size_t cur = stack.back();
        stack.pop_back();
        for (size_t next : adj[cur]) {
          if (!seen[next]) {
            seen[next] = true;
            stack.push_back(next);
          }
        }
      }
      for (size_t i = 0; i < carries.size(); ++i) {
        if (carries[i] && !seen[i]) {
          add(v, "instance", "station " + in.stations[i].id +
                                 " carries supply or demand but has no span path to " +
                                 in.stations[start].id);
        }
      }
    }
  }

  return v;
}

int BalancedGroup::total_supply() const {
  int sum = 0;
  for (const auto& [station, count] : supply) sum += count;
  return sum;
}

int BalancedGroup::total_demand() const {
  int sum = 0;
  for (const auto& [station, count] : demand) sum += count;
  return sum;
}

BalancedGroup balance_group(const CarGroup& group, const std::vector<Demand>& demands,
                            const std::string& connecting_station) {
  BalancedGroup out;
  out.group_id = group.group_id;
  out.priority = group.priority;
  for (const auto& [station, count] : group.located) {
    if (count > 0) out.supply[station] += count;
  }
  for (const Demand& d : demands) {
    if (d.group_id == group.group_id && d.count > 0) out.demand[d.destination] += d.count;
  }

  const int surplus = out.total_supply() - out.total_demand();
  if (surplus > 0) {
    out.demand[connecting_station] += surplus;  // return of excess cars
  } else if (surplus < 0) {
    out.supply[connecting_station] += -surplus;  // order of lacking cars
  }
  return out;
}

}  // namespace railplan
