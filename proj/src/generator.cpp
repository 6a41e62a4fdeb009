#include "railplan/generator.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

#include "railplan/distributor.hpp"
#include "railplan/network.hpp"

namespace railplan {

namespace {

// Modulo keeps draws identical across standard libraries; distribution bias
// is irrelevant here.
int uniform(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

bool chance(std::mt19937_64& rng, int percent) { return uniform(rng, 1, 100) <= percent; }

// Splits total into `parts` positive addends.
std::vector<int> split(std::mt19937_64& rng, int total, int parts) {
  std::vector<int> out(static_cast<size_t>(parts), 0);
  int left = total;
  for (int i = 0; i < parts; ++i) {
    const int still_needed = parts - i - 1;
    const int take = (i == parts - 1) ? left : uniform(rng, 1, left - still_needed);
    out[static_cast<size_t>(i)] = take;
    left -= take;
  }
  return out;
}

Instance candidate(std::mt19937_64& rng, const GeneratorParams& p, int* train_counter) {
  Instance inst;
  inst.base_period_length = p.base_period;

  const int station_count = uniform(rng, p.min_stations, p.max_stations);
  const int connecting = uniform(rng, 0, station_count - 1);
  for (int i = 0; i < station_count; ++i) {
    Station s;
    s.id = std::string(1, static_cast<char>('A' + i));
    s.processing_time = uniform(rng, 0, 15);
    s.cars_present = uniform(rng, 0, 60);
    s.shunting_locos = uniform(rng, 1, 3);
    s.draw_out_tracks = uniform(rng, 1, 3);
    if (chance(rng, 25)) s.workload_override = 1.0 + 0.25 * uniform(rng, 0, 4);
    s.is_connecting = (i == connecting);
    inst.stations.push_back(std::move(s));
  }

  // Random connected undirected graph; every link is entered as two directed
  // spans with independent travel times and modes.
  std::set<std::pair<int, int>> links;
  for (int i = 1; i < station_count; ++i) {
    links.insert({uniform(rng, 0, i - 1), i});
  }
  const int extra = uniform(rng, 0, station_count - 1);
  for (int e = 0; e < extra && station_count >= 2; ++e) {
    const int a = uniform(rng, 0, station_count - 1);
    const int b = uniform(rng, 0, station_count - 1);
    if (a != b) links.insert({std::min(a, b), std::max(a, b)});
  }
  for (const auto& [a, b] : links) {
    for (const auto& [from, to] : {std::pair{a, b}, std::pair{b, a}}) {
      Span span;
      span.from = inst.stations[static_cast<size_t>(from)].id;
      span.to = inst.stations[static_cast<size_t>(to)].id;
      span.travel_time = uniform(rng, 5, 60);
      span.mode = chance(rng, p.scheduled_share_percent) ? SpanMode::scheduled : SpanMode::free;
      if (span.mode == SpanMode::scheduled) {
        const int departures = uniform(rng, 1, p.max_departures_per_span);
        for (int d = 0; d < departures; ++d) {
          TrainDeparture dep;
          dep.train_id = "T" + std::to_string(++*train_counter);
          dep.station = span.from;
          dep.span = {span.from, span.to};
          dep.depart_time = uniform(rng, 0, p.base_period);
          dep.capacity = uniform(rng, 1, p.max_capacity);
          inst.departures.push_back(std::move(dep));
        }
      }
      inst.spans.push_back(std::move(span));
    }
  }

  const int group_count = p.max_groups == 0 ? 0 : uniform(rng, 1, p.max_groups);
  for (int g = 0; g < group_count; ++g) {
    CarGroup group;
    group.group_id = "G" + std::to_string(g + 1);
    if (chance(rng, 30)) group.priority = uniform(rng, 1, 5);
    const int supply_total = uniform(rng, 1, std::max(1, p.max_total_supply / group_count));
    const int origin_count = uniform(rng, 1, std::min({station_count, 3, supply_total}));
    std::vector<int> origins;
    while (static_cast<int>(origins.size()) < origin_count) {
      const int s = uniform(rng, 0, station_count - 1);
      if (std::find(origins.begin(), origins.end(), s) == origins.end()) origins.push_back(s);
    }
    const auto parts = split(rng, supply_total, origin_count);
    for (int i = 0; i < origin_count; ++i) {
      group.located[inst.stations[static_cast<size_t>(origins[static_cast<size_t>(i)])].id] =
          parts[static_cast<size_t>(i)];
    }
    group.total = supply_total;
    inst.groups.push_back(group);

    // Demand roughly around the supply so both balancing directions occur.
    const int demand_total = uniform(rng, (supply_total + 1) / 2, supply_total * 3 / 2 + 1);
    if (demand_total > 0) {
      const int dest_count = uniform(rng, 1, std::min({station_count, 3, demand_total}));
      std::vector<int> dests;
      while (static_cast<int>(dests.size()) < dest_count) {
        const int s = uniform(rng, 0, station_count - 1);
        if (std::find(dests.begin(), dests.end(), s) == dests.end()) dests.push_back(s);
      }
      const auto demand_parts = split(rng, demand_total, dest_count);
      for (int i = 0; i < dest_count; ++i) {
        Demand d;
        d.group_id = group.group_id;
        d.destination = inst.stations[static_cast<size_t>(dests[static_cast<size_t>(i)])].id;
        d.count = demand_parts[static_cast<size_t>(i)];
        if (chance(rng, 20)) d.loading_area_label = "area-" + std::to_string(uniform(rng, 1, 9));
        inst.demands.push_back(std::move(d));
      }
    }
  }
  return inst;
}

bool fully_reachable(const Instance& inst) {
  const Network net = build_network(inst);
  const std::vector<double> sigma = station_sigmas(net, DistributorConfig{});
  const CapacityLedger full(net);
  const std::string& connecting = inst.connecting_station();

  std::map<int, RouteTable> tables;
  for (const CarGroup& g : inst.groups) {
    const BalancedGroup balanced = balance_group(g, inst.demands, connecting);
    for (const auto& [origin, supply] : balanced.supply) {
      const int origin_idx = net.index_of(origin);
      auto [it, inserted] = tables.try_emplace(origin_idx);
      if (inserted) it->second = route_table_from(origin_idx, net, sigma, full);
      for (const auto& [dest, demand] : balanced.demand) {
        if (!delivery_cost(it->second, net.index_of(dest))) return false;
      }
    }
  }
  return true;
}

}  // namespace

Instance generate_instance(std::uint64_t seed, const GeneratorParams& p) {
  if (p.min_stations < 2 || p.max_stations > 12 || p.min_stations > p.max_stations) {
    throw std::invalid_argument("station bounds must satisfy 2 <= min <= max <= 12");
  }
  std::mt19937_64 rng(seed);

  Instance last;
  for (int attempt = 0; attempt < 300; ++attempt) {
    int train_counter = 0;
    last = candidate(rng, p, &train_counter);
    if (!validate_instance(last).empty()) continue;  // not expected; retry
    if (!p.ensure_reachable || last.groups.empty() || fully_reachable(last)) return last;
  }
  // Pathological seed: fall back to an all-free network, which is always
  // routable once connected.
  for (Span& span : last.spans) span.mode = SpanMode::free;
  last.departures.clear();
  return last;
}

}  // namespace railplan
