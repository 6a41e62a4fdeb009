#include "fixtures.hpp"

namespace railplan::fixtures {

namespace {

Station station(std::string id, Minutes processing, double sigma, bool connecting = false) {
  Station s;
  s.id = std::move(id);
  s.processing_time = processing;
  s.workload_override = sigma;
  s.is_connecting = connecting;
  return s;
}

Span span(std::string from, std::string to, Minutes travel, SpanMode mode) {
  return {std::move(from), std::move(to), travel, mode};
}

TrainDeparture train(std::string id, std::string from, std::string to, Minutes at, int capacity) {
  TrainDeparture d;
  d.train_id = std::move(id);
  d.station = from;
  d.span = {std::move(from), std::move(to)};
  d.depart_time = at;
  d.capacity = capacity;
  return d;
}

}  // namespace

Instance three_station_line() {
  Instance inst;
  inst.base_period_length = 1440;
  inst.stations = {station("A", 10, 1.2, true), station("B", 0, 1.0), station("C", 0, 1.0)};
  inst.spans = {span("A", "B", 25, SpanMode::free), span("B", "C", 15, SpanMode::free)};
  inst.groups = {{"G1", 3, {{"A", 3}}, std::nullopt}};
  inst.demands = {{"G1", "C", 3, std::nullopt}};
  return inst;
}

Instance five_cars_two_trains() {
  Instance inst;
  inst.base_period_length = 1440;
  inst.stations = {station("A", 5, 1.0, true), station("B", 0, 1.0), station("C", 0, 1.0)};
  inst.spans = {span("A", "B", 20, SpanMode::scheduled), span("B", "C", 15, SpanMode::free)};
  inst.departures = {train("T1", "A", "B", 10, 3), train("T2", "A", "B", 50, 3)};
  inst.groups = {{"G1", 5, {{"A", 5}}, std::nullopt}};
  inst.demands = {{"G1", "C", 5, std::nullopt}};
  return inst;
}

Instance capacity_starved() {
  Instance inst = five_cars_two_trains();
  inst.departures = {train("T1", "A", "B", 10, 4)};
  inst.groups = {{"G1", 6, {{"A", 6}}, std::nullopt}};
  inst.demands = {{"G1", "C", 6, std::nullopt}};
  return inst;
}

Instance two_groups_one_train(bool second_group_prioritized) {
  Instance inst = five_cars_two_trains();
  inst.departures = {train("T1", "A", "B", 10, 4)};
  inst.groups = {{"G1", 3, {{"A", 3}}, std::nullopt},
                 {"G2", 3, {{"A", 3}}, second_group_prioritized ? std::optional<int>(5)
                                                                : std::nullopt}};
  inst.demands = {{"G1", "C", 3, std::nullopt}, {"G2", "C", 3, std::nullopt}};
  return inst;
}

Instance parallel_routes() {
  Instance inst;
  inst.base_period_length = 1440;
  inst.stations = {station("A", 10, 1.0, true), station("B", 0, 1.0), station("C", 0, 1.0),
                   station("D", 0, 1.0)};
  inst.spans = {span("A", "B", 20, SpanMode::free), span("B", "D", 20, SpanMode::free),
                span("A", "C", 15, SpanMode::scheduled), span("C", "D", 5, SpanMode::free)};
  inst.departures = {train("TX", "A", "C", 25, 10)};
  return inst;
}

}  // namespace railplan::fixtures
