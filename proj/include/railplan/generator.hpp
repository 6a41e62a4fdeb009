#pragma once

#include <cstdint>

#include "railplan/model.hpp"

namespace railplan {

// Knobs for random but always-valid instances. With ensure_reachable set the
// generator retries until every balanced supply/demand pair of every group is
// routable with all trains available, so the instance is fully plannable.
struct GeneratorParams {
  int min_stations = 2;
  int max_stations = 5;  // at most 12
  int max_groups = 3;    // 0 generates a schedule-only instance
  int max_total_supply = 20;
  int max_departures_per_span = 3;
  int max_capacity = 12;
  Minutes base_period = 1440;
  int scheduled_share_percent = 50;  // chance a directed span runs on the schedule
  bool ensure_reachable = true;
};

// Deterministic: the same seed and params always yield the same instance.
Instance generate_instance(std::uint64_t seed, const GeneratorParams& params = {});

}  // namespace railplan
