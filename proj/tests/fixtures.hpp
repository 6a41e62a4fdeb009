#pragma once

#include "railplan/model.hpp"

namespace railplan::fixtures {

// A -- B -- C line on free spans. A is connecting, dwell at A is 12 minutes
// (processing 10 at workload 1.2), so the span costs are 37 and 15.
Instance three_station_line();

// 5 cars at A, demand 5 at C. A -> B is scheduled with trains T1 (t=10, Q=3)
// and T2 (t=50, Q=3); B -> C is free. Per-car delivery costs via T1/T2 are
// 45 and 85.
Instance five_cars_two_trains();

// Same shape but 6 cars against a single train of capacity 4: 4 cars can be
// placed, 2 become carryover.
Instance capacity_starved();

// Two groups of 3 cars each at A competing for a single train of capacity 4.
Instance two_groups_one_train(bool second_group_prioritized);

// Two parallel routes A->B->D (cost 50) and A->C->D (cost 45, one scheduled
// leg with a train at t=25).
Instance parallel_routes();

}  // namespace railplan::fixtures
