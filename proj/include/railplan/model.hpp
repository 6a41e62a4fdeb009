#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace railplan {

// All schedule quantities are whole minutes counted from the start of the
// base period (the planning day).
using Minutes = int;

enum class SpanMode { free, scheduled };

struct Station {
  std::string id;
  Minutes processing_time = 0;  // average dwell of transit cars at this station
  int cars_present = 0;
  int shunting_locos = 0;
  int draw_out_tracks = 0;
  std::optional<double> workload_override;  // fixes the workload factor when set
  bool is_connecting = false;               // interchange with the main-line railway

  bool operator==(const Station&) const = default;
};

struct SpanRef {
  std::string from;
  std::string to;

  bool operator==(const SpanRef&) const = default;
  auto operator<=>(const SpanRef&) const = default;
};

// Directed. A physical two-way span is entered as two spans, one per
// direction, because schedules are direction-specific.
struct Span {
  std::string from;
  std::string to;
  Minutes travel_time = 0;
  SpanMode mode = SpanMode::free;

  bool operator==(const Span&) const = default;
};

// One scheduled train on one span. A train traverses exactly one span; cars
// continuing past the far station re-enter train selection there.
struct TrainDeparture {
  std::string train_id;
  std::string station;  // departure station, must equal span.from
  SpanRef span;
  Minutes depart_time = 0;
  int capacity = 0;  // maximum railcars the train can take

  bool operator==(const TrainDeparture&) const = default;
};

// Interchangeable empty cars of one kind/owner. Owner restrictions are
// expressed through the demand pattern, not through per-group network costs.
struct CarGroup {
  std::string group_id;
  int total = 0;
  std::map<std::string, int> located;  // station id -> cars of this group there
  std::optional<int> priority;         // higher rank is served first at contention

  bool operator==(const CarGroup&) const = default;
};

struct Demand {
  std::string group_id;
  std::string destination;
  int count = 0;
  std::optional<std::string> loading_area_label;  // carried for reporting only

  bool operator==(const Demand&) const = default;
};

struct Instance {
  std::vector<Station> stations;
  std::vector<Span> spans;
  std::vector<TrainDeparture> departures;
  std::vector<CarGroup> groups;
  std::vector<Demand> demands;
  Minutes base_period_length = 0;

  bool operator==(const Instance&) const = default;

  const Station* find_station(const std::string& id) const;
  // Requires a validated instance (exactly one connecting station).
  const std::string& connecting_station() const;
};

struct Violation {
  std::string path;  // e.g. "spans[2].to"
  std::string message;

  bool operator==(const Violation&) const = default;
};

// Checks every type invariant. Returns all violations found; empty means the
// instance is valid.
std::vector<Violation> validate_instance(const Instance& instance);

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

// Throws ValidationError listing every violation unless the instance is valid.
void require_valid(const Instance& instance);

// One group's supply/demand after balancing. Maps hold positive entries only.
struct BalancedGroup {
  std::string group_id;
  std::optional<int> priority;
  std::map<std::string, int> supply;  // station id -> cars to move
  std::map<std::string, int> demand;  // station id -> cars wanted

  int total_supply() const;
  int total_demand() const;

  bool operator==(const BalancedGroup&) const = default;
};

// Equalizes the group's supply and demand totals through the connecting
// station: a surplus becomes a demand there (return of excess cars), a
// deficit becomes a supply there (order of lacking cars). The connecting
// station is a real network node, so balancing flows pay real route costs.
BalancedGroup balance_group(const CarGroup& group, const std::vector<Demand>& demands,
                            const std::string& connecting_station);

}  // namespace railplan
