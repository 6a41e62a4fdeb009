#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "railplan/distributor.hpp"
#include "railplan/model.hpp"

namespace railplan {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Instance documents are JSON mirroring the model types field for field.
// Optional fields (workload_override, priority, loading_area_label) are
// omitted when absent, so emit/parse round-trips are lossless.
Instance parse_instance(std::istream& in);
Instance parse_instance(const std::string& text);
Instance parse_instance_file(const std::string& path);
std::string emit_instance(const Instance& instance);

enum class PlanFormat { table, structured };

// table: one aligned row per assignment plus a carryover section.
// structured: JSON with assignments[], carryover[], iterations_used,
// total_cost; parse_plan reads it back losslessly.
std::string emit_plan(const DistributionPlan& plan, PlanFormat format);
std::string emit_plan(const DistributionPlan& plan, PlanFormat format,
                      const CarryoverReport& report);
DistributionPlan parse_plan(const std::string& text);

// Command-line driver. Exit codes: 0 success with everything placed,
// 2 success with carryover left for the next base period, 1 any error.
// Diagnostics go to stderr only.
int run_cli(const std::vector<std::string>& args);

}  // namespace railplan
