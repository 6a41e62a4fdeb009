#include "railplan/io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "railplan/generator.hpp"

namespace railplan {

namespace {

using Json = nlohmann::ordered_json;

std::string type_name(const Json& value) { return value.type_name(); }

const Json& field(const Json& obj, const std::string& context, const char* name) {
  if (!obj.is_object()) {
    throw ParseError(context + ": expected an object, got " + type_name(obj));
  }
  auto it = obj.find(name);
  if (it == obj.end()) throw ParseError(context + ": missing field " + name);
  return *it;
}

int int_field(const Json& obj, const std::string& context, const char* name) {
  const Json& value = field(obj, context, name);
  if (!value.is_number_integer()) {
    throw ParseError(context + "." + name + ": expected an integer, got " + type_name(value));
  }
  return value.get<int>();
}

std::string string_field(const Json& obj, const std::string& context, const char* name) {
  const Json& value = field(obj, context, name);
  if (!value.is_string()) {
    throw ParseError(context + "." + name + ": expected a string, got " + type_name(value));
  }
  return value.get<std::string>();
}

const Json* optional_field(const Json& obj, const char* name) {
  auto it = obj.find(name);
  return it == obj.end() || it->is_null() ? nullptr : &*it;
}

std::vector<Json> array_field(const Json& obj, const std::string& context, const char* name) {
  const Json& value = field(obj, context, name);
  if (!value.is_array()) {
    throw ParseError(context + "." + name + ": expected an array, got " + type_name(value));
  }
  return std::vector<Json>(value.begin(), value.end());
}

std::string item(const char* name, size_t i) {
  return std::string(name) + "[" + std::to_string(i) + "]";
}

Json parse_document(const std::string& text, const char* what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    throw ParseError(std::string(what) + " is not valid JSON: " + err.what());
  }
}

}  // namespace

Instance parse_instance(const std::string& text) {
  const Json doc = parse_document(text, "instance document");
  Instance inst;
  inst.base_period_length = int_field(doc, "instance", "base_period_length");

  size_t i = 0;
  for (const Json& j : array_field(doc, "instance", "stations")) {
    const std::string context = item("stations", i++);
    Station s;
    s.id = string_field(j, context, "id");
    s.processing_time = int_field(j, context, "processing_time");
    s.cars_present = int_field(j, context, "cars_present");
    s.shunting_locos = int_field(j, context, "shunting_locos");
    s.draw_out_tracks = int_field(j, context, "draw_out_tracks");
    if (const Json* v = optional_field(j, "workload_override")) {
      if (!v->is_number()) throw ParseError(context + ".workload_override: expected a number");
      s.workload_override = v->get<double>();
    }
    if (const Json* v = optional_field(j, "is_connecting")) {
      if (!v->is_boolean()) throw ParseError(context + ".is_connecting: expected a boolean");
      s.is_connecting = v->get<bool>();
    }
    inst.stations.push_back(std::move(s));
  }

  i = 0;
  for (const Json& j : array_field(doc, "instance", "spans")) {
    const std::string context = item("spans", i++);
    Span sp;
    sp.from = string_field(j, context, "from");
    sp.to = string_field(j, context, "to");
    sp.travel_time = int_field(j, context, "travel_time");
    const std::string mode = string_field(j, context, "mode");
    if (mode == "free") {
      sp.mode = SpanMode::free;
    } else if (mode == "scheduled") {
      sp.mode = SpanMode::scheduled;
    } else {
      throw ParseError(context + ".mode: expected \"free\" or \"scheduled\", got \"" + mode +
                       "\"");
    }
    inst.spans.push_back(std::move(sp));
  }

  i = 0;
  for (const Json& j : array_field(doc, "instance", "departures")) {
    const std::string context = item("departures", i++);
    TrainDeparture d;
    d.train_id = string_field(j, context, "train_id");
    d.station = string_field(j, context, "station");
    const Json& span = field(j, context, "span");
    d.span.from = string_field(span, context + ".span", "from");
    d.span.to = string_field(span, context + ".span", "to");
    d.depart_time = int_field(j, context, "depart_time");
    d.capacity = int_field(j, context, "capacity");
    inst.departures.push_back(std::move(d));
  }

  i = 0;
  for (const Json& j : array_field(doc, "instance", "groups")) {
    const std::string context = item("groups", i++);
    CarGroup g;
    g.group_id = string_field(j, context, "group_id");
    g.total = int_field(j, context, "total");
    const Json& located = field(j, context, "located");
    if (!located.is_object()) throw ParseError(context + ".located: expected an object");
    for (const auto& [station, count] : located.items()) {
      if (!count.is_number_integer()) {
        throw ParseError(context + ".located." + station + ": expected an integer");
      }
      g.located[station] = count.get<int>();
    }
    if (const Json* v = optional_field(j, "priority")) {
      if (!v->is_number_integer()) throw ParseError(context + ".priority: expected an integer");
      g.priority = v->get<int>();
    }
    inst.groups.push_back(std::move(g));
  }

  i = 0;
  for (const Json& j : array_field(doc, "instance", "demands")) {
    const std::string context = item("demands", i++);
    Demand d;
    d.group_id = string_field(j, context, "group_id");
    d.destination = string_field(j, context, "destination");
    d.count = int_field(j, context, "count");
    if (const Json* v = optional_field(j, "loading_area_label")) {
      if (!v->is_string()) throw ParseError(context + ".loading_area_label: expected a string");
      d.loading_area_label = v->get<std::string>();
    }
    inst.demands.push_back(std::move(d));
  }

  require_valid(inst);
  return inst;
}

Instance parse_instance(std::istream& in) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_instance(buffer.str());
}

Instance parse_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return parse_instance(in);
}

std::string emit_instance(const Instance& inst) {
  Json doc;
  doc["base_period_length"] = inst.base_period_length;
  doc["stations"] = Json::array();
  for (const Station& s : inst.stations) {
    Json j;
    j["id"] = s.id;
    j["processing_time"] = s.processing_time;
    j["cars_present"] = s.cars_present;
    j["shunting_locos"] = s.shunting_locos;
    j["draw_out_tracks"] = s.draw_out_tracks;
    if (s.workload_override) j["workload_override"] = *s.workload_override;
    j["is_connecting"] = s.is_connecting;
    doc["stations"].push_back(std::move(j));
  }
  doc["spans"] = Json::array();
  for (const Span& sp : inst.spans) {
    Json j;
    j["from"] = sp.from;
    j["to"] = sp.to;
    j["travel_time"] = sp.travel_time;
    j["mode"] = sp.mode == SpanMode::free ? "free" : "scheduled";
    doc["spans"].push_back(std::move(j));
  }
  doc["departures"] = Json::array();
  for (const TrainDeparture& d : inst.departures) {
    Json j;
    j["train_id"] = d.train_id;
    j["station"] = d.station;
    j["span"] = Json{{"from", d.span.from}, {"to", d.span.to}};
    j["depart_time"] = d.depart_time;
    j["capacity"] = d.capacity;
    doc["departures"].push_back(std::move(j));
  }
  doc["groups"] = Json::array();
  for (const CarGroup& g : inst.groups) {
    Json j;
    j["group_id"] = g.group_id;
    j["total"] = g.total;
    j["located"] = Json::object();
    for (const auto& [station, count] : g.located) j["located"][station] = count;
    if (g.priority) j["priority"] = *g.priority;
    doc["groups"].push_back(std::move(j));
  }
  doc["demands"] = Json::array();
  for (const Demand& d : inst.demands) {
    Json j;
    j["group_id"] = d.group_id;
    j["destination"] = d.destination;
    j["count"] = d.count;
    if (d.loading_area_label) j["loading_area_label"] = *d.loading_area_label;
    doc["demands"].push_back(std::move(j));
  }
  return doc.dump(2) + "\n";
}

namespace {

constexpr const char* kFreeLeg = "free";

Json plan_to_json(const DistributionPlan& plan) {
  Json doc;
  doc["assignments"] = Json::array();
  for (const Assignment& a : plan.assignments) {
    Json j;
    j["group_id"] = a.group_id;
    j["origin"] = a.origin;
    j["destination"] = a.destination;
    j["count"] = a.count;
    j["cost"] = a.cost;
    j["route"] = a.route;
    j["legs"] = Json::array();
    for (const AssignmentLeg& leg : a.legs) {
      j["legs"].push_back(Json{{"from", leg.from},
                               {"to", leg.to},
                               {"train", leg.train ? *leg.train : kFreeLeg}});
    }
    doc["assignments"].push_back(std::move(j));
  }
  doc["carryover"] = Json::array();
  for (const CarryoverEntry& c : plan.carryover) {
    doc["carryover"].push_back(Json{{"group_id", c.group_id},
                                    {"origin", c.origin},
                                    {"destination", c.destination},
                                    {"count", c.count}});
  }
  doc["iterations_used"] = plan.iterations_used;
  doc["total_cost"] = plan.total_cost;
  return doc;
}

std::string render_table(const DistributionPlan& plan, const CarryoverReport* report) {
  std::ostringstream out;
  out << "distribution plan: " << plan.assignments.size() << " assignment"
      << (plan.assignments.size() == 1 ? "" : "s") << ", " << plan.iterations_used
      << " iteration" << (plan.iterations_used == 1 ? "" : "s") << ", total cost "
      << plan.total_cost << " car-minutes\n\n";

  if (plan.assignments.empty()) {
    out << "no assignments\n";
  } else {
    std::vector<std::array<std::string, 7>> rows;
    rows.push_back({"group", "origin", "destination", "count", "cost", "route", "trains"});
    for (const Assignment& a : plan.assignments) {
      std::string route;
      for (const std::string& s : a.route) {
        if (!route.empty()) route += "->";
        route += s;
      }
      std::string trains;
      for (const AssignmentLeg& leg : a.legs) {
        if (!trains.empty()) trains += ",";
        trains += leg.train ? *leg.train : kFreeLeg;
      }
      if (trains.empty()) trains = "-";
      rows.push_back({a.group_id, a.origin, a.destination, std::to_string(a.count),
                      std::to_string(a.cost), route, trains});
    }
    std::array<size_t, 7> width{};
    for (const auto& row : rows) {
      for (size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    }
    for (const auto& row : rows) {
      for (size_t c = 0; c < row.size(); ++c) {
        out << row[c];
        if (c + 1 < row.size()) out << std::string(width[c] - row[c].size() + 2, ' ');
      }
      out << "\n";
    }
  }

  out << "\n";
  if (plan.carryover.empty()) {
    out << "carryover: none\n";
  } else {
    int total = 0;
    for (const CarryoverEntry& c : plan.carryover) total += c.count;
    out << "carryover (for the next base period): " << total << " car"
        << (total == 1 ? "" : "s") << "\n";
    for (size_t i = 0; i < plan.carryover.size(); ++i) {
      const CarryoverEntry& c = plan.carryover[i];
      out << "  group " << c.group_id << ": " << c.count << " car" << (c.count == 1 ? "" : "s")
          << " at " << c.origin << " bound for " << c.destination;
      if (report != nullptr && i < report->entries.size() &&
          !report->entries[i].bottleneck_trains.empty()) {
        out << "  [raise capacity on:";
        for (const std::string& train : report->entries[i].bottleneck_trains) out << " " << train;
        out << "]";
      }
      out << "\n";
    }
  }
  return out.str();
}

}  // namespace

std::string emit_plan(const DistributionPlan& plan, PlanFormat format) {
  if (format == PlanFormat::structured) return plan_to_json(plan).dump(2) + "\n";
  return render_table(plan, nullptr);
}

std::string emit_plan(const DistributionPlan& plan, PlanFormat format,
                      const CarryoverReport& report) {
  if (format == PlanFormat::structured) return plan_to_json(plan).dump(2) + "\n";
  return render_table(plan, &report);
}

DistributionPlan parse_plan(const std::string& text) {
  const Json doc = parse_document(text, "plan document");
  DistributionPlan plan;

  size_t i = 0;
  for (const Json& j : array_field(doc, "plan", "assignments")) {
    const std::string context = item("assignments", i++);
    Assignment a;
    a.group_id = string_field(j, context, "group_id");
    a.origin = string_field(j, context, "origin");
    a.destination = string_field(j, context, "destination");
    a.count = int_field(j, context, "count");
    a.cost = int_field(j, context, "cost");
    for (const Json& s : array_field(j, context, "route")) {
      if (!s.is_string()) throw ParseError(context + ".route: expected station ids");
      a.route.push_back(s.get<std::string>());
    }
    size_t k = 0;
    for (const Json& leg_json : array_field(j, context, "legs")) {
      const std::string leg_context = context + "." + item("legs", k++);
      AssignmentLeg leg;
      leg.from = string_field(leg_json, leg_context, "from");
      leg.to = string_field(leg_json, leg_context, "to");
      const std::string train = string_field(leg_json, leg_context, "train");
      if (train != kFreeLeg) leg.train = train;
      a.legs.push_back(std::move(leg));
    }
    plan.assignments.push_back(std::move(a));
  }

  i = 0;
  for (const Json& j : array_field(doc, "plan", "carryover")) {
    const std::string context = item("carryover", i++);
    CarryoverEntry c;
    c.group_id = string_field(j, context, "group_id");
    c.origin = string_field(j, context, "origin");
    c.destination = string_field(j, context, "destination");
    c.count = int_field(j, context, "count");
    plan.carryover.push_back(std::move(c));
  }

  plan.iterations_used = int_field(doc, "plan", "iterations_used");
  const Json& total = field(doc, "plan", "total_cost");
  if (!total.is_number_integer()) throw ParseError("plan.total_cost: expected an integer");
  plan.total_cost = total.get<std::int64_t>();
  return plan;
}

namespace {

void write_output(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Plans the distribution of empty railcars to loading stations across a railway "
               "transport node, assigning them to scheduled trains."};
  app.name("railplan");

  std::string input;
  std::string output = "-";
  std::string format = "table";
  int max_iterations = 0;
  double sigma_max = 3.0;
  int cars_per_loco = 30;
  std::uint64_t seed = 1;
  bool generate = false;

  app.add_option("--input,-i", input, "instance file (JSON)");
  app.add_option("--output,-o", output, "output file, - for stdout")->capture_default_str();
  app.add_option("--format,-f", format, "plan rendering")
      ->check(CLI::IsMember({"table", "structured"}))
      ->capture_default_str();
  app.add_option("--max-iterations", max_iterations,
                 "iteration cap (default: 1 + number of departures)");
  app.add_option("--sigma-max", sigma_max, "workload factor ceiling")->capture_default_str();
  app.add_option("--cars-per-loco", cars_per_loco,
                 "cars one shunting locomotive handles per period")
      ->capture_default_str();
  app.add_option("--seed", seed, "random seed for --generate")->capture_default_str();
  app.add_flag("--generate", generate, "emit a random valid instance instead of planning");

  try {
    std::vector<const char*> argv{"railplan"};
    for (const std::string& a : args) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (generate) {
      write_output(output, emit_instance(generate_instance(seed)));
      return 0;
    }
    if (input.empty()) {
      std::cerr << "railplan: --input is required (or use --generate)" << std::endl;
      return 1;
    }

    DistributorConfig config;
    if (max_iterations > 0) config.max_iterations = max_iterations;
    config.sigma_max = sigma_max;
    config.cars_per_loco = cars_per_loco;

    const Instance instance = parse_instance_file(input);
    const DistributionPlan plan = distribute(instance, config);
    if (format == "structured") {
      write_output(output, emit_plan(plan, PlanFormat::structured));
    } else {
      const CarryoverReport report = carryover_report(plan, instance, config);
      write_output(output, emit_plan(plan, PlanFormat::table, report));
    }
    return plan.carryover.empty() ? 0 : 2;
  } catch (const std::exception& err) {
    std::cerr << "railplan: " << err.what() << std::endl;
    return 1;
  }
}

}  // namespace railplan
