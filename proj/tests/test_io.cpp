#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "railplan/generator.hpp"
#include "railplan/io.hpp"

using namespace railplan;

namespace {

const char* kMinimalDocument = R"({
  "base_period_length": 600,
  "stations": [
    {"id": "A", "processing_time": 10, "cars_present": 0, "shunting_locos": 1,
     "draw_out_tracks": 1, "is_connecting": true},
    {"id": "B", "processing_time": 0, "cars_present": 0, "shunting_locos": 1,
     "draw_out_tracks": 1, "is_connecting": false}
  ],
  "spans": [{"from": "A", "to": "B", "travel_time": 25, "mode": "free"}],
  "departures": [],
  "groups": [{"group_id": "G1", "total": 2, "located": {"A": 2}}],
  "demands": [{"group_id": "G1", "destination": "B", "count": 2}]
})";

std::filesystem::path temp_file(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "railplan_io_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

TEST_CASE("a minimal document parses into the expected instance") {
  const Instance inst = parse_instance(std::string(kMinimalDocument));
  CHECK(inst.base_period_length == 600);
  CHECK(inst.stations.size() == 2);
  CHECK(inst.stations[0].is_connecting);
  CHECK(inst.spans.size() == 1);
  CHECK(inst.groups[0].located.at("A") == 2);
  CHECK(inst.demands[0].destination == "B");
}

TEST_CASE("emit then parse reproduces the instance exactly") {
  const Instance original = parse_instance(std::string(kMinimalDocument));
  CHECK(parse_instance(emit_instance(original)) == original);

  const Instance scheduled = fixtures::five_cars_two_trains();
  CHECK(parse_instance(emit_instance(scheduled)) == scheduled);
}

TEST_CASE("generated instances survive the round trip and stay valid") {
  for (std::uint64_t seed = 500; seed < 515; ++seed) {
    const Instance inst = generate_instance(seed);
    const std::string text = emit_instance(inst);
    const Instance back = parse_instance(text);
    CHECK(back == inst);
    CHECK(validate_instance(back).empty());
    CHECK(emit_instance(back) == text);
  }
}

TEST_CASE("missing fields are named in the parse error") {
  std::string text(kMinimalDocument);
  const auto pos = text.find("\"base_period_length\": 600,");
  text.erase(pos, std::string("\"base_period_length\": 600,").size());
  try {
    parse_instance(text);
    FAIL("expected ParseError");
  } catch (const ParseError& err) {
    CHECK(std::string(err.what()).find("base_period_length") != std::string::npos);
  }
}

TEST_CASE("non-JSON input is a parse error") {
  CHECK_THROWS_AS(parse_instance(std::string("stations: nope")), ParseError);
}

TEST_CASE("validation violations surface through parsing") {
  std::string text(kMinimalDocument);
  SUBCASE("negative capacity") {
    const std::string needle = "\"departures\": []";
    text.replace(text.find(needle), needle.size(),
                 "\"departures\": [{\"train_id\": \"T1\", \"station\": \"A\", "
                 "\"span\": {\"from\": \"A\", \"to\": \"B\"}, \"depart_time\": 5, "
                 "\"capacity\": -3}]");
    try {
      parse_instance(text);
      FAIL("expected ValidationError");
    } catch (const ValidationError& err) {
      CHECK(std::string(err.what()).find("departures[0].capacity") != std::string::npos);
    }
  }
  SUBCASE("unknown station") {
    const std::string needle = "\"to\": \"B\", \"travel_time\": 25";
    text.replace(text.find(needle), needle.size(), "\"to\": \"X\", \"travel_time\": 25");
    CHECK_THROWS_AS(parse_instance(text), ValidationError);
  }
}

TEST_CASE("empty plans render a readable table") {
  DistributionPlan plan;
  const std::string table = emit_plan(plan, PlanFormat::table);
  CHECK(table.find("no assignments") != std::string::npos);
  CHECK(table.find("total cost 0") != std::string::npos);
  CHECK(table.find("carryover: none") != std::string::npos);
}

TEST_CASE("assignments render with route and trains") {
  const DistributionPlan plan = distribute(fixtures::five_cars_two_trains());
  const std::string table = emit_plan(plan, PlanFormat::table);
  CHECK(table.find("A->B->C") != std::string::npos);
  CHECK(table.find("T1,free") != std::string::npos);
  CHECK(table.find("T2,free") != std::string::npos);
  CHECK(table.find("total cost 305") != std::string::npos);
}

TEST_CASE("structured plans parse back to the same plan") {
  const DistributionPlan plan = distribute(fixtures::capacity_starved());
  const std::string text = emit_plan(plan, PlanFormat::structured);
  CHECK(parse_plan(text) == plan);
  CHECK(emit_plan(parse_plan(text), PlanFormat::structured) == text);
}

TEST_CASE("cli plans an instance file and reports carryover via the exit code") {
  const auto input = temp_file("ok.json");
  const auto output = temp_file("ok_plan.txt");
  std::ofstream(input) << emit_instance(fixtures::five_cars_two_trains());

  CHECK(run_cli({"--input", input.string(), "--output", output.string()}) == 0);
  CHECK(slurp(output).find("distribution plan") != std::string::npos);

  const auto starved = temp_file("starved.json");
  std::ofstream(starved) << emit_instance(fixtures::capacity_starved());
  CHECK(run_cli({"--input", starved.string(), "--output", output.string()}) == 2);
  CHECK(slurp(output).find("carryover") != std::string::npos);
  CHECK(slurp(output).find("T1") != std::string::npos);  // bottleneck named
}

TEST_CASE("cli errors exit with code 1") {
  CHECK(run_cli({"--input", "/nonexistent/missing.json"}) == 1);
  CHECK(run_cli({}) == 1);  // --input required
  CHECK(run_cli({"--format", "sideways"}) == 1);
}

TEST_CASE("cli output is byte-identical across runs") {
  const auto input = temp_file("det.json");
  std::ofstream(input) << emit_instance(fixtures::five_cars_two_trains());
  for (const std::string format : {"table", "structured"}) {
    const auto out1 = temp_file("det1_" + format);
    const auto out2 = temp_file("det2_" + format);
    CHECK(run_cli({"--input", input.string(), "--output", out1.string(), "--format", format}) ==
          0);
    CHECK(run_cli({"--input", input.string(), "--output", out2.string(), "--format", format}) ==
          0);
    const std::string bytes = slurp(out1);
    CHECK(!bytes.empty());
    CHECK(bytes == slurp(out2));
  }
}

TEST_CASE("cli --generate writes a valid instance") {
  const auto output = temp_file("generated.json");
  CHECK(run_cli({"--generate", "--seed", "42", "--output", output.string()}) == 0);
  const Instance inst = parse_instance_file(output.string());
  CHECK(validate_instance(inst).empty());

  const auto output2 = temp_file("generated2.json");
  CHECK(run_cli({"--generate", "--seed", "42", "--output", output2.string()}) == 0);
  CHECK(slurp(output) == slurp(output2));
}
