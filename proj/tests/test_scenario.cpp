#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qcmflow/errors.hpp"
#include "qcmflow/scenario.hpp"

using namespace qcm;

TEST_CASE("the bundled fig8 scenario parses to the expected shape") {
  const Scenario sc = load_scenario_file(QCMFLOW_SCENARIO_DIR "/fig8.json");
  CHECK(sc.name == "fig8");
  CHECK(sc.t_end == SimTime::ticks(15));
  CHECK(sc.topology.mode == SyncMode::kMixed);
  CHECK(sc.topology.poll_period == SimTime::ticks(5));
  CHECK(sc.topology.channel_delay == SimTime{});
  CHECK(sc.trace_mode == TraceMode::kLegacyFig8);
  REQUIRE(sc.topology.devices.size() == 1);
  const auto& dev = sc.topology.devices[0];
  CHECK(dev.id == 1);
  CHECK(dev.model == NodeModelKind::kMemory);
  REQUIRE(dev.script.entries.size() == 3);
  CHECK(dev.script.entries[0].time == SimTime::ticks(0));
  CHECK(dev.script.entries[1].time == SimTime::ticks(5));
  CHECK(dev.script.entries[2].time == SimTime::ticks(10));
  for (const auto& entry : dev.script.entries) {
    CHECK(entry.mutation.field == RecordField::kQcom);
    CHECK(std::get<std::uint16_t>(entry.mutation.value) == 3);
  }
}

TEST_CASE("defaults apply when optional keys are absent") {
  const Scenario sc = load_scenario(R"({"t_end": 4})");
  CHECK(sc.t_end == SimTime::ticks(4));
  CHECK(sc.topology.mode == SyncMode::kMixed);
  CHECK(sc.topology.poll_period == SimTime::ticks(5));
  CHECK(sc.trace_mode == TraceMode::kCanonical);
  CHECK(sc.topology.devices.empty());
  CHECK(sc.seed == 0);
}

TEST_CASE("fractional times parse exactly") {
  const Scenario sc = load_scenario(
      R"({"t_end": 2.5, "devices": [{"id": 1, "script":
          [{"t": 0.25, "field": "qchannel", "value": 3}]}]})");
  CHECK(sc.t_end == SimTime::microticks(2'500'000));
  CHECK(sc.topology.devices[0].script.entries[0].time ==
        SimTime::microticks(250'000));
}

TEST_CASE("every field kind has a JSON value form") {
  const Scenario sc = load_scenario(R"({
    "t_end": 10,
    "devices": [{
      "id": 2,
      "model": "repeater",
      "script": [
        {"t": 0, "field": "qchannel", "value": 7},
        {"t": 1, "field": "qchannel_spec",
         "value": {"wavelength_pm": 1550000, "symbol_rate_hz": 10}},
        {"t": 2, "field": "qcom", "value": "QKD"},
        {"t": 3, "field": "qcom_spec",
         "value": "000102030405060708090a0b0c0d0e0f"},
        {"t": 4, "field": "qec", "value": 0},
        {"t": 5, "field": "qec_spec",
         "value": {"n": 7, "k": 1, "d": 3}}
      ]
    }]
  })");
  const auto& entries = sc.topology.devices[0].script.entries;
  REQUIRE(entries.size() == 6);
  CHECK(std::get<std::uint16_t>(entries[0].mutation.value) == 7);
  const auto& chan = std::get<ChannelSpec>(entries[1].mutation.value);
  CHECK(chan.wavelength_pm == 1550000);
  CHECK(chan.mean_photon_milli == 0);
  CHECK(chan.symbol_rate_hz == 10);
  CHECK(std::get<std::uint16_t>(entries[2].mutation.value) == 1);
  CHECK(std::get<SpecBlob>(entries[3].mutation.value)[15] == 0x0f);
  const auto& ec = std::get<EcSpec>(entries[5].mutation.value);
  CHECK(ec.n == 7);
  CHECK(ec.verify_circuit_id == 0);
}

TEST_CASE("malformed scenarios are rejected with a pointed diagnostic") {
  CHECK_THROWS_AS(load_scenario("not json"), ConfigError);
  CHECK_THROWS_AS(load_scenario("[]"), ConfigError);
  CHECK_THROWS_AS(load_scenario("{}"), ConfigError);  // missing t_end
  CHECK_THROWS_WITH_AS(load_scenario(R"({"t_end": 1, "bogus": 2})"),
                       doctest::Contains("bogus"), ConfigError);
  CHECK_THROWS_AS(load_scenario(R"({"t_end": -1})"), ConfigError);
  CHECK_THROWS_AS(load_scenario(R"({"t_end": 1, "mode": "push"})"),
                  ConfigError);
  CHECK_THROWS_AS(load_scenario(R"({"t_end": 1, "poll_period": 0})"),
                  ConfigError);
  CHECK_THROWS_AS(load_scenario(R"({"t_end": 1, "trace_mode": "fig8"})"),
                  ConfigError);
  CHECK_THROWS_WITH_AS(
      load_scenario(
          R"({"t_end": 1, "devices": [{"id": 1}, {"id": 1}]})"),
      doctest::Contains("duplicate device id"), ConfigError);
  CHECK_THROWS_AS(
      load_scenario(R"({"t_end": 1, "devices": [{"model": "memory"}]})"),
      ConfigError);
  CHECK_THROWS_AS(
      load_scenario(R"({"t_end": 1, "devices": [{"id": 1, "model": "router"}]})"),
      ConfigError);
  // Script times must strictly increase.
  CHECK_THROWS_AS(load_scenario(R"({
    "t_end": 1,
    "devices": [{"id": 1, "script": [
      {"t": 2, "field": "qchannel", "value": 1},
      {"t": 2, "field": "qchannel", "value": 2}
    ]}]
  })"),
                  ConfigError);
  // Field/value mismatches.
  CHECK_THROWS_AS(load_scenario(R"({
    "t_end": 1,
    "devices": [{"id": 1, "script": [
      {"t": 0, "field": "qproto", "value": 1}
    ]}]
  })"),
                  ConfigError);
  CHECK_THROWS_AS(load_scenario(R"({
    "t_end": 1,
    "devices": [{"id": 1, "script": [
      {"t": 0, "field": "qchannel", "value": 70000}
    ]}]
  })"),
                  ConfigError);
  CHECK_THROWS_AS(load_scenario(R"({
    "t_end": 1,
    "devices": [{"id": 1, "script": [
      {"t": 0, "field": "qcom_spec", "value": "0011"}
    ]}]
  })"),
                  ConfigError);
  CHECK_THROWS_AS(load_scenario(R"({
    "t_end": 1,
    "devices": [{"id": 1, "script": [
      {"t": 0, "field": "qchannel_spec", "value": {"wavelength_nm": 1550}}
    ]}]
  })"),
                  ConfigError);
}

TEST_CASE("missing scenario files raise IoError naming the path") {
  CHECK_THROWS_WITH_AS(load_scenario_file("/no/such/file.json"),
                       doctest::Contains("/no/such/file.json"), IoError);
}
