#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <queue>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "qcmflow/agent.hpp"
#include "qcmflow/codec.hpp"
#include "qcmflow/controller.hpp"
#include "qcmflow/devices.hpp"
#include "qcmflow/record.hpp"
#include "qcmflow/sim_time.hpp"

namespace qcm {

// How the controller keeps its view in sync:
//  - kPoll:  timer-driven polling every poll_period ticks.
//  - kAsync: devices push full records unsolicited on every change.
//  - kMixed: devices signal a change, the controller requests on the spot.
enum class SyncMode { kPoll, kAsync, kMixed };

// Trace naming:
//  - kCanonical:  reception blocks list all six fields once each, unmasked.
//  - kLegacyFig8: five masked attribute lines with the historical names
//    (QPROTO for the protocol id, a duplicated QPROTO_SPEC line, and a
//    hyphenated QCHANNEL-SPEC), and every middleware write counts as a
//    sensed change even when the row value is unchanged.
enum class TraceMode { kCanonical, kLegacyFig8 };

enum class NodeModelKind { kMemory, kRepeater };

std::string_view sync_mode_name(SyncMode m);
SyncMode sync_mode_from_name(std::string_view name);
std::string_view trace_mode_name(TraceMode m);
TraceMode trace_mode_from_name(std::string_view name);
std::string_view node_model_name(NodeModelKind k);
NodeModelKind node_model_from_name(std::string_view name);

struct DeviceConfig {
  std::uint32_t id = 0;
  NodeModelKind model = NodeModelKind::kMemory;
  MutationScript script;
};

struct Topology {
  std::vector<DeviceConfig> devices;
  SimTime channel_delay;  // per message hop
  SyncMode mode = SyncMode::kMixed;
  SimTime poll_period = SimTime::ticks(5);
};

struct Scenario {
  std::string name;
  Topology topology;
  SimTime t_end;
  TraceMode trace_mode = TraceMode::kCanonical;
  std::uint64_t seed = 0;  // reserved for randomized device behavior
};

struct TraceEntry {
  SimTime time;
  std::string line;
};

struct Trace {
  std::vector<TraceEntry> entries;
  SimTime final_clock;

  // One line per entry plus the final clock rendered with one decimal,
  // each with a trailing newline.
  std::string render() const;
};

// ---------------------------------------------------------------------------
// Event kernel
// ---------------------------------------------------------------------------

struct Endpoint {
  enum class Kind { kController, kDevice } kind = Kind::kController;
  std::uint32_t device_id = 0;

  static Endpoint controller() { return {Kind::kController, 0}; }
  static Endpoint device(std::uint32_t id) { return {Kind::kDevice, id}; }

  friend auto operator<=>(const Endpoint&, const Endpoint&) = default;
};

struct WireMessage {
  Bytes frame;  // one encoded multipart segment
};
struct ChangeNotice {};  // device -> controller change signal (mixed mode)
using Payload = std::variant<WireMessage, ChangeNotice, ChangeCommand>;

struct MutationFire {
  std::uint32_t device_id = 0;
};
struct PollTimer {};
struct MsgDelivery {
  Endpoint src;
  Endpoint dst;
  Payload payload;
};
struct NodeStep {
  std::uint32_t device_id = 0;
  NodeEvent event;
};
using EventBody = std::variant<MutationFire, PollTimer, MsgDelivery, NodeStep>;

struct SimEvent {
  SimTime time;
  std::uint64_t seq = 0;
  EventBody body;
};

// Deterministic (time, seq) priority queue. seq is the insertion sequence
// number, so equal-time events run in the order they were scheduled.
class EventQueue {
 public:
  // Throws SimError when t is before the current clock.
  std::uint64_t schedule(SimTime t, EventBody body);

  // Schedules a message delivery at now + delay. Deliveries on the same
  // (src, dst) pair never overtake earlier ones, even under varying delays.
  std::uint64_t deliver(Endpoint src, Endpoint dst, Payload payload,
                        SimTime now, SimTime delay);

  // Pops the next event with time <= t_end and advances the clock to it.
  std::optional<SimEvent> pop(SimTime t_end);

  SimTime clock() const { return clock_; }
  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }

 private:
  struct Later {
    bool operator()(const SimEvent& a, const SimEvent& b) const {
      if (a.time != b.time) return a.time > b.time;
      return a.seq > b.seq;
    }
  };
  std::priority_queue<SimEvent, std::vector<SimEvent>, Later> heap_;
  std::map<std::pair<Endpoint, Endpoint>, SimTime> last_delivery_;
  SimTime clock_;
  std::uint64_t next_seq_ = 0;
};

// ---------------------------------------------------------------------------
// Simulation
// ---------------------------------------------------------------------------

// Single-threaded deterministic simulation wiring the controller, device
// agents, node models, and message channels. run() executes events in
// (time, seq) order until the queue drains or the clock would pass t_end.
class Simulation {
 public:
  explicit Simulation(Scenario scenario);

  const Trace& run();

  const Controller& controller() const { return controller_; }
  Controller& controller() { return controller_; }
  const DeviceAgent& agent(std::uint32_t device_id) const;
  const Trace& trace() const { return trace_; }
  const Scenario& scenario() const { return scenario_; }

  // Test hooks: inject work before run().
  void inject_node_event(SimTime t, std::uint32_t device_id, NodeEvent ev);
  void inject_controller_change(SimTime t, std::uint32_t device_id,
                                const QcmRecord& record);

 private:
  struct DeviceRuntime {
    DeviceConfig config;
    DeviceAgent agent;
    ScriptCursor cursor;
    MemoryNodeState memory;
    RepeaterNodeState repeater;
  };

  void dispatch(const SimEvent& ev);
  void on_mutation_fire(std::uint32_t device_id, SimTime now);
  void on_poll_timer(SimTime now);
  void on_delivery(const MsgDelivery& d, SimTime now);
  void on_node_step(const NodeStep& step, SimTime now);

  // Shared middleware-write path for script firings and node-model events.
  void middleware_write(DeviceRuntime& dev,
                        const std::vector<FieldMutation>& mutations,
                        SimTime now);

  void controller_request(std::uint32_t device_id, SimTime now);
  void emit_reception(const QcmRecord& record, SimTime now);
  void emit(SimTime t, std::string line);

  DeviceRuntime& device(std::uint32_t id);

  Scenario scenario_;
  Controller controller_;
  std::map<std::uint32_t, DeviceRuntime> devices_;
  EventQueue queue_;
  Trace trace_;
  bool ran_ = false;
  // Poll replies pending reassembly, keyed by (device, xid).
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<QcmMultipart>>
      partial_replies_;
  std::mt19937_64 rng_;  // reserved for randomized device behavior
};

Trace run_scenario(const Scenario& scenario);

}  // namespace qcm
