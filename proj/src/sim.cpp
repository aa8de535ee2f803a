#include "qcmflow/sim.hpp"

#include <algorithm>

#include "qcmflow/errors.hpp"
#include "qcmflow/text.hpp"

namespace qcm {

namespace {

constexpr const char* kLineRequested = "QMD Requested by Controller.....";
constexpr const char* kLineReceiving = "Receiving QMD attributes .... begins:";
constexpr const char* kLineWaiting = "Waiting for STATE change";
constexpr const char* kLineSeparator = "-----";

std::string sensed_line(SimTime now) {
  return "Quantum METADATA STATE change sensed. Collecting QMD attributes at " +
         now.to_string();
}

// Historical protocol wording used by the legacy trace lines.
std::string legacy_protocol_name(std::uint16_t qcom) {
  switch (qcom) {
    case 0:
      return "None";
    case 1:
      return "Quantum Key Distribution";
    case 2:
      return "Quantum Teleportation";
    case 3:
      return "Binary Dense Coding";
    default:
      return std::to_string(qcom);
  }
}

std::vector<std::string> legacy_attribute_lines(const QcmRecord& r) {
  return {
      "QPROTO: " + legacy_protocol_name(r.qcom) + " Received",
      "QPROTO_SPEC: ##### Received",
      "QCHANNEL: ##### Received",
      "QCHANNEL-SPEC: ##### Received",
      "QPROTO_SPEC: ##### Received",
  };
}

std::vector<std::string> canonical_attribute_lines(const QcmRecord& r) {
  std::vector<std::string> lines;
  std::string text = format_record(r);
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t nl = text.find('\n', start);
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return lines;
}

}  // namespace

std::string_view sync_mode_name(SyncMode m) {
  switch (m) {
    case SyncMode::kPoll:
      return "poll";
    case SyncMode::kAsync:
      return "async";
    case SyncMode::kMixed:
      return "mixed";
  }
  return "mixed";
}

SyncMode sync_mode_from_name(std::string_view name) {
  if (name == "poll") return SyncMode::kPoll;
  if (name == "async") return SyncMode::kAsync;
  if (name == "mixed") return SyncMode::kMixed;
  throw ConfigError("unknown sync mode '" + std::string(name) + "'");
}

std::string_view trace_mode_name(TraceMode m) {
  return m == TraceMode::kCanonical ? "canonical" : "legacy-fig8";
}

TraceMode trace_mode_from_name(std::string_view name) {
  if (name == "canonical") return TraceMode::kCanonical;
  if (name == "legacy-fig8") return TraceMode::kLegacyFig8;
  throw ConfigError("unknown trace mode '" + std::string(name) + "'");
}

std::string_view node_model_name(NodeModelKind k) {
  return k == NodeModelKind::kMemory ? "memory" : "repeater";
}

NodeModelKind node_model_from_name(std::string_view name) {
  if (name == "memory") return NodeModelKind::kMemory;
  if (name == "repeater") return NodeModelKind::kRepeater;
  throw ConfigError("unknown node model '" + std::string(name) + "'");
}

std::string Trace::render() const {
  std::string out;
  for (const auto& entry : entries) {
    out += entry.line;
    out += '\n';
  }
  out += final_clock.to_string_fixed1();
  out += '\n';
  return out;
}

// --- EventQueue -------------------------------------------------------------

std::uint64_t EventQueue::schedule(SimTime t, EventBody body) {
  if (t < clock_) {
    throw SimError("cannot schedule at " + t.to_string() +
                   ", clock is already at " + clock_.to_string());
  }
  const std::uint64_t seq = next_seq_++;
  heap_.push(SimEvent{t, seq, std::move(body)});
  return seq;
}

std::uint64_t EventQueue::deliver(Endpoint src, Endpoint dst, Payload payload,
                                  SimTime now, SimTime delay) {
  if (delay.negative()) {
    throw SimError("negative channel delay");
  }
  SimTime at = now + delay;
  const auto key = std::make_pair(src, dst);
  const auto it = last_delivery_.find(key);
  if (it != last_delivery_.end() && at < it->second) {
    at = it->second;  // never overtake an earlier delivery on this pair
  }
  last_delivery_[key] = at;
  return schedule(at, MsgDelivery{src, dst, std::move(payload)});
}

std::optional<SimEvent> EventQueue::pop(SimTime t_end) {
  if (heap_.empty() || heap_.top().time > t_end) {
    return std::nullopt;
  }
  SimEvent ev = heap_.top();
  heap_.pop();
  clock_ = ev.time;
  return ev;
}

// --- Simulation -------------------------------------------------------------

Simulation::Simulation(Scenario scenario)
    : scenario_(std::move(scenario)),
      controller_(
          [&] {
            std::vector<std::uint32_t> ids;
            for (const auto& d : scenario_.topology.devices) {
              ids.push_back(d.id);
            }
            return ids;
          }(),
          scenario_.topology.poll_period),
      rng_(scenario_.seed) {
  if (scenario_.t_end.negative()) {
    throw ConfigError("t_end must be non-negative");
  }
  if (scenario_.topology.channel_delay.negative()) {
    throw ConfigError("channel_delay must be non-negative");
  }
  if (scenario_.topology.poll_period <= SimTime{}) {
    throw ConfigError("poll_period must be positive");
  }
  for (const auto& cfg : scenario_.topology.devices) {
    validate_script(cfg.script);
    const bool async_push = scenario_.topology.mode == SyncMode::kAsync;
    auto [it, inserted] = devices_.emplace(
        cfg.id, DeviceRuntime{cfg, DeviceAgent(cfg.id, async_push),
                              ScriptCursor(cfg.script), MemoryNodeState{},
                              RepeaterNodeState{}});
    if (!inserted) {
      throw ConfigError("duplicate device id " + std::to_string(cfg.id));
    }
  }

  // Script firings are scheduled up front, in device order; the poll timer
  // comes after them so same-tick polls observe fresh values.
  for (const auto& cfg : scenario_.topology.devices) {
    for (const auto& entry : cfg.script.entries) {
      queue_.schedule(entry.time, MutationFire{cfg.id});
    }
  }
  if (scenario_.topology.mode == SyncMode::kPoll && !devices_.empty()) {
    queue_.schedule(SimTime::ticks(0), PollTimer{});
  }
}

Simulation::DeviceRuntime& Simulation::device(std::uint32_t id) {
  const auto it = devices_.find(id);
  if (it == devices_.end()) {
    throw SimError("no device " + std::to_string(id) + " in the topology");
  }
  return it->second;
}

const DeviceAgent& Simulation::agent(std::uint32_t device_id) const {
  const auto it = devices_.find(device_id);
  if (it == devices_.end()) {
    throw SimError("no device " + std::to_string(device_id) +
                   " in the topology");
  }
  return it->second.agent;
}

void Simulation::inject_node_event(SimTime t, std::uint32_t device_id,
                                   NodeEvent ev) {
  device(device_id);
  queue_.schedule(t, NodeStep{device_id, std::move(ev)});
}

void Simulation::inject_controller_change(SimTime t, std::uint32_t device_id,
                                          const QcmRecord& record) {
  const ChangeCommand cmd = controller_.request_change(device_id, record);
  queue_.schedule(t, MsgDelivery{Endpoint::controller(),
                                 Endpoint::device(device_id), cmd});
}

void Simulation::emit(SimTime t, std::string line) {
  trace_.entries.push_back(TraceEntry{t, std::move(line)});
}

const Trace& Simulation::run() {
  if (ran_) return trace_;
  ran_ = true;
  while (auto ev = queue_.pop(scenario_.t_end)) {
    dispatch(*ev);
  }
  trace_.final_clock = scenario_.t_end;
  return trace_;
}

void Simulation::dispatch(const SimEvent& ev) {
  const SimTime now = ev.time;
  if (const auto* fire = std::get_if<MutationFire>(&ev.body)) {
    on_mutation_fire(fire->device_id, now);
  } else if (std::get_if<PollTimer>(&ev.body) != nullptr) {
    on_poll_timer(now);
  } else if (const auto* delivery = std::get_if<MsgDelivery>(&ev.body)) {
    on_delivery(*delivery, now);
  } else if (const auto* step = std::get_if<NodeStep>(&ev.body)) {
    on_node_step(*step, now);
  }
}

void Simulation::on_mutation_fire(std::uint32_t device_id, SimTime now) {
  DeviceRuntime& dev = device(device_id);
  const auto mutation = dev.cursor.poll(now);
  if (!mutation) return;
  middleware_write(dev, {*mutation}, now);
}

void Simulation::on_node_step(const NodeStep& step, SimTime now) {
  DeviceRuntime& dev = device(step.device_id);
  std::vector<FieldMutation> mutations;
  if (dev.config.model == NodeModelKind::kMemory) {
    auto [next, muts] = memory_node_step(dev.memory, step.event, now);
    dev.memory = std::move(next);
    mutations = std::move(muts);
  } else {
    auto [next, muts] = repeater_node_step(dev.repeater, step.event, now);
    dev.repeater = std::move(next);
    mutations = std::move(muts);
  }
  if (!mutations.empty()) {
    middleware_write(dev, mutations, now);
  }
}

void Simulation::middleware_write(DeviceRuntime& dev,
                                  const std::vector<FieldMutation>& mutations,
                                  SimTime now) {
  QcmRecord next;
  try {
    next = apply_mutations(dev.agent.record(), mutations);
  } catch (const ValidationError& e) {
    throw SimError("device " + std::to_string(dev.config.id) + " at t=" +
                   now.to_string() + ": " + e.what());
  }
  const bool effective =
      !diff_records(dev.agent.record(), next).empty();
  // In the legacy trace every middleware write counts as a sensed change;
  // the protocol path stays diff-gated either way.
  const bool sensed =
      effective || scenario_.trace_mode == TraceMode::kLegacyFig8;
  if (sensed) {
    emit(now, sensed_line(now));
  }
  const auto push = dev.agent.on_middleware_change(next, now);
  if (push) {
    queue_.deliver(Endpoint::device(dev.config.id), Endpoint::controller(),
                   WireMessage{encode_multipart(*push)}, now,
                   scenario_.topology.channel_delay);
  }
  if (scenario_.topology.mode == SyncMode::kMixed && sensed) {
    queue_.deliver(Endpoint::device(dev.config.id), Endpoint::controller(),
                   ChangeNotice{}, now, scenario_.topology.channel_delay);
  }
}

void Simulation::on_poll_timer(SimTime now) {
  for (const auto& [id, dev] : devices_) {
    controller_request(id, now);
  }
  queue_.schedule(now + scenario_.topology.poll_period, PollTimer{});
}

void Simulation::controller_request(std::uint32_t device_id, SimTime now) {
  emit(now, kLineRequested);
  const QcmMultipart req =
      controller_.make_poll(device_id, controller_.next_xid());
  queue_.deliver(Endpoint::controller(), Endpoint::device(device_id),
                 WireMessage{encode_multipart(req)}, now,
                 scenario_.topology.channel_delay);
}

void Simulation::emit_reception(const QcmRecord& record, SimTime now) {
  emit(now, kLineReceiving);
  const auto lines = scenario_.trace_mode == TraceMode::kLegacyFig8
                         ? legacy_attribute_lines(record)
                         : canonical_attribute_lines(record);
  for (const auto& line : lines) {
    emit(now, line);
  }
  emit(now, kLineWaiting);
  emit(now, kLineSeparator);
}

void Simulation::on_delivery(const MsgDelivery& d, SimTime now) {
  if (d.dst.kind == Endpoint::Kind::kController) {
    if (const auto* notice = std::get_if<ChangeNotice>(&d.payload)) {
      (void)notice;
      controller_request(d.src.device_id, now);
      return;
    }
    const auto* wire = std::get_if<WireMessage>(&d.payload);
    if (wire == nullptr) {
      throw SimError("controller received an unexpected payload");
    }
    const QcmMultipart msg = decode_multipart(wire->frame);
    const std::uint32_t device_id = d.src.device_id;
    if (msg.xid() == kUnsolicitedXid) {
      if (controller_.handle_async(device_id, msg, now)) {
        emit_reception(msg.records.front(), now);
      }
      return;
    }
    auto& partial = partial_replies_[{device_id, msg.xid()}];
    partial.push_back(msg);
    if (msg.more()) return;
    const std::vector<QcmMultipart> segments = std::move(partial);
    partial_replies_.erase({device_id, msg.xid()});
    if (controller_.handle_reply(device_id, segments, now)) {
      emit_reception(*controller_.query(device_id), now);
    }
    return;
  }

  DeviceRuntime& dev = device(d.dst.device_id);
  if (const auto* cmd = std::get_if<ChangeCommand>(&d.payload)) {
    dev.agent.apply_controller_change(cmd->record, now);
    return;
  }
  const auto* wire = std::get_if<WireMessage>(&d.payload);
  if (wire == nullptr) {
    throw SimError("device received an unexpected payload");
  }
  const QcmMultipart req = decode_multipart(wire->frame);
  for (const auto& seg : dev.agent.handle_request(req)) {
    queue_.deliver(Endpoint::device(dev.config.id), Endpoint::controller(),
                   WireMessage{encode_multipart(seg)}, now,
                   scenario_.topology.channel_delay);
  }
}

Trace run_scenario(const Scenario& scenario) {
  Simulation sim(scenario);
  return sim.run();
}

}  // namespace qcm
