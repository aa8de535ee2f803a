#include "qcmflow/devices.hpp"

#include <string>

#include "qcmflow/errors.hpp"

namespace qcm {

namespace {

void check_slot(const MemoryNodeState& s, std::uint32_t slot) {
  if (slot >= s.slots) {
    throw ValidationError("slot " + std::to_string(slot) +
                          " is out of range for a " + std::to_string(s.slots) +
                          "-slot node");
  }
}

std::vector<FieldMutation> qec_mutations(const SetQec& ev) {
  // A zero code must pair with an all-zero spec, a nonzero code with real
  // n/k/d parameters; anything else could never validate on the row.
  const bool spec_zero = ev.spec == EcSpec{};
  if (ev.code == 0 && !spec_zero) {
    throw ValidationError("qec code 0 requires an all-zero spec");
  }
  if (ev.code != 0 && ev.spec.params_all_zero()) {
    throw ValidationError("qec code " + std::to_string(ev.code) +
                          " requires n/k/d parameters");
  }
  return {{RecordField::kQec, ev.code}, {RecordField::kQecSpec, ev.spec}};
}

[[noreturn]] void reject_event(const char* node) {
  throw ValidationError(std::string("event not supported by a ") + node +
                        " node");
}

}  // namespace

std::pair<MemoryNodeState, std::vector<FieldMutation>> memory_node_step(
    const MemoryNodeState& s, const NodeEvent& ev, SimTime now) {
  MemoryNodeState next = s;
  std::vector<FieldMutation> mutations;
  if (const auto* read = std::get_if<ReadRequest>(&ev)) {
    check_slot(s, read->slot);
    next.pending_requests.push_back(
        {PendingRequest::Kind::kRead, read->slot, now});
  } else if (const auto* write = std::get_if<WriteRequest>(&ev)) {
    check_slot(s, write->slot);
    next.pending_requests.push_back(
        {PendingRequest::Kind::kWrite, write->slot, now});
  } else if (const auto* measure = std::get_if<MeasureRequest>(&ev)) {
    check_slot(s, measure->slot);
    next.pending_requests.push_back(
        {PendingRequest::Kind::kMeasure, measure->slot, now});
  } else if (std::get_if<QecCycle>(&ev) != nullptr) {
    // Stabilization consumes the queued requests; pure nodal work, no
    // metadata side effect.
    next.pending_requests.clear();
  } else if (const auto* set_qec = std::get_if<SetQec>(&ev)) {
    mutations = qec_mutations(*set_qec);
    next.active_qec = set_qec->code;
    next.active_qec_spec = set_qec->spec;
  } else {
    reject_event("storage");
  }
  return {std::move(next), std::move(mutations)};
}

std::pair<RepeaterNodeState, std::vector<FieldMutation>> repeater_node_step(
    const RepeaterNodeState& s, const NodeEvent& ev, SimTime /*now*/) {
  RepeaterNodeState next = s;
  std::vector<FieldMutation> mutations;
  if (std::get_if<AdvanceStage>(&ev) != nullptr) {
    switch (s.stage) {
      case RepeaterStage::kIdle:
        next.stage = RepeaterStage::kPurification;
        break;
      case RepeaterStage::kPurification:
        next.stage = RepeaterStage::kSwap;
        break;
      case RepeaterStage::kSwap:
        next.stage = RepeaterStage::kIdle;
        break;
    }
  } else if (const auto* retune = std::get_if<Retune>(&ev)) {
    if (retune->spec.reserved != 0) {
      throw ValidationError("channel spec reserved word must be 0");
    }
    mutations = {{RecordField::kQchannelSpec, retune->spec}};
  } else if (const auto* set_qec = std::get_if<SetQec>(&ev)) {
    mutations = qec_mutations(*set_qec);
    next.active_qec = set_qec->code;
    next.active_qec_spec = set_qec->spec;
  } else {
    reject_event("repeater");
  }
  return {std::move(next), std::move(mutations)};
}

void validate_script(const MutationScript& script) {
  for (std::size_t i = 0; i < script.entries.size(); ++i) {
    const auto& entry = script.entries[i];
    if (entry.time.negative()) {
      throw ConfigError("script entry " + std::to_string(i) +
                        " has a negative time");
    }
    if (i > 0 && entry.time <= script.entries[i - 1].time) {
      throw ConfigError("script times must be strictly increasing (entry " +
                        std::to_string(i) + ")");
    }
  }
}

std::optional<FieldMutation> ScriptCursor::poll(SimTime now) {
  if (exhausted() || script_.entries[next_].time != now) {
    return std::nullopt;
  }
  return script_.entries[next_++].mutation;
}

}  // namespace qcm
