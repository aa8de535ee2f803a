#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "qcmflow/record.hpp"
#include "qcmflow/sim_time.hpp"

namespace qcm {

// Node events. SetQec bundles the code id with its parameters so the
// qec/qec_spec pair lands atomically on the metadata row.
struct ReadRequest {
  std::uint32_t slot = 0;
};
struct WriteRequest {
  std::uint32_t slot = 0;
};
struct MeasureRequest {
  std::uint32_t slot = 0;
};
struct QecCycle {};
struct SetQec {
  std::uint16_t code = 0;
  EcSpec spec;
};
struct AdvanceStage {};
struct Retune {
  ChannelSpec spec;
};

using NodeEvent = std::variant<ReadRequest, WriteRequest, MeasureRequest,
                               QecCycle, SetQec, AdvanceStage, Retune>;

struct PendingRequest {
  enum class Kind { kRead, kWrite, kMeasure } kind = Kind::kRead;
  std::uint32_t slot = 0;
  SimTime queued_at;
};

// Storage node: addressable slots acted on by read/write/measure requests,
// kept coherent by an error-correction protocol between requests.
struct MemoryNodeState {
  std::uint32_t slots = 1;
  std::uint16_t active_qec = 0;
  EcSpec active_qec_spec;
  bool stabilization_on = false;
  std::deque<PendingRequest> pending_requests;
};

enum class RepeaterStage { kIdle, kPurification, kSwap };

// Repeater node: cycles through purification and swap stages while its
// channel tuning and error-correction metadata evolve.
struct RepeaterNodeState {
  RepeaterStage stage = RepeaterStage::kIdle;
  std::uint16_t active_qec = 0;
  EcSpec active_qec_spec;
  std::uint32_t link_quality_milli = 0;  // scenario color; never transmitted
};

// Deterministic step functions. The returned mutations are the metadata side
// effects of the event, to be applied atomically to the device's QCM row.
std::pair<MemoryNodeState, std::vector<FieldMutation>> memory_node_step(
    const MemoryNodeState& s, const NodeEvent& ev, SimTime now);

std::pair<RepeaterNodeState, std::vector<FieldMutation>> repeater_node_step(
    const RepeaterNodeState& s, const NodeEvent& ev, SimTime now);

// (time, field, value) triples with strictly increasing times.
struct ScriptEntry {
  SimTime time;
  FieldMutation mutation;
};

struct MutationScript {
  std::vector<ScriptEntry> entries;
};

// Throws ConfigError on negative or non-increasing times.
void validate_script(const MutationScript& script);

// Walks a script, firing each entry exactly once at its scheduled time.
class ScriptCursor {
 public:
  ScriptCursor() = default;
  explicit ScriptCursor(MutationScript script) : script_(std::move(script)) {}

  // The mutation scheduled exactly at now, if any; each entry fires once.
  std::optional<FieldMutation> poll(SimTime now);

  bool exhausted() const { return next_ >= script_.entries.size(); }

 private:
  MutationScript script_;
  std::size_t next_ = 0;
};

}  // namespace qcm
