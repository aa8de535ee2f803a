#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qcmflow/codec.hpp"
#include "qcmflow/record.hpp"
#include "qcmflow/sim_time.hpp"

namespace qcm {

struct AgentState {
  std::uint32_t device_id = 0;
  QcmRecord local_record;       // the device's current QCM table row
  SimTime last_change_time;     // never decreases
  bool async_enabled = false;
  std::uint32_t messages_emitted = 0;
};

// Device-resident agent. Holds the local QCM table row, answers controller
// polls, pushes unsolicited updates when middleware rewrites the row, and
// applies controller-ordered changes. Single-writer: one logical owner
// applies transitions in order.
class DeviceAgent {
 public:
  DeviceAgent(std::uint32_t device_id, bool async_enabled)
      : state_{device_id, QcmRecord{}, SimTime{}, async_enabled, 0} {}

  const AgentState& state() const { return state_; }
  const QcmRecord& record() const { return state_.local_record; }

  // Answers a poll with the current row, echoing the request xid. The reply
  // always fits one segment.
  std::vector<QcmMultipart> handle_request(const QcmMultipart& req);

  // Middleware wrote new_record at now. When the row actually changed and
  // async mode is on, returns the unsolicited push (xid 0, one record).
  std::optional<QcmMultipart> on_middleware_change(const QcmRecord& new_record,
                                                   SimTime now);

  // Controller-ordered overwrite. Never echoes back; the controller learns
  // the applied value from its next poll or push.
  void apply_controller_change(const QcmRecord& requested, SimTime now);

 private:
  void advance_clock(SimTime now);

  AgentState state_;
};

// Flow-module mapping of a record onto 16-bit statistics, in field order:
// identifier fields carry their values, spec fields a byte-sum checksum of
// the serialized blob (mod 65536).
std::vector<std::pair<std::string, std::uint16_t>> flow_module_transform(
    const QcmRecord& r);

}  // namespace qcm
