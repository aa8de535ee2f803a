#include "qcmflow/controller.hpp"

#include "qcmflow/errors.hpp"

namespace qcm {

void FlowTable::install(QcmFlowEntry entry) {
  if (by_id_.count(entry.entry_id) != 0) {
    throw ValidationError("flow entry id " + std::to_string(entry.entry_id) +
                          " is already installed");
  }
  const ScanKey key{entry.priority, entry.entry_id};
  auto [it, inserted] = ordered_.emplace(key, std::move(entry));
  by_id_.emplace(it->second.entry_id, &it->second);
}

std::vector<FlowAction> FlowTable::match(const QcmRecord& attrs) const {
  for (const auto& [key, entry] : ordered_) {
    if (entry.match.matches(attrs)) {
      return entry.actions;
    }
  }
  return {};
}

const QcmFlowEntry* FlowTable::find(std::uint32_t entry_id) const {
  const auto it = by_id_.find(entry_id);
  return it == by_id_.end() ? nullptr : it->second;
}

Controller::Controller(const std::vector<std::uint32_t>& devices,
                       SimTime poll_period) {
  view_.poll_period = poll_period;
  for (auto id : devices) {
    if (!known_devices_.insert(id).second) {
      throw ValidationError("duplicate device id " + std::to_string(id));
    }
  }
}

void Controller::require_known(std::uint32_t device_id) const {
  if (known_devices_.count(device_id) == 0) {
    throw ProtocolError("unknown device " + std::to_string(device_id));
  }
}

QcmMultipart Controller::make_poll(std::uint32_t device_id,
                                   std::uint32_t xid) const {
  require_known(device_id);
  return QcmMultipart::make(Direction::kRequest, xid, 0, {});
}

bool Controller::store(std::uint32_t device_id, const QcmRecord& record,
                       SimTime now, UpdateOrigin origin) {
  const auto it = view_.entries.find(device_id);
  if (it != view_.entries.end() && now < it->second.updated_at) {
    return false;  // stale: an update applied later already supersedes it
  }
  view_.entries[device_id] = ViewEntry{record, now, origin};
  return true;
}

bool Controller::handle_reply(std::uint32_t device_id,
                              const std::vector<QcmMultipart>& segments,
                              SimTime now) {
  require_known(device_id);
  for (const auto& seg : segments) {
    if (seg.direction != Direction::kReply) {
      throw ProtocolError("poll reply sequence contains a request segment");
    }
  }
  const auto records = reassemble(segments);
  if (records.size() != 1) {
    throw ProtocolError("poll reply must carry exactly one record, got " +
                        std::to_string(records.size()));
  }
  return store(device_id, records.front(), now, UpdateOrigin::kPoll);
}

bool Controller::handle_async(std::uint32_t device_id, const QcmMultipart& msg,
                              SimTime now) {
  require_known(device_id);
  if (msg.direction != Direction::kReply) {
    throw ProtocolError("unsolicited update must use the reply framing");
  }
  if (msg.xid() != kUnsolicitedXid) {
    throw ProtocolError("unsolicited update carries xid " +
                        std::to_string(msg.xid()) + ", expected 0");
  }
  if (msg.more()) {
    throw ProtocolError("unsolicited update must be a single segment");
  }
  if (msg.records.size() != 1) {
    throw ProtocolError("unsolicited update must carry exactly one record, got " +
                        std::to_string(msg.records.size()));
  }
  return store(device_id, msg.records.front(), now, UpdateOrigin::kAsync);
}

std::optional<QcmRecord> Controller::query(std::uint32_t device_id) const {
  const auto it = view_.entries.find(device_id);
  if (it == view_.entries.end()) return std::nullopt;
  return it->second.record;
}

std::optional<ViewEntry> Controller::view_entry(std::uint32_t device_id) const {
  const auto it = view_.entries.find(device_id);
  if (it == view_.entries.end()) return std::nullopt;
  return it->second;
}

ChangeCommand Controller::request_change(std::uint32_t device_id,
                                         const QcmRecord& record) const {
  require_known(device_id);
  require_valid(record);
  return ChangeCommand{device_id, record};
}

}  // namespace qcm
