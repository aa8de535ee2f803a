#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qcmflow/codec.hpp"
#include "qcmflow/record.hpp"
#include "qcmflow/sim_time.hpp"

namespace qcm {

enum class UpdateOrigin { kPoll, kAsync };

struct ViewEntry {
  QcmRecord record;
  SimTime updated_at;
  UpdateOrigin origin = UpdateOrigin::kPoll;
};

// The controller's unified per-device picture of the network's metadata.
struct ControllerView {
  std::map<std::uint32_t, ViewEntry> entries;
  SimTime poll_period = SimTime::ticks(5);
};

// Match over the three identifier fields; an unset field is a wildcard.
struct FlowMatch {
  std::optional<std::uint16_t> qchannel;
  std::optional<std::uint16_t> qcom;
  std::optional<std::uint16_t> qec;

  bool matches(const QcmRecord& r) const {
    return (!qchannel || *qchannel == r.qchannel) &&
           (!qcom || *qcom == r.qcom) && (!qec || *qec == r.qec);
  }

  friend bool operator==(const FlowMatch&, const FlowMatch&) = default;
};

// Opaque named action; executed only as trace/report output.
struct FlowAction {
  std::string name;
  std::string param;

  friend bool operator==(const FlowAction&, const FlowAction&) = default;
};

struct QcmFlowEntry {
  std::uint32_t entry_id = 0;
  std::uint16_t priority = 0;
  FlowMatch match;
  std::vector<FlowAction> actions;

  friend bool operator==(const QcmFlowEntry&, const QcmFlowEntry&) = default;
};

// The QCM group table: priority-ordered match over incoming attributes,
// ties resolved toward the lowest entry id.
class FlowTable {
 public:
  // Throws ValidationError on a duplicate entry id.
  void install(QcmFlowEntry entry);

  // Actions of the best matching entry; empty when nothing matches.
  std::vector<FlowAction> match(const QcmRecord& attrs) const;

  const QcmFlowEntry* find(std::uint32_t entry_id) const;
  std::size_t size() const { return by_id_.size(); }

 private:
  // Scan order: priority descending, entry id ascending.
  struct ScanKey {
    std::uint16_t priority;
    std::uint32_t entry_id;
    friend bool operator<(const ScanKey& a, const ScanKey& b) {
      if (a.priority != b.priority) return a.priority > b.priority;
      return a.entry_id < b.entry_id;
    }
  };
  std::map<ScanKey, QcmFlowEntry> ordered_;
  std::map<std::uint32_t, const QcmFlowEntry*> by_id_;
};

// Controller-originated row overwrite, delivered to the device agent as a
// simulator-level directive (the read-only stats exchange has no wire form
// for it).
struct ChangeCommand {
  std::uint32_t device_id = 0;
  QcmRecord record;
};

// The centralized controller: polls devices, absorbs pushes, keeps the
// unified view, serves queries, and classifies packet-in attributes against
// the QCM group table. Single-writer transitions; queries are read-only.
class Controller {
 public:
  Controller(const std::vector<std::uint32_t>& devices, SimTime poll_period);

  const ControllerView& view() const { return view_; }
  const std::set<std::uint32_t>& known_devices() const {
    return known_devices_;
  }

  // Allocates the next request xid (1, 2, ...; 0 stays reserved for
  // unsolicited pushes).
  std::uint32_t next_xid() { return ++last_xid_; }

  // Builds an empty-bodied poll request for a known device.
  QcmMultipart make_poll(std::uint32_t device_id, std::uint32_t xid) const;

  // Applies a complete poll-reply segment sequence carrying one record.
  // Returns false (view untouched) when the reply is older than the entry
  // already held.
  bool handle_reply(std::uint32_t device_id,
                    const std::vector<QcmMultipart>& segments, SimTime now);

  // Applies an unsolicited push: a reply with xid 0 and exactly one record.
  bool handle_async(std::uint32_t device_id, const QcmMultipart& msg,
                    SimTime now);

  std::optional<QcmRecord> query(std::uint32_t device_id) const;
  std::optional<ViewEntry> view_entry(std::uint32_t device_id) const;

  // Validates and packages a row overwrite for delivery to the device. The
  // view keeps its old value until the agent reports back.
  ChangeCommand request_change(std::uint32_t device_id,
                               const QcmRecord& record) const;

  // Packet-in pipeline: classify the attributes against the group table.
  std::vector<FlowAction> on_packet_in(const QcmRecord& attrs) const {
    return table_.match(attrs);
  }

  FlowTable& flow_table() { return table_; }
  const FlowTable& flow_table() const { return table_; }

 private:
  bool store(std::uint32_t device_id, const QcmRecord& record, SimTime now,
             UpdateOrigin origin);
  void require_known(std::uint32_t device_id) const;

  ControllerView view_;
  std::set<std::uint32_t> known_devices_;
  FlowTable table_;
  std::uint32_t last_xid_ = 0;
};

}  // namespace qcm
