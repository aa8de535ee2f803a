#include "qcmflow/agent.hpp"

#include "qcmflow/errors.hpp"

namespace qcm {

namespace {

std::uint16_t byte_sum(const Bytes& bytes) {
  std::uint32_t sum = 0;
  for (auto b : bytes) sum += b;
  return static_cast<std::uint16_t>(sum % 65536);
}

}  // namespace

void DeviceAgent::advance_clock(SimTime now) {
  if (now < state_.last_change_time) {
    throw SimError("time regression on device " +
                   std::to_string(state_.device_id) + ": " + now.to_string() +
                   " < " + state_.last_change_time.to_string());
  }
  state_.last_change_time = now;
}

std::vector<QcmMultipart> DeviceAgent::handle_request(const QcmMultipart& req) {
  if (req.direction != Direction::kRequest) {
    throw ProtocolError("agent expected a request, got a reply");
  }
  if (req.mp_type != kMultipartTypeQcm) {
    throw ProtocolError("agent cannot serve multipart type " +
                        std::to_string(req.mp_type));
  }
  auto segments = fragment({state_.local_record}, req.xid(), Direction::kReply);
  state_.messages_emitted += static_cast<std::uint32_t>(segments.size());
  return segments;
}

std::optional<QcmMultipart> DeviceAgent::on_middleware_change(
    const QcmRecord& new_record, SimTime now) {
  require_valid(new_record);
  if (now < state_.last_change_time) {
    throw SimError("time regression on device " +
                   std::to_string(state_.device_id));
  }
  if (diff_records(state_.local_record, new_record).empty()) {
    return std::nullopt;  // no-op write: state untouched, nothing to report
  }
  state_.local_record = new_record;
  advance_clock(now);
  if (!state_.async_enabled) {
    return std::nullopt;  // the controller learns via its next poll
  }
  auto segments = fragment({new_record}, kUnsolicitedXid, Direction::kReply);
  state_.messages_emitted += 1;
  return segments.front();
}

void DeviceAgent::apply_controller_change(const QcmRecord& requested,
                                          SimTime now) {
  require_valid(requested);
  state_.local_record = requested;
  advance_clock(now);
}

std::vector<std::pair<std::string, std::uint16_t>> flow_module_transform(
    const QcmRecord& r) {
  require_valid(r);
  const Bytes qcom_spec(r.qcom_spec.begin(), r.qcom_spec.end());
  return {
      {std::string(record_field_label(RecordField::kQchannel)), r.qchannel},
      {std::string(record_field_label(RecordField::kQchannelSpec)),
       byte_sum(encode_channel_spec(r.qchannel_spec))},
      {std::string(record_field_label(RecordField::kQcom)), r.qcom},
      {std::string(record_field_label(RecordField::kQcomSpec)),
       byte_sum(qcom_spec)},
      {std::string(record_field_label(RecordField::kQec)), r.qec},
      {std::string(record_field_label(RecordField::kQecSpec)),
       byte_sum(encode_ec_spec(r.qec_spec))},
  };
}

}  // namespace qcm
