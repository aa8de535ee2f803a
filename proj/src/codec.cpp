#include "qcmflow/codec.hpp"

#include <algorithm>
#include <cctype>

#include "qcmflow/errors.hpp"

namespace qcm {

namespace {

void put_u16(Bytes& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
}

void put_u32(Bytes& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xff));
  out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
}

std::uint16_t get_u16(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint16_t>((b[at] << 8) | b[at + 1]);
}

std::uint32_t get_u32(std::span<const std::uint8_t> b, std::size_t at) {
  return (static_cast<std::uint32_t>(b[at]) << 24) |
         (static_cast<std::uint32_t>(b[at + 1]) << 16) |
         (static_cast<std::uint32_t>(b[at + 2]) << 8) |
         static_cast<std::uint32_t>(b[at + 3]);
}

void require_zero(std::span<const std::uint8_t> b, std::size_t from,
                  std::size_t count, const char* what) {
  for (std::size_t i = from; i < from + count; ++i) {
    if (b[i] != 0) {
      throw CodecError(std::string("nonzero ") + what, i);
    }
  }
}

}  // namespace

std::string_view direction_name(Direction d) {
  return d == Direction::kRequest ? "request" : "reply";
}

Direction direction_from_name(std::string_view name) {
  if (name == "request") return Direction::kRequest;
  if (name == "reply") return Direction::kReply;
  throw ValidationError("unknown direction '" + std::string(name) + "'");
}

QcmMultipart QcmMultipart::make(Direction dir, std::uint32_t xid,
                                std::uint16_t flags,
                                std::vector<QcmRecord> records) {
  if (records.size() > kSegmentRecordCapacity) {
    throw ValidationError(
        std::to_string(records.size()) +
        " records exceed the single-segment capacity of " +
        std::to_string(kSegmentRecordCapacity));
  }
  QcmMultipart m;
  m.direction = dir;
  m.header.version = kOfpVersion;
  m.header.msg_type = dir == Direction::kRequest ? kMsgTypeMultipartRequest
                                                 : kMsgTypeMultipartReply;
  m.header.length =
      static_cast<std::uint16_t>(kPreambleSize + kStatsSize * records.size());
  m.header.xid = xid;
  m.flags = flags;
  m.records = std::move(records);
  return m;
}

Bytes encode_header(const OfpHeader& h) {
  if (h.length < kHeaderSize) {
    throw CodecError("header length " + std::to_string(h.length) +
                     " is below the 8-byte minimum");
  }
  Bytes out;
  out.reserve(kHeaderSize);
  out.push_back(h.version);
  out.push_back(h.msg_type);
  put_u16(out, h.length);
  put_u32(out, h.xid);
  return out;
}

OfpHeader decode_header(std::span<const std::uint8_t> b) {
  if (b.size() < kHeaderSize) {
    throw CodecError("header needs 8 bytes, got " + std::to_string(b.size()),
                     b.size());
  }
  OfpHeader h;
  h.version = b[0];
  h.msg_type = b[1];
  h.length = get_u16(b, 2);
  h.xid = get_u32(b, 4);
  if (h.length < kHeaderSize) {
    throw CodecError("header length " + std::to_string(h.length) +
                         " is below the 8-byte minimum",
                     2);
  }
  return h;
}

Bytes encode_channel_spec(const ChannelSpec& s) {
  Bytes out;
  out.reserve(kSpecSize);
  put_u32(out, s.wavelength_pm);
  put_u32(out, s.mean_photon_milli);
  put_u32(out, s.symbol_rate_hz);
  put_u32(out, s.reserved);
  return out;
}

ChannelSpec decode_channel_spec(std::span<const std::uint8_t> b,
                                DecodeMode mode) {
  if (b.size() != kSpecSize) {
    throw CodecError("channel spec needs 16 bytes, got " +
                     std::to_string(b.size()));
  }
  ChannelSpec s;
  s.wavelength_pm = get_u32(b, 0);
  s.mean_photon_milli = get_u32(b, 4);
  s.symbol_rate_hz = get_u32(b, 8);
  s.reserved = get_u32(b, 12);
  if (mode == DecodeMode::kStrict && s.reserved != 0) {
    throw CodecError("nonzero channel spec reserved word", 12);
  }
  return s;
}

Bytes encode_ec_spec(const EcSpec& s) {
  Bytes out;
  out.reserve(kSpecSize);
  put_u16(out, s.n);
  put_u16(out, s.k);
  put_u16(out, s.d);
  put_u16(out, s.verify_circuit_id);
  out.insert(out.end(), s.reserved.begin(), s.reserved.end());
  return out;
}

EcSpec decode_ec_spec(std::span<const std::uint8_t> b, DecodeMode mode) {
  if (b.size() != kSpecSize) {
    throw CodecError("ec spec needs 16 bytes, got " + std::to_string(b.size()));
  }
  EcSpec s;
  s.n = get_u16(b, 0);
  s.k = get_u16(b, 2);
  s.d = get_u16(b, 4);
  s.verify_circuit_id = get_u16(b, 6);
  std::copy(b.begin() + 8, b.end(), s.reserved.begin());
  if (mode == DecodeMode::kStrict) {
    require_zero(b, 8, 8, "ec spec reserved byte");
  }
  return s;
}

Bytes encode_stats(const QcmRecord& r) {
  require_valid(r);
  Bytes out;
  out.reserve(kStatsSize);
  put_u16(out, r.qchannel);
  const Bytes chan = encode_channel_spec(r.qchannel_spec);
  out.insert(out.end(), chan.begin(), chan.end());
  put_u16(out, r.qcom);
  out.insert(out.end(), r.qcom_spec.begin(), r.qcom_spec.end());
  put_u16(out, r.qec);
  const Bytes ec = encode_ec_spec(r.qec_spec);
  out.insert(out.end(), ec.begin(), ec.end());
  put_u16(out, 0);  // trailing pad
  return out;
}

QcmRecord decode_stats(std::span<const std::uint8_t> b, DecodeMode mode) {
  if (b.size() != kStatsSize) {
    throw CodecError("stats body needs 56 bytes, got " +
                     std::to_string(b.size()));
  }
  QcmRecord r;
  r.qchannel = get_u16(b, 0);
  r.qchannel_spec = decode_channel_spec(b.subspan(2, kSpecSize), mode);
  r.qcom = get_u16(b, 18);
  std::copy(b.begin() + 20, b.begin() + 36, r.qcom_spec.begin());
  r.qec = get_u16(b, 36);
  r.qec_spec = decode_ec_spec(b.subspan(38, kSpecSize), mode);
  if (mode == DecodeMode::kStrict) {
    require_zero(b, 54, 2, "stats pad byte");
    const auto violations = validate_record(r);
    if (!violations.empty()) {
      throw CodecError("decoded record is invalid: " +
                       violations.front().message);
    }
  }
  return r;
}

Bytes encode_multipart(const QcmMultipart& m) {
  if (m.mp_type != kMultipartTypeQcm) {
    throw CodecError("multipart type must be " +
                     std::to_string(kMultipartTypeQcm) + ", got " +
                     std::to_string(m.mp_type));
  }
  if (m.records.size() > kSegmentRecordCapacity) {
    throw CodecError(std::to_string(m.records.size()) +
                     " records exceed the single-segment capacity of " +
                     std::to_string(kSegmentRecordCapacity));
  }
  const std::size_t total = kPreambleSize + kStatsSize * m.records.size();
  const std::uint8_t expected_type = m.direction == Direction::kRequest
                                         ? kMsgTypeMultipartRequest
                                         : kMsgTypeMultipartReply;
  if (m.header.msg_type != expected_type) {
    throw CodecError("header message type " + std::to_string(m.header.msg_type) +
                     " does not match direction " +
                     std::string(direction_name(m.direction)));
  }
  if (m.header.length != total) {
    throw CodecError("header length " + std::to_string(m.header.length) +
                     " does not match encoded size " + std::to_string(total));
  }

  Bytes out = encode_header(m.header);
  out.reserve(total);
  put_u16(out, m.mp_type);
  out.insert(out.end(), 4, 0);  // pad
  put_u16(out, m.flags);
  for (const auto& r : m.records) {
    const Bytes body = encode_stats(r);
    out.insert(out.end(), body.begin(), body.end());
  }
  return out;
}

QcmMultipart decode_multipart(std::span<const std::uint8_t> b,
                              DecodeMode mode) {
  if (b.size() < kPreambleSize) {
    throw CodecError("multipart frame needs at least 16 bytes, got " +
                         std::to_string(b.size()),
                     b.size());
  }
  QcmMultipart m;
  m.header = decode_header(b);
  if (mode == DecodeMode::kStrict && m.header.version != kOfpVersion) {
    throw CodecError("unsupported version " + std::to_string(m.header.version),
                     0);
  }
  if (m.header.msg_type == kMsgTypeMultipartRequest) {
    m.direction = Direction::kRequest;
  } else if (m.header.msg_type == kMsgTypeMultipartReply) {
    m.direction = Direction::kReply;
  } else {
    throw CodecError("unknown message type " + std::to_string(m.header.msg_type),
                     1);
  }
  if (m.header.length != b.size()) {
    throw CodecError("header length " + std::to_string(m.header.length) +
                         " does not match frame size " + std::to_string(b.size()),
                     2);
  }
  m.mp_type = get_u16(b, kHeaderSize);
  if (m.mp_type != kMultipartTypeQcm) {
    throw CodecError("unknown multipart type " + std::to_string(m.mp_type),
                     kHeaderSize);
  }
  if (mode == DecodeMode::kStrict) {
    require_zero(b, kHeaderSize + 2, 4, "preamble pad byte");
  }
  m.flags = get_u16(b, kHeaderSize + 6);

  const std::size_t body_len = b.size() - kPreambleSize;
  if (body_len % kStatsSize != 0) {
    throw CodecError("body length " + std::to_string(body_len) +
                         " is not a multiple of 56",
                     kPreambleSize);
  }
  m.records.reserve(body_len / kStatsSize);
  for (std::size_t at = kPreambleSize; at < b.size(); at += kStatsSize) {
    try {
      m.records.push_back(decode_stats(b.subspan(at, kStatsSize), mode));
    } catch (const CodecError& e) {
      throw CodecError(std::string("record ") +
                           std::to_string(m.records.size()) + ": " + e.what(),
                       e.offset() ? at + *e.offset()
                                  : std::optional<std::size_t>(at));
    }
  }
  return m;
}

std::vector<QcmMultipart> fragment(const std::vector<QcmRecord>& records,
                                   std::uint32_t xid, Direction dir) {
  std::vector<QcmMultipart> segments;
  std::size_t at = 0;
  do {
    const std::size_t take =
        std::min(kSegmentRecordCapacity, records.size() - at);
    std::vector<QcmRecord> chunk(records.begin() + at,
                                 records.begin() + at + take);
    at += take;
    const bool last = at == records.size();
    segments.push_back(QcmMultipart::make(
        dir, xid, last ? std::uint16_t{0} : kFlagMore, std::move(chunk)));
  } while (at < records.size());
  return segments;
}

std::vector<QcmRecord> reassemble(const std::vector<QcmMultipart>& segments) {
  if (segments.empty()) {
    throw ProtocolError("cannot reassemble an empty segment list");
  }
  const std::uint32_t xid = segments.front().xid();
  const Direction dir = segments.front().direction;
  std::vector<QcmRecord> out;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const auto& seg = segments[i];
    if (seg.xid() != xid) {
      throw ProtocolError("mixed xids in segment sequence: " +
                          std::to_string(xid) + " then " +
                          std::to_string(seg.xid()));
    }
    if (seg.direction != dir) {
      throw ProtocolError("mixed directions in segment sequence");
    }
    const bool last = i + 1 == segments.size();
    if (last && seg.more()) {
      throw ProtocolError("incomplete sequence: final segment still flags more");
    }
    if (!last && !seg.more()) {
      throw ProtocolError("segment " + std::to_string(i) +
                          " dropped the more flag before the final segment");
    }
    out.insert(out.end(), seg.records.begin(), seg.records.end());
  }
  return out;
}

std::string hex_dump(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 3 + bytes.size() / 16 + 1);
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    out.push_back(kDigits[bytes[i] >> 4]);
    out.push_back(kDigits[bytes[i] & 0xf]);
    const bool line_end = (i % 16 == 15) || (i + 1 == bytes.size());
    out.push_back(line_end ? '\n' : ' ');
  }
  return out;
}

Bytes hex_parse(const std::string& text) {
  Bytes out;
  int pending = -1;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const unsigned char c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c)) continue;
    int nibble;
    if (c >= '0' && c <= '9') {
      nibble = c - '0';
    } else if (c >= 'a' && c <= 'f') {
      nibble = c - 'a' + 10;
    } else if (c >= 'A' && c <= 'F') {
      nibble = c - 'A' + 10;
    } else {
      throw CodecError(std::string("stray character '") +
                           static_cast<char>(c) + "' in hex input",
                       i);
    }
    if (pending < 0) {
      pending = nibble;
    } else {
      out.push_back(static_cast<std::uint8_t>((pending << 4) | nibble));
      pending = -1;
    }
  }
  if (pending >= 0) {
    throw CodecError("odd number of hex digits", text.size());
  }
  return out;
}

}  // namespace qcm
