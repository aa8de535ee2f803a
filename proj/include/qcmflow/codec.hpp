#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qcmflow/record.hpp"

namespace qcm {

using Bytes = std::vector<std::uint8_t>;

// Framing constants. The version byte and multipart message types follow the
// OpenFlow 1.4 numbering; the metadata multipart type is 17.
inline constexpr std::uint8_t kOfpVersion = 5;
inline constexpr std::uint8_t kMsgTypeMultipartRequest = 18;
inline constexpr std::uint8_t kMsgTypeMultipartReply = 19;
inline constexpr std::uint16_t kMultipartTypeQcm = 17;
inline constexpr std::uint16_t kFlagMore = 1u << 0;  // more segments follow

inline constexpr std::size_t kHeaderSize = 8;
inline constexpr std::size_t kPreambleSize = 16;  // header + type + pad + flags
inline constexpr std::size_t kSpecSize = 16;      // every *_spec blob
inline constexpr std::size_t kStatsSize = 56;     // one serialized record
inline constexpr std::size_t kMaxFrameSize = 65535;

// Records per segment under the 16-bit length ceiling: 1169.
inline constexpr std::size_t kSegmentRecordCapacity =
    (kMaxFrameSize - kPreambleSize) / kStatsSize;

// xid 0 marks unsolicited pushes; solicited exchanges use nonzero xids.
inline constexpr std::uint32_t kUnsolicitedXid = 0;

enum class Direction { kRequest, kReply };
enum class DecodeMode { kStrict, kLenient };

std::string_view direction_name(Direction d);  // "request" / "reply"
Direction direction_from_name(std::string_view name);

// Fixed 8-byte message header. Multi-byte fields are big-endian on the wire;
// length counts the whole message including this header.
struct OfpHeader {
  std::uint8_t version = kOfpVersion;
  std::uint8_t msg_type = 0;
  std::uint16_t length = kHeaderSize;
  std::uint32_t xid = 0;

  friend constexpr bool operator==(const OfpHeader&,
                                   const OfpHeader&) = default;
};

// One multipart segment. Wire layout:
//   header(8) | mp_type(2) | pad(4) | flags(2) | records (56 bytes each)
// The 16-byte preamble and 56-byte per-record body are fixed sizes.
struct QcmMultipart {
  Direction direction = Direction::kRequest;
  OfpHeader header;
  std::uint16_t mp_type = kMultipartTypeQcm;
  std::uint16_t flags = 0;
  std::vector<QcmRecord> records;

  // Builds a consistent segment: fills in the header from direction, xid,
  // and record count. Throws ValidationError when the records do not fit a
  // single segment.
  static QcmMultipart make(Direction dir, std::uint32_t xid,
                           std::uint16_t flags, std::vector<QcmRecord> records);

  std::uint32_t xid() const { return header.xid; }
  bool more() const { return (flags & kFlagMore) != 0; }

  friend bool operator==(const QcmMultipart&, const QcmMultipart&) = default;
};

Bytes encode_header(const OfpHeader& h);
// Parses the first 8 bytes; throws CodecError on short input or length < 8.
OfpHeader decode_header(std::span<const std::uint8_t> b);

Bytes encode_channel_spec(const ChannelSpec& s);  // 16 bytes
ChannelSpec decode_channel_spec(std::span<const std::uint8_t> b,
                                DecodeMode mode = DecodeMode::kStrict);
Bytes encode_ec_spec(const EcSpec& s);  // 16 bytes
EcSpec decode_ec_spec(std::span<const std::uint8_t> b,
                      DecodeMode mode = DecodeMode::kStrict);

// 56-byte stats body for one record. encode validates the record first.
Bytes encode_stats(const QcmRecord& r);
QcmRecord decode_stats(std::span<const std::uint8_t> b,
                       DecodeMode mode = DecodeMode::kStrict);

Bytes encode_multipart(const QcmMultipart& m);
QcmMultipart decode_multipart(std::span<const std::uint8_t> b,
                              DecodeMode mode = DecodeMode::kStrict);

// Splits a record list into maximally packed segments sharing xid and
// direction; every segment but the last carries the more flag.
std::vector<QcmMultipart> fragment(const std::vector<QcmRecord>& records,
                                   std::uint32_t xid, Direction dir);

// Inverse of fragment. Verifies uniform xid/direction and the more-flag
// chain, then concatenates the record lists.
std::vector<QcmRecord> reassemble(const std::vector<QcmMultipart>& segments);

// Hex-dump text: two hex digits per byte, space separated, 16 bytes per
// line, trailing newline when nonempty.
std::string hex_dump(std::span<const std::uint8_t> bytes);
// Parses hex text, ignoring whitespace; throws CodecError (with the text
// offset) on stray characters or an odd digit count.
Bytes hex_parse(const std::string& text);

}  // namespace qcm
