#include "qcmflow/text.hpp"

#include <charconv>
#include <sstream>

#include "qcmflow/errors.hpp"

namespace qcm {

namespace {

struct NamedProtocol {
  std::uint16_t id;
  const char* name;
};

constexpr NamedProtocol kProtocols[] = {
    {0, "NONE"},
    {1, "QKD"},
    {2, "QT"},
    {3, "SDC"},
};

std::uint64_t parse_uint(const std::string& text, std::uint64_t max,
                         const std::string& what) {
  std::uint64_t value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || text.empty()) {
    throw ValidationError("expected a number for " + what + ", got '" + text +
                          "'");
  }
  if (value > max) {
    throw ValidationError(what + " value " + text + " exceeds " +
                          std::to_string(max));
  }
  return value;
}

std::string blob_hex(const SpecBlob& b) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(b.size() * 2);
  for (auto byte : b) {
    out.push_back(kDigits[byte >> 4]);
    out.push_back(kDigits[byte & 0xf]);
  }
  return out;
}

SpecBlob blob_from_hex(const std::string& text) {
  const Bytes bytes = hex_parse(text);
  if (bytes.size() != 16) {
    throw ValidationError("spec blob needs 16 bytes (32 hex digits), got " +
                          std::to_string(bytes.size()) + " bytes");
  }
  SpecBlob out{};
  std::copy(bytes.begin(), bytes.end(), out.begin());
  return out;
}

// Parses "key1=v1 key2=v2 ..." with a fixed key order.
std::vector<std::uint64_t> parse_kv_list(const std::string& text,
                                         const std::vector<std::string>& keys,
                                         std::uint64_t max) {
  std::istringstream in(text);
  std::vector<std::uint64_t> values;
  std::string token;
  for (const auto& key : keys) {
    if (!(in >> token)) {
      throw ValidationError("missing '" + key + "=' entry in '" + text + "'");
    }
    const auto eq = token.find('=');
    if (eq == std::string::npos || token.substr(0, eq) != key) {
      throw ValidationError("expected '" + key + "=...', got '" + token + "'");
    }
    values.push_back(parse_uint(token.substr(eq + 1), max, key));
  }
  if (in >> token) {
    throw ValidationError("unexpected trailing '" + token + "' in '" + text +
                          "'");
  }
  return values;
}

std::string channel_spec_text(const ChannelSpec& s) {
  std::ostringstream out;
  out << "wavelength_pm=" << s.wavelength_pm
      << " mean_photon_milli=" << s.mean_photon_milli
      << " symbol_rate_hz=" << s.symbol_rate_hz;
  return out.str();
}

ChannelSpec channel_spec_from_text(const std::string& text) {
  const auto v = parse_kv_list(
      text, {"wavelength_pm", "mean_photon_milli", "symbol_rate_hz"},
      0xffffffffu);
  ChannelSpec s;
  s.wavelength_pm = static_cast<std::uint32_t>(v[0]);
  s.mean_photon_milli = static_cast<std::uint32_t>(v[1]);
  s.symbol_rate_hz = static_cast<std::uint32_t>(v[2]);
  return s;
}

std::string ec_spec_text(const EcSpec& s) {
  std::ostringstream out;
  out << "n=" << s.n << " k=" << s.k << " d=" << s.d
      << " verify_circuit_id=" << s.verify_circuit_id;
  return out.str();
}

EcSpec ec_spec_from_text(const std::string& text) {
  const auto v =
      parse_kv_list(text, {"n", "k", "d", "verify_circuit_id"}, 0xffffu);
  EcSpec s;
  s.n = static_cast<std::uint16_t>(v[0]);
  s.k = static_cast<std::uint16_t>(v[1]);
  s.d = static_cast<std::uint16_t>(v[2]);
  s.verify_circuit_id = static_cast<std::uint16_t>(v[3]);
  return s;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string line;
  std::istringstream in(text);
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

// Expects "LABEL: value"; returns the value.
std::string take_field(const std::vector<std::string>& lines, std::size_t at,
                       RecordField field) {
  const std::string label(record_field_label(field));
  if (at >= lines.size()) {
    throw ValidationError("record spec is missing the '" + label + ":' line");
  }
  const std::string& line = lines[at];
  const std::string prefix = label + ": ";
  if (line.rfind(prefix, 0) != 0) {
    throw ValidationError("expected '" + label + ": ...', got '" + line + "'");
  }
  return line.substr(prefix.size());
}

QcmRecord record_from_lines(const std::vector<std::string>& lines,
                            std::size_t at) {
  QcmRecord r;
  r.qchannel = static_cast<std::uint16_t>(parse_uint(
      take_field(lines, at + 0, RecordField::kQchannel), 0xffffu, "QCHANNEL"));
  r.qchannel_spec = channel_spec_from_text(
      take_field(lines, at + 1, RecordField::kQchannelSpec));
  r.qcom =
      com_protocol_from_name(take_field(lines, at + 2, RecordField::kQcom));
  r.qcom_spec =
      blob_from_hex(take_field(lines, at + 3, RecordField::kQcomSpec));
  r.qec = static_cast<std::uint16_t>(parse_uint(
      take_field(lines, at + 4, RecordField::kQec), 0xffffu, "QEC"));
  r.qec_spec =
      ec_spec_from_text(take_field(lines, at + 5, RecordField::kQecSpec));
  require_valid(r);
  return r;
}

}  // namespace

std::string com_protocol_name(std::uint16_t qcom) {
  for (const auto& p : kProtocols) {
    if (p.id == qcom) return p.name;
  }
  return std::to_string(qcom);
}

std::uint16_t com_protocol_from_name(const std::string& name) {
  for (const auto& p : kProtocols) {
    if (name == p.name) return p.id;
  }
  return static_cast<std::uint16_t>(parse_uint(name, 0xffffu, "QCOM"));
}

std::string format_record(const QcmRecord& r) {
  std::ostringstream out;
  out << record_field_label(RecordField::kQchannel) << ": " << r.qchannel
      << "\n";
  out << record_field_label(RecordField::kQchannelSpec) << ": "
      << channel_spec_text(r.qchannel_spec) << "\n";
  out << record_field_label(RecordField::kQcom) << ": "
      << com_protocol_name(r.qcom) << "\n";
  out << record_field_label(RecordField::kQcomSpec) << ": "
      << blob_hex(r.qcom_spec) << "\n";
  out << record_field_label(RecordField::kQec) << ": " << r.qec << "\n";
  out << record_field_label(RecordField::kQecSpec) << ": "
      << ec_spec_text(r.qec_spec) << "\n";
  return out.str();
}

QcmRecord parse_record_spec(const std::string& text) {
  const auto lines = split_lines(text);
  std::size_t end = lines.size();
  while (end > 0 && lines[end - 1].empty()) --end;
  if (end != 6) {
    throw ValidationError("record spec needs exactly 6 lines, got " +
                          std::to_string(end));
  }
  return record_from_lines(lines, 0);
}

std::vector<QcmRecord> parse_record_specs(const std::string& text) {
  const auto lines = split_lines(text);
  std::vector<QcmRecord> out;
  std::vector<std::string> block;
  const auto flush = [&] {
    if (block.empty()) return;
    if (block.size() != 6) {
      throw ValidationError("record block " + std::to_string(out.size()) +
                            " needs exactly 6 lines, got " +
                            std::to_string(block.size()));
    }
    out.push_back(record_from_lines(block, 0));
    block.clear();
  };
  for (const auto& line : lines) {
    if (line == "--") {
      flush();
    } else if (!line.empty()) {
      block.push_back(line);
    }
  }
  flush();
  return out;
}

std::string format_multipart(const QcmMultipart& m) {
  std::ostringstream out;
  out << "direction: " << direction_name(m.direction) << "\n";
  out << "xid: " << m.header.xid << "\n";
  out << "flags: " << m.flags << "\n";
  out << "records: " << m.records.size() << "\n";
  for (const auto& r : m.records) {
    out << "--\n" << format_record(r);
  }
  return out.str();
}

}  // namespace qcm
