#pragma once

#include <array>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace qcm {

// 16-byte opaque parameter blob. The communication-protocol parameters stay
// uninterpreted end to end.
using SpecBlob = std::array<std::uint8_t, 16>;

// Registry of communication-protocol identifiers. 0 means no protocol;
// values 4..65535 are reserved/experimental and carried as plain numbers.
enum class ComProtocol : std::uint16_t {
  kNone = 0,
  kQkd = 1,            // quantum key distribution
  kTeleportation = 2,  // quantum teleportation
  kSuperdense = 3,     // superdense coding
};

// Transmission/reception parameters of the quantum channel.
struct ChannelSpec {
  std::uint32_t wavelength_pm = 0;      // picometers, 0 = unspecified
  std::uint32_t mean_photon_milli = 0;  // mean photon number, units of 1e-3
  std::uint32_t symbol_rate_hz = 0;     // symbols per second
  std::uint32_t reserved = 0;           // must be 0

  friend constexpr bool operator==(const ChannelSpec&,
                                   const ChannelSpec&) = default;
};

// Error-correction code parameters.
struct EcSpec {
  std::uint16_t n = 0;  // code length
  std::uint16_t k = 0;  // logical qubits
  std::uint16_t d = 0;  // distance
  std::uint16_t verify_circuit_id = 0;
  std::array<std::uint8_t, 8> reserved{};  // must be all-zero

  constexpr bool params_all_zero() const { return n == 0 && k == 0 && d == 0; }

  friend constexpr bool operator==(const EcSpec&, const EcSpec&) = default;
};

// One device's quantum metadata row: three identifiers, each paired with a
// 16-byte parameter spec. Identifier 0 means unassigned/none, and an
// identifier of 0 requires its spec to be all-zero.
struct QcmRecord {
  std::uint16_t qchannel = 0;
  ChannelSpec qchannel_spec;
  std::uint16_t qcom = 0;
  SpecBlob qcom_spec{};
  std::uint16_t qec = 0;
  EcSpec qec_spec;

  friend constexpr bool operator==(const QcmRecord&,
                                   const QcmRecord&) = default;
};

enum class RecordField {
  kQchannel,
  kQchannelSpec,
  kQcom,
  kQcomSpec,
  kQec,
  kQecSpec,
};

inline constexpr std::array<RecordField, 6> kRecordFields = {
    RecordField::kQchannel, RecordField::kQchannelSpec, RecordField::kQcom,
    RecordField::kQcomSpec, RecordField::kQec,          RecordField::kQecSpec,
};

// Lowercase field names used in diagnostics and configuration files.
std::string_view record_field_name(RecordField f);
// Uppercase labels used in textual renderings and statistics.
std::string_view record_field_label(RecordField f);
// Inverse of record_field_name; throws ValidationError on unknown names.
RecordField record_field_from_name(std::string_view name);

using FieldValue = std::variant<std::uint16_t, ChannelSpec, SpecBlob, EcSpec>;

struct FieldMutation {
  RecordField field = RecordField::kQchannel;
  FieldValue value;
};

struct Violation {
  RecordField field = RecordField::kQchannel;
  std::string message;
};

constexpr bool blob_all_zero(const SpecBlob& b) {
  for (auto byte : b) {
    if (byte != 0) return false;
  }
  return true;
}

// The all-zero record: no channel, no protocols, zero specs.
QcmRecord make_default_record();

// Empty result iff every record invariant holds; each entry names the field
// that has to change.
std::vector<Violation> validate_record(const QcmRecord& r);

bool record_valid(const QcmRecord& r);

// Throws ValidationError carrying the first violation.
void require_valid(const QcmRecord& r);

// The set of top-level fields whose values differ.
std::set<RecordField> diff_records(const QcmRecord& a, const QcmRecord& b);

// Copy-and-set of a single field. Throws ValidationError when the value type
// does not match the field or the result fails validation.
QcmRecord apply_field_update(const QcmRecord& r, RecordField field,
                             const FieldValue& value);

// Applies a batch of field updates, validating once at the end. Coupled
// fields (qec together with qec_spec) must land atomically to stay valid.
QcmRecord apply_mutations(const QcmRecord& r,
                          const std::vector<FieldMutation>& mutations);

}  // namespace qcm
