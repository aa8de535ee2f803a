#include "qcmflow/record.hpp"

#include <algorithm>

#include "qcmflow/errors.hpp"

namespace qcm {

namespace {

constexpr std::array<std::string_view, 6> kFieldNames = {
    "qchannel", "qchannel_spec", "qcom", "qcom_spec", "qec", "qec_spec",
};

constexpr std::array<std::string_view, 6> kFieldLabels = {
    "QCHANNEL", "QCHANNEL_SPEC", "QCOM", "QCOM_SPEC", "QEC", "QEC_SPEC",
};

constexpr bool ec_spec_all_zero(const EcSpec& s) {
  return s.params_all_zero() && s.verify_circuit_id == 0 &&
         std::all_of(s.reserved.begin(), s.reserved.end(),
                     [](std::uint8_t b) { return b == 0; });
}

}  // namespace

std::string_view record_field_name(RecordField f) {
  return kFieldNames[static_cast<std::size_t>(f)];
}

std::string_view record_field_label(RecordField f) {
  return kFieldLabels[static_cast<std::size_t>(f)];
}

RecordField record_field_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kFieldNames.size(); ++i) {
    if (kFieldNames[i] == name) return static_cast<RecordField>(i);
  }
  throw ValidationError("unknown record field '" + std::string(name) + "'");
}

QcmRecord make_default_record() { return QcmRecord{}; }

std::vector<Violation> validate_record(const QcmRecord& r) {
  std::vector<Violation> out;
  if (r.qchannel_spec.reserved != 0) {
    out.push_back({RecordField::kQchannelSpec,
                   "qchannel_spec.reserved must be 0"});
  }
  if (r.qcom == 0 && !blob_all_zero(r.qcom_spec)) {
    out.push_back({RecordField::kQcomSpec,
                   "qcom_spec must be all-zero when qcom is 0"});
  }
  if (r.qec == 0 && !ec_spec_all_zero(r.qec_spec)) {
    out.push_back({RecordField::kQecSpec,
                   "qec_spec must be all-zero when qec is 0"});
  }
  if (r.qec != 0 && r.qec_spec.params_all_zero()) {
    out.push_back({RecordField::kQec,
                   "qec must be 0 when qec_spec carries no n/k/d parameters"});
  }
  if (!std::all_of(r.qec_spec.reserved.begin(), r.qec_spec.reserved.end(),
                   [](std::uint8_t b) { return b == 0; })) {
    out.push_back({RecordField::kQecSpec,
                   "qec_spec.reserved must be all-zero"});
  }
  return out;
}

bool record_valid(const QcmRecord& r) { return validate_record(r).empty(); }

void require_valid(const QcmRecord& r) {
  const auto violations = validate_record(r);
  if (!violations.empty()) {
    throw ValidationError("invalid record: " + violations.front().message);
  }
}

std::set<RecordField> diff_records(const QcmRecord& a, const QcmRecord& b) {
  std::set<RecordField> out;
  if (a.qchannel != b.qchannel) out.insert(RecordField::kQchannel);
  if (a.qchannel_spec != b.qchannel_spec) out.insert(RecordField::kQchannelSpec);
  if (a.qcom != b.qcom) out.insert(RecordField::kQcom);
  if (a.qcom_spec != b.qcom_spec) out.insert(RecordField::kQcomSpec);
  if (a.qec != b.qec) out.insert(RecordField::kQec);
  if (a.qec_spec != b.qec_spec) out.insert(RecordField::kQecSpec);
  return out;
}

namespace {

void set_field(QcmRecord& r, RecordField field, const FieldValue& value) {
  const auto type_mismatch = [&] {
    return ValidationError("value type does not match field '" +
                           std::string(record_field_name(field)) + "'");
  };
  switch (field) {
    case RecordField::kQchannel:
    case RecordField::kQcom:
    case RecordField::kQec: {
      const auto* id = std::get_if<std::uint16_t>(&value);
      if (id == nullptr) throw type_mismatch();
      if (field == RecordField::kQchannel) {
        r.qchannel = *id;
      } else if (field == RecordField::kQcom) {
        r.qcom = *id;
      } else {
        r.qec = *id;
      }
      return;
    }
    case RecordField::kQchannelSpec: {
      const auto* spec = std::get_if<ChannelSpec>(&value);
      if (spec == nullptr) throw type_mismatch();
      r.qchannel_spec = *spec;
      return;
    }
    case RecordField::kQcomSpec: {
      const auto* blob = std::get_if<SpecBlob>(&value);
      if (blob == nullptr) throw type_mismatch();
      r.qcom_spec = *blob;
      return;
    }
    case RecordField::kQecSpec: {
      const auto* spec = std::get_if<EcSpec>(&value);
      if (spec == nullptr) throw type_mismatch();
      r.qec_spec = *spec;
      return;
    }
  }
  throw type_mismatch();
}

}  // namespace

QcmRecord apply_field_update(const QcmRecord& r, RecordField field,
                             const FieldValue& value) {
  QcmRecord out = r;
  set_field(out, field, value);
  require_valid(out);
  return out;
}

QcmRecord apply_mutations(const QcmRecord& r,
                          const std::vector<FieldMutation>& mutations) {
  QcmRecord out = r;
  for (const auto& m : mutations) {
    set_field(out, m.field, m.value);
  }
  require_valid(out);
  return out;
}

}  // namespace qcm
