#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qcmflow/codec.hpp"
#include "qcmflow/record.hpp"

namespace qcm {

// Symbolic names for registered protocol ids: NONE, QKD, QT, SDC.
// Unregistered values render as decimal.
std::string com_protocol_name(std::uint16_t qcom);
// Accepts a symbolic name or a decimal number.
std::uint16_t com_protocol_from_name(const std::string& name);

// Canonical textual form of a record: one "FIELD: value" line per field, in
// wire order, trailing newline. parse_record_spec is its exact inverse.
//
//   QCHANNEL: 7
//   QCHANNEL_SPEC: wavelength_pm=1550000 mean_photon_milli=500 symbol_rate_hz=1000000
//   QCOM: SDC
//   QCOM_SPEC: 000102030405060708090a0b0c0d0e0f
//   QEC: 2
//   QEC_SPEC: n=7 k=1 d=3 verify_circuit_id=9
std::string format_record(const QcmRecord& r);
QcmRecord parse_record_spec(const std::string& text);

// Record-spec files may hold any number of records, separated by "--" lines.
// An empty (or whitespace-only) file holds none. format_record output is a
// valid single-record file.
std::vector<QcmRecord> parse_record_specs(const std::string& text);

// Canonical rendering of a decoded segment: direction/xid/flags/record-count
// header lines, then each record introduced by a "--" line.
std::string format_multipart(const QcmMultipart& m);

}  // namespace qcm
