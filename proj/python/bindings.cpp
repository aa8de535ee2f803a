#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qcmflow/agent.hpp"
#include "qcmflow/codec.hpp"
#include "qcmflow/controller.hpp"
#include "qcmflow/errors.hpp"
#include "qcmflow/record.hpp"
#include "qcmflow/scenario.hpp"
#include "qcmflow/sim.hpp"
#include "qcmflow/text.hpp"

namespace py = pybind11;
using namespace qcm;

namespace {

SpecBlob blob_from_bytes(const py::bytes& data) {
  const std::string raw = data;
  if (raw.size() != 16) {
    throw ValidationError("spec blob needs exactly 16 bytes, got " +
                          std::to_string(raw.size()));
  }
  SpecBlob out{};
  std::copy(raw.begin(), raw.end(), out.begin());
  return out;
}

py::bytes blob_to_bytes(const SpecBlob& blob) {
  return py::bytes(reinterpret_cast<const char*>(blob.data()), blob.size());
}

Bytes bytes_from_py(const py::bytes& data) {
  const std::string raw = data;
  return Bytes(raw.begin(), raw.end());
}

py::bytes bytes_to_py(const Bytes& data) {
  return py::bytes(reinterpret_cast<const char*>(data.data()), data.size());
}

FieldValue field_value_from_py(RecordField field, const py::object& value) {
  switch (field) {
    case RecordField::kQchannel:
    case RecordField::kQcom:
    case RecordField::kQec:
      return value.cast<std::uint16_t>();
    case RecordField::kQchannelSpec:
      return value.cast<ChannelSpec>();
    case RecordField::kQcomSpec:
      return blob_from_bytes(value.cast<py::bytes>());
    case RecordField::kQecSpec:
      return value.cast<EcSpec>();
  }
  throw ValidationError("unhandled field");
}

DecodeMode mode_from_strict(bool strict) {
  return strict ? DecodeMode::kStrict : DecodeMode::kLenient;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "OpenFlow quantum-metadata channel core: records, wire codec, "
            "flow table, and the deterministic simulator.";

  const auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<CodecError>(m, "CodecError", base.ptr());
  py::register_exception<ProtocolError>(m, "ProtocolError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<SimError>(m, "SimError", base.ptr());
  py::register_exception<IoError>(m, "IoError", base.ptr());

  m.attr("OFP_VERSION") = kOfpVersion;
  m.attr("MULTIPART_TYPE_QCM") = kMultipartTypeQcm;
  m.attr("FLAG_MORE") = kFlagMore;
  m.attr("HEADER_SIZE") = kHeaderSize;
  m.attr("PREAMBLE_SIZE") = kPreambleSize;
  m.attr("STATS_SIZE") = kStatsSize;
  m.attr("MAX_FRAME_SIZE") = kMaxFrameSize;
  m.attr("SEGMENT_RECORD_CAPACITY") = kSegmentRecordCapacity;
  m.attr("UNSOLICITED_XID") = kUnsolicitedXid;

  py::class_<ChannelSpec>(m, "ChannelSpec")
      .def(py::init([](std::uint32_t wavelength_pm,
                       std::uint32_t mean_photon_milli,
                       std::uint32_t symbol_rate_hz) {
             return ChannelSpec{wavelength_pm, mean_photon_milli,
                                symbol_rate_hz, 0};
           }),
           py::arg("wavelength_pm") = 0, py::arg("mean_photon_milli") = 0,
           py::arg("symbol_rate_hz") = 0)
      .def_readwrite("wavelength_pm", &ChannelSpec::wavelength_pm)
      .def_readwrite("mean_photon_milli", &ChannelSpec::mean_photon_milli)
      .def_readwrite("symbol_rate_hz", &ChannelSpec::symbol_rate_hz)
      .def(py::self == py::self);

  py::class_<EcSpec>(m, "EcSpec")
      .def(py::init([](std::uint16_t n, std::uint16_t k, std::uint16_t d,
                       std::uint16_t verify_circuit_id) {
             EcSpec s;
             s.n = n;
             s.k = k;
             s.d = d;
             s.verify_circuit_id = verify_circuit_id;
             return s;
           }),
           py::arg("n") = 0, py::arg("k") = 0, py::arg("d") = 0,
           py::arg("verify_circuit_id") = 0)
      .def_readwrite("n", &EcSpec::n)
      .def_readwrite("k", &EcSpec::k)
      .def_readwrite("d", &EcSpec::d)
      .def_readwrite("verify_circuit_id", &EcSpec::verify_circuit_id)
      .def(py::self == py::self);

  py::class_<QcmRecord>(m, "QcmRecord")
      .def(py::init<>())
      .def_readwrite("qchannel", &QcmRecord::qchannel)
      .def_readwrite("qchannel_spec", &QcmRecord::qchannel_spec)
      .def_readwrite("qcom", &QcmRecord::qcom)
      .def_property(
          "qcom_spec",
          [](const QcmRecord& r) { return blob_to_bytes(r.qcom_spec); },
          [](QcmRecord& r, const py::bytes& b) {
            r.qcom_spec = blob_from_bytes(b);
          })
      .def_readwrite("qec", &QcmRecord::qec)
      .def_readwrite("qec_spec", &QcmRecord::qec_spec)
      .def(py::self == py::self)
      .def("__repr__",
           [](const QcmRecord& r) { return "<QcmRecord\n" + format_record(r) + ">"; });

  m.def("default_record", &make_default_record,
        "The all-zero record: no channel, no protocols, zero specs.");
  m.def(
      "validate_record",
      [](const QcmRecord& r) {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& v : validate_record(r)) {
          out.emplace_back(std::string(record_field_name(v.field)), v.message);
        }
        return out;
      },
      py::arg("record"),
      "Violations as (field, message) pairs; empty when the record is valid.");
  m.def(
      "diff_records",
      [](const QcmRecord& a, const QcmRecord& b) {
        std::set<std::string> out;
        for (const auto f : diff_records(a, b)) {
          out.insert(std::string(record_field_name(f)));
        }
        return out;
      },
      py::arg("old"), py::arg("new"),
      "Names of the top-level fields whose values differ.");
  m.def(
      "apply_field_update",
      [](const QcmRecord& r, const std::string& field, const py::object& value) {
        const RecordField f = record_field_from_name(field);
        return apply_field_update(r, f, field_value_from_py(f, value));
      },
      py::arg("record"), py::arg("field"), py::arg("value"),
      "Copy-and-set of one field; raises ValidationError when the result "
      "would be invalid.");

  py::class_<OfpHeader>(m, "OfpHeader")
      .def(py::init<>())
      .def_readwrite("version", &OfpHeader::version)
      .def_readwrite("msg_type", &OfpHeader::msg_type)
      .def_readwrite("length", &OfpHeader::length)
      .def_readwrite("xid", &OfpHeader::xid)
      .def(py::self == py::self);

  py::class_<QcmMultipart>(m, "QcmMultipart")
      .def_property_readonly(
          "direction",
          [](const QcmMultipart& m_) {
            return std::string(direction_name(m_.direction));
          })
      .def_readonly("header", &QcmMultipart::header)
      .def_readonly("mp_type", &QcmMultipart::mp_type)
      .def_readonly("flags", &QcmMultipart::flags)
      .def_readonly("records", &QcmMultipart::records)
      .def_property_readonly("xid", &QcmMultipart::xid)
      .def_property_readonly("more", &QcmMultipart::more)
      .def(py::self == py::self);

  m.def(
      "make_multipart",
      [](const std::string& direction, std::uint32_t xid, std::uint16_t flags,
         const std::vector<QcmRecord>& records) {
        return QcmMultipart::make(direction_from_name(direction), xid, flags,
                                  records);
      },
      py::arg("direction"), py::arg("xid"), py::arg("flags") = 0,
      py::arg("records") = std::vector<QcmRecord>{});

  m.def(
      "encode_stats",
      [](const QcmRecord& r) { return bytes_to_py(encode_stats(r)); },
      py::arg("record"), "The 56-byte stats body for one record.");
  m.def(
      "decode_stats",
      [](const py::bytes& b, bool strict) {
        const Bytes bytes = bytes_from_py(b);
        return decode_stats(bytes, mode_from_strict(strict));
      },
      py::arg("data"), py::arg("strict") = true);
  m.def(
      "encode_multipart",
      [](const QcmMultipart& m_) { return bytes_to_py(encode_multipart(m_)); },
      py::arg("message"));
  m.def(
      "decode_multipart",
      [](const py::bytes& b, bool strict) {
        const Bytes bytes = bytes_from_py(b);
        return decode_multipart(bytes, mode_from_strict(strict));
      },
      py::arg("data"), py::arg("strict") = true);
  m.def(
      "fragment",
      [](const std::vector<QcmRecord>& records, std::uint32_t xid,
         const std::string& direction) {
        return fragment(records, xid, direction_from_name(direction));
      },
      py::arg("records"), py::arg("xid"), py::arg("direction"),
      "Split records into maximally packed segments chained by the more flag.");
  m.def("reassemble", &reassemble, py::arg("segments"),
        "Inverse of fragment; verifies the xid and more-flag chain.");
  m.def(
      "hex_dump",
      [](const py::bytes& b) {
        const Bytes bytes = bytes_from_py(b);
        return hex_dump(bytes);
      },
      py::arg("data"));
  m.def(
      "hex_parse",
      [](const std::string& text) { return bytes_to_py(hex_parse(text)); },
      py::arg("text"));

  m.def("format_record", &format_record, py::arg("record"),
        "Canonical textual form: one FIELD: value line per field.");
  m.def("parse_record_spec", &parse_record_spec, py::arg("text"));
  m.def("format_multipart", &format_multipart, py::arg("message"));
  m.def("com_protocol_name", &com_protocol_name, py::arg("qcom"));

  m.def("flow_module_transform", &flow_module_transform, py::arg("record"),
        "OpenFlow-style 16-bit statistics: ids as values, specs as byte-sum "
        "checksums.");

  py::class_<FlowMatch>(m, "FlowMatch")
      .def(py::init([](std::optional<std::uint16_t> qchannel,
                       std::optional<std::uint16_t> qcom,
                       std::optional<std::uint16_t> qec) {
             return FlowMatch{qchannel, qcom, qec};
           }),
           py::arg("qchannel") = std::nullopt, py::arg("qcom") = std::nullopt,
           py::arg("qec") = std::nullopt)
      .def_readwrite("qchannel", &FlowMatch::qchannel)
      .def_readwrite("qcom", &FlowMatch::qcom)
      .def_readwrite("qec", &FlowMatch::qec)
      .def("matches", &FlowMatch::matches, py::arg("record"));

  py::class_<FlowAction>(m, "FlowAction")
      .def(py::init<const std::string&, const std::string&>(), py::arg("name"),
           py::arg("param") = "")
      .def_readwrite("name", &FlowAction::name)
      .def_readwrite("param", &FlowAction::param)
      .def(py::self == py::self)
      .def("__repr__", [](const FlowAction& a) {
        return "FlowAction(" + a.name +
               (a.param.empty() ? "" : ", " + a.param) + ")";
      });

  py::class_<QcmFlowEntry>(m, "QcmFlowEntry")
      .def(py::init([](std::uint32_t entry_id, std::uint16_t priority,
                       const FlowMatch& match,
                       const std::vector<FlowAction>& actions) {
             return QcmFlowEntry{entry_id, priority, match, actions};
           }),
           py::arg("entry_id"), py::arg("priority") = 0,
           py::arg("match") = FlowMatch{},
           py::arg("actions") = std::vector<FlowAction>{})
      .def_readwrite("entry_id", &QcmFlowEntry::entry_id)
      .def_readwrite("priority", &QcmFlowEntry::priority)
      .def_readwrite("match", &QcmFlowEntry::match)
      .def_readwrite("actions", &QcmFlowEntry::actions);

  py::class_<FlowTable>(m, "FlowTable")
      .def(py::init<>())
      .def("install", &FlowTable::install, py::arg("entry"))
      .def("match", &FlowTable::match, py::arg("attrs"),
           "Actions of the best match: highest priority, then lowest id.")
      .def("__len__", &FlowTable::size);

  m.def(
      "run_scenario",
      [](const std::string& json_text,
         const std::optional<std::string>& trace_mode) {
        Scenario sc = load_scenario(json_text);
        if (trace_mode) {
          sc.trace_mode = trace_mode_from_name(*trace_mode);
        }
        return run_scenario(sc).render();
      },
      py::arg("json_text"), py::arg("trace_mode") = std::nullopt,
      "Run a scenario given as JSON text and return the rendered trace.");
  m.def(
      "run_scenario_file",
      [](const std::string& path, const std::optional<std::string>& trace_mode) {
        Scenario sc = load_scenario_file(path);
        if (trace_mode) {
          sc.trace_mode = trace_mode_from_name(*trace_mode);
        }
        return run_scenario(sc).render();
      },
      py::arg("path"), py::arg("trace_mode") = std::nullopt);
}
