#include "qcmflow/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qcmflow/errors.hpp"
#include "qcmflow/text.hpp"

namespace qcm {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::set<std::string>& known,
                         const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (known.count(key) == 0) {
      throw ConfigError("unknown key '" + key + "' in " + where);
    }
  }
}

SimTime time_field(const json& obj, const std::string& key, SimTime fallback,
                   const std::string& where) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number()) {
    throw ConfigError("'" + key + "' in " + where + " must be a number");
  }
  const double t = v.get<double>();
  if (t < 0) {
    throw ConfigError("'" + key + "' in " + where + " must be non-negative");
  }
  return SimTime::from_double(t);
}

std::uint64_t uint_field(const json& v, std::uint64_t max,
                         const std::string& where) {
  if (!v.is_number_unsigned()) {
    throw ConfigError(where + " must be an unsigned integer");
  }
  const auto value = v.get<std::uint64_t>();
  if (value > max) {
    throw ConfigError(where + " value " + std::to_string(value) + " exceeds " +
                      std::to_string(max));
  }
  return value;
}

ChannelSpec channel_spec_value(const json& v, const std::string& where) {
  if (!v.is_object()) {
    throw ConfigError(where + " must be an object");
  }
  reject_unknown_keys(
      v, {"wavelength_pm", "mean_photon_milli", "symbol_rate_hz"}, where);
  ChannelSpec s;
  if (v.contains("wavelength_pm")) {
    s.wavelength_pm = static_cast<std::uint32_t>(
        uint_field(v.at("wavelength_pm"), 0xffffffffu, where + ".wavelength_pm"));
  }
  if (v.contains("mean_photon_milli")) {
    s.mean_photon_milli = static_cast<std::uint32_t>(uint_field(
        v.at("mean_photon_milli"), 0xffffffffu, where + ".mean_photon_milli"));
  }
  if (v.contains("symbol_rate_hz")) {
    s.symbol_rate_hz = static_cast<std::uint32_t>(
        uint_field(v.at("symbol_rate_hz"), 0xffffffffu, where + ".symbol_rate_hz"));
  }
  return s;
}

EcSpec ec_spec_value(const json& v, const std::string& where) {
  if (!v.is_object()) {
    throw ConfigError(where + " must be an object");
  }
  reject_unknown_keys(v, {"n", "k", "d", "verify_circuit_id"}, where);
  EcSpec s;
  if (v.contains("n")) {
    s.n = static_cast<std::uint16_t>(uint_field(v.at("n"), 0xffffu, where + ".n"));
  }
  if (v.contains("k")) {
    s.k = static_cast<std::uint16_t>(uint_field(v.at("k"), 0xffffu, where + ".k"));
  }
  if (v.contains("d")) {
    s.d = static_cast<std::uint16_t>(uint_field(v.at("d"), 0xffffu, where + ".d"));
  }
  if (v.contains("verify_circuit_id")) {
    s.verify_circuit_id = static_cast<std::uint16_t>(uint_field(
        v.at("verify_circuit_id"), 0xffffu, where + ".verify_circuit_id"));
  }
  return s;
}

FieldValue field_value(RecordField field, const json& v,
                       const std::string& where) {
  switch (field) {
    case RecordField::kQchannel:
    case RecordField::kQec:
      return static_cast<std::uint16_t>(uint_field(v, 0xffffu, where));
    case RecordField::kQcom:
      if (v.is_string()) {
        try {
          return com_protocol_from_name(v.get<std::string>());
        } catch (const ValidationError& e) {
          throw ConfigError(where + ": " + e.what());
        }
      }
      return static_cast<std::uint16_t>(uint_field(v, 0xffffu, where));
    case RecordField::kQchannelSpec:
      return channel_spec_value(v, where);
    case RecordField::kQcomSpec: {
      if (!v.is_string()) {
        throw ConfigError(where + " must be a hex string");
      }
      try {
        const Bytes bytes = hex_parse(v.get<std::string>());
        if (bytes.size() != 16) {
          throw ConfigError(where + " must hold 16 bytes (32 hex digits)");
        }
        SpecBlob blob{};
        std::copy(bytes.begin(), bytes.end(), blob.begin());
        return blob;
      } catch (const CodecError& e) {
        throw ConfigError(where + ": " + e.what());
      }
    }
    case RecordField::kQecSpec:
      return ec_spec_value(v, where);
  }
  throw ConfigError(where + ": unhandled field");
}

MutationScript script_value(const json& v, const std::string& where) {
  if (!v.is_array()) {
    throw ConfigError(where + " must be an array");
  }
  MutationScript script;
  std::size_t index = 0;
  for (const auto& entry : v) {
    const std::string entry_where = where + "[" + std::to_string(index) + "]";
    if (!entry.is_object()) {
      throw ConfigError(entry_where + " must be an object");
    }
    reject_unknown_keys(entry, {"t", "field", "value"}, entry_where);
    for (const char* key : {"t", "field", "value"}) {
      if (!entry.contains(key)) {
        throw ConfigError(entry_where + " is missing '" + key + "'");
      }
    }
    ScriptEntry se;
    if (!entry.at("t").is_number()) {
      throw ConfigError(entry_where + ".t must be a number");
    }
    const double t = entry.at("t").get<double>();
    if (t < 0) {
      throw ConfigError(entry_where + ".t must be non-negative");
    }
    se.time = SimTime::from_double(t);
    if (!entry.at("field").is_string()) {
      throw ConfigError(entry_where + ".field must be a string");
    }
    RecordField field;
    try {
      field = record_field_from_name(entry.at("field").get<std::string>());
    } catch (const ValidationError& e) {
      throw ConfigError(entry_where + ": " + e.what());
    }
    se.mutation.field = field;
    se.mutation.value =
        field_value(field, entry.at("value"), entry_where + ".value");
    script.entries.push_back(std::move(se));
    ++index;
  }
  try {
    validate_script(script);
  } catch (const ConfigError& e) {
    throw ConfigError(where + ": " + e.what());
  }
  return script;
}

}  // namespace

Scenario load_scenario(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("scenario JSON parse error: ") + e.what());
  }
  if (!root.is_object()) {
    throw ConfigError("scenario must be a JSON object");
  }
  reject_unknown_keys(root,
                      {"name", "t_end", "mode", "poll_period", "channel_delay",
                       "trace_mode", "seed", "devices"},
                      "scenario");
  if (!root.contains("t_end")) {
    throw ConfigError("scenario is missing 't_end'");
  }

  Scenario sc;
  if (root.contains("name")) {
    if (!root.at("name").is_string()) {
      throw ConfigError("'name' must be a string");
    }
    sc.name = root.at("name").get<std::string>();
  }
  sc.t_end = time_field(root, "t_end", SimTime{}, "scenario");
  if (root.contains("mode")) {
    if (!root.at("mode").is_string()) {
      throw ConfigError("'mode' must be a string");
    }
    sc.topology.mode = sync_mode_from_name(root.at("mode").get<std::string>());
  }
  sc.topology.poll_period =
      time_field(root, "poll_period", SimTime::ticks(5), "scenario");
  if (sc.topology.poll_period <= SimTime{}) {
    throw ConfigError("'poll_period' must be positive");
  }
  sc.topology.channel_delay =
      time_field(root, "channel_delay", SimTime{}, "scenario");
  if (root.contains("trace_mode")) {
    if (!root.at("trace_mode").is_string()) {
      throw ConfigError("'trace_mode' must be a string");
    }
    sc.trace_mode =
        trace_mode_from_name(root.at("trace_mode").get<std::string>());
  }
  if (root.contains("seed")) {
    sc.seed = uint_field(root.at("seed"), ~std::uint64_t{0}, "'seed'");
  }

  if (root.contains("devices")) {
    const auto& devices = root.at("devices");
    if (!devices.is_array()) {
      throw ConfigError("'devices' must be an array");
    }
    std::set<std::uint32_t> seen;
    std::size_t index = 0;
    for (const auto& dev : devices) {
      const std::string where = "devices[" + std::to_string(index) + "]";
      if (!dev.is_object()) {
        throw ConfigError(where + " must be an object");
      }
      reject_unknown_keys(dev, {"id", "model", "script"}, where);
      if (!dev.contains("id")) {
        throw ConfigError(where + " is missing 'id'");
      }
      DeviceConfig cfg;
      cfg.id = static_cast<std::uint32_t>(
          uint_field(dev.at("id"), 0xffffffffu, where + ".id"));
      if (!seen.insert(cfg.id).second) {
        throw ConfigError("duplicate device id " + std::to_string(cfg.id));
      }
      if (dev.contains("model")) {
        if (!dev.at("model").is_string()) {
          throw ConfigError(where + ".model must be a string");
        }
        cfg.model = node_model_from_name(dev.at("model").get<std::string>());
      }
      if (dev.contains("script")) {
        cfg.script = script_value(dev.at("script"), where + ".script");
      }
      sc.topology.devices.push_back(std::move(cfg));
      ++index;
    }
  }
  return sc;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open scenario file '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) {
    throw IoError("failed reading scenario file '" + path + "'");
  }
  return load_scenario(buf.str());
}

}  // namespace qcm
