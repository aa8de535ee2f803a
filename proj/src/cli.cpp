#include "qcmflow/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "qcmflow/codec.hpp"
#include "qcmflow/errors.hpp"
#include "qcmflow/scenario.hpp"
#include "qcmflow/sim.hpp"
#include "qcmflow/text.hpp"

namespace qcm {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) {
    throw IoError("failed reading '" + path + "'");
  }
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open '" + path + "' for writing");
  }
  out << content;
  if (!out) {
    throw IoError("failed writing '" + path + "'");
  }
}

int cmd_run(const std::string& scenario_path,
            const std::optional<std::string>& mode,
            const std::optional<std::string>& out_path, std::ostream& out) {
  Scenario scenario = load_scenario_file(scenario_path);
  if (mode) {
    scenario.trace_mode = trace_mode_from_name(*mode);
  }
  const Trace trace = run_scenario(scenario);
  const std::string text = trace.render();
  out << text;
  if (out_path) {
    write_file(*out_path, text);
  }
  return kExitOk;
}

int cmd_decode(const std::optional<std::string>& in_path, std::istream& in,
               std::ostream& out) {
  std::string text;
  if (in_path) {
    text = read_file(*in_path);
  } else {
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  const Bytes bytes = hex_parse(text);
  std::size_t at = 0;
  bool first = true;
  while (at < bytes.size()) {
    const std::span<const std::uint8_t> rest{bytes.data() + at,
                                             bytes.size() - at};
    OfpHeader header;
    try {
      header = decode_header(rest);
    } catch (const CodecError& e) {
      throw CodecError("frame at offset " + std::to_string(at) + ": " +
                           e.what(),
                       e.offset() ? at + *e.offset() : at);
    }
    if (header.length > rest.size()) {
      throw CodecError("frame at offset " + std::to_string(at) +
                           " declares " + std::to_string(header.length) +
                           " bytes but only " + std::to_string(rest.size()) +
                           " remain",
                       at + 2);
    }
    QcmMultipart msg;
    try {
      msg = decode_multipart(rest.first(header.length));
    } catch (const CodecError& e) {
      throw CodecError("frame at offset " + std::to_string(at) + ": " +
                           e.what(),
                       e.offset() ? at + *e.offset() : at);
    }
    if (!first) out << "\n";
    out << format_multipart(msg);
    first = false;
    at += header.length;
  }
  return kExitOk;
}

int cmd_encode(const std::string& spec_path, const std::string& direction,
               std::uint32_t xid, std::ostream& out) {
  const std::vector<QcmRecord> records =
      parse_record_specs(read_file(spec_path));
  const Direction dir = direction_from_name(direction);
  for (const auto& segment : fragment(records, xid, dir)) {
    out << hex_dump(encode_multipart(segment));
  }
  return kExitOk;
}

int cmd_diff_trace(const std::string& actual_path,
                   const std::string& golden_path, std::ostream& out) {
  const std::string actual = read_file(actual_path);
  const std::string golden = read_file(golden_path);
  if (actual == golden) {
    return kExitOk;
  }
  std::istringstream actual_in(actual);
  std::istringstream golden_in(golden);
  std::string actual_line;
  std::string golden_line;
  std::size_t line_no = 0;
  while (true) {
    ++line_no;
    const bool have_actual = static_cast<bool>(std::getline(actual_in, actual_line));
    const bool have_golden = static_cast<bool>(std::getline(golden_in, golden_line));
    if (!have_actual && !have_golden) {
      // Same lines, different bytes (e.g. a missing trailing newline).
      out << "files differ only in trailing bytes\n";
      break;
    }
    if (!have_actual) actual_line = "<missing>";
    if (!have_golden) golden_line = "<missing>";
    if (actual_line != golden_line || !have_actual || !have_golden) {
      out << "files differ at line " << line_no << "\n";
      out << "actual: " << actual_line << "\n";
      out << "golden: " << golden_line << "\n";
      break;
    }
  }
  return kExitDomainError;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in,
            std::ostream& out, std::ostream& err) {
  CLI::App app{"OpenFlow quantum-metadata channel toolkit"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run a scenario and print its trace");
  std::string scenario_path;
  std::string run_mode;
  std::string run_out;
  run->add_option("--scenario", scenario_path, "Scenario JSON file")
      ->required();
  run->add_option("--mode", run_mode, "Trace mode: canonical or legacy-fig8")
      ->check(CLI::IsMember({"canonical", "legacy-fig8"}));
  run->add_option("--out", run_out, "Also write the trace to this file");

  auto* decode = app.add_subcommand(
      "decode", "Decode hex-dumped frames to their textual form");
  std::string decode_in;
  decode->add_option("--in", decode_in,
                     "Hex input file (default: standard input)");

  auto* encode =
      app.add_subcommand("encode", "Encode a record spec file to hex frames");
  std::string spec_path;
  std::string direction;
  std::uint32_t xid = 0;
  encode->add_option("--spec", spec_path, "Record spec file")->required();
  encode->add_option("--direction", direction, "request or reply")
      ->required()
      ->check(CLI::IsMember({"request", "reply"}));
  encode->add_option("--xid", xid, "Transaction id")->required();

  auto* diff = app.add_subcommand(
      "diff-trace", "Compare a trace against a golden file byte for byte");
  std::string actual_path;
  std::string golden_path;
  diff->add_option("actual", actual_path, "Trace to check")->required();
  diff->add_option("golden", golden_path, "Golden trace")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsageError;
  }

  try {
    if (run->parsed()) {
      return cmd_run(scenario_path,
                     run_mode.empty() ? std::nullopt
                                      : std::optional<std::string>(run_mode),
                     run_out.empty() ? std::nullopt
                                     : std::optional<std::string>(run_out),
                     out);
    }
    if (decode->parsed()) {
      return cmd_decode(decode_in.empty()
                            ? std::nullopt
                            : std::optional<std::string>(decode_in),
                        in, out);
    }
    if (encode->parsed()) {
      return cmd_encode(spec_path, direction, xid, out);
    }
    if (diff->parsed()) {
      return cmd_diff_trace(actual_path, golden_path, out);
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsageError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomainError;
  }
  err << "error: no subcommand\n";
  return kExitUsageError;
}

}  // namespace qcm
