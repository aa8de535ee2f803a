#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qcmflow/cli.hpp"
#include "qcmflow/text.hpp"

using namespace qcm;

namespace {

struct CliResult {
  int status = 0;
  std::string out;
  std::string err;
};

CliResult cli(const std::vector<std::string>& args,
              const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out;
  std::ostringstream err;
  const int status = run_cli(args, in, out, err);
  return {status, out.str(), err.str()};
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

class TempDir {
 public:
  TempDir() {
    dir_ = std::filesystem::temp_directory_path() /
           ("qcmflow-test-" + std::to_string(std::rand()));
    std::filesystem::create_directories(dir_);
  }
  ~TempDir() { std::filesystem::remove_all(dir_); }
  std::filesystem::path path(const std::string& name) const {
    return dir_ / name;
  }

 private:
  std::filesystem::path dir_;
};

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

const std::string kFig8Scenario = QCMFLOW_SCENARIO_DIR "/fig8.json";
const std::string kEmptyScenario = QCMFLOW_SCENARIO_DIR "/empty.json";
const std::string kFig8Golden =
    QCMFLOW_TEST_DATA_DIR "/golden/fig8_legacy.trace";

}  // namespace

TEST_CASE("run: the bundled fig8 scenario matches its golden trace") {
  TempDir tmp;
  const auto out_path = tmp.path("fig8.trace");
  const auto result = cli({"run", "--scenario", kFig8Scenario, "--mode",
                           "legacy-fig8", "--out", out_path.string()});
  CHECK(result.status == 0);
  const std::string golden = read_file(kFig8Golden);
  CHECK(result.out == golden);
  CHECK(read_file(out_path) == golden);
}

TEST_CASE("run: an empty topology prints only the closing clock") {
  const auto result = cli({"run", "--scenario", kEmptyScenario});
  CHECK(result.status == 0);
  CHECK(result.out == "15.0\n");
}

TEST_CASE("run: a missing scenario file exits 2 and names the path") {
  const auto result = cli({"run", "--scenario", "/no/such/scenario.json"});
  CHECK(result.status == 2);
  CHECK(result.err.find("/no/such/scenario.json") != std::string::npos);
}

TEST_CASE("run: an invalid scenario exits 1 with a diagnostic") {
  TempDir tmp;
  const auto path = tmp.path("bad.json");
  write_file(path, R"({"t_end": 1, "mode": "bogus"})");
  const auto result = cli({"run", "--scenario", path.string()});
  CHECK(result.status == 1);
  CHECK(result.err.find("bogus") != std::string::npos);
}

TEST_CASE("decode: an empty request frame renders its header fields") {
  const auto result =
      cli({"decode"}, "05 12 00 10 00 00 00 09 00 11 00 00 00 00 00 00\n");
  CHECK(result.status == 0);
  CHECK(result.out == "direction: request\nxid: 9\nflags: 0\nrecords: 0\n");
}

TEST_CASE("decode: truncated input exits 1 and reports the offset") {
  const auto result = cli({"decode"}, "05 12 00 10 00 00\n");
  CHECK(result.status == 1);
  CHECK(result.err.find("offset") != std::string::npos);
}

TEST_CASE("decode: stray characters exit 1") {
  const auto result = cli({"decode"}, "05 zz\n");
  CHECK(result.status == 1);
}

TEST_CASE("encode then decode reproduces the record spec byte for byte") {
  TempDir tmp;
  QcmRecord r;
  r.qchannel = 7;
  r.qcom = 3;
  r.qcom_spec[0] = 0xab;
  const std::string spec = format_record(r);
  const auto spec_path = tmp.path("record.spec");
  write_file(spec_path, spec);

  const auto encoded = cli({"encode", "--spec", spec_path.string(),
                            "--direction", "reply", "--xid", "0"});
  CHECK(encoded.status == 0);

  const auto decoded = cli({"decode"}, encoded.out);
  CHECK(decoded.status == 0);
  CHECK(decoded.out ==
        "direction: reply\nxid: 0\nflags: 0\nrecords: 1\n--\n" + spec);
}

TEST_CASE("encode: an empty spec file yields a 16-byte request frame") {
  TempDir tmp;
  const auto spec_path = tmp.path("empty.spec");
  write_file(spec_path, "");
  const auto result = cli({"encode", "--spec", spec_path.string(),
                           "--direction", "request", "--xid", "1"});
  CHECK(result.status == 0);
  CHECK(result.out == "05 12 00 10 00 00 00 01 00 11 00 00 00 00 00 00\n");
}

TEST_CASE("encode: a bad spec exits 1") {
  TempDir tmp;
  const auto spec_path = tmp.path("bad.spec");
  write_file(spec_path, "QCHANNEL: what\n");
  const auto result = cli({"encode", "--spec", spec_path.string(),
                           "--direction", "reply", "--xid", "1"});
  CHECK(result.status == 1);
}

TEST_CASE("diff-trace compares byte for byte") {
  TempDir tmp;
  const auto a = tmp.path("a.trace");
  const auto b = tmp.path("b.trace");

  SUBCASE("identical files exit 0") {
    write_file(a, "one\ntwo\n");
    write_file(b, "one\ntwo\n");
    CHECK(cli({"diff-trace", a.string(), b.string()}).status == 0);
  }
  SUBCASE("a one-line difference reports the line number") {
    write_file(a, "one\ntwo\nthree\n");
    write_file(b, "one\nTWO\nthree\n");
    const auto result = cli({"diff-trace", a.string(), b.string()});
    CHECK(result.status == 1);
    CHECK(result.out.find("line 2") != std::string::npos);
    CHECK(result.out.find("two") != std::string::npos);
    CHECK(result.out.find("TWO") != std::string::npos);
  }
  SUBCASE("a missing trailing line is still a difference") {
    write_file(a, "one\n");
    write_file(b, "one\ntwo\n");
    const auto result = cli({"diff-trace", a.string(), b.string()});
    CHECK(result.status == 1);
    CHECK(result.out.find("line 2") != std::string::npos);
  }
  SUBCASE("unreadable files exit 2") {
    write_file(a, "one\n");
    CHECK(cli({"diff-trace", a.string(), tmp.path("nope").string()}).status ==
          2);
  }
}

TEST_CASE("a fresh fig8 run diffs clean against the golden") {
  TempDir tmp;
  const auto out_path = tmp.path("fig8.trace");
  REQUIRE(cli({"run", "--scenario", kFig8Scenario, "--mode", "legacy-fig8",
               "--out", out_path.string()})
              .status == 0);
  CHECK(cli({"diff-trace", out_path.string(), kFig8Golden}).status == 0);
}

TEST_CASE("usage errors exit 2, help exits 0") {
  CHECK(cli({}).status == 2);
  CHECK(cli({"frobnicate"}).status == 2);
  CHECK(cli({"encode", "--spec", "x"}).status == 2);  // missing required flags
  CHECK(cli({"--help"}).status == 0);
}
