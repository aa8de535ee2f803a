#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qcmflow/errors.hpp"
#include "qcmflow/text.hpp"
#include "support/generators.hpp"

using namespace qcm;

TEST_CASE("protocol names render symbolically and parse back") {
  CHECK(com_protocol_name(0) == "NONE");
  CHECK(com_protocol_name(1) == "QKD");
  CHECK(com_protocol_name(2) == "QT");
  CHECK(com_protocol_name(3) == "SDC");
  CHECK(com_protocol_name(17) == "17");

  CHECK(com_protocol_from_name("SDC") == 3);
  CHECK(com_protocol_from_name("17") == 17);
  CHECK_THROWS_AS(com_protocol_from_name("sdc"), ValidationError);
  CHECK_THROWS_AS(com_protocol_from_name("70000"), ValidationError);
}

TEST_CASE("format_record emits one line per field in wire order") {
  QcmRecord r;
  r.qchannel = 7;
  r.qchannel_spec = {1550000, 500, 1000000, 0};
  r.qcom = 3;
  r.qcom_spec = SpecBlob{0x00, 0x01, 0x02, 0x03, 0x04, 0x05, 0x06, 0x07,
                         0x08, 0x09, 0x0a, 0x0b, 0x0c, 0x0d, 0x0e, 0x0f};
  r.qec = 2;
  r.qec_spec.n = 7;
  r.qec_spec.k = 1;
  r.qec_spec.d = 3;
  r.qec_spec.verify_circuit_id = 9;

  CHECK(format_record(r) ==
        "QCHANNEL: 7\n"
        "QCHANNEL_SPEC: wavelength_pm=1550000 mean_photon_milli=500 "
        "symbol_rate_hz=1000000\n"
        "QCOM: SDC\n"
        "QCOM_SPEC: 000102030405060708090a0b0c0d0e0f\n"
        "QEC: 2\n"
        "QEC_SPEC: n=7 k=1 d=3 verify_circuit_id=9\n");
}

TEST_CASE("parse_record_spec inverts format_record") {
  qcmtest::Rng rng(23);
  for (int i = 0; i < 500; ++i) {
    const QcmRecord r = qcmtest::random_record(rng);
    CHECK(parse_record_spec(format_record(r)) == r);
  }
}

TEST_CASE("parse_record_spec rejects malformed specs") {
  const std::string good = format_record(make_default_record());

  CHECK_THROWS_AS(parse_record_spec(""), ValidationError);
  CHECK_THROWS_AS(parse_record_spec(good + "EXTRA: 1\n"), ValidationError);

  SUBCASE("wrong field order") {
    std::string swapped =
        "QCHANNEL_SPEC: wavelength_pm=0 mean_photon_milli=0 symbol_rate_hz=0\n"
        "QCHANNEL: 0\n"
        "QCOM: NONE\n"
        "QCOM_SPEC: 00000000000000000000000000000000\n"
        "QEC: 0\n"
        "QEC_SPEC: n=0 k=0 d=0 verify_circuit_id=0\n";
    CHECK_THROWS_AS(parse_record_spec(swapped), ValidationError);
  }
  SUBCASE("short blob") {
    std::string bad = good;
    const auto at = bad.find("QCOM_SPEC: ");
    bad.replace(at, std::string::npos,
                "QCOM_SPEC: 0011\nQEC: 0\nQEC_SPEC: n=0 k=0 d=0 "
                "verify_circuit_id=0\n");
    CHECK_THROWS_AS(parse_record_spec(bad), ValidationError);
  }
  SUBCASE("invalid record content") {
    std::string bad =
        "QCHANNEL: 0\n"
        "QCHANNEL_SPEC: wavelength_pm=0 mean_photon_milli=0 symbol_rate_hz=0\n"
        "QCOM: NONE\n"
        "QCOM_SPEC: 10000000000000000000000000000000\n"
        "QEC: 0\n"
        "QEC_SPEC: n=0 k=0 d=0 verify_circuit_id=0\n";
    CHECK_THROWS_AS(parse_record_spec(bad), ValidationError);
  }
}

TEST_CASE("record spec files hold zero or more blocks") {
  CHECK(parse_record_specs("").empty());
  CHECK(parse_record_specs("\n\n").empty());

  QcmRecord a;
  a.qchannel = 1;
  QcmRecord b;
  b.qcom = 3;
  const std::string file = format_record(a) + "--\n" + format_record(b);
  const auto records = parse_record_specs(file);
  REQUIRE(records.size() == 2);
  CHECK(records[0] == a);
  CHECK(records[1] == b);

  // A lone record without a separator works too.
  CHECK(parse_record_specs(format_record(a)).size() == 1);
}

TEST_CASE("format_multipart lists header fields then records") {
  const QcmMultipart req = QcmMultipart::make(Direction::kRequest, 9, 0, {});
  CHECK(format_multipart(req) ==
        "direction: request\nxid: 9\nflags: 0\nrecords: 0\n");

  QcmRecord r;
  r.qchannel = 1;
  const QcmMultipart reply =
      QcmMultipart::make(Direction::kReply, 0, 0, {r});
  CHECK(format_multipart(reply) ==
        "direction: reply\nxid: 0\nflags: 0\nrecords: 1\n--\n" +
            format_record(r));
}
