#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qcmflow/codec.hpp"
#include "qcmflow/errors.hpp"
#include "qcmflow/record.hpp"
#include "support/generators.hpp"

using namespace qcm;

TEST_CASE("default record is all-zero and valid") {
  const QcmRecord r = make_default_record();
  CHECK(r.qchannel == 0);
  CHECK(r.qcom == 0);
  CHECK(r.qec == 0);
  CHECK(blob_all_zero(r.qcom_spec));
  CHECK(r.qchannel_spec == ChannelSpec{});
  CHECK(r.qec_spec == EcSpec{});
  CHECK(validate_record(r).empty());

  // Its stats body is 56 zero bytes.
  const Bytes body = encode_stats(r);
  CHECK(body == Bytes(56, 0));
}

TEST_CASE("validate_record flags each broken invariant by field") {
  QcmRecord r;

  SUBCASE("qcom spec without a protocol") {
    r.qcom_spec[3] = 9;
    const auto violations = validate_record(r);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].field == RecordField::kQcomSpec);
  }

  SUBCASE("qec spec without a protocol") {
    r.qec_spec.verify_circuit_id = 2;
    const auto violations = validate_record(r);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].field == RecordField::kQecSpec);
  }

  SUBCASE("qec id without n/k/d parameters") {
    r.qec = 4;
    const auto violations = validate_record(r);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].field == RecordField::kQec);
  }

  SUBCASE("nonzero channel spec reserved word") {
    r.qchannel_spec.reserved = 1;
    const auto violations = validate_record(r);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].field == RecordField::kQchannelSpec);
  }

  SUBCASE("nonzero ec spec reserved bytes") {
    r.qec = 5;
    r.qec_spec.n = 3;
    r.qec_spec.reserved[7] = 1;
    const auto violations = validate_record(r);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].field == RecordField::kQecSpec);
  }

  SUBCASE("well-formed superdense record") {
    r.qchannel = 7;
    r.qcom = static_cast<std::uint16_t>(ComProtocol::kSuperdense);
    r.qcom_spec[0] = 0xab;
    CHECK(validate_record(r).empty());
  }
}

TEST_CASE("diff_records returns exactly the changed fields") {
  const QcmRecord r = make_default_record();
  CHECK(diff_records(r, r).empty());

  QcmRecord channel = r;
  channel.qchannel = 5;
  CHECK(diff_records(r, channel) == std::set<RecordField>{RecordField::kQchannel});

  QcmRecord two = r;
  two.qcom = 2;
  two.qec_spec.n = 7;  // (invalid alone; diff does not care about validity)
  const auto changed = diff_records(r, two);
  CHECK(changed ==
        std::set<RecordField>{RecordField::kQcom, RecordField::kQecSpec});
}

TEST_CASE("diff_records membership is symmetric") {
  qcmtest::Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    const QcmRecord a = qcmtest::random_record(rng);
    const QcmRecord b = qcmtest::random_record(rng);
    CHECK(diff_records(a, b) == diff_records(b, a));
    CHECK(diff_records(a, b).empty() == (a == b));
  }
}

TEST_CASE("apply_field_update sets one field and keeps the record valid") {
  const QcmRecord base = make_default_record();

  const QcmRecord with_qcom = apply_field_update(
      base, RecordField::kQcom,
      static_cast<std::uint16_t>(ComProtocol::kSuperdense));
  CHECK(with_qcom.qcom == 3);

  SpecBlob blob{};
  blob[0] = 0x11;
  const QcmRecord with_spec =
      apply_field_update(with_qcom, RecordField::kQcomSpec, blob);
  CHECK(with_spec.qcom == 3);
  CHECK(with_spec.qcom_spec == blob);

  SUBCASE("rejects updates that break an invariant") {
    CHECK_THROWS_AS(apply_field_update(base, RecordField::kQcomSpec, blob),
                    ValidationError);
  }
  SUBCASE("rejects a mismatched value type") {
    CHECK_THROWS_AS(apply_field_update(base, RecordField::kQcom, ChannelSpec{}),
                    ValidationError);
  }
  SUBCASE("unknown field names do not parse") {
    CHECK_THROWS_AS(record_field_from_name("qproto"), ValidationError);
  }
}

TEST_CASE("apply_field_update changes at most the named field") {
  qcmtest::Rng rng(13);
  int applied = 0;
  for (int i = 0; i < 1000; ++i) {
    const QcmRecord r = qcmtest::random_record(rng);
    const FieldMutation m = qcmtest::random_safe_mutation(rng, r);
    const QcmRecord updated = apply_field_update(r, m.field, m.value);
    const auto changed = diff_records(r, updated);
    CHECK(changed.size() <= 1);
    if (!changed.empty()) {
      CHECK(*changed.begin() == m.field);
      ++applied;
    }
    CHECK(validate_record(updated).empty());
  }
  CHECK(applied > 0);
}

TEST_CASE("no-op updates return an equal record") {
  QcmRecord r = make_default_record();
  r.qchannel = 9;
  const QcmRecord same =
      apply_field_update(r, RecordField::kQchannel, std::uint16_t{9});
  CHECK(same == r);
}

TEST_CASE("apply_mutations lands coupled fields atomically") {
  EcSpec spec;
  spec.n = 7;
  spec.k = 1;
  spec.d = 3;
  const QcmRecord r = apply_mutations(
      make_default_record(),
      {{RecordField::kQec, std::uint16_t{2}}, {RecordField::kQecSpec, spec}});
  CHECK(r.qec == 2);
  CHECK(r.qec_spec == spec);

  // Either half alone cannot validate.
  CHECK_THROWS_AS(apply_mutations(make_default_record(),
                                  {{RecordField::kQec, std::uint16_t{2}}}),
                  ValidationError);
  CHECK_THROWS_AS(apply_mutations(make_default_record(),
                                  {{RecordField::kQecSpec, spec}}),
                  ValidationError);
}

TEST_CASE("field names round-trip") {
  for (const auto field : kRecordFields) {
    CHECK(record_field_from_name(record_field_name(field)) == field);
  }
}
