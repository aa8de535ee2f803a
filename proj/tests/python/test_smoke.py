"""Smoke tests for the python bindings."""

import json

import pytest

import qcmflow as q


def test_default_record_is_zero_and_valid():
    r = q.default_record()
    assert r.qchannel == 0 and r.qcom == 0 and r.qec == 0
    assert q.validate_record(r) == []
    assert q.encode_stats(r) == b"\x00" * 56


def test_stats_round_trip_and_sizes():
    r = q.default_record()
    r.qchannel = 7
    r.qcom = 3
    r.qcom_spec = bytes(range(16))
    body = q.encode_stats(r)
    assert len(body) == q.STATS_SIZE == 56
    assert q.decode_stats(body) == r


def test_validation_is_surfaced():
    r = q.default_record()
    r.qcom_spec = b"\x01" + b"\x00" * 15
    (violation,) = q.validate_record(r)
    assert violation[0] == "qcom_spec"
    with pytest.raises(q.ValidationError):
        q.encode_stats(r)


def test_multipart_frames_and_fragmentation():
    empty = q.make_multipart("request", xid=1)
    frame = q.encode_multipart(empty)
    assert len(frame) == q.PREAMBLE_SIZE == 16
    assert q.decode_multipart(frame) == empty

    records = [q.default_record() for _ in range(1170)]
    segments = q.fragment(records, 9, "reply")
    assert [len(s.records) for s in segments] == [1169, 1]
    assert [s.more for s in segments] == [True, False]
    assert q.reassemble(segments) == records


def test_record_text_round_trip():
    r = q.default_record()
    r.qcom = 3
    text = q.format_record(r)
    assert "QCOM: SDC" in text
    assert q.parse_record_spec(text) == r


def test_flow_table_matching():
    table = q.FlowTable()
    table.install(q.QcmFlowEntry(1, priority=1, match=q.FlowMatch(),
                                 actions=[q.FlowAction("mark", "blue")]))
    table.install(q.QcmFlowEntry(2, priority=9, match=q.FlowMatch(qcom=3),
                                 actions=[q.FlowAction("mirror")]))
    attrs = q.default_record()
    attrs.qcom = 3
    assert [a.name for a in table.match(attrs)] == ["mirror"]
    assert [a.name for a in table.match(q.default_record())] == ["mark"]


def test_scenario_run_produces_the_legacy_trace_shape():
    scenario = {
        "t_end": 15,
        "mode": "mixed",
        "trace_mode": "legacy-fig8",
        "devices": [
            {
                "id": 1,
                "script": [
                    {"t": t, "field": "qcom", "value": "SDC"}
                    for t in (0, 5, 10)
                ],
            }
        ],
    }
    trace = q.run_scenario(json.dumps(scenario))
    lines = trace.splitlines()
    assert lines.count("-----") == 3
    assert lines.count("QPROTO: Binary Dense Coding Received") == 3
    assert lines.count("QPROTO_SPEC: ##### Received") == 6
    assert lines[-1] == "15.0"

    assert q.run_scenario(json.dumps(scenario)) == trace  # deterministic


def test_bad_scenarios_raise_config_error():
    with pytest.raises(q.ConfigError):
        q.run_scenario("{}")
