"""
Tests for the JSONL annotation stream reader and validator
"""

import json

import pytest

from src.model import (
    AnnotationError,
    Gender,
    StreamOrderError,
    iter_stream,
    read_stream,
    validate_stream,
)


def customer(cid="c1", age=30, gender="female", bbox=(0, 0, 10, 20), expression="happy"):
    return {"id": cid, "bbox": list(bbox), "age": age, "gender": gender, "expression": expression}


def garment(gid="g1", bbox=(100, 100, 140, 160), color="Blue"):
    return {"id": gid, "bbox": list(bbox), "color": color}


def write_lines(path, records):
    with open(path, "w", encoding="utf-8") as f:
        for record in records:
            f.write(record if isinstance(record, str) else json.dumps(record))
            f.write("\n")
    return str(path)


def test_reads_frames(tmp_path):
    path = write_lines(tmp_path / "s.jsonl", [
        {"frame": 0, "customers": [customer()], "garments": [garment()]},
        {"frame": 1, "customers": [], "garments": [garment()]},
    ])
    frames = read_stream(path)

    assert [f.frame for f in frames] == [0, 1]
    c = frames[0].customers[0]
    assert (c.tracking_id, c.age_years, c.gender, c.expression) == ("c1", 30, Gender.FEMALE, "happy")
    assert c.bbox.center().x == 5.0
    assert frames[0].garments[0].color == "Blue"


def test_header_and_blank_lines_are_skipped(tmp_path):
    path = write_lines(tmp_path / "s.jsonl", [
        {"header": {"generator": "synth", "prng": "PCG64", "seed": 1}},
        "",
        {"frame": 0},
        "   ",
        {"frame": 2},
    ])
    assert [line_no for line_no, _ in iter_stream(path)] == [3, 5]


def test_frame_gaps_are_allowed(tmp_path):
    path = write_lines(tmp_path / "s.jsonl", [{"frame": 0}, {"frame": 7}])
    assert [f.frame for f in read_stream(path)] == [0, 7]


def test_out_of_order_frame_cites_line(tmp_path):
    path = write_lines(tmp_path / "s.jsonl", [{"frame": 0}, {"frame": 2}, {"frame": 1}])
    with pytest.raises(StreamOrderError) as excinfo:
        read_stream(path)
    assert excinfo.value.line == 3
    assert str(excinfo.value).startswith("line 3:")


def test_empty_file_has_no_frames(tmp_path):
    path = write_lines(tmp_path / "s.jsonl", [])
    with pytest.raises(AnnotationError, match="no frames"):
        read_stream(path)


@pytest.mark.parametrize("record, fragment", [
    ({"frame": -1}, "frame"),
    ({"frame": 0, "customers": [customer(age=-3)]}, "customers.0.age"),
    ({"frame": 0, "customers": [customer(age=121)]}, "customers.0.age"),
    ({"frame": 0, "customers": [customer(gender="other")]}, "customers.0.gender"),
    ({"frame": 0, "customers": [customer(bbox=(10, 0, 0, 10))]}, "inverted bbox"),
    ({"frame": 0, "garments": [garment(bbox=(0, 0, 1))]}, "garments.0.bbox"),
    ({"frame": 0, "garments": [garment(gid="")]}, "garments.0.id"),
    ({"frame": 0, "customers": [customer(), customer()]}, "duplicate customer id"),
    ({"frame": 0, "customers": [customer(age="30")]}, "customers.0.age"),
    ({"frame": 0, "customers": [customer(age=30.0)]}, "customers.0.age"),
    ({"frame": True}, "frame"),
])
def test_schema_violations(tmp_path, record, fragment):
    path = write_lines(tmp_path / "s.jsonl", [{"frame": 0, "garments": [garment()]}, record])
    with pytest.raises(AnnotationError, match=fragment) as excinfo:
        read_stream(path)
    assert excinfo.value.line == 2


def test_customer_and_garment_may_share_an_id(tmp_path):
    path = write_lines(tmp_path / "s.jsonl", [
        {"frame": 0, "customers": [customer(cid="x")], "garments": [garment(gid="x")]},
    ])
    frames = read_stream(path)
    assert frames[0].customers[0].tracking_id == frames[0].garments[0].tracking_id


def test_non_finite_bbox_rejected(tmp_path):
    path = write_lines(tmp_path / "s.jsonl", ['{"frame": 0, "garments": [{"id": "g1", "bbox": [0, 0, NaN, 1], "color": "Red"}]}'])
    with pytest.raises(AnnotationError):
        read_stream(path)


def test_invalid_json_cites_line(tmp_path):
    path = write_lines(tmp_path / "s.jsonl", [{"frame": 0}, "{not json"])
    with pytest.raises(AnnotationError, match="line 2: invalid JSON"):
        read_stream(path)


def test_validate_reports_counts(tmp_path):
    path = write_lines(tmp_path / "s.jsonl", [
        {"frame": 0, "customers": [customer("a"), customer("b")], "garments": [garment("g1")]},
        {"frame": 1, "customers": [customer("a"), customer("c")], "garments": [garment("g2")]},
    ])
    report = validate_stream(path)

    assert report.ok
    assert report.summary() == "OK, 2 frames, 3 customers, 2 garments"


def test_validate_continues_past_bad_lines(tmp_path):
    path = write_lines(tmp_path / "s.jsonl", [
        {"frame": 0},
        {"frame": 1, "customers": [customer(age=-1)]},
        {"frame": 2, "customers": [customer(), customer()]},
        {"frame": 3},
    ])
    report = validate_stream(path)

    assert not report.ok
    assert report.frames == 2
    assert [line for line, _ in report.violations] == [2, 3]
    assert "customers.0.age" in report.violations[0][1]
    assert "duplicate" in report.violations[1][1]


def test_validate_keeps_first_twenty_violations(tmp_path):
    path = write_lines(tmp_path / "s.jsonl", [{"frame": -1}] * 25)
    report = validate_stream(path)

    assert report.total_violations == 25
    assert [line for line, _ in report.violations] == list(range(1, 21))


def test_validate_empty_file(tmp_path):
    report = validate_stream(write_lines(tmp_path / "s.jsonl", []))
    assert not report.ok
    assert report.violations == [(0, "no frames")]


def test_undecodable_bytes_cite_line(tmp_path):
    path = tmp_path / "s.jsonl"
    path.write_bytes(b'{"frame": 0}\n{"frame": 1, "garments": [{"id": "g\xff", "bbox": [0, 0, 1, 1], "color": "Red"}]}\n')

    with pytest.raises(AnnotationError, match="line 2: invalid UTF-8") as excinfo:
        read_stream(str(path))
    assert excinfo.value.line == 2


def test_validate_continues_past_undecodable_line(tmp_path):
    path = tmp_path / "s.jsonl"
    path.write_bytes(b'{"frame": 0}\n\xff\xfe\n{"frame": 1}\r\n')
    report = validate_stream(str(path))

    assert report.frames == 2
    assert report.total_violations == 1
    assert report.violations[0][0] == 2
    assert "invalid UTF-8" in report.violations[0][1]
