import json
import subprocess
import sys
from fractions import Fraction
from io import BytesIO, StringIO

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from theta_slope.cli import JOBS_ENV, run
from theta_slope.exact import INF, parse_poly
from theta_slope.report import Report, parse_report, serialize_report, to_plain


def invoke(*argv):
    out, err = BytesIO(), StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_empty_report_shell():
    data = serialize_report(Report("roots", {}, "info", []))
    assert json.loads(data) == {"command": "roots", "params": {}, "status": "info", "results": []}


def test_rationals_are_strings_never_floats():
    rep = Report("lemmas", {}, "pass", [{"value": Fraction(243, 2), "v": INF, "poly": parse_poly("-1/2*r^2*s + 3")}])
    data = serialize_report(rep)
    assert b'"243/2"' in data and b"121.5" not in data
    assert b'"-1/2*r^2*s + 3"' in data and b'"inf"' in data
    with pytest.raises(TypeError):
        to_plain(0.5)


def test_bad_status_rejected():
    with pytest.raises(ValueError):
        Report("x", {}, "maybe")


plain = st.recursive(
    st.none() | st.booleans() | st.integers() | st.text(max_size=8)
    | st.fractions(max_denominator=50).map(lambda f: f),
    lambda kids: st.lists(kids, max_size=3) | st.dictionaries(st.text(max_size=4), kids, max_size=3),
    max_leaves=10,
)


@settings(max_examples=80, deadline=None)
@given(st.dictionaries(st.text(max_size=4), plain, max_size=3), st.lists(plain, max_size=4),
       st.sampled_from(["pass", "fail", "info"]), st.none() | st.integers(0, 10 ** 6))
def test_json_round_trip(params, results, status, timing):
    rep = Report("cmd", params, status, results, timing)
    data = serialize_report(rep)
    assert parse_report(data) == rep
    assert serialize_report(parse_report(data)) == data


def test_text_format_is_a_table():
    rep = Report("roots", {"m": 2}, "info", [{"L": 1, "roots": ["0", "1"]}])
    text = serialize_report(rep, "text").decode()
    assert "status:  info" in text and "L  roots" in text


def test_spec_examples():
    code, out, _ = invoke("conjecture", "--m", "3", "--format", "json")
    assert code == 0 and json.loads(out)["status"] == "pass"
    code, out, _ = invoke("m-w", "--m", "1", "--alpha", "0", "--L", "1", "--format", "json")
    rec = json.loads(out)["results"][0]
    assert rec["constants"] == ["1"]
    assert rec["values"] == ["0", "0", "1/2*r^2 - 1/2*r", "-1/2*r^3 + 1/2*r^2"]
    code, out, _ = invoke("roots", "--m", "2", "--format", "json")
    assert [r["roots"] for r in json.loads(out)["results"]] == [["0", "1"], ["1", "2", "3", "4"]]


def test_single_point_sum_report():
    code, out, _ = invoke("lemmas", "--part", "1", "--p", "3", "--r", "8", "--format", "json")
    rec = json.loads(out)["results"][0]
    assert code == 0 and rec["difference"] == "243/2" and rec["achieved_valuation"] == 5


def test_failed_check_exits_one_with_witness():
    code, out, _ = invoke("theta", "--coeffs", "1,1", "--alpha", "1", "--p", "3", "--format", "json")
    assert code == 1
    assert json.loads(out)["results"][0]["first_violated_w"] == 0


@pytest.mark.parametrize("argv", [
    ["roots", "--m", "0"],
    ["bogus"],
    ["lemmas", "--p-set", "4"],
    ["lemmas", "--part", "9"],
    ["matrix", "--m", "1", "--alpha", "2", "--L", "1"],
    ["classify", "--p", "7", "--r", "31", "--v-floor", "3"],
    ["classify", "--p", "7", "--r", "30", "--mode", "slope-one"],
    ["m-w", "--m", "1", "--alpha", "0", "--L", "2"],
    ["hyper", "--alpha-max", "0"],
    ["roots", "--m", "1", "--jobs", "0"],
])
def test_usage_errors_exit_two_and_write_nothing(argv, tmp_path):
    target = tmp_path / "out.json"
    code, out, err = invoke(*argv, "--out", str(target)) if argv != ["bogus"] else invoke(*argv)
    assert code == 2 and out == b"" and "usage error" in err
    assert not target.exists() and list(tmp_path.iterdir()) == []


def test_unwritable_output_exits_two(tmp_path):
    code, out, _ = invoke("roots", "--m", "1", "--out", str(tmp_path / "missing" / "x.json"))
    assert code == 2 and out == b""


def test_out_file_written(tmp_path):
    target = tmp_path / "r.json"
    code, out, _ = invoke("roots", "--m", "1", "--format", "json", "--out", str(target))
    assert code == 0 and out == b""
    assert json.loads(target.read_bytes())["results"][0]["roots"] == ["0", "1"]
    assert [p.name for p in tmp_path.iterdir()] == ["r.json"]


def test_jobs_do_not_change_bytes(monkeypatch):
    argv = ["lemmas", "--part", "1,3", "--p-set", "3,5,7", "--r-max", "200", "--format", "json"]
    _, one, _ = invoke(*argv, "--jobs", "1")
    _, four, _ = invoke(*argv, "--jobs", "4")
    assert one == four
    monkeypatch.setenv(JOBS_ENV, "3")
    _, env, _ = invoke(*argv)
    assert env == one
    monkeypatch.setenv(JOBS_ENV, "x")
    code, _, _ = invoke(*argv)
    assert code == 2


def test_timing_is_opt_in():
    _, out, _ = invoke("roots", "--m", "1", "--format", "json")
    assert "timing_ms" not in json.loads(out)
    _, out, _ = invoke("roots", "--m", "1", "--format", "json", "--timing")
    assert isinstance(json.loads(out)["timing_ms"], int)


@pytest.mark.parametrize("argv", [
    ["lemmas", "--check", "alternating"],
    ["lemmas", "--check", "inversion"],
    ["lemmas", "--check", "kappa"],
    ["psi", "--p-set", "3,5", "--samples", "10"],
    ["span", "--p-set", "3,5", "--m-max", "1", "--r-max", "20"],
    ["theta", "--random", "50"],
    ["theta", "--coeffs", "1,-2,1", "--alpha", "2", "--p", "3"],
    ["matrix", "--consistency", "--m-set", "1,2"],
    ["matrix", "--m", "2", "--alpha", "2", "--L", "2", "--diagnostics"],
    ["matrix", "--m", "2", "--alpha", "1", "--L", "1", "--kind", "small"],
    ["matrix", "--m", "2", "--alpha", "1", "--kind", "big"],
    ["big-poly", "--m", "3"],
    ["hyper", "--alpha-max", "4"],
    ["classify", "--p", "7", "--r", "30", "--mode", "slope-one", "--a-unit", "1"],
    ["classify", "--p", "11", "--r", "46", "--v-floor", "2", "--mode", "rising"],
    ["classify", "--p", "7", "--r", "44", "--v-floor", "3"],
])
def test_every_subcommand_runs(argv):
    for fmt in ("text", "json"):
        code, out, err = invoke(*argv, "--format", fmt)
        assert code == 0, err
        assert out
    assert json.loads(invoke(*argv, "--format", "json")[1])["command"] == argv[0]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "theta_slope", "roots", "--m", "1", "--format", "json"],
                          capture_output=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"][0]["roots"] == ["0", "1"]
