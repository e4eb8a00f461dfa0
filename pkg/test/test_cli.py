import json
import os
import pytest

from taftgreen.cli import error_text, main, parse_operand
from taftgreen.greenring import parse_element
from taftgreen.taftgreen_types import Config, OutputFormat, ParseError, TableCache


@pytest.fixture(autouse=True)
def isolated_cache(tmp_path_factory, monkeypatch):
    monkeypatch.setenv("GR_CACHE_DIR", str(tmp_path_factory.mktemp("default-cache")))


@pytest.fixture
def cache_dir(tmp_path, tables3):
    """A cache directory already holding the n = 3 tables."""
    TableCache(str(tmp_path)).save(
        3, {"max_m": tables3.max_m, "catalog": {}, "tables": tables3.to_json()}
    )
    return str(tmp_path)


def _json_out(capsys):
    return json.loads(capsys.readouterr().out.strip().splitlines()[-1])


def test_mul_pretty(capsys):
    assert main(["mul", "x", "x^2"]) == 0, "x * x^2 should succeed"
    assert capsys.readouterr().out.strip() == "1", "x^3 = 1 for n = 3"


def test_mul_json(capsys):
    assert main(["mul", "z+", "z-", "--format", "json"]) == 0
    data = _json_out(capsys)
    assert len(data["terms"]) == 4, f"z+ z- should have four terms, got {data}"


def test_mul_stable(capsys):
    assert main(["mul", "z+", "z-", "--stable"]) == 0
    assert capsys.readouterr().out.strip() == "1", "z+ z- is stably 1"


def test_mul_labels(capsys, cache_dir):
    assert main(["mul", "V(2,0)", "Omega^1 V(1,0)", "--cache-dir", cache_dir, "--format", "json"]) == 0
    data = _json_out(capsys)
    assert data["terms"], "Product of module classes is empty"


def test_parse_operand_grammars():
    config = Config(n=3)
    assert parse_operand("y", config) == parse_element("y", 3), "Monomial shorthand"
    assert parse_operand("V(2,0)", config) == parse_element("y", 3), "[V(2,0)] is y"
    as_json = json.dumps(parse_element("x*y", 3).to_json())
    assert parse_operand(as_json, config) == parse_element("x*y", 3), "Element JSON"
    with pytest.raises(ParseError):
        parse_operand("{not json", config)


@pytest.mark.parametrize(
    "argv",
    [
        ["mul", "x", "banana"],
        ["mul", "x"],
        ["tensor", "V(9,0)", "V(1,0)"],
        ["mul", "x", "x", "--n", "5"],
        ["mul", "x", "x", "--n", "2"],
        ["verify", "--suite", "banana"],
        ["frobnicate"],
    ],
)
def test_usage_errors(argv, capsys):
    assert main(argv) == 4, f"{argv} should be a usage error"
    assert capsys.readouterr().err, "Usage errors go to stderr"


def test_missing_table_entry(tmp_path, capsys):
    code = main(["mul", "Omega^1 V(1,0)", "x", "--cache-dir", str(tmp_path)])
    assert code == 5, f"Expected exit 5 without tables, got {code}"


def test_corrupted_cache(tmp_path, capsys):
    with open(os.path.join(str(tmp_path), "tables-3.json"), "w", encoding="utf-8") as f:
        f.write("{ not json")
    code = main(["mul", "x", "y", "--cache-dir", str(tmp_path)])
    assert code == 3, f"Expected exit 3 on a corrupted cache, got {code}"


def test_build_up_to_date(cache_dir, capsys):
    assert main(["build", "--cache-dir", cache_dir, "--format", "json"]) == 0
    data = _json_out(capsys)
    assert data["status"] == "up to date", f"Existing cache should be reused: {data}"


@pytest.mark.slow
def test_build_writes(tmp_path, capsys):
    assert main(["build", "--cache-dir", str(tmp_path), "--format", "json"]) == 0
    assert _json_out(capsys)["status"] == "written"
    assert main(["build", "--cache-dir", str(tmp_path), "--format", "json"]) == 0
    assert _json_out(capsys)["status"] == "up to date"


def test_tensor(capsys):
    assert main(["tensor", "V(2,0)", "V(2,0)", "--format", "json"]) == 0
    data = _json_out(capsys)
    assert data["dims_check"], f"Dimensions do not add up: {data}"
    assert data["dims"] == "4 = 1 + 3", f"Unexpected dims line {data['dims']}"
    assert main(["tensor", "V(2,0)", "V(2,0)"]) == 0
    assert "dims: 4 = 1 + 3" in capsys.readouterr().out, "Pretty output should show the dims line"


def test_verify_json(cache_dir, capsys):
    code = main(["verify", "--suite", "identities", "--cache-dir", cache_dir, "--format", "json"])
    lines = [json.loads(line) for line in capsys.readouterr().out.strip().splitlines()]
    assert code == 0, f"Identities suite failed: {lines}"
    assert {line["check_id"] for line in lines} == {
        "identities:alternating-binomial",
        "identities:rewriting",
    }, f"Unexpected checks {lines}"
    assert all("elapsed" not in line for line in lines), "Wall time must be opt-in"


def test_verify_timing(cache_dir, capsys):
    assert main(["verify", "--suite", "identities", "--cache-dir", cache_dir, "--format", "json", "--timing"]) == 0
    lines = [json.loads(line) for line in capsys.readouterr().out.strip().splitlines()]
    assert all("elapsed" in line for line in lines), "--timing should add wall time"


def test_error_text_is_plain():
    err = ParseError("bad operand")
    assert str(err) == "[Error] bad operand", f"Exception text carries markup: {str(err)!r}"
    assert error_text(err, OutputFormat.Json) == "[Error] bad operand"
    assert "\x1b" in error_text(err, OutputFormat.Pretty), "Pretty errors should color the tag"


def test_json_errors_have_no_color_codes(capsys):
    assert main(["mul", "x", "banana", "--format", "json"]) == 4
    err = capsys.readouterr().err
    assert err.startswith("[Error]"), f"Unexpected error line {err!r}"
    assert "\x1b" not in err, f"JSON mode wrote terminal escapes: {err!r}"
