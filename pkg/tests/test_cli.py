"""Command line contract: parsing, exit codes, schemas, determinism."""

import csv
import io
import json
import shutil
import subprocess
import sys

import jsonschema
import mpmath as mp
import pytest

import qmckay.cli as cli
from qmckay.cli import (
    EXIT_ARGS,
    EXIT_GROUP,
    EXIT_INTERNAL,
    EXIT_OK,
    EXIT_VERIFY,
    UnsupportedGroupError,
    canonical_token,
    main,
    parse_group,
)
from qmckay.errors import InternalConsistencyError
from qmckay.grouprep import GroupSpec
from qmckay.schemas import BY_COMMAND


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- group grammar -------------------------------------------------------------


@pytest.mark.parametrize("token, spec", [
    ("C:2", GroupSpec.cyclic(2)),
    ("c:5", GroupSpec.cyclic(5)),
    ("D:3", GroupSpec.dihedral(3)),
    ("T", GroupSpec.tetrahedral()),
    ("tetrahedral", GroupSpec.tetrahedral()),
    ("O", GroupSpec.octahedral()),
    ("I", GroupSpec.icosahedral()),
    ("A3", GroupSpec.cyclic(2)),
    ("A5", GroupSpec.cyclic(3)),
    ("a7", GroupSpec.cyclic(4)),
    ("D4", GroupSpec.dihedral(2)),
    ("D5", GroupSpec.dihedral(3)),
    ("E6", GroupSpec.tetrahedral()),
    ("E7", GroupSpec.octahedral()),
    ("E8", GroupSpec.icosahedral()),
])
def test_parse_group_grammar(token, spec):
    assert parse_group(token) == spec


@pytest.mark.parametrize("token", [
    "A1", "A2", "A4", "D3", "D2", "E5", "E9", "C:1", "C:0", "D:1",
])
def test_parse_group_unsupported(token):
    with pytest.raises(UnsupportedGroupError):
        parse_group(token)


@pytest.mark.parametrize("token", ["X9", "banana", "", "C:", "A"])
def test_parse_group_unparseable(token):
    with pytest.raises(ValueError):
        parse_group(token)


def test_canonical_tokens_round_trip():
    for token in ("C:2", "C:7", "D:2", "D:6", "T", "O", "I"):
        assert canonical_token(parse_group(token)) == token


# -- exit codes ------------------------------------------------------------------


def test_unsupported_group_exits_three(capsys):
    for token in ("A4", "D3", "E5", "C:1"):
        code, out, err = run(capsys, ["bps", "--group", token])
        assert code == EXIT_GROUP
        assert out == ""
        assert "unsupported group" in err


def test_unparseable_group_exits_two(capsys):
    code, _, err = run(capsys, ["bps", "--group", "X9"])
    assert code == EXIT_ARGS
    assert "cannot parse" in err


def test_missing_group_exits_two(capsys):
    code, _, _ = run(capsys, ["bps"])
    assert code == EXIT_ARGS


def test_missing_command_exits_two(capsys):
    code, _, _ = run(capsys, [])
    assert code == EXIT_ARGS


def test_low_crc_degree_exits_two(capsys):
    code, _, err = run(capsys, ["crc", "--group", "D5", "--degree", "2"])
    assert code == EXIT_ARGS
    assert "--degree" in err


def test_negative_cap_exits_two(capsys):
    code, _, err = run(capsys, ["gw", "--group", "D5", "--lambda-order", "-1"])
    assert code == EXIT_ARGS


def test_bad_precision_env_exits_two(capsys, monkeypatch):
    monkeypatch.setenv("QMCKAY_PRECISION", "banana")
    code, _, err = run(capsys, ["roots", "--group", "T"])
    assert code == EXIT_ARGS
    assert "QMCKAY_PRECISION" in err


def test_tiny_precision_rejected(capsys, monkeypatch):
    monkeypatch.setenv("QMCKAY_PRECISION", "5")
    code, _, _ = run(capsys, ["roots", "--group", "T"])
    assert code == EXIT_ARGS


def test_precision_flag_beats_env(capsys, monkeypatch):
    monkeypatch.setenv("QMCKAY_PRECISION", "banana")
    code, out, _ = run(capsys, ["roots", "--group", "T", "--precision", "40"])
    assert code == EXIT_OK
    assert json.loads(out)["ade"] == "E6"


def test_verification_failure_exits_one(capsys, monkeypatch):
    monkeypatch.setattr(cli.crc, "crc_consistency",
                        lambda spec, dps: mp.mpf(1))
    code, out, _ = run(capsys, [
        "verify", "--group", "D5", "--max-q-degree", "2", "--q-series-degree", "2",
    ])
    assert code == EXIT_VERIFY
    payload = json.loads(out)
    assert payload["status"] == "fail"
    failed = {c["name"] for c in payload["checks"] if c["status"] == "fail"}
    assert failed == {"crc-consistency"}


def test_internal_failure_exits_four(capsys, monkeypatch):
    def boom(spec, dps):
        raise InternalConsistencyError("synthetic")
    monkeypatch.setattr(cli, "bps_table", boom)
    code, out, err = run(capsys, ["bps", "--group", "D5"])
    assert code == EXIT_INTERNAL
    assert out == ""
    assert "internal consistency" in err


# -- payload schemas ------------------------------------------------------------

FAST_FLAGS = {
    "gw": ["--max-q-degree", "3", "--lambda-order", "2"],
    "partition": ["--max-q-degree", "3", "--q-series-degree", "2"],
    "dt": ["--max-q-degree", "3", "--q-series-degree", "2"],
    "crc": ["--degree", "4"],
    "verify": ["--max-q-degree", "3", "--q-series-degree", "2"],
}


@pytest.mark.parametrize("group", ["D5", "C:3"])
@pytest.mark.parametrize("command", sorted(BY_COMMAND))
def test_json_payloads_validate(capsys, command, group):
    argv = [command, "--group", group] + FAST_FLAGS.get(command, [])
    code, out, err = run(capsys, argv)
    assert code == EXIT_OK, err
    jsonschema.validate(json.loads(out), BY_COMMAND[command])


def test_verify_passes_for_sigma3(capsys):
    code, out, _ = run(capsys, [
        "verify", "--group", "D5", "--max-q-degree", "3", "--q-series-degree", "2",
    ])
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["status"] == "pass"
    assert len(payload["checks"]) == 12
    assert all(c["status"] == "pass" for c in payload["checks"])


# -- frozen payload fragments ----------------------------------------------------


def test_bps_payload_frozen_for_sigma3(capsys):
    _, out, _ = run(capsys, ["bps", "--group", "D5"])
    payload = json.loads(out)
    assert payload == [
        {"class": [0, 1], "n0": "4", "fiber_size": 8},
        {"class": [0, 2], "n0": "1/2", "fiber_size": 1},
        {"class": [1, 0], "n0": "1", "fiber_size": 2},
        {"class": [1, 1], "n0": "2", "fiber_size": 4},
        {"class": [1, 2], "n0": "1", "fiber_size": 2},
    ]


def test_partition_degree_zero_is_constant_one(capsys):
    _, out, _ = run(capsys, [
        "partition", "--group", "D5", "--max-q-degree", "0",
        "--q-series-degree", "0",
    ])
    payload = json.loads(out)
    assert payload["terms"] == [{
        "exponents": {}, "t_power": 0, "numerator": "1", "denominator": "1",
    }]


def test_gw_payload_contains_multiple_cover(capsys):
    _, out, _ = run(capsys, [
        "gw", "--group", "D5", "--max-q-degree", "2", "--lambda-order", "0",
    ])
    rows = json.loads(out)["invariants"]
    by_key = {(tuple(r["class"]), r["genus"]): r["coefficient"] for r in rows}
    assert by_key[((2, 0), 0)] == "1/8"
    assert by_key[((0, 1), 0)] == "4"
    assert by_key[((1, 1), 1)] == "1/6"


def test_intersect_pairing_frozen(capsys):
    _, out, _ = run(capsys, ["intersect", "--group", "D5"])
    payload = json.loads(out)
    assert payload["pairing"]["matrix"] == [["-3", "1"], ["1", "-1"]]
    assert payload["pairing"]["t_power"] == 1
    assert payload["threefold"]["zero_point"] == {"value": "1/6", "t_power": -3}


def test_crc_payload_has_rational_guesses(capsys):
    _, out, _ = run(capsys, ["crc", "--group", "D5", "--degree", "3"])
    payload = json.loads(out)
    assert {row["rational_guess"] for row in payload} == {"1/2", "1/18"}


def test_roots_payload_counts(capsys):
    _, out, _ = run(capsys, ["roots", "--group", "C:2"])
    payload = json.loads(out)
    assert payload["ade"] == "A3"
    assert payload["positive_root_count"] == 6
    assert len(payload["positive_roots"]) == 6


# -- rendering --------------------------------------------------------------------


def test_repeated_runs_are_byte_identical(capsys):
    argv = ["crc", "--group", "D5", "--degree", "4"]
    _, first, _ = run(capsys, argv)
    _, second, _ = run(capsys, argv)
    assert first == second
    argv = ["verify", "--group", "C:2", "--max-q-degree", "2",
            "--q-series-degree", "2", "--format", "text"]
    _, first, _ = run(capsys, argv)
    _, second, _ = run(capsys, argv)
    assert first == second


def test_output_file_matches_stdout(capsys, tmp_path):
    argv = ["bps", "--group", "D5"]
    _, stdout_text, _ = run(capsys, argv)
    target = tmp_path / "report.json"
    code, out, _ = run(capsys, argv + ["--output", str(target)])
    assert code == EXIT_OK
    assert out == ""
    assert target.read_text() == stdout_text


def test_csv_output_parses(capsys):
    _, out, _ = run(capsys, ["bps", "--group", "D5", "--format", "csv"])
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 5
    assert set(rows[0]) == {"class_0", "class_1", "n0", "fiber_size"}
    assert rows[0]["n0"] == "4"


def test_text_output_is_prose(capsys):
    _, out, _ = run(capsys, ["group", "--group", "D5", "--format", "text"])
    assert out.startswith("D:3: |G| = 6")
    assert "classes (label size order chi_V age):" in out


# -- process-level smoke -----------------------------------------------------------


def test_module_invocation_round_trip():
    result = subprocess.run(
        [sys.executable, "-m", "qmckay.cli", "bps", "--group", "D5"],
        capture_output=True, text=True, timeout=120,
    )
    assert result.returncode == 0
    assert json.loads(result.stdout)[0]["n0"] == "4"


@pytest.mark.skipif(shutil.which("qmckay") is None,
                    reason="console script not on PATH")
def test_console_script_round_trip():
    result = subprocess.run(
        ["qmckay", "roots", "--group", "E6"],
        capture_output=True, text=True, timeout=120,
    )
    assert result.returncode == 0
    assert json.loads(result.stdout)["positive_root_count"] == 36
