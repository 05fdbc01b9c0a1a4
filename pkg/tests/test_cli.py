import io
import json
import subprocess
import sys

import pytest

from arfcurves.cli import cli_run
from arfcurves.errors import CATEGORIES


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli_run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, _ = run(*argv, "--json")
    return code, json.loads(out)


def test_semigroup_closure():
    code, out, _ = run("semigroup", "closure", "--gens", "3,7")
    assert code == 0
    assert "[3,3,1]" in out and "{0,3,6,7,8,...}" in out
    code, data = run_json("semigroup", "closure", "--gens", "3,7")
    assert data["result"]["multiplicities"] == [3, 3, 1]
    assert data["result"]["closure"]["elements"] == [0, 3, 6]


def test_branch_multseq_with_trace():
    code, data = run_json("branch", "multseq", "t^2, t^5")
    assert code == 0
    assert data["result"]["multiplicities"] == [2, 2, 1]
    assert [s["multiplicity"] for s in data["result"]["trace"]["steps"]] == [2, 2]
    assert data["command"] == "branch multseq"
    assert set(data) == {"command", "config", "result"}


def test_embed_dim():
    code, data = run_json("branch", "embed-dim", "t^4, t^6+t^7")
    assert data["result"]["embedding_dimension"] == 2


def test_chars_commands():
    assert run_json("chars", "to-multseq", "2,5")[1]["result"]["multiplicities"] == [2, 2, 1]
    code, out, _ = run("chars", "realize", "4,6,9")
    assert code == 0 and "(t^4, t^6, t^9)" in out and "characters reproduce: yes" in out
    assert run_json("chars", "stability", "2,5", "--extra", "4")[1]["result"]["stable"] is True


def test_ring_commands():
    data = run_json("ring", "orders", "t^4, t^6+t^7")[1]["result"]
    assert data["semigroup"]["generators"] == [4, 6, 13]
    data = run_json("ring", "closure", "t^4, t^6+t^7", "--member", "t^5")[1]["result"]
    assert data["multiplicities"] == [4, 2, 2, 1] and data["member"]["in_closure"] is False
    data = run_json("ring", "base", "t^4, t^6, t^9")[1]["result"]
    assert data["base_characters"] == [4, 6, 9] and data["dimension"] == 3


def test_verify_commands():
    assert run_json("verify", "closure-oracle", "--max-gen", "8")[1]["result"]["agree"]
    assert run_json("verify", "characters-oracle", "--bound", "8")[1]["result"]["agree"]
    assert run_json("verify", "ring-oracle", "t^4, t^6+t^7")[1]["result"]["agree"]
    assert run_json("verify", "enumerate", "--bound", "4")[1]["result"]["count"] == 5


def test_rationals_are_strings():
    data = run_json("ring", "base", "t^2 - (1/2)*t^3, t^5")[1]["result"]
    assert data["elements"][0] == "t^2 - (1/2)*t^3"
    data = run_json("branch", "multseq", "t^2, 3*t^2 + t^5")[1]["result"]
    assert data["trace"]["steps"][0]["recenter"] == ["0", "3"]


def test_prime_field():
    code, data = run_json("branch", "characters", "t^4, t^6+t^7", "--field", "f5")
    assert code == 0 and data["result"]["characters"] == [4, 6, 9]
    assert data["config"]["field"] == "f5"


@pytest.mark.parametrize("argv,category", [
    (["branch", "multseq", "t^2, t^6"], "not-normalized"),
    (["semigroup", "characters", "--gens", "3,7"], "not-arf"),
    (["ring", "orders", "t^7, t^11", "--prec", "16"], "insufficient-precision"),
    (["branch", "multseq", "t^2, t^41", "--max-steps", "3"], "max-steps"),
    (["verify", "enumerate", "--bound", "30"], "resource-guard"),
    (["chars", "to-multseq", "4,6"], "invalid-argument"),
])
def test_domain_errors(argv, category):
    code, data = run_json(*argv)
    assert code == 1
    assert data["error"]["category"] == category
    assert data["result"] is None


def test_precision_suggestion():
    code, out, err = run("ring", "orders", "t^7, t^11", "--prec", "16")
    assert code == 1 and "--prec 32" in err


@pytest.mark.parametrize("argv", [
    ["nonsense"],
    ["semigroup"],
    ["branch", "multseq", "t^2, t^5", "--prec", "4"],
    ["branch", "multseq", "t^2, t^5", "--field", "f9"],
    ["semigroup", "closure", "--gens", "a,b"],
    ["branch", "multseq", "t^2 +* t^5"],
])
def test_usage_and_malformed(argv):
    code, _, _ = run(*argv)
    assert code == 2


def test_category_table_is_injective():
    assert len(set(CATEGORIES)) == len(CATEGORIES)


def test_json_and_text_agree():
    _, text, _ = run("branch", "characters", "t^4, t^6+t^7")
    _, data = run_json("branch", "characters", "t^4, t^6+t^7")
    assert text.strip() == "characters: {" + ",".join(map(str, data["result"]["characters"])) + "}"


def test_deterministic_subprocess():
    argv = [sys.executable, "-m", "arfcurves", "ring", "closure", "t^4, t^6+t^7", "--json"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b and json.loads(a)["result"]["characters"] == [4, 6, 9]
