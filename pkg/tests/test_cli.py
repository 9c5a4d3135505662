import json

import pytest

from hopfdual.cli import main
from hopfdual.hopf import sweedler_h4
from hopfdual.io import group_to_json


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate_corpus_name(capsys):
    code, out, _ = run(capsys, "validate", "h4")
    assert code == 0 and "H4: valid" in out


def test_validate_broken_file(capsys, tmp_path):
    obj = group_to_json(sweedler_h4())
    obj["mult"].append([2, 2, 0, 1])
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(obj))
    # a failed axiom is a failed check, not malformed input
    code, out, _ = run(capsys, "validate", str(p))
    assert code == 1 and "FAIL associativity" in out
    p.write_text("[1, 2]")
    assert run(capsys, "validate", str(p))[0] == 2


def test_unknown_group(capsys):
    code, _, err = run(capsys, "validate", "nope")
    assert code == 2 and "nope" in err


def test_modpairs_json(capsys):
    code, out, _ = run(capsys, "modpairs", "cz4", "--json")
    data = json.loads(out)
    assert code == 0 and len(data["pairs"]) == 4


def test_dual_round_trip(capsys, tmp_path):
    p = tmp_path / "d.json"
    assert run(capsys, "dual", "cz3", "-o", str(p))[0] == 0
    code, out, _ = run(capsys, "validate", str(p))
    assert code == 0 and "C[Z3]^" in out


def test_forms_and_xcomplex(capsys):
    assert run(capsys, "forms", "h4", "--algebra", "swap")[0] == 0
    assert run(capsys, "xcomplex", "cz2", "--algebra", "translation", "--pair", "1")[0] == 0


def test_bad_pair_index(capsys):
    code, _, err = run(capsys, "forms", "h4", "--algebra", "swap", "--pair", "0")
    assert code == 2 and "no pair 0" in err


def test_duality_verb(capsys):
    code, out, _ = run(capsys, "duality", "cz2", "--algebra", "translation", "--pair", "0", "--degree", "1")
    assert code == 0 and "Equal" in out


def test_dsl_identity_exit_codes(capsys):
    assert run(capsys, "dsl", "S(t(1)) t(2) == t(1) S(t(2))", "--group", "h4")[0] == 0
    code, out, _ = run(capsys, "dsl", "S2(t) == t", "--group", "h4")
    assert code == 1 and "NotEqual" in out


def test_dsl_syntax_error(capsys):
    code, _, err = run(capsys, "dsl", "S(t(1) t(2)")
    assert code == 2 and "column 12" in err


def test_dsl_dump_ops(capsys):
    code, out, _ = run(capsys, "dsl", "t(1) @ t(2)", "--group", "cz3", "--dump-ops")
    assert code == 0 and "node 0" in out and "shape (3, 3, 3)" in out


def test_suite_filter_json(capsys):
    code, out, _ = run(capsys, "suite", "--filter", "modular/h4,hopf/cz2", "--json", "--no-timing")
    data = json.loads(out)
    assert code == 0
    ids = [r["id"] for r in data["checks"]]
    assert "modular/h4/enumeration" in ids and "hopf/cz2/axioms" in ids
    assert all("wall_time" not in r for r in data["checks"])


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == 2
