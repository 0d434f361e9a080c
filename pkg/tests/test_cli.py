import json
import shutil

import pytest

from psublab import cli, verify


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def small_corpus(tmp_path, fixtures_dir):
    for name in ["sym3", "sym4", "alt4", "cyclic6", "e25_z3"]:
        shutil.copy(fixtures_dir / f"{name}.grp", tmp_path)
    return tmp_path


def test_analyze_sym4(capsys, fixtures_dir):
    code, out, _ = run(capsys, "analyze", str(fixtures_dir / "sym4.grp"), "--format", "json")
    rep = json.loads(out)
    assert code == 0
    assert rep["flags"]["solvable"] is True and rep["flags"]["supersolvable"] is False
    assert rep["theorem"]["equivalent"] is True


def test_analyze_affine_294(capsys, fixtures_dir):
    code, out, _ = run(capsys, "analyze", str(fixtures_dir / "e49_s3.grp"), "--format", "json")
    rep = json.loads(out)
    assert code == 0 and rep["theorem"]["lhs"] is True and rep["theorem"]["rhs"] is True


def test_analyze_trivial_group(capsys, fixtures_dir):
    code, out, _ = run(capsys, "analyze", str(fixtures_dir / "cyclic1.grp"), "--format", "json")
    rep = json.loads(out)
    assert code == 0
    for k in ("abelian", "nilpotent", "solvable", "supersolvable", "has_susolv_sylow_tower"):
        assert rep["flags"][k] is True
    assert rep["lattice"]["two_maximal"] == 0


def test_analyze_text(capsys, fixtures_dir):
    code, out, _ = run(capsys, "analyze", str(fixtures_dir / "sym4.grp"))
    assert code == 0 and "lhs=False rhs=False equivalent=True" in out


def test_analyze_parse_error(capsys, tmp_path):
    f = tmp_path / "bad.grp"
    f.write_text("Sym(3\n")
    code, _, err = run(capsys, "analyze", str(f))
    assert code == 2 and "bad.grp:1:6: expected" in err


def test_analyze_over_cap(capsys, tmp_path):
    f = tmp_path / "big.grp"
    f.write_text("Sym(7)\n")
    code, out, _ = run(capsys, "analyze", str(f), "--cap", "1000")
    assert code == 2 and "ERROR" in out


def test_cap_env_fallback(capsys, tmp_path, monkeypatch):
    f = tmp_path / "s5.grp"
    f.write_text("Sym(5)\n")
    monkeypatch.setenv("PSUBLAB_CAP", "50")
    code, _, _ = run(capsys, "analyze", str(f))
    assert code == 2
    code, _, _ = run(capsys, "analyze", str(f), "--cap", "200")
    assert code == 0


def test_verify_small_corpus(capsys, small_corpus):
    code, out, _ = run(capsys, "verify", str(small_corpus), "--format", "json")
    reps = json.loads(out)
    assert code == 0 and [r["group"] for r in reps] == ["alt4", "cyclic6", "e25_z3", "sym3", "sym4"]


def test_verify_parallel_matches_serial(capsys, small_corpus):
    _, a, _ = run(capsys, "verify", str(small_corpus), "--format", "json")
    _, b, _ = run(capsys, "verify", str(small_corpus), "--format", "json", "--jobs", "2")
    strip = lambda s: [verify.strip_timing(r) for r in json.loads(s)]
    assert strip(a) == strip(b)


def test_verify_seed_reproducible(capsys, small_corpus):
    _, a, _ = run(capsys, "verify", str(small_corpus), "--format", "json", "--seed", "7")
    _, b, _ = run(capsys, "verify", str(small_corpus), "--format", "json", "--seed", "7")
    strip = lambda s: [verify.strip_timing(r) for r in json.loads(s)]
    assert strip(a) == strip(b)


def test_verify_mutation_gives_exit_1(capsys, small_corpus, monkeypatch):
    monkeypatch.setattr(verify, "verify_certificate", lambda L, c: False)
    code, out, _ = run(capsys, "verify", str(small_corpus))
    assert code == 1 and "VIOLATION" in out


def test_verify_missing_directory(capsys, tmp_path):
    code, _, err = run(capsys, "verify", str(tmp_path / "nope"))
    assert code == 2 and "not a directory" in err


def test_verify_error_entry(capsys, small_corpus):
    (small_corpus / "broken.grp").write_text("Perm(3; (1 5))\n")
    code, out, _ = run(capsys, "verify", str(small_corpus))
    assert code == 2 and "5 groups" in out


def test_lattice_dot(capsys, fixtures_dir, tmp_path):
    target = tmp_path / "s4.dot"
    code, _, _ = run(capsys, "lattice", str(fixtures_dir / "sym4.grp"), "--dot", str(target))
    dot = target.read_text()
    assert code == 0 and dot.startswith("digraph") and dot.count("[label=") == 30
    code, out, _ = run(capsys, "lattice", str(fixtures_dir / "sym3.grp"))
    assert code == 0 and out.count("filled") == 6


@pytest.mark.parametrize("a, n, expected", [("2", "6", "none (exception)"), ("5", "3", "31"), ("2", "4", "5")])
def test_zsigmondy(capsys, a, n, expected):
    code, out, _ = run(capsys, "zsigmondy", a, n)
    assert code == 0 and out.strip() == expected


@pytest.mark.parametrize("argv", [["zsigmondy", "1", "3"], ["zsigmondy", "x", "3"], ["bogus"], []])
def test_bad_arguments(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_bad_cap_value(capsys, fixtures_dir):
    code, _, _ = run(capsys, "analyze", str(fixtures_dir / "sym3.grp"), "--cap", "0")
    assert code == 2
