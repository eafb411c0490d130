import json

import pytest

from artifact import harness
from artifact.algebra import chain, dump_nucleus, dumps, make_algebra
from artifact.cli import main
from artifact.harness import (
    CATALOG_SIZES,
    POSEMIGROUP_CATALOG_SIZES,
    SuiteConfig,
    catalog,
    check_triangle_identities,
    run_suite,
)
from artifact.nuclei import Nucleus, enumerate_nuclei


def test_catalog_cache_round_trip(tmp_path, monkeypatch):
    monkeypatch.setattr(harness, "_MEMO", {})
    cfg = SuiteConfig(cache_dir=str(tmp_path))
    first = catalog(2, None, cfg)
    index = json.loads((tmp_path / "index.json").read_text())
    digest = index["pomonoid-n-2"]
    assert (tmp_path / f"{digest}.alg").exists()
    monkeypatch.setattr(harness, "_MEMO", {})
    again = catalog(2, None, cfg)
    assert [dumps(A) for A in again] == [dumps(A) for A in first]


def test_corrupted_cache_is_rebuilt(tmp_path, monkeypatch):
    monkeypatch.setattr(harness, "_MEMO", {})
    cfg = SuiteConfig(cache_dir=str(tmp_path))
    first = catalog(2, None, cfg)
    digest = json.loads((tmp_path / "index.json").read_text())["pomonoid-n-2"]
    (tmp_path / f"{digest}.alg").write_text("garbage")
    monkeypatch.setattr(harness, "_MEMO", {})
    assert [dumps(A) for A in catalog(2, None, cfg)] == [dumps(A) for A in first]


def test_catalog_sizes(cat3, semigroups3):
    for n, size in CATALOG_SIZES.items():
        assert sum(1 for A in cat3 if A.n == n) == size
    for n, size in POSEMIGROUP_CATALOG_SIZES.items():
        assert sum(1 for S in semigroups3 if S.n == n) == size


def test_triangle_identities_hold(cat3):
    for A in cat3[:12]:
        for g in enumerate_nuclei(A):
            assert check_triangle_identities(A, g, L=2) is None, (A.name, g.map)


def test_triangle_identities_on_a_proper_nucleus():
    A = chain(3)
    g = Nucleus(A, (1, 1, 2))
    assert check_triangle_identities(A, g, L=3) is None


def test_run_suite_on_the_smallest_catalog():
    reports = run_suite(SuiteConfig(n_max=1, L=3), only=[2, 4, 7, 15])
    assert [r.id for r in reports] == [
        "02-image-recovery", "04-limited-cancellativity", "07-id-triviality", "15-regression-constants",
    ]
    assert all(r.ok for r in reports)
    assert all(r.line().startswith("PASS") for r in reports)


# ---- CLI


@pytest.fixture
def chain_file(tmp_path):
    p = tmp_path / "chain2.alg"
    p.write_text(dumps(chain(2)))
    return str(p)


@pytest.fixture
def group_file(tmp_path):
    p = tmp_path / "z2.alg"
    p.write_text(dumps(make_algebra(2, [], [[0, 1], [1, 0]], 0, name="Z2")))
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_validate_and_props(capsys, chain_file):
    code, out, _ = run(capsys, "validate", chain_file)
    assert code == 0
    code, out, _ = run(capsys, "props", chain_file, "--json")
    assert code == 0
    rec = json.loads(out.splitlines()[0])
    assert rec["integral"] is True


def test_cli_malformed_file(capsys, tmp_path):
    bad = tmp_path / "bad.alg"
    bad.write_text("pomonoid X\nelements 2\n")
    code, _, err = run(capsys, "validate", str(bad))
    assert code == 2 and "error" in err
    code, _, _ = run(capsys, "validate", str(tmp_path / "missing.alg"))
    assert code == 2


def test_cli_words(capsys, chain_file):
    code, out, _ = run(capsys, "word-le", chain_file, "[0,1]", "[0]")
    assert code == 0 and "true" in out.lower()
    code, out, _ = run(capsys, "word-le", chain_file, "[1]", "[0]", "--json")
    assert json.loads(out)["result"] is False
    code, out, _ = run(capsys, "canon", chain_file, "[1,0,1]")
    assert code == 0 and "[0]" in out


def test_cli_nuclei_and_image(capsys, chain_file):
    code, out, _ = run(capsys, "nuclei", chain_file)
    assert code == 0 and out.strip()
    code, _, err = run(capsys, "image", chain_file)
    assert code == 2 and "nucleus" in err
    with open(chain_file, "a") as fh:
        fh.write(dump_nucleus("top", (1, 1)))
    code, out, _ = run(capsys, "image", chain_file, "--nucleus", "top")
    assert code == 0 and "elements 1" in out
    code, out, _ = run(capsys, "conuclei", chain_file)
    assert code == 0


def test_cli_laws(capsys, chain_file):
    for cmd in ("square", "idcancel", "free-cancel"):
        code, out, _ = run(capsys, cmd, chain_file, "--budget", "3")
        assert code in (0, 1) and out.strip(), cmd


def test_cli_downsets(capsys, chain_file):
    code, out, _ = run(capsys, "meet", chain_file, "{[0]}", "{[0,0]}")
    assert code == 0 and "[0,0]" in out
    code, out, _ = run(capsys, "residual", chain_file, "{[0]}", "{[0]}", "--side", "right")
    assert code == 0


def test_cli_budget_exceeded(capsys, tmp_path):
    p = tmp_path / "c3.alg"
    p.write_text(dumps(chain(3)))
    p = str(p)
    code, _, err = run(capsys, "meet", p, "{[1,1,1]}", "{[0,0]}", "--budget", "3")
    assert code == 1 and "error" in err


def test_cli_sigma_and_prove(capsys, chain_file, group_file):
    code, out, _ = run(capsys, "sigma", chain_file, "[~0,0]")
    assert code == 0 and out.strip()
    code, out, _ = run(capsys, "prove", chain_file, "[0,~0]", "e")
    assert code == 0 and "contraction" in out
    # non-integrally-closed base
    nic = make_algebra(2, [], [[0, 1], [1, 1]], 0)
    p = chain_file.replace("chain2", "nic")
    with open(p, "w") as fh:
        fh.write(dumps(nic))
    code, _, err = run(capsys, "sigma", p, "[~0,1]")
    assert code == 1 and "integrally closed" in err


def test_cli_catalog(capsys):
    code, out, _ = run(capsys, "catalog", "--n-max", "2", "--json")
    assert code == 0
    assert len(out.splitlines()) == CATALOG_SIZES[1] + CATALOG_SIZES[2]


def test_cli_verify_is_deterministic(capsys):
    code, first, _ = run(capsys, "verify", "--n-max", "1", "--budget", "3", "--only", "2,4,6,7,9")
    assert code == 0
    _, second, _ = run(capsys, "verify", "--n-max", "1", "--budget", "3", "--only", "2,4,6,7,9")
    assert first == second
    assert len(first.splitlines()) == 5


def test_cli_help_mentions_grammar(capsys):
    with pytest.raises(SystemExit):
        main(["--help"])
    assert "=>" in capsys.readouterr().out
