import subprocess
import sys

import pytest

from planarmcb.cli import fit_exponent, main, verify_graph
from planarmcb.formats import parse_imcb, parse_plg, write_graph
from planarmcb.generators import gen_random_planar

from helpers import c4


@pytest.fixture
def c4_file(tmp_path):
    p = tmp_path / "c4.plg"
    p.write_text(write_graph(c4()))
    return str(p)


@pytest.fixture
def random_file(tmp_path):
    p = tmp_path / "r.plg"
    p.write_text(write_graph(gen_random_planar(40, seed=11)))
    return str(p)


def run(capsys, *args):
    code = main(list(args))
    out, err = capsys.readouterr()
    return code, out, err


def test_gen_lower_bound(capsys):
    code, out, _ = run(capsys, "gen", "--family", "lower-bound", "--n", "5")
    assert code == 0
    doc = parse_plg(out)
    assert (doc.n, doc.m) == (5, 7)


@pytest.mark.parametrize("family", ["random", "grid", "web"])
def test_gen_families(capsys, family):
    code, out, _ = run(capsys, "gen", "--family", family, "--n", "30", "--seed", "2")
    assert code == 0 and parse_plg(out).to_graph().is_connected()


def test_gen_uses_env_seed(capsys, monkeypatch):
    monkeypatch.setenv("PMCB_SEED", "5")
    _, a, _ = run(capsys, "gen", "--n", "20")
    _, b, _ = run(capsys, "gen", "--n", "20", "--seed", "5")
    assert a == b


def test_oracle_c4(capsys, c4_file):
    code, out, _ = run(capsys, "oracle", c4_file, "--query", "1", "3")
    assert (code, out) == (0, "2\n")
    code, out, _ = run(capsys, "oracle", c4_file, "--query", "1", "3", "--cut")
    lines = out.splitlines()
    assert lines[0] == "2" and len(lines) == 3


def test_oracle_unknown_vertex(capsys, c4_file):
    code, _, err = run(capsys, "oracle", c4_file, "--query", "1", "9")
    assert code == 2 and "not in graph" in err


def test_verify(capsys, random_file):
    code, out, _ = run(capsys, "verify", random_file)
    assert code == 0
    assert "weights match oracle" in out


def test_verify_detects_mismatch(monkeypatch):
    import planarmcb.cli as cli
    from planarmcb.gmcb_oracle import Cycle, CycleBasis

    g = gen_random_planar(12, seed=3)
    real = cli.oracle_basis

    def skewed(h):
        b = real(h)
        c = b.cycles[0]
        return CycleBasis([Cycle(c.edges, c.weight + 1)] + b.cycles[1:])

    monkeypatch.setattr(cli, "oracle_basis", skewed)
    assert "weights differ from oracle" in verify_graph(g)


def test_verify_exit_one_on_mismatch(capsys, random_file, monkeypatch):
    import planarmcb.cli as cli
    monkeypatch.setattr(cli, "verify_graph", lambda *a, **k: ["forced"])
    code, _, err = run(capsys, "verify", random_file)
    assert code == 1 and "MISMATCH" in err


def test_mcb_outputs(capsys, random_file):
    code, out, _ = run(capsys, "mcb", random_file, "--implicit")
    assert code == 0
    doc = parse_imcb(out)
    g = parse_plg(open(random_file).read()).to_graph()
    assert len(doc.triples) == g.m - g.n + 1
    code, out, _ = run(capsys, "mcb", random_file, "--explicit")
    assert code == 0
    assert len(out.splitlines()) == g.m - g.n + 2


def test_weight_vector_and_gomory_hu(capsys, c4_file):
    assert run(capsys, "weight-vector", c4_file)[1] == "4\n"
    code, out, _ = run(capsys, "gomory-hu", c4_file)
    assert code == 0
    assert [ln.split()[2] for ln in out.splitlines()] == ["2", "2", "2"]


def test_bench_lower_bound(capsys):
    code, out, _ = run(capsys, "bench", "--series", "lower-bound", "--sizes", "5", "10", "50")
    assert code == 0
    rows = [ln.split() for ln in out.splitlines()[1:] if not ln.startswith("#")]
    assert [(r[0], r[4], r[5]) for r in rows] == [("5", "3", "12"), ("10", "8", "52"), ("50", "48", "1272")]
    assert "# exponent length" in out


def test_usage_errors(capsys, tmp_path):
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys, "oracle", "x.plg")[0] == 2
    assert run(capsys, "mcb", str(tmp_path / "missing.plg"))[0] == 2
    bad = tmp_path / "bad.plg"
    bad.write_text("PLG 1\n3 3\nv 1 0 0\n")
    code, _, err = run(capsys, "mcb", str(bad))
    assert code == 2 and "line 4" in err


def test_module_entry_point(c4_file):
    r = subprocess.run([sys.executable, "-m", "planarmcb", "oracle", c4_file, "--query", "1", "3"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout == "2\n"


def test_fit_exponent():
    xs = [1, 2, 4, 8]
    assert abs(fit_exponent(xs, [x ** 1.5 for x in xs]) - 1.5) < 1e-9
