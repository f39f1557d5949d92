import io

import pytest

from hypereuler.cli import run
from hypereuler.generate import GeneratorParams, random_hypergraph
from hypereuler.hypergraph import parse_expectations, serialize_hypergraph


def call(argv):
    out = io.StringIO()
    code = run(argv, out)
    return code, out.getvalue()


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return write


def test_decide_tour_triangle(files):
    code, out = call(["decide", "--mode", "tour", "--spanning", files("t.hg", "hg 3 3\n1 2\n2 3\n1 3\n")])
    assert code == 0
    assert out == "YES\n1 e1 2 e2 3 e3\n"


def test_decide_pendant(files):
    code, out = call(["decide", "--mode", "family", "--spanning", files("p.hg", "hg 3 2\n1 2\n2 3\n")])
    assert code == 1 and "necessary condition (ii)" in out


def test_verify_corrupted_witness(files):
    hg = files("d.hg", "hg 2 2\n1 2\n1 2\n")
    assert call(["verify", "--mode", "tour", "--spanning", "--witness", files("w.txt", "1 e1 2 e2\n"), hg]) == (0, "ok\n")
    code, out = call(["verify", "--mode", "tour", "--spanning", "--witness", files("bad.txt", "1 e1 2 e1\n"), hg])
    assert code == 1 and "trail-invalid" in out
    code, out = call(["verify", "--mode", "tour", "--witness", files("short.txt", "1 e1 2 e3\n"), hg])
    assert code == 1 and "unknown-edge" in out


def test_witness_file_written(files, tmp_path):
    target = tmp_path / "out.txt"
    code, _ = call(["decide", "--mode", "family", "--spanning", "--witness", str(target), files("t.hg", "hg 2 2\n1 2\n1 2\n")])
    assert code == 0 and target.read_text() == "1 e1 2 e2\n"


def test_usage_and_parse_errors(files, capsys):
    assert call(["decide", "--mode", "walk", "x"])[0] == 2
    assert call([])[0] == 2
    assert call(["decide", "--mode", "tour", files("bad.hg", "hg 2 1\n1 3\n")])[0] == 2
    assert "outside" in capsys.readouterr().err
    assert call(["decide", "--mode", "tour", "/nonexistent/file.hg"])[0] == 2
    assert call(["decide", "--mode", "tour", "--direct", "--reduce", files("t.hg", "hg 2 2\n1 2\n1 2\n")])[0] == 2


def test_oracle_budget(files):
    big = files("big.hg", "hg 5 5\n" + "1 2 3 4 5\n" * 5)
    assert call(["oracle", "--mode", "family", "--spanning", big])[0] == 2
    assert call(["oracle", "--mode", "family", "--spanning", "--budget", "25", big])[0] == 0


def test_cuts_listing(files):
    code, out = call(["cuts", files("c.hg", "hg 5 6\n1 2\n2 3\n3 1\n3 4\n4 5\n5 3\n")])
    assert code == 0 and out.startswith("S={3} components=2")
    code, out = call(["cuts", files("t.hg", "hg 3 3\n1 2\n2 3\n1 3\n")])
    assert out == "no vertex cuts of size <= 2\n"


def test_reduce_prints_trace(files):
    code, out = call(["reduce", "--mode", "tour", files("c.hg", "hg 5 6\n1 2\n2 3\n3 1\n3 4\n4 5\n5 3\n")])
    assert code == 0
    assert out.startswith("H: YES rule=cut-vertex") and "witness:" in out


def test_gen_annotated(tmp_path):
    target = tmp_path / "g.hg"
    code, _ = call(["gen", "--seed", "5", "--structure", "glued-2cut", "--es-count", "1", "--annotate", "-o", str(target)])
    assert code == 0
    text = target.read_text()
    assert set(parse_expectations(text)) == {"family", "tour"}
    code, out = call(["gen", "--seed", "1"])
    assert out.endswith(serialize_hypergraph(random_hypergraph(GeneratorParams(seed=1))))
    assert call(["gen", "--seed", "1", "--n", "4:3"])[0] == 2


def test_direct_and_reduce_agree_and_are_stable(files):
    for seed in range(40):
        structure = ("uniform", "glued-1cut", "glued-2cut", "deg2-cut")[seed % 4]
        h = random_hypergraph(GeneratorParams(seed=seed, structure=structure, es_count=seed % 2, n_range=(1, 4), m_range=(1, 5)))
        path = files(f"{seed}.hg", serialize_hypergraph(h))
        for mode in ("family", "tour"):
            for extra in ([], ["--spanning"]):
                direct = call(["decide", "--mode", mode, "--direct", *extra, path])
                reduced = call(["decide", "--mode", mode, "--reduce", *extra, path])
                assert direct[0] == reduced[0]
                assert reduced == call(["decide", "--mode", mode, "--reduce", *extra, path])


def test_stdin_input(monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("hg 2 2\n1 2\n1 2\n"))
    assert call(["decide", "--mode", "tour", "--spanning", "-"]) == (0, "YES\n1 e1 2 e2\n")


def test_failed_self_verification_exits_3(files, monkeypatch, capsys):
    from hypereuler import cli
    from hypereuler.solver import Decision
    from hypereuler.trails import ClosedTrail, EulerFamily

    bogus = Decision.yes(EulerFamily((ClosedTrail((1, 2), (1, 1)),)))
    monkeypatch.setattr(cli, "decide_any", lambda *args: bogus)
    code, out = call(["decide", "--mode", "tour", files("t.hg", "hg 2 2\n1 2\n1 2\n")])
    assert code == 3 and out == ""
    assert "fails verification" in capsys.readouterr().err


def test_module_entry_point(files):
    import subprocess
    import sys

    path = files("t.hg", "hg 3 3\n1 2\n2 3\n1 3\n")
    done = subprocess.run([sys.executable, "-m", "hypereuler", "decide", "--mode", "tour", "--spanning", path],
                          capture_output=True, text=True)
    assert done.returncode == 0 and done.stdout == "YES\n1 e1 2 e2 3 e3\n"
