import subprocess
import sys

import pytest

from dot_grammar import check_dot
from weightgraph.cli import main
from weightgraph.graph import isomorphic, parse, serialize
from weightgraph.models import model, model_fixed_surface
from weightgraph.surgery import parse_trace


@pytest.fixture
def gw1(tmp_path):
    def write(g_or_text, name="g.gw1"):
        path = tmp_path / name
        path.write_text(g_or_text if isinstance(g_or_text, str) else serialize(g_or_text))
        return str(path)
    return write


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_model_command(capsys):
    code, out, _ = run(capsys, "model", "P", "1", "2")
    assert code == 0 and parse(out) == model("P", 1, 2)
    code, out, _ = run(capsys, "model", "P10")
    assert code == 0 and parse(out) == model_fixed_surface("P10")


@pytest.mark.parametrize("argv", [("model", "P", "2", "4"), ("model", "P10", "1", "2"), ("model", "S", "1")])
def test_model_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_check_passes_on_p12(capsys, gw1):
    code, out, _ = run(capsys, "check", gw1(model("P", 1, 2)))
    assert code == 0
    first = out.splitlines()[0]
    assert first == "constant = 1, signature = 1, residues = (0,0), balance = 0, 3L = Σn_e+Σn_j = 3"
    assert "all identities hold" in out


def test_check_fails_on_double_plus(capsys, gw1):
    text = "point p +\npoint q +\nedge e1 p q 1\nedge e2 p q 1\n"
    code, out, _ = run(capsys, "check", gw1(text))
    assert code == 1
    assert "constant = none" in out and "FAILED" in out and "balance is not 0" in out


def test_check_fails_on_non_admissible(capsys, gw1):
    text = ("point p +\npoint q -\npoint r -\npoint s +\n"
            "edge e p q 3\nedge f p r 1\nedge g q s 2\nedge h r s 1\n")
    code, out, _ = run(capsys, "check", gw1(text))
    assert code == 1
    assert "n_e(e) = -1/3" in out


def test_validate_command(capsys, gw1):
    assert run(capsys, "validate", gw1(model("S", 2, 5)))[0] == 0
    code, out, _ = run(capsys, "validate", gw1("point p +\npoint q -\nedge a p q 2\nedge b p q 4\n"))
    assert code == 1 and "non-coprime" in out


def test_parse_error_names_line(capsys, gw1):
    code, _, err = run(capsys, "validate", gw1("point p +\nedge e1 p zz 1\n"))
    assert code == 2 and "line 2" in err and "'zz'" in err


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "check", str(tmp_path / "nope.gw1"))
    assert code == 2 and "nope.gw1" in err


def test_reduce_with_trace(capsys, gw1, tmp_path):
    trace_path = tmp_path / "t.trace"
    code, out, err = run(capsys, "reduce", gw1(model("S", 2, 5)), "--trace", str(trace_path))
    assert code == 0
    assert isomorphic(parse(out), model("S", 1, 1))
    trace = parse_trace(trace_path.read_text())
    assert len(trace.moves) == 3
    assert isomorphic(trace.replay(), model("S", 2, 5))
    assert "#PQ=3" in err


def test_realize_s35_golden(capsys, gw1, tmp_path):
    cert_path = tmp_path / "s35.cert"
    code, out, _ = run(capsys, "realize", gw1(model("S", 3, 5)), "--cert", str(cert_path))
    assert code == 0 and out.startswith("certified: base of 1")
    text = cert_path.read_text()
    moves = [ln for ln in text.splitlines() if ln.startswith("RelabelPQ")]
    assert len(moves) == 3
    assert [ln.split()[2] for ln in moves] == ["params=(1,2)", "params=(2,3)", "params=(3,5)"]
    code, out, _ = run(capsys, "replay", str(cert_path))
    assert code == 0 and parse(out) == model("S", 3, 5)


def test_realize_rejections(capsys, gw1):
    code, out, _ = run(capsys, "realize", gw1(model_fixed_surface("P10")))
    assert code == 1 and out.startswith("rejected: NotPointsOnly")


def test_replay_tampered(capsys, gw1, tmp_path):
    cert_path = tmp_path / "c.cert"
    run(capsys, "realize", gw1(model("P", 2, 7)), "--cert", str(cert_path))
    text = cert_path.read_text().replace("block=", "block=X", 1).replace("params=(", "params=(4", 1)
    cert_path.write_text(text)
    code, _, err = run(capsys, "replay", str(cert_path))
    assert code == 1 and "move 1" in err
    cert_path.write_text("no header\n")
    assert run(capsys, "replay", str(cert_path))[0] == 2


def test_expand_fixed_sphere(capsys, gw1):
    code, out, _ = run(capsys, "expand", gw1(model_fixed_surface("P10")), "--center", "1",
                       "--from", "-2", "--count", "3")
    assert code == 0 and out.strip() == "0 0 1"


def test_expand_prints_fractions(capsys, gw1):
    text = "point p +\nedge e p p 1\n"
    code, out, _ = run(capsys, "expand", gw1(text), "--center", "1", "--from", "-2", "--count", "3")
    assert code == 0 and out.strip() == "4 4 1"
    assert run(capsys, "expand", gw1(text), "--center", "0", "--from", "0", "--count", "0")[0] == 2


def test_export_dot(capsys, gw1):
    for g in [model_fixed_surface("P10"), model("PQ", 2, 5), model_fixed_surface("S10")]:
        code, out, _ = run(capsys, "export-dot", gw1(g))
        assert code == 0
        check_dot(out)
    _, out, _ = run(capsys, "export-dot", gw1(model_fixed_surface("P10")))
    assert 'shape=circle, label="p1, +"' in out
    assert 'shape=box, label="F, 1"' in out
    assert 'label="1 (n_e=1)"' in out


def test_check_batch(capsys, tmp_path):
    d = tmp_path / "batch"
    d.mkdir()
    for i, g in enumerate([model("P", 2, 3), model("Q", 3, 5), model("PQ", 1, 4)]):
        (d / f"g{i}.gw1").write_text(serialize(g))
    code, out, _ = run(capsys, "check-batch", str(d), "--jobs", "2")
    assert code == 0 and out.count("ok ") == 3
    (d / "z.gw1").write_text("point p +\npoint q +\nedge e1 p q 1\nedge e2 p q 1\n")
    code, out, _ = run(capsys, "check-batch", str(d))
    assert code == 1 and "FAIL" in out
    assert run(capsys, "check-batch", str(tmp_path / "missing"))[0] == 2


def test_argparse_usage_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_module_entry_point(tmp_path):
    path = tmp_path / "s.gw1"
    path.write_text(serialize(model("S", 2, 3)))
    res = subprocess.run([sys.executable, "-m", "weightgraph", "check", str(path)],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "all identities hold" in res.stdout
