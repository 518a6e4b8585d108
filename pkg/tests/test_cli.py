import numpy as np
import pytest

from possim import cli
from possim.bcir import Builder, parse_netlist
from possim.qcir import parse_circuit
from possim.verify import VerifyError, verify_netlist

H_T_CX = "qubits 2\nh 0\nt 1\ncx 0 1\n"
WIRE = "inputs 1\noutputs 0\n0 INPUT 0\n"
NOT = "inputs 1\noutputs 1\n0 INPUT 0\n1 NOT 0\n"
CONST0 = "inputs 1\noutputs 0\n0 CONST 0\n"


@pytest.fixture
def files(tmp_path):
    def put(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return put


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_degenerate_simulators():
    assert verify_netlist(parse_circuit("qubits 1\nh 0"), parse_netlist(CONST0)).ok
    assert verify_netlist(parse_circuit("qubits 1\nx 0"), parse_netlist(NOT)).ok
    rep = verify_netlist(parse_circuit("qubits 1\nx 0"), parse_netlist(WIRE))
    assert not rep.ok and rep.counterexample == "0" and rep.failures == ["0", "1"]


def test_verify_shape_errors():
    b = Builder(2)
    with pytest.raises(VerifyError):
        verify_netlist(parse_circuit("qubits 1\nh 0"), b.finish([b.input(0)]))
    with pytest.raises(VerifyError):
        verify_netlist(parse_circuit("qubits 1\nh 0"), parse_netlist("inputs 1\noutputs\n0 INPUT 0\n"))


def test_verify_sampled_and_threaded_agree():
    rng = np.random.default_rng(0)
    from possim.compiler import compile_circuit
    from possim.qcir import random_circuit
    qc = random_circuit(rng, 10, 5, t=3)
    bc = compile_circuit(qc).netlist
    a = verify_netlist(qc, bc, samples=300, seed=7)
    b = verify_netlist(qc, bc, samples=300, seed=7, workers=4)
    assert a.ok and b.ok and a.checked == b.checked == 300 and not a.exhaustive


def test_compile_and_verify(capsys, files, tmp_path):
    circ = files("c.txt", H_T_CX)
    net = tmp_path / "c.net"
    code, out, _ = run(capsys, "compile", circ, net)
    assert code == 0
    assert "n 2" in out.splitlines() and "t 1" in out.splitlines()
    code, out, _ = run(capsys, "verify", circ, net, "--exhaustive")
    assert code == 0 and "result pass" in out and "failures 0" in out


def test_compile_identity_is_wires(capsys, files, tmp_path):
    net = tmp_path / "id.net"
    code, out, _ = run(capsys, "compile", files("id.txt", "qubits 2\n"), net)
    assert code == 0 and "total_depth 0" in out
    code, out, _ = run(capsys, "depth", net)
    assert out.strip() == "0"


def test_compile_to_stdout_sends_report_to_stderr(capsys, files):
    code, out, err = run(capsys, "compile", files("x.txt", "qubits 1\nx 0\n"), "-")
    assert code == 0 and out.startswith("inputs 1") and err.startswith("command compile")


def test_malformed_circuit_exits_2(capsys, files, tmp_path):
    code, _, err = run(capsys, "compile", files("bad.txt", "qubits 1\nfoo 0\n"), tmp_path / "o")
    assert code == 2 and "line 2" in err


def test_missing_file_exits_2(capsys, tmp_path):
    code, _, err = run(capsys, "depth", tmp_path / "nope")
    assert code == 2 and "cannot read" in err


def test_verify_rejects_identity_for_x(capsys, files):
    code, out, _ = run(capsys, "verify", files("x.txt", "qubits 1\nx 0\n"), files("w.net", WIRE))
    assert code == 1
    lines = out.splitlines()
    assert "counterexample 0" in lines and "result fail" in lines and "failures 2" in lines


def test_verify_accepts_const_for_h(capsys, files):
    code, out, _ = run(capsys, "verify", files("h.txt", "qubits 1\nh 0\n"), files("c.net", CONST0))
    assert code == 0 and "result pass" in out


def test_capacity_exit_code(capsys, files, tmp_path, monkeypatch):
    monkeypatch.setenv("POSSIM_MAX_QUBITS", "2")
    code, _, _ = run(capsys, "compile", files("c.txt", H_T_CX), tmp_path / "o")
    assert code == 3


def test_depth_of_xor_block(capsys, files):
    text = "inputs 2\noutputs 5\n0 INPUT 0\n1 INPUT 1\n2 OR 0 1\n3 AND 0 1\n4 NOT 3\n5 AND 2 4\n"
    code, out, _ = run(capsys, "depth", files("xor.net", text))
    assert code == 0 and out == "3\n"


def test_relation_of_h(capsys, files):
    code, out, _ = run(capsys, "relation", files("h.txt", "qubits 1\nh 0\n"))
    assert code == 0 and out.splitlines() == ["0 0", "0 1", "1 0", "1 1"]


def test_simulate(capsys, files):
    code, out, _ = run(capsys, "simulate", files("x.txt", "qubits 2\nx 1\n"), "--input", "10")
    assert code == 0 and out.split()[0] == "11"


def test_simulate_with_postselection(capsys, files):
    text = "qubits 2\ninputs 1\nadvice 1\nmeasure 0\npostselect 1 1\nh 0\ncx 0 1\n"
    code, out, _ = run(capsys, "simulate", files("b.txt", text), "--postselect")
    assert code == 0 and [ln.split()[0] for ln in out.splitlines()] == ["1"]


def test_hlf_workflow(capsys, tmp_path):
    inst = tmp_path / "g2.hlf"
    sol = tmp_path / "g2.sol"
    assert run(capsys, "hlf", "gen-grid", 2, "-o", inst)[0] == 0
    assert run(capsys, "hlf", "solve", inst, "-o", sol)[0] == 0
    assert sol.read_text() == "0000\n"
    code, out, _ = run(capsys, "hlf", "verify", inst, sol)
    assert code == 0 and out == "result pass\n"
    sol.write_text("1000\n")
    assert run(capsys, "hlf", "verify", inst, sol)[0] == 1


def test_hlf_solve_prints_to_stdout(capsys, files):
    code, out, _ = run(capsys, "hlf", "solve", files("g.hlf", "hlf 4\n0110001001\n"))
    assert code == 0 and out == "0000\n"


def test_hlf_gen_random_is_seeded(capsys):
    a = run(capsys, "hlf", "gen-random", 6, "--seed", 4)[1]
    b = run(capsys, "hlf", "gen-random", 6, "--seed", 4)[1]
    assert a == b and a.startswith("hlf 6\n")


def test_reports_are_byte_identical(capsys, files, tmp_path):
    circ = files("c.txt", H_T_CX)
    first = run(capsys, "compile", circ, tmp_path / "a.net")[1]
    second = run(capsys, "compile", circ, tmp_path / "b.net")[1]
    assert first == second
    assert (tmp_path / "a.net").read_bytes() == (tmp_path / "b.net").read_bytes()
    v1 = run(capsys, "verify", circ, tmp_path / "a.net", "--samples", 50, "--seed", 3)[1]
    v2 = run(capsys, "verify", circ, tmp_path / "a.net", "--samples", 50, "--seed", 3, "--workers", 2)[1]
    assert v1 == v2


def test_timing_is_opt_in(capsys, files, tmp_path):
    circ = files("c.txt", H_T_CX)
    out = run(capsys, "compile", circ, tmp_path / "a.net", "--timing")[1]
    assert out.splitlines()[-1].startswith("elapsed_s ")
    assert "elapsed_s" not in run(capsys, "compile", circ, tmp_path / "a.net")[1]


def test_rank_refine_flag(capsys, files, tmp_path):
    circ = files("c.txt", "qubits 2\nt 0\nt 0\ncx 0 1\n")
    out = run(capsys, "compile", circ, tmp_path / "a.net", "--rank-refine")[1]
    assert "rank_refine 1" in out.splitlines() and "mux_leaves 2" in out.splitlines()
    assert run(capsys, "verify", circ, tmp_path / "a.net")[0] == 0
