"""Command-line front end.

Exit codes: 0 success, 1 verification failed, 2 malformed input, 3 capacity
exceeded. Every report is plain text, one ``key value`` record per line, and
is byte-identical across identical invocations unless ``--timing`` is given.
"""
from __future__ import annotations

import argparse
import hashlib
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import bcir, hlf, sv
from .compiler import CompileError, compile_circuit
from .qcir import CircuitError, parse_circuit
from .verify import VerifyError, verify_netlist

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_CAPACITY = 0, 1, 2, 3
DEFAULT_SAMPLES = 1024


class InputError(Exception):
    pass


@dataclass
class RunReport:
    command: str
    digests: dict[str, str] = field(default_factory=dict)
    counts: dict[str, int] = field(default_factory=dict)
    extra: list[str] = field(default_factory=list)
    elapsed: float | None = None

    def render(self) -> str:
        out = [f"command {self.command}"]
        out += [f"sha256 {name} {d}" for name, d in sorted(self.digests.items())]
        out += [f"{k} {v}" for k, v in self.counts.items()]
        out += self.extra
        if self.elapsed is not None:
            out.append(f"elapsed_s {self.elapsed:.6f}")
        return "\n".join(out) + "\n"


def _read(path: str, report: RunReport | None = None) -> str:
    try:
        data = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None
    if report is not None:
        report.digests[Path(path).name] = hashlib.sha256(data.encode()).hexdigest()
    return data


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def cmd_compile(args) -> int:
    rep = RunReport("compile")
    qc = parse_circuit(_read(args.circuit, rep))
    art = compile_circuit(qc, rank_refine=args.rank_refine, tol=args.tol)
    _write(args.out, bcir.serialize_netlist(art.netlist))
    rep.counts = {"circuits": 1, "failures": 0}
    rep.extra = art.report.lines()
    return _emit(args, rep, to_stderr=args.out == "-")


def cmd_verify(args) -> int:
    rep = RunReport("verify")
    qc = parse_circuit(_read(args.circuit, rep))
    bc = bcir.parse_netlist(_read(args.netlist, rep))
    samples = args.samples
    if not args.exhaustive and samples is None and qc.n_inputs > sv.EXHAUSTIVE_LIMIT:
        samples = DEFAULT_SAMPLES
    if args.exhaustive:
        samples = None
    res = verify_netlist(qc, bc, samples=samples, seed=args.seed, tol=args.tol, workers=args.workers)
    rep.counts = {"circuits": 1, "inputs_checked": res.checked, "failures": len(res.failures)}
    rep.extra = [f"mode {'exhaustive' if res.exhaustive else 'sampled'}"]
    rep.extra += [f"counterexample {x}" for x in res.failures[:16]]
    rep.extra.append(f"result {'pass' if res.ok else 'fail'}")
    _emit(args, rep)
    return EXIT_OK if res.ok else EXIT_FAIL


def cmd_depth(args) -> int:
    bc = bcir.parse_netlist(_read(args.netlist))
    print(bcir.depth(bc))
    return EXIT_OK


def cmd_relation(args) -> int:
    qc = parse_circuit(_read(args.circuit))
    for x, y in sorted(sv.relation(qc, args.tol)):
        print(x, y)
    return EXIT_OK


def cmd_simulate(args) -> int:
    qc = parse_circuit(_read(args.circuit))
    x = args.input if args.input is not None else "0" * qc.n_inputs
    state = sv.simulate(qc, x)
    if args.postselect:
        lines = [q for q, _ in qc.postselect]
        state = sv.post_select(state, lines, "".join(str(b) for _, b in qc.postselect))
    for y, amp in state.nonzero(args.tol).items():
        print(y, f"{amp.real:+.12f}", f"{amp.imag:+.12f}")
    return EXIT_OK


def cmd_hlf(args) -> int:
    if args.hlf_cmd == "gen-grid":
        _write(args.out, hlf.serialize_instance(hlf.gen_grid(args.N)))
    elif args.hlf_cmd == "gen-random":
        _write(args.out, hlf.serialize_instance(hlf.gen_random(args.M, args.seed)))
    elif args.hlf_cmd == "solve":
        sol = hlf.solve_hlf(hlf.parse_instance(_read(args.instance)))
        _write(args.out, hlf.serialize_solution(sol))
    else:
        inst = hlf.parse_instance(_read(args.instance))
        sol = hlf.parse_solution(_read(args.solution))
        ok = hlf.verify_hlf(inst, sol, budget=args.budget, seed=args.seed)
        print(f"result {'pass' if ok else 'fail'}")
        return EXIT_OK if ok else EXIT_FAIL
    return EXIT_OK


def _emit(args, rep: RunReport, to_stderr: bool = False) -> int:
    if getattr(args, "timing", False):
        rep.elapsed = time.perf_counter() - args._t0
    (sys.stderr if to_stderr else sys.stdout).write(rep.render())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="possim", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True)

    def common(sp, tol=True):
        if tol:
            sp.add_argument("--tol", type=float, default=sv.DEFAULT_TOL,
                            help="relative amplitude threshold for 'nonzero'")
        sp.add_argument("--timing", action="store_true", help="append wall-clock time to the report")

    c = sub.add_parser("compile", help="compile a circuit into a netlist")
    c.add_argument("circuit")
    c.add_argument("out", help="netlist path, '-' for stdout (report then goes to stderr)")
    c.add_argument("--rank-refine", action="store_true",
                   help="multiplex only over selector values reachable from some input")
    common(c)
    c.set_defaults(func=cmd_compile)

    v = sub.add_parser("verify", help="check that a netlist p-simulates a circuit")
    v.add_argument("circuit")
    v.add_argument("netlist")
    mode = v.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true")
    mode.add_argument("--samples", type=int)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--workers", type=int, default=1)
    common(v)
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("depth", help="print the depth of a netlist")
    d.add_argument("netlist")
    d.set_defaults(func=cmd_depth)

    r = sub.add_parser("relation", help="list every possible (input, output) pair")
    r.add_argument("circuit")
    common(r)
    r.set_defaults(func=cmd_relation)

    s = sub.add_parser("simulate", help="print nonzero output amplitudes")
    s.add_argument("circuit")
    s.add_argument("--input", help="input bits, line 0 first (default all zero)")
    s.add_argument("--postselect", action="store_true", help="apply the circuit's post-selection")
    common(s)
    s.set_defaults(func=cmd_simulate)

    h = sub.add_parser("hlf", help="hidden linear function instances and solver")
    hs = h.add_subparsers(dest="hlf_cmd", required=True)
    g = hs.add_parser("gen-grid")
    g.add_argument("N", type=int)
    g.add_argument("-o", "--out", default="-")
    g = hs.add_parser("gen-random")
    g.add_argument("M", type=int)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--out", default="-")
    g = hs.add_parser("solve")
    g.add_argument("instance")
    g.add_argument("-o", "--out", default="-")
    g = hs.add_parser("verify")
    g.add_argument("instance")
    g.add_argument("solution")
    g.add_argument("--budget", type=int, default=16)
    g.add_argument("--seed", type=int, default=0)
    h.set_defaults(func=cmd_hlf)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    args._t0 = time.perf_counter()
    try:
        return args.func(args)
    except (CircuitError, bcir.NetlistError, hlf.HlfError, InputError, CompileError,
            VerifyError, sv.WidthError, bcir.WidthError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except sv.CapacityError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CAPACITY


if __name__ == "__main__":
    sys.exit(main())
