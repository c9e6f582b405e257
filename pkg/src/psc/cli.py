"""``psc`` command line: verify, compile, run, render."""

from __future__ import annotations

import argparse
import os
import sys

from . import compiler, kasteleyn
from .errors import PSCError, ScenarioError
from .graph import load_graph
from .pauli import PauliRotation
from .protocol import BACKENDS, execute, load_scenario, record_json, resolve_data


def _graph(name: str):
    return load_graph(resolve_data(name)).decorated


def cmd_verify(args) -> int:
    dg = _graph(args.graph)
    lhs, rhs = dg.euler_balance()
    ok = dg.check_euler()
    orient = kasteleyn.find_kasteleyn(dg)
    if args.orientation:
        with open(args.orientation) as fh:
            orient = kasteleyn.Orientation.from_text(dg, fh.read())
    kok = kasteleyn.verify_kasteleyn(dg, orient)
    print(f"N_Q={dg.n_qubits} N_S={dg.n_stabilizers} N_sigma={dg.n_sigma}")
    print(f"balance N_Q-N_S={lhs} N_sigma/2-chi={rhs} {'OK' if ok else 'FAIL'}")
    print(f"kasteleyn {'OK' if kok else 'FAIL'}")
    if args.dump_orientation:
        with open(args.dump_orientation, "w") as fh:
            fh.write(orient.to_text(dg))
    if not (ok and kok):
        print("ERR Invariant graph invariants violated")
        return 1
    return 0


def _operator(dg, kind: str, spec: list[str]):
    if kind == "line":
        return compiler.compile_line(dg, kasteleyn.lift_canonical(dg, kasteleyn.parse_steps(spec)))
    if kind == "loop":
        loop = kasteleyn.lift_canonical(dg, kasteleyn.parse_steps(spec), loop=True)
        return compiler.compile_loop(dg, loop)
    if kind == "stabilizer":
        if len(spec) != 1:
            raise ScenarioError("stabilizer takes one plaquette label")
        tok = spec[0]
        f = int(tok) if tok.isdigit() else dg.plaquette_by_label(tok)
        if f not in dg.plaquettes:
            raise ScenarioError(f"face {tok} carries no stabilizer")
        return compiler.compile_stabilizer(dg, f)
    return compiler.compile_thooft(dg, [dg.plaquette_by_label(t) for t in spec])


def cmd_compile(args) -> int:
    dg = _graph(args.graph)
    spec = [t for tok in args.pathspec for t in tok.replace(",", " ").split()]
    op = _operator(dg, args.kind, spec)
    print(op)
    labels = list(range(dg.n_qubits))
    for sign, name in ((1, "U+"), (-1, "U-")):
        gates, k = compiler.decompose(PauliRotation(op, sign))
        print(f"# {name} phase exp(i*pi*{k}/4)")
        sys.stdout.write(compiler.gates_text(gates, labels))
    return 0


def cmd_run(args) -> int:
    sc = load_scenario(resolve_data(args.scenario))
    seed = args.seed
    if seed is None and os.environ.get("PSC_SEED"):
        seed = int(os.environ["PSC_SEED"])
    runner = execute(sc, backend=args.backend, seed=seed)
    text = record_json(runner.record())
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.gates:
        with open(args.gates, "w") as fh:
            fh.write(compiler.gates_text(runner.gates, list(range(runner.dg.n_qubits))))
    return 0


def cmd_render(args) -> int:
    from .render import RenderSpec, parse_pathset, render_svg

    dg = _graph(args.graph)
    spec = RenderSpec(dg)
    if args.paths:
        with open(args.paths) as fh:
            spec = parse_pathset(dg, fh.read())
    spec.width = spec.height = args.size
    with open(args.svg, "w") as fh:
        fh.write(render_svg(spec))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="psc", description="Anyon protocols on Pauli stabilizer codes")
    sub = p.add_subparsers(dest="cmd", required=True)

    v = sub.add_parser("verify", help="check graph and Kasteleyn invariants")
    v.add_argument("graph")
    v.add_argument("--orientation", help="arrow file to check instead of the solver's")
    v.add_argument("--dump-orientation", metavar="FILE")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("compile", help="compile a line operator to a Pauli string and gates")
    c.add_argument("kind", choices=["line", "loop", "stabilizer", "thooft"])
    c.add_argument("graph")
    c.add_argument("pathspec", nargs="+")
    c.set_defaults(func=cmd_compile)

    r = sub.add_parser("run", help="run a scenario")
    r.add_argument("scenario")
    r.add_argument("--backend", choices=sorted(BACKENDS) + ["both"], default=None)
    r.add_argument("--seed", type=int, default=None)
    r.add_argument("--out")
    r.add_argument("--gates", metavar="FILE", help="write the applied gate list")
    r.set_defaults(func=cmd_run)

    d = sub.add_parser("render", help="draw a graph as SVG")
    d.add_argument("graph")
    d.add_argument("--paths", help="overlay file")
    d.add_argument("--svg", required=True)
    d.add_argument("--size", type=int, default=640)
    d.set_defaults(func=cmd_render)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except PSCError as exc:
        print(exc.line())
        return 2
    except OSError as exc:
        print(f"ERR IO {exc.filename}: {exc.strerror}")
        return 2
    except (ValueError, KeyError) as exc:
        print(f"ERR Input {exc}")
        return 2


if __name__ == "__main__":
    sys.exit(main())
