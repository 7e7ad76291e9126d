"""Command-line entry point: ``qutrit-teleport <subcommand>``."""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional, Sequence

import numpy as np

from .fidelity import (
    QuadratureSpec,
    cad_eta_independence_probe,
    state_fidelity,
)
from .reports import render_cad_probe, render_table1, run_verify_all, table1
from .sweep import ConfigError, load_config, run_sweep, write_rows
from .teleportation import _bell_vectors, derive_corrections, general_input, teleport


def _float_list(text: str) -> List[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _emit(text: str, path: Optional[str]) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def bell_checks(n_inputs: int = 100, seed: int = 0):
    """Yield ``(name, passed, detail)`` for the noiseless-protocol invariants."""
    phis = np.array(_bell_vectors())
    gram = phis.conj() @ phis.T
    err = float(np.max(np.abs(gram - np.eye(9))))
    yield "bell basis orthonormal", err < 1e-12, f"max |<phi_i|phi_j> - delta| = {err:.2e}"
    comp = float(np.max(np.abs(sum(np.outer(v, v.conj()) for v in phis) - np.eye(9))))
    yield "bell projectors resolve identity", comp < 1e-12, f"max deviation {comp:.2e}"
    try:
        words = derive_corrections().words
        yield "unique correction per outcome", True, f"words (m, n) = {list(words)}"
    except RuntimeError as exc:
        yield "unique correction per outcome", False, str(exc)
        return

    rng = np.random.default_rng(seed)
    worst_p = worst_f = 0.0
    for _ in range(n_inputs):
        z = rng.normal(size=3) + 1j * rng.normal(size=3)
        psi = general_input(*(z / np.linalg.norm(z)))
        for o in teleport(psi):
            worst_p = max(worst_p, abs(o.probability - 1 / 9))
            worst_f = max(worst_f, abs(state_fidelity(psi, o.bob_state_corrected) - 1))
    yield "outcome probabilities 1/9", worst_p <= 1e-10, f"max deviation {worst_p:.2e}"
    yield "corrected fidelity 1", worst_f <= 1e-10, f"max deviation {worst_f:.2e}"


def _cmd_sweep(args) -> int:
    cfg = load_config(args.config)
    rows = run_sweep(cfg, workers=args.workers)
    text = write_rows(cfg, rows, args.out)
    if not (args.out or cfg.output_path):
        sys.stdout.write(text)
    return 0


def _cmd_verify(args) -> int:
    quad = QuadratureSpec(args.theta_nodes, args.phi_nodes)
    results, text = run_verify_all(args.grid, quad)
    _emit(text, args.out)
    if args.out:
        bad = sum(not all(r.matches for r in v) for v in results.values())
        print(f"{len(results)} formulas audited, {bad} with paper-discrepancies; report at {args.out}")
    return 0


def _cmd_table1(args) -> int:
    _emit(render_table1(table1(args.p)), args.out)
    return 0


def _cmd_cad(args) -> int:
    _emit(render_cad_probe(cad_eta_independence_probe(args.p, args.eta)), args.out)
    return 0


def _cmd_bell(args) -> int:
    ok = True
    for name, passed, detail in bell_checks(args.inputs, args.seed):
        ok &= passed
        print(f"{'PASS' if passed else 'FAIL'}  {name}: {detail}")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qutrit-teleport",
                                     description="Noisy qutrit teleportation simulator.")
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("sweep", help="evaluate a TOML sweep config")
    s.add_argument("config")
    s.add_argument("--out", help="override the output path from the config")
    s.add_argument("--workers", type=int, help="parallel grid-point workers")
    s.set_defaults(func=_cmd_sweep)

    v = sub.add_parser("verify-formulas", help="audit every printed closed form")
    v.add_argument("--grid", type=int, default=5, help="points per variable (>= 3)")
    v.add_argument("--out")
    v.add_argument("--theta-nodes", type=int, default=64)
    v.add_argument("--phi-nodes", type=int, default=64)
    v.set_defaults(func=_cmd_verify)

    t = sub.add_parser("table1", help="check the noise-placement orderings")
    t.add_argument("--p", type=_float_list, default=[0.7, 1.0])
    t.add_argument("--out")
    t.set_defaults(func=_cmd_table1)

    c = sub.add_parser("cad-probe", help="tabulate correlated damping over (p, eta)")
    c.add_argument("--p", type=_float_list, default=[0.0, 0.25, 0.5, 0.75, 1.0])
    c.add_argument("--eta", type=_float_list, default=[0.0, 0.5, 1.0])
    c.add_argument("--out")
    c.set_defaults(func=_cmd_cad)

    b = sub.add_parser("bell-check", help="noiseless identity and Bell-basis invariants")
    b.add_argument("--inputs", type=int, default=100)
    b.add_argument("--seed", type=int, default=0)
    b.set_defaults(func=_cmd_bell)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
