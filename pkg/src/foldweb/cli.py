"""Command-line entry point: ``foldweb <verb> [flags]``.

Exit status is 0 when the report verdict is PASS (or the verb has no
verdict and succeeded), 1 on FAIL or a domain error, and 2 on bad
arguments, including even or too-small distances and malformed files.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from typing import Optional, Sequence

from . import __version__
from .circuit import require_valid
from .circuit_io import parse, serialize
from .errors import FoldwebError, OddDistanceRequired, OverlayMismatch, SchemaError
from .lattice import build_lattice
from .lowering import lower_to_zx
from .pauliweb import PauliWeb, boundary_signature, web_basis
from .tableau import choi_closure, run
from .verify import SCHEMES, crosscheck, load_web, scheme_circuit, verify_stabilizers, verify_y
from .zxgraph import Boundary, Spider

log = logging.getLogger("foldweb")

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _StderrHandler(logging.StreamHandler):
    """Writes to whatever ``sys.stderr`` is at emit time."""

    def __init__(self):
        super().__init__()
        self.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))

    @property
    def stream(self):
        return sys.stderr

    @stream.setter
    def stream(self, _value):
        pass


def _configure_logging() -> None:
    name = os.environ.get("FOLDWEB_LOG", "WARNING").upper()
    log.setLevel(getattr(logging, name, logging.WARNING))
    if not any(isinstance(h, _StderrHandler) for h in log.handlers):
        log.addHandler(_StderrHandler())


def _emit(text: str, out: Optional[str]) -> None:
    if out and out != "-":
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
        log.info("wrote %s", out)
    else:
        sys.stdout.write(text)


def _circuit(args):
    """The circuit named by ``args.circuit`` or generated from --d/--scheme."""
    if getattr(args, "circuit", None):
        try:
            with open(args.circuit, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {args.circuit}: {exc.strerror}") from None
        return parse(text), "file"
    if args.d is None:
        raise UsageError("give a circuit file or --d (with --scheme)")
    build_lattice(args.d)  # distance check up front
    return scheme_circuit(args.scheme, args.d), args.scheme


def _diagram_dict(zx, legs) -> dict:
    nodes = []
    for nid in sorted(zx.nodes):
        n = zx.nodes[nid]
        entry = {"id": nid, "role": n.role, "tag": list(n.tag) if n.tag is not None else None}
        if isinstance(n.kind, Spider):
            entry.update(kind="spider", color=n.kind.color, phase=n.kind.phase)
        elif isinstance(n.kind, Boundary):
            entry.update(kind="boundary", direction=n.kind.direction)
        if nid in legs.outcomes:
            entry["outcome"] = legs.outcomes[nid]
        nodes.append(entry)
    edges = [
        {"id": e.id, "u": e.u, "v": e.v, "hadamard": e.hadamard}
        for e in (zx.edges[k] for k in sorted(zx.edges))
    ]
    return {
        "diagram_hash": zx.diagram_hash(),
        "nodes": nodes,
        "edges": edges,
        "inputs": {str(q): n for q, n in sorted(legs.inputs.items())},
        "outputs": {str(q): n for q, n in sorted(legs.outputs.items())},
    }


# -- verbs -----------------------------------------------------------------


def cmd_gen(args) -> int:
    if args.d is None:
        raise UsageError("gen needs --d")
    build_lattice(args.d)
    _emit(serialize(scheme_circuit(args.scheme, args.d)), args.out)
    return EXIT_PASS


def cmd_lower(args) -> int:
    c, _ = _circuit(args)
    zx, legs = lower_to_zx(c)
    _emit(json.dumps(_diagram_dict(zx, legs), indent=1) + "\n", args.out)
    return EXIT_PASS


def cmd_webs(args) -> int:
    c, _ = _circuit(args)
    zx, legs = lower_to_zx(c)
    webs = [w.to_json(boundary_signature(zx, legs, w)) for w in web_basis(zx)]
    _emit(json.dumps({"diagram_hash": zx.diagram_hash(), "basis": webs}, indent=1) + "\n", args.out)
    return EXIT_PASS


def _report_exit(report, out) -> int:
    _emit(report.to_json(), out)
    print(report.summary(), file=sys.stderr)
    return EXIT_PASS if report.passed else EXIT_FAIL


def cmd_verify_y(args) -> int:
    if args.d is None:
        raise UsageError("verify-y needs --d")
    build_lattice(args.d)
    return _report_exit(verify_y(args.d, args.trials, args.seed), args.out)


def cmd_verify_stabilizers(args) -> int:
    if args.d is None:
        raise UsageError("verify-stabilizers needs --d")
    build_lattice(args.d)
    return _report_exit(verify_stabilizers(args.d, args.scheme, args.trials, args.seed), args.out)


def cmd_crosscheck(args) -> int:
    c, scheme = _circuit(args)
    web = load_web(args.web) if args.web else None
    return _report_exit(crosscheck(c, args.trials, args.seed, web, scheme), args.out)


def _parse_forcing(items) -> dict:
    forcing = {}
    for item in items or []:
        key, sep, val = item.partition("=")
        if not sep or val not in ("0", "1"):
            raise UsageError(f"--force expects outcome=0|1, got {item!r}")
        forcing[key] = int(val)
    return forcing


def cmd_simulate(args) -> int:
    c, _ = _circuit(args)
    require_valid(c)
    refs = {}
    if any(q.open_input for q in c.qubits):
        c, refs = choi_closure(c)
    tab, rec = run(c, _parse_forcing(args.force), seed=args.seed, strict=args.strict)
    payload = {
        "qubits": tab.qubits,
        "references": {str(q): r for q, r in refs.items()},
        "stabilizers": [g.label() for g in tab.generators()],
        "outcomes": rec.to_json(),
    }
    _emit(json.dumps(payload, indent=1) + "\n", args.out)
    return EXIT_PASS


def cmd_render(args) -> int:
    c, _ = _circuit(args)
    zx, _ = lower_to_zx(c)
    overlay = None
    if args.web:
        web: PauliWeb = load_web(args.web)
        if web.diagram_hash != zx.diagram_hash():
            raise OverlayMismatch(
                f"web was solved on diagram {web.diagram_hash}, this diagram is {zx.diagram_hash()}"
            )
        overlay = web.labels
    text = zx.to_svg(overlay) if args.format == "svg" else zx.to_dot(overlay)
    _emit(text, args.out)
    return EXIT_PASS


VERBS = {
    "gen": (cmd_gen, "write a generated circuit as JSON"),
    "lower": (cmd_lower, "lower a circuit to a ZX diagram (JSON)"),
    "webs": (cmd_webs, "print the canonical web basis with signatures"),
    "verify-y": (cmd_verify_y, "check the logical X to logical Y correlator of the fold-transversal init"),
    "verify-stabilizers": (cmd_verify_stabilizers, "find and confirm one web per plaquette"),
    "crosscheck": (cmd_crosscheck, "check every basis web against the tableau oracle"),
    "simulate": (cmd_simulate, "run the tableau simulator and print the final generators"),
    "render": (cmd_render, "render the lowered diagram as DOT or SVG"),
}

_TAKES_CIRCUIT = {"lower", "webs", "crosscheck", "simulate", "render"}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="foldweb", description="Pauli-web verification toolkit")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="verb", metavar="VERB", required=True)
    for verb, (_, help_text) in VERBS.items():
        p = sub.add_parser(verb, help=help_text)
        if verb in _TAKES_CIRCUIT:
            p.add_argument("circuit", nargs="?", help="circuit JSON file (default: generate from --d/--scheme)")
        p.add_argument("--d", type=int, help="code distance (odd, at least 3)")
        p.add_argument("--scheme", choices=SCHEMES, default="cclp-y")
        p.add_argument("--trials", type=int, default=20, help="forced-outcome oracle runs (0 skips the oracle)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", help="output path (default: stdout)")
        p.add_argument("--format", choices=("dot", "svg"), default="dot")
        p.add_argument("--web", help="web JSON file to overlay or cross-check")
        if verb == "simulate":
            p.add_argument("--force", action="append", metavar="OUTCOME=BIT")
            p.add_argument("--strict", action="store_true", help="reject forcing that contradicts a deterministic outcome")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    _configure_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.trials < 0:
        parser.error("--trials must be non-negative")
    handler = VERBS[args.verb][0]
    try:
        return handler(args)
    except (UsageError, OddDistanceRequired, SchemaError) as exc:
        print(f"foldweb {args.verb}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FoldwebError as exc:
        print(f"foldweb {args.verb}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
