"""Web finding plus oracle confirmation for the generated schemes.

Each ``verify_*`` function returns a :class:`~foldweb.report.Report`.  The
web solver proposes a correlator; the tableau oracle then checks, over a
set of forced outcome assignments, that the correlator's boundary Pauli is
in the final stabilizer group with sign ``s0 * prod((-1)**m)`` over the
web's measurement support, for one constant ``s0``.
"""

from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .circuit import CliffordCircuit, require_valid
from .circuit_io import circuit_hash
from .errors import OverlayMismatch
from .lattice import (
    build_lattice,
    cclp_y_init_circuit,
    encoder_circuit,
    logical_rep,
    transversal_init_circuit,
)
from .lowering import LegMap, lower_to_zx
from .pauli import PauliString
from .pauliweb import (
    BoundarySignature,
    Infeasible,
    PauliWeb,
    boundary_signature,
    build_system,
    check_web,
    input_pins,
    output_pins,
    solve,
    web_basis,
)
from .propagate import propagate_pauli
from .report import Report
from .tableau import choi_closure, group_signs, run
from .zxgraph import ZxDiagram

log = logging.getLogger(__name__)

SCHEMES = ("cclp-y", "encoder", "init0", "init+")
EXHAUSTIVE_LIMIT = 10


def scheme_circuit(scheme: str, d: int) -> CliffordCircuit:
    if scheme == "cclp-y":
        return cclp_y_init_circuit(d)
    if scheme == "encoder":
        return encoder_circuit(d)
    if scheme == "init0":
        return transversal_init_circuit(d, "Z")
    if scheme == "init+":
        return transversal_init_circuit(d, "X")
    raise ValueError(f"unknown scheme {scheme!r}; expected one of {', '.join(SCHEMES)}")


def forcing_assignments(outcomes: list[str], trials: int, seed: int) -> tuple[list[dict], str]:
    """Outcome bit-vectors to force, and the strategy used.

    With at most ten outcomes every assignment is tried (cycled until there
    are ``trials`` of them); otherwise ``trials`` vectors are drawn from a
    seeded generator.  ``trials <= 0`` skips the oracle.
    """
    if trials <= 0:
        return [], "skipped"
    if len(outcomes) <= EXHAUSTIVE_LIMIT:
        full = [dict(zip(outcomes, bits)) for bits in itertools.product((0, 1), repeat=len(outcomes))]
        reps = -(-trials // len(full))
        return (full * reps)[: max(trials, len(full))], "exhaustive"
    rng = random.Random(seed)
    return [{o: rng.randrange(2) for o in outcomes} for _ in range(trials)], "sampled"


@dataclass
class Claim:
    """A Pauli asserted to be in the final group, signed by some outcomes.

    ``pauli`` is indexed like ``qubits`` (ids of the closed circuit).  When
    ``s0`` is given the constant is fixed in advance rather than learned
    from the first run.
    """

    name: str
    qubits: list[int]
    pauli: PauliString
    support: list[str]
    s0: Optional[int] = None


@dataclass
class ClaimResult:
    name: str
    ok: bool
    s0: Optional[int]
    message: str = ""


class Closure:
    """A circuit closed for the oracle, with the map from open inputs to references."""

    def __init__(self, c: CliffordCircuit):
        self.original = c
        if any(q.open_input for q in c.qubits):
            self.circuit, self.refs = choi_closure(c)
        else:
            self.circuit, self.refs = c, {}

    def claim(self, name: str, sig: BoundarySignature, s0: Optional[int] = None) -> Claim:
        """Turn a boundary signature into a claim on the closed circuit.

        Input Paulis land on the reference qubits.  Transposition only flips
        the sign of Y, a constant that ``s0`` absorbs.
        """
        ops = {q: p for q, p in sig.outputs.items() if p != "I"}
        for q, p in sig.inputs.items():
            if p != "I":
                ops[self.refs[q]] = p
        qubits = [q.id for q in self.circuit.qubits]
        pos = {q: i for i, q in enumerate(qubits)}
        pauli = PauliString.from_sparse(len(qubits), {pos[q]: p for q, p in ops.items()})
        return Claim(name, qubits, pauli, list(sig.measurement_support), s0)


def oracle_check(
    closure: Closure, claims: list[Claim], trials: int, seed: int
) -> tuple[list[ClaimResult], int, str]:
    """Run the tableau over forced assignments and test every claim."""
    c = closure.circuit
    assignments, strategy = forcing_assignments(c.outcomes(), trials, seed)
    if not claims:
        return [], len(assignments), strategy
    x = np.array([cl.pauli.x for cl in claims], dtype=np.uint8)
    z = np.array([cl.pauli.z for cl in claims], dtype=np.uint8)
    s0 = [cl.s0 for cl in claims]
    errors: list[str] = [""] * len(claims)
    log.info("oracle: %d claims over %d %s runs", len(claims), len(assignments), strategy)
    for k, forcing in enumerate(assignments):
        sims: list = []
        _, rec = run(c, forcing, seed=seed + k, simulator=sims)
        member, sign = group_signs(sims[0], x, z)
        for i, cl in enumerate(claims):
            if errors[i]:
                continue
            if not member[i]:
                errors[i] = f"run {k}: {cl.pauli.label(False)} is not in the final group"
                continue
            val = int(sign[i]) * (-1) ** sum(rec.bits[m] for m in cl.support)
            if s0[i] is None:
                s0[i] = val
            elif val != s0[i]:
                errors[i] = f"run {k}: sign relation broken (expected s0={s0[i]}, got {val})"
    results = [
        ClaimResult(cl.name, not errors[i], s0[i], errors[i]) for i, cl in enumerate(claims)
    ]
    return results, len(assignments), strategy


def _oracle_checks(report: Report, results: list[ClaimResult], runs: int, strategy: str, trials: int, seed: int):
    report.oracle(trials, runs, strategy, seed)
    for res in results:
        report.check(
            f"oracle:{res.name}",
            None if strategy == "skipped" else res.ok,
            res.message or ("skipped" if strategy == "skipped" else f"s0={res.s0:+d}"),
        )
    return results


def _lowered(report: Report, c: CliffordCircuit) -> tuple[ZxDiagram, LegMap]:
    with report.timed("lower"):
        require_valid(c)
        report.check("circuit_valid", True, f"{len(c.qubits)} qubits, {len(c.slices)} slices")
        zx, legs = lower_to_zx(c)
        problems = zx.validate()
        report.check("diagram_valid", not problems, f"{len(zx.nodes)} nodes, {len(zx.edges)} edges")
    report.hashes(circuit_hash(c), zx.diagram_hash())
    return zx, legs


def verify_y(d: int, trials: int = 20, seed: int = 0) -> Report:
    """Logical X at the preparation maps to logical Y on the output."""
    report = Report("verify-y", "cclp-y", d)
    lat = build_lattice(d)
    c = cclp_y_init_circuit(d)
    zx, legs = _lowered(report, c)
    data = [lat.data_id(rc) for rc in lat.data]
    y_rep = logical_rep(lat, "Y")

    with report.timed("solve"):
        system = build_system(zx)
        try:
            web = solve(system, output_pins(legs, data, y_rep))
        except Infeasible as exc:
            report.check("web_found", False, str(exc))
            return report.finish()
        report.check("web_found", True, f"{len(web.support())} highlighted edges")
        problems = check_web(zx, web)
        report.check("web_valid", not problems, f"{len(problems)} violations")
        sig = boundary_signature(zx, legs, web)
        out = sig.output_pauli(data)
        report.check(
            "signature_is_logical_y",
            out == y_rep.unsigned(),
            f"output {out.label(False)}, weight {out.weight()}",
        )
        report.web("logical_y", web, sig)
        report.detail("y_support_weight", out.weight())

    with report.timed("propagate"):
        top = {lat.data_id((d - 1, col)) for col in range(d)}
        idx = c.index()
        placement = PauliString.from_sparse(len(c.qubits), {idx[q]: "X" for q in top})
        prop = propagate_pauli(c, placement)
        outs = c.output_qubits()
        pos = [outs.index(q) for q in data]
        final = PauliString(prop.final.x[pos], prop.final.z[pos], 0)
        report.check(
            "propagation_x_to_y",
            final == y_rep.unsigned(),
            f"logical X propagates to {final.label(False)}",
        )
        report.support("propagation", prop.outcome_support)
        report.detail("propagation_sign", prop.sign)

    with report.timed("oracle"):
        closure = Closure(c)
        claims = [
            closure.claim("logical_y", sig),
            closure.claim(
                "propagated_x",
                _sig_from_outputs(c, final, data, prop.outcome_support),
                s0=prop.sign,
            ),
        ]
        _oracle_checks(report, *oracle_check(closure, claims, trials, seed), trials, seed)
    return report.finish()


def _sig_from_outputs(c: CliffordCircuit, p: PauliString, qubits, support) -> BoundarySignature:
    outs = {q: "I" for q in c.output_qubits()}
    for i, q in enumerate(qubits):
        outs[q] = "IXZY"[int(p.x[i]) + 2 * int(p.z[i])]
    return BoundarySignature({}, outs, list(support), [])


def verify_stabilizers(d: int, scheme: str = "cclp-y", trials: int = 20, seed: int = 0) -> Report:
    """One web per plaquette operator on the outputs, each oracle-confirmed.

    The encoder also gets input-to-output logical X and Z correlators; the
    transversal initialisations get their logical Z (``init0``) or X
    (``init+``) web.
    """
    report = Report("verify-stabilizers", scheme, d)
    lat = build_lattice(d)
    c = scheme_circuit(scheme, d)
    zx, legs = _lowered(report, c)
    data = [lat.data_id(rc) for rc in lat.data]
    closure = Closure(c)
    claims: list[Claim] = []
    targets: list[tuple[str, PauliString, Optional[PauliString]]] = []
    for k, p in enumerate(lat.plaquettes):
        pin_in = PauliString.identity(len(data)) if legs.inputs else None
        targets.append((f"plaquette_{k}_{p.ptype}{p.corner[0]}_{p.corner[1]}", lat.plaquette_operator(p), pin_in))
    if scheme == "encoder":
        for which in ("X", "Z"):
            rep = logical_rep(lat, which)
            targets.append((f"logical_{which.lower()}", rep, rep))
    elif scheme in ("init0", "init+"):
        which = "Z" if scheme == "init0" else "X"
        targets.append((f"logical_{which.lower()}", logical_rep(lat, which), None))

    found = 0
    n_plaq = len(lat.plaquettes)
    with report.timed("solve"):
        system = build_system(zx)
        for name, out_p, in_p in targets:
            pins = output_pins(legs, data, out_p)
            if in_p is not None:
                pins.update(input_pins(legs, data, in_p))
            try:
                web = solve(system, pins)
            except Infeasible as exc:
                report.check(f"web:{name}", False, str(exc))
                continue
            bad = check_web(zx, web)
            sig = boundary_signature(zx, legs, web) if not bad else None
            ok = sig is not None and sig.output_pauli(data) == out_p.unsigned()
            if ok and in_p is not None:
                ok = sig.input_pauli(data) == in_p.unsigned()
            report.check(f"web:{name}", ok, f"{len(web.support())} edges" if ok else f"{bad or 'signature mismatch'}")
            if ok:
                found += name.startswith("plaquette")
                report.web(name, web, sig)
                claims.append(closure.claim(name, sig))
    report.detail("stabilizer_webs", f"{found}/{n_plaq}")

    with report.timed("oracle"):
        results, runs, strategy = oracle_check(closure, claims, trials, seed)
        _oracle_checks(report, results, runs, strategy, trials, seed)
    confirmed = sum(r.ok for r in results if r.name.startswith("plaquette"))
    if strategy != "skipped":
        report.detail("stabilizer_webs_confirmed", f"{confirmed}/{n_plaq}")
    return report.finish()


def crosscheck(
    c: CliffordCircuit,
    trials: int = 20,
    seed: int = 0,
    web: Optional[PauliWeb] = None,
    scheme: str = "file",
) -> Report:
    """Signature soundness for every basis web (and an optional supplied web)."""
    report = Report("crosscheck", scheme, c.distance)
    zx, legs = _lowered(report, c)
    closure = Closure(c)
    claims = []
    with report.timed("solve"):
        basis = web_basis(zx)
        report.detail("basis_size", len(basis))
        for k, w in enumerate(basis):
            sig = boundary_signature(zx, legs, w)
            claims.append(closure.claim(f"basis_{k}", sig))
            report.support(f"basis_{k}", sig.measurement_support)
        if web is not None:
            _supplied_web(report, zx, legs, web, closure, claims)
    with report.timed("oracle"):
        _oracle_checks(report, *oracle_check(closure, claims, trials, seed), trials, seed)
    return report.finish()


def _supplied_web(report, zx, legs, web, closure, claims):
    if web.diagram_hash != zx.diagram_hash():
        report.check(
            "web:supplied",
            False,
            str(OverlayMismatch(f"web is for diagram {web.diagram_hash}, not {zx.diagram_hash()}")),
        )
        return
    problems = check_web(zx, web)
    if problems:
        report.check("web:supplied", False, describe_violations(zx, web, problems))
        return
    sig = boundary_signature(zx, legs, web)
    report.check("web:supplied", True, f"{len(web.support())} highlighted edges")
    report.web("supplied", web, sig)
    claims.append(closure.claim("supplied", sig))


def suspect_edges(zx: ZxDiagram, web: PauliWeb, problems) -> list[int]:
    """Edges touching a violated spider; shared ones come first."""
    count: dict[int, int] = {}
    for node, _ in problems:
        if node is None:
            continue
        for e in zx.incident(node):
            count[e] = count.get(e, 0) + 1
    return sorted(count, key=lambda e: (-count[e], e))


def describe_violations(zx, web, problems) -> str:
    unknown = [msg for node, msg in problems if node is None]
    spiders = [f"spider {node} ({kind})" for node, kind in problems if node is not None]
    edges = suspect_edges(zx, web, problems)
    parts = unknown + spiders
    if edges:
        parts.append("suspect edge(s) " + ", ".join(map(str, edges)))
    return "; ".join(parts)


def load_web(path) -> PauliWeb:
    with open(path, encoding="utf-8") as fh:
        return PauliWeb.from_json(fh.read())
