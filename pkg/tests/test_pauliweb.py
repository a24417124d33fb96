import random

import numpy as np
import pytest

from foldweb import gf2
from foldweb.circuit import CliffordCircuit, QubitDecl, cz
from foldweb.errors import NotFound, WebInvalid
from foldweb.lattice import build_lattice, cclp_y_init_circuit, logical_rep
from foldweb.lowering import lower_to_zx
from foldweb.pauli import PauliString
from foldweb.pauliweb import (
    Infeasible,
    PauliWeb,
    boundary_signature,
    build_system,
    check_web,
    leg_label,
    output_pins,
    solve,
    web_basis,
)
from foldweb.propagate import propagate_pauli
from foldweb.randomcirc import random_circuit
from foldweb.tableau import contains_pauli, run
from foldweb.verify import Closure, oracle_check
from foldweb.zxgraph import Boundary, Spider, ZxDiagram


def leg_state(phase):
    zx = ZxDiagram()
    s = zx.add_node(Spider("Z", phase))
    b = zx.add_node(Boundary("out"), "boundary_leg")
    zx.add_edge(s, b)
    return zx, b


def leg_webs(zx, leg):
    return sorted(leg_label(zx, w, leg) for w in web_basis(zx))


def test_plus_state_carries_x():
    zx, b = leg_state(0)
    assert leg_webs(zx, b) == ["X"]
    with pytest.raises(Infeasible):
        solve(build_system(zx), {b: "Z"})


def test_y_state_carries_y():
    zx, b = leg_state(1)
    assert leg_webs(zx, b) == ["Y"]
    assert leg_label(zx, solve(build_system(zx), {b: "Y"}), b) == "Y"


def test_identity_wire():
    zx = ZxDiagram()
    a = zx.add_node(Boundary("in"), "boundary_leg")
    b = zx.add_node(Boundary("out"), "boundary_leg")
    zx.add_edge(a, b)
    basis = web_basis(zx)
    assert [(leg_label(zx, w, a), leg_label(zx, w, b)) for w in basis] == [("X", "X"), ("Z", "Z")]


def test_cz_gadget_flows_match_propagation():
    c = CliffordCircuit([QubitDecl(i, "data", (0, 2 * i), True, True) for i in range(2)], [[cz(0, 1)]])
    zx, legs = lower_to_zx(c)
    assert len(web_basis(zx)) == 4
    # every propagated flow has a web, and so does nothing else on the inputs
    for label in ("XI", "IX", "ZI", "IZ"):
        res = propagate_pauli(c, PauliString.from_label(label))
        pins = {legs.inputs[q]: label[q] for q in (0, 1)}
        pins.update({legs.outputs[q]: res.final.label(False)[q] for q in (0, 1)})
        solve(build_system(zx), pins)
    with pytest.raises(Infeasible):
        solve(build_system(zx), {legs.inputs[0]: "X", legs.inputs[1]: "I", legs.outputs[0]: "X", legs.outputs[1]: "I"})


def test_hadamard_swaps_colours():
    def two_spiders(had):
        zx = ZxDiagram()
        a, b = zx.add_node(Spider("Z")), zx.add_node(Spider("Z"))
        la = zx.add_node(Boundary("in"), "boundary_leg")
        lb = zx.add_node(Boundary("out"), "boundary_leg")
        zx.add_edge(la, a)
        far = zx.add_edge(b, lb)
        zx.add_edge(a, b, had)
        return zx, far

    plain, far = two_spiders(False)
    had, _ = two_spiders(True)
    plain_webs = web_basis(plain)
    assert plain_webs
    for w in plain_webs:
        x, z = w.label(far)
        moved = PauliWeb(dict(w.labels))
        moved.labels[far] = (z, x)
        assert check_web(had, moved) == []
    assert len(web_basis(had)) == len(plain_webs)


def test_pins_all_identity_give_empty_web():
    c = cclp_y_init_circuit(3)
    zx, legs = lower_to_zx(c)
    pins = {n: "I" for n in zx.nodes if zx.nodes[n].role != "internal"}
    assert solve(build_system(zx), pins).labels == {}


def test_unknown_leg():
    zx, _ = leg_state(0)
    with pytest.raises(NotFound):
        solve(build_system(zx), {0: "X"})  # node 0 is the spider, not a leg


def test_cclp_y_web():
    d = 3
    lat = build_lattice(d)
    c = cclp_y_init_circuit(d)
    zx, legs = lower_to_zx(c)
    data = [lat.data_id(rc) for rc in lat.data]
    web = solve(build_system(zx), output_pins(legs, data, logical_rep(lat, "Y")))
    assert check_web(zx, web) == []
    sig = boundary_signature(zx, legs, web)
    assert sig.output_pauli(data) == logical_rep(lat, "Y")
    assert set(sig.measurement_support) <= set(c.outcomes())
    # the anchors are the top-row data preparations
    top = {lat.data_id((d - 1, col)) for col in range(d)}
    assert {legs.prep_qubit[n] for n in sig.prep_anchors} == top


def test_single_x_is_infeasible_and_not_in_group():
    d = 3
    lat = build_lattice(d)
    c = cclp_y_init_circuit(d)
    zx, legs = lower_to_zx(c)
    data = [lat.data_id(rc) for rc in lat.data]
    single = PauliString.from_sparse(d * d, {0: "X"})
    with pytest.raises(Infeasible):
        solve(build_system(zx), output_pins(legs, data, single))
    tab, _ = run(c, {o: 0 for o in c.outcomes()})
    assert not contains_pauli(tab, single).in_group


def test_basis_dimension_and_validity():
    zx, _ = lower_to_zx(cclp_y_init_circuit(3))
    system = build_system(zx)
    basis = web_basis(zx, system)
    assert len(basis) == system.nvars - gf2.rank(system.matrix)
    assert all(check_web(zx, w) == [] for w in basis)


def test_check_web_reports_equal_constraint():
    zx = ZxDiagram()
    s = zx.add_node(Spider("Z"))
    legs = [zx.add_node(Boundary("out"), "boundary_leg") for _ in range(3)]
    edges = [zx.add_edge(s, b) for b in legs]
    web = PauliWeb({e: (1, 0) for e in edges})
    assert check_web(zx, web) == []
    web.labels[edges[1]] = (0, 0)
    assert check_web(zx, web) == [(s, "equal")]


def test_even_z_parity_is_valid():
    zx = ZxDiagram()
    s = zx.add_node(Spider("Z"))
    edges = [zx.add_edge(s, zx.add_node(Boundary("out"), "boundary_leg")) for _ in range(4)]
    assert check_web(zx, PauliWeb({edges[0]: (0, 1), edges[2]: (0, 1)})) == []
    assert check_web(zx, PauliWeb({edges[0]: (0, 1)})) == [(s, "parity")]
    assert check_web(zx, PauliWeb({99: (1, 0)})) == [(None, "unknown edge 99")]


def test_empty_web_signature():
    c = cclp_y_init_circuit(3)
    zx, legs = lower_to_zx(c)
    sig = boundary_signature(zx, legs, PauliWeb({}))
    assert set(sig.outputs.values()) == {"I"}
    assert sig.measurement_support == [] and sig.prep_anchors == []
    with pytest.raises(WebInvalid):
        boundary_signature(zx, legs, PauliWeb({0: (0, 1), 1: (1, 1)}))


def test_first_two_slices_top_row_web():
    d = 3
    lat = build_lattice(d)
    full = cclp_y_init_circuit(d)
    qs = [QubitDecl(q.id, q.role, q.coord, False, True) for q in full.qubits]
    c = CliffordCircuit(qs, full.slices[:2], d)
    zx, legs = lower_to_zx(c)
    top = {lat.data_id((d - 1, col)) for col in range(d)}
    pins = {n: ("X" if legs.prep_qubit[n] in top else "I") for n in legs.preps}
    sig = boundary_signature(zx, legs, solve(build_system(zx), pins))
    assert {legs.prep_qubit[n] for n in sig.prep_anchors} == top
    assert all(sig.outputs[q] == "X" for q in top)


def test_json_round_trip():
    zx, b = leg_state(1)
    web = solve(build_system(zx), {b: "Y"})
    back = PauliWeb.from_json(web.to_json())
    assert back.labels == web.labels and back.diagram_hash == zx.diagram_hash()


# -- properties -------------------------------------------------------------


def random_diagram(rng):
    zx = ZxDiagram()
    spiders = [zx.add_node(Spider(rng.choice("ZX"), rng.randrange(4))) for _ in range(rng.randint(1, 5))]
    for _ in range(rng.randint(0, 6)):
        a, b = rng.sample(spiders, 2) if len(spiders) > 1 else (spiders[0], None)
        if b is not None:
            zx.add_edge(a, b, rng.random() < 0.4)
    for s in spiders:
        for _ in range(rng.randint(0, 2)):
            zx.add_edge(s, zx.add_node(Boundary(rng.choice(["in", "out"])), "boundary_leg"), rng.random() < 0.3)
    return zx


def test_xor_closure():
    rng = random.Random(2)
    for _ in range(50):
        zx = random_diagram(rng)
        basis = web_basis(zx)
        if len(basis) >= 2:
            a, b = rng.sample(basis, 2)
            assert check_web(zx, a ^ b) == []


def test_solver_and_checker_agree():
    rng = random.Random(3)
    for _ in range(200):
        zx = random_diagram(rng)
        system = build_system(zx)
        legs = [n for n in zx.nodes if zx.nodes[n].role == "boundary_leg"]
        pins = {n: rng.choice("IXYZ") for n in rng.sample(legs, min(len(legs), 2))}
        try:
            assert check_web(zx, solve(system, pins)) == []
        except Infeasible:
            pass
        labels = {e: (rng.randrange(2), rng.randrange(2)) for e in zx.edges}
        v = np.zeros(system.nvars, np.uint8)
        for k, e in enumerate(system.edge_ids):
            v[2 * k], v[2 * k + 1] = labels[e]
        in_kernel = not (system.matrix.astype(int) @ v % 2).any()
        assert in_kernel == (check_web(zx, PauliWeb(labels)) == [])


def test_signature_soundness_on_random_circuits():
    rng = random.Random(8)
    for _ in range(40):
        c = random_circuit(rng.randint(1, 5), rng.randint(1, 6), rng)
        zx, legs = lower_to_zx(c)
        closure = Closure(c)
        claims = [closure.claim(f"b{k}", boundary_signature(zx, legs, w)) for k, w in enumerate(web_basis(zx))]
        results, runs, _ = oracle_check(closure, claims, 20, rng.randrange(1000))
        assert runs >= 20
        assert all(r.ok for r in results), [r.message for r in results if not r.ok]


def test_oracle_catches_a_wrong_support():
    c = cclp_y_init_circuit(3)
    lat = build_lattice(3)
    zx, legs = lower_to_zx(c)
    closure = Closure(c)
    data = [lat.data_id(rc) for rc in lat.data]
    plaq = next(p for p in lat.plaquettes if p.ptype == "X" and p.weight == 4)
    sig = boundary_signature(zx, legs, solve(build_system(zx), output_pins(legs, data, lat.plaquette_operator(plaq))))
    good = closure.claim("good", sig)
    bad = closure.claim("bad", sig)
    bad.support = [o for o in c.outcomes() if o not in sig.measurement_support][:1] + bad.support
    results, _, _ = oracle_check(closure, [good, bad], 20, 0)
    assert [r.ok for r in results] == [True, False]
