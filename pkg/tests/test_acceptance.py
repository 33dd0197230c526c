"""Acceptance gate: one test per criterion, each at its stated tolerance and time limit."""

import json
import time

import numpy as np

from meanking.designs import affine_plane, affine_resolvable_check, hadamard_design, sylvester_hadamard
from meanking.functions import all_functions, collision_set, functions_from_plane
from meanking.mub import mub_build
from meanking.protocol import (
    QUBIT_MEASUREMENT_CLASS,
    KingModel,
    build_scenario,
    king_branches,
    king_models,
    prepare,
    run_game,
    simulate,
    verify_exhaustive,
)
from meanking.realization import hadamard8_realization, incidence_realization, mub_realization
from meanking.reconstruction import point_coefficients, psi_function_basis, psi_function_vector, psi_point_basis

TOL = 1e-9


def all_realizations():
    out = [(f"AG(2,{q})", incidence_realization(*affine_plane(q))) for q in (2, 3, 4, 5, 7, 8, 9)]
    out += [(f"H{2**k}", incidence_realization(*hadamard_design(sylvester_hadamard(k)))) for k in (2, 3, 4)]
    out += [("H8 qubits", hadamard8_realization())]
    out += [(f"MUB{n}", mub_realization(*affine_plane(n), mub_build(n))) for n in (2, 3, 5, 7, 9)]
    return out


def test_ac1_probability_table(criterion):
    criterion("AC1 order-two probability table")
    t0 = time.perf_counter()
    mubs = mub_build(2)
    fs = functions_from_plane(*affine_plane(2))
    assert [f.values for f in fs] == [(1, 1, 1), (1, 2, 2), (2, 1, 2), (2, 2, 1)]
    basis = psi_function_basis(mubs, fs)
    v = mubs.vec(2, 0)  # a=2, b=1
    probs = np.abs(basis.vectors.conj() @ np.kron(v, v.conj())) ** 2
    elapsed = time.perf_counter() - t0
    criterion("AC1 order-two probability table", f"probs={np.round(probs, 12).tolist()} {elapsed:.3f}s")
    assert np.abs(probs - [0.5, 0, 0, 0.5]).max() < TOL
    assert elapsed < 1


def test_ac2_inner_product_formula(criterion):
    t0 = time.perf_counter()
    worst, pairs = 0.0, 0
    for n in (2, 3):
        mubs = mub_build(n)
        fs = all_functions(n)
        vecs = np.array([psi_function_vector(mubs, f) for f in fs])
        gram = vecs.conj() @ vecs.T
        delta = np.array([[len(collision_set(f, g)) for g in fs] for f in fs])
        worst = max(worst, float(np.abs(gram - (delta - 1) / n).max()))
        pairs += len(fs) ** 2
    elapsed = time.perf_counter() - t0
    criterion("AC2 inner-product formula", f"{pairs} pairs, max dev {worst:.2e}, {elapsed:.2f}s")
    assert pairs == 64 + 6561
    assert worst < TOL
    assert elapsed < 10


def test_ac3_function_basis_exhaustive(criterion):
    t0 = time.perf_counter()
    summary = []
    for n in (2, 3, 5, 7, 9):
        sc = build_scenario("function", order=n)
        rep = verify_exhaustive(sc.real, sc.basis, sc.models)
        summary.append((n, rep.branches, len(rep.failures)))
        assert rep.ok, (n, rep.failures[:3])
    elapsed = time.perf_counter() - t0
    criterion("AC3 mub-factor King exhaustive", f"(n, branches, failures)={summary} {elapsed:.2f}s")
    assert elapsed < 30


def test_ac4_parameter_relations(criterion):
    t0 = time.perf_counter()
    designs = [affine_plane(q) for q in (2, 3, 4, 5, 7, 8, 9)]
    designs += [hadamard_design(sylvester_hadamard(k)) for k in (2, 3, 4)]
    for d, res in designs:
        rep = affine_resolvable_check(d, res)
        v, b, r, k, lam = d.params.as_tuple()
        assert rep.m * v == k * k
        assert lam * (v - k) == k * (k - 1)
        assert r == k + lam
        assert b == v + r - 1
    elapsed = time.perf_counter() - t0
    criterion("AC4 affine parameter relations", f"{len(designs)} designs, {elapsed:.3f}s")
    assert elapsed < 1


def test_ac5_point_bases(criterion):
    t0 = time.perf_counter()
    worst = 0.0
    reals = [incidence_realization(*affine_plane(q)) for q in (2, 3, 4, 5, 7, 8, 9)]
    reals += [incidence_realization(*hadamard_design(sylvester_hadamard(k))) for k in (2, 3, 4)]
    for real in reals:
        basis = psi_point_basis(real)
        g = basis.vectors.conj() @ basis.vectors.T
        worst = max(worst, float(np.abs(g - np.eye(len(g))).max()))
        v, _, r, k, _ = real.design.params.as_tuple()
        assert abs(basis.alpha - (r - 1) * np.sqrt(k) / v) < TOL
        assert abs(basis.beta - 1 / np.sqrt(k)) < TOL
    h8 = psi_point_basis(hadamard8_realization())
    elapsed = time.perf_counter() - t0
    criterion("AC5 point bases orthonormal", f"max Gram dev {worst:.2e}, H8 alpha={h8.alpha} beta={h8.beta}, {elapsed:.3f}s")
    assert worst < TOL
    assert (h8.alpha, h8.beta) == (1.5, 0.5)
    assert elapsed < 1


def test_ac6_point_support_value(criterion):
    t0 = time.perf_counter()
    pattern_ok, value_misses, observed = True, [], {}
    for name, real in all_realizations():
        basis = psi_point_basis(real)
        ov = np.abs(basis.vectors.conj() @ real.vectors.T)  # (p, B)
        inc = real.design.incidence().T.astype(bool)
        pattern_ok &= bool(np.all(ov[~inc] < TOL))
        v, k = real.design.v, real.design.k
        stated = np.sqrt(k) / v
        observed[name] = round(float(ov[inc].mean()), 6)
        if np.abs(ov[inc] - stated).max() >= TOL:
            value_misses.append(f"{name}: {observed[name]} vs {stated:.6g}")
    elapsed = time.perf_counter() - t0
    criterion(
        "AC6 point support |<psi_p|B>| = sqrt(k)/v",
        f"zero-pattern ok={pattern_ok}; nonzero value matches sqrt(k)/v in "
        f"{len(observed) - len(value_misses)}/{len(observed)} realizations (observed 1/sqrt(k), e.g. {value_misses[:2]}) {elapsed:.2f}s",
    )
    assert pattern_ok
    assert elapsed < 5
    assert not value_misses, value_misses


def test_ac7_three_qubit_scenario(criterion):
    t0 = time.perf_counter()
    real = hadamard8_realization()
    basis = psi_point_basis(real)
    phi = prepare(real)
    want = np.zeros(8)
    want[[0b000, 0b011, 0b101, 0b110]] = 0.5
    assert np.abs(phi - want).max() < TOL
    for (qubit, tag), cls in QUBIT_MEASUREMENT_CLASS.items():
        branches = king_branches(phi, KingModel("qubit-local", qubit=qubit, basis=tag), real)
        assert [br.block for br in branches] == [2 * (cls - 1), 2 * (cls - 1) + 1]
    assert {QUBIT_MEASUREMENT_CLASS[(q, "h")] for q in (1, 2, 3)} == {4}
    tr = run_game(real, basis, KingModel("qubit-local", qubit=2, basis="h"), seed=0, king_outcome=1)
    assert {p + 1 for p in real.design.blocks[tr.king_block]} == {5, 6, 7, 8}
    assert basis.labels[tr.alice_index] + 1 in {5, 6, 7, 8}
    assert tr.predicted_block == 7 and tr.success  # B_4^-
    rep = verify_exhaustive(real, basis, king_models(real, "qubit-local"))
    elapsed = time.perf_counter() - t0
    criterion("AC7 three-qubit scenario", f"{rep.measurements} measurements, {rep.branches} branches, {len(rep.failures)} failures, {elapsed:.3f}s")
    assert rep.ok and (rep.measurements, rep.branches) == (9, 72)
    assert elapsed < 1


def test_ac8_class_state_independent(criterion):
    t0 = time.perf_counter()
    worst = 0.0
    reals = all_realizations()
    for _, real in reals:
        states = np.array([real.class_state(c) for c in range(len(real.res.classes))])
        worst = max(worst, float(np.abs(states - states[0]).max()))
    elapsed = time.perf_counter() - t0
    criterion("AC8 prepared state basis-independent", f"{len(reals)} realizations, max dev {worst:.2e}, {elapsed:.3f}s")
    assert worst < TOL
    assert elapsed < 1


MC_SCENARIOS = [
    ("hadamard8", {}),
    ("affine", {"order": 3}),
    ("hadamard", {"k": 3}),
    ("function", {"order": 2}),
    ("function", {"order": 3}),
]


def test_ac9_monte_carlo(criterion):
    t0 = time.perf_counter()
    rates = []
    seed = 2024
    for name, params in MC_SCENARIOS:
        sc = build_scenario(name, **params)
        first = "\n".join(json.dumps(t.to_json()) for t in simulate(sc, seed=seed, trials=10_000))
        again = "\n".join(json.dumps(t.to_json()) for t in simulate(sc, seed=seed, trials=10_000))
        assert first == again
        lines = first.splitlines()
        rate = sum(json.loads(x)["success"] for x in lines) / len(lines)
        rates.append((name, params.get("order", params.get("k")), rate))
        assert len(lines) == 10_000 and rate == 1.0
    elapsed = time.perf_counter() - t0
    criterion("AC9 seeded Monte-Carlo", f"success rates {rates}, repeats byte-identical, {elapsed:.1f}s")
    assert elapsed < 30
