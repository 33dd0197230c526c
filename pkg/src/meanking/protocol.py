"""End-to-end simulation of the retrodiction game.

Alice prepares the class-sum state, the King measures (abstractly, on the
first tensor factor, or on one qubit), Alice measures in her reconstruction
basis, the King reveals the class, and Alice names the block.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .algebra import EPS, IntegrityError
from .designs import affine_plane, block_containing, hadamard_design, sylvester_hadamard
from .functions import functions_from_plane
from .mub import mub_build
from .realization import Realization, hadamard8_realization, incidence_realization, mub_realization
from .reconstruction import ReconstructionBasis, psi_function_basis, psi_point_basis

KING_KINDS = ("abstract", "mub-factor", "qubit-local")

# (qubit, basis tag) -> 1-based class C_i of the H_8 design; outcome 0 -> B_i^+, 1 -> B_i^-
QUBIT_MEASUREMENT_CLASS = {
    (1, "s"): 1,
    (2, "s"): 2,
    (3, "s"): 3,
    (1, "h"): 4,
    (2, "h"): 4,
    (3, "h"): 4,
    (1, "u"): 5,
    (2, "u"): 6,
    (3, "u"): 7,
}

_S2 = 1 / np.sqrt(2)
QUBIT_BASES = {
    "s": np.array([[1, 0], [0, 1]], dtype=np.complex128),
    "h": np.array([[_S2, _S2], [_S2, -_S2]], dtype=np.complex128),
    "u": np.array([[_S2, 1j * _S2], [_S2, -1j * _S2]], dtype=np.complex128),
}


@dataclass(frozen=True)
class KingModel:
    kind: str
    class_index: int | None = None  # abstract: class; mub-factor: basis a
    qubit: int | None = None  # 1..3, qubit 1 leftmost
    basis: str | None = None  # "s", "h" or "u"

    def __post_init__(self):
        if self.kind not in KING_KINDS:
            raise ValueError(f"unknown King model {self.kind!r}")
        if self.kind == "qubit-local":
            if self.qubit not in (1, 2, 3) or self.basis not in QUBIT_BASES:
                raise ValueError(f"bad qubit-local measurement ({self.qubit}, {self.basis})")
        elif self.class_index is None or self.class_index < 0:
            raise ValueError(f"{self.kind} King needs a nonnegative class index")

    @property
    def revealed_class(self) -> int:
        if self.kind == "qubit-local":
            return QUBIT_MEASUREMENT_CLASS[(self.qubit, self.basis)] - 1
        return self.class_index

    @property
    def label(self) -> str:
        if self.kind == "qubit-local":
            return f"qubit-local:M_{self.qubit},{self.basis}"
        if self.kind == "mub-factor":
            return f"mub-factor:a={self.class_index}"
        return f"abstract:class={self.class_index}"


@dataclass(frozen=True)
class KingBranch:
    outcome: int
    block: int
    probability: float
    post_state: np.ndarray = field(repr=False)


@dataclass
class Transcript:
    seed: int | None
    model: KingModel
    prepared: np.ndarray = field(repr=False)
    king_class: int
    king_outcome: int
    king_block: int
    post_state: np.ndarray = field(repr=False)
    alice_index: int
    revealed_class: int
    predicted_block: int
    success: bool

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "model": self.model.label,
            "king_class": self.king_class,
            "king_outcome": self.king_outcome,
            "king_block": self.king_block,
            "alice_index": self.alice_index,
            "predicted_block": self.predicted_block,
            "success": self.success,
        }


def prepare(real: Realization, class_index: int = 0) -> np.ndarray:
    """(1/sqrt|C|) sum_{B in C} |B>."""
    state = real.class_state(class_index)
    if abs(np.linalg.norm(state) - 1) > EPS:
        raise IntegrityError(f"prepared state has norm {np.linalg.norm(state)}")
    return state


@lru_cache(maxsize=None)
def qubit_projector(qubit: int, tag: str, outcome: int) -> np.ndarray:
    """Rank-4 projector on C^8 measuring ``qubit`` in basis ``tag``."""
    v = QUBIT_BASES[tag][outcome]
    local = np.outer(v, v.conj())
    mats = [np.eye(2)] * 3
    mats[qubit - 1] = local
    proj = np.kron(np.kron(mats[0], mats[1]), mats[2])
    proj.setflags(write=False)
    return proj


def _match_block(real: Realization, post: np.ndarray) -> int:
    overlaps = np.abs(real.vectors.conj() @ post)
    hits = np.flatnonzero(overlaps > 1 - EPS)
    if len(hits) != 1:
        raise IntegrityError(f"post-measurement state matches {len(hits)} block vectors")
    return int(hits[0])


def king_branches(state: np.ndarray, model: KingModel, real: Realization) -> list[KingBranch]:
    """All King outcomes with probability > EPS."""
    out = []
    if model.kind == "abstract":
        members = real.res.classes[model.class_index]
        amps = real.vectors[list(members)].conj() @ state
        probs = np.abs(amps) ** 2
        if abs(probs.sum() - 1) > EPS:
            raise IntegrityError(f"class {model.class_index} outcome probabilities sum to {probs.sum()}")
        for b, (blk, pr) in enumerate(zip(members, probs)):
            if pr > EPS:
                out.append(KingBranch(b, blk, float(pr), real.vectors[blk].copy()))
        return out

    if model.kind == "mub-factor":
        if real.mubs is None:
            raise ValueError("mub-factor King needs a MUB realization")
        n = real.mubs.q
        psi = state.reshape(n, n)
        total = 0.0
        for b in range(n):
            v = real.mubs.vec(model.class_index, b)
            # (|v><v| (x) I) psi
            post = np.kron(v, v.conj() @ psi)
            pr = float(np.vdot(post, post).real)
            total += pr
            if pr > EPS:
                post = post / np.sqrt(pr)
                blk = _match_block(real, post)
                if blk != real.res.classes[model.class_index][b]:
                    raise IntegrityError(f"outcome {b} of basis {model.class_index} collapsed onto block {blk}")
                out.append(KingBranch(b, blk, pr, post))
    else:
        if real.dim != 8:
            raise ValueError("qubit-local King needs a three-qubit realization")
        cls = model.revealed_class
        total = 0.0
        for b in (0, 1):
            post = qubit_projector(model.qubit, model.basis, b) @ state
            pr = float(np.vdot(post, post).real)
            total += pr
            if pr > EPS:
                post = post / np.sqrt(pr)
                blk = _match_block(real, post)
                if blk != real.res.classes[cls][b]:
                    raise IntegrityError(f"{model.label} outcome {b} collapsed onto block {blk}, outside its class")
                out.append(KingBranch(b, blk, pr, post))
    if abs(total - 1) > EPS:
        raise IntegrityError(f"{model.label} outcome probabilities sum to {total}")
    return out


def _pick(rng: np.random.Generator, probs: Sequence[float]) -> int:
    cum = np.cumsum(probs)
    return min(int(np.searchsorted(cum, rng.random() * cum[-1], side="right")), len(cum) - 1)


def king_measure(
    state: np.ndarray,
    model: KingModel,
    real: Realization,
    rng: np.random.Generator | None = None,
    outcome: int | None = None,
) -> KingBranch:
    """Sample one King outcome, or force ``outcome`` (which must have nonzero probability)."""
    branches = king_branches(state, model, real)
    if outcome is not None:
        for br in branches:
            if br.outcome == outcome:
                return br
        raise ValueError(f"outcome {outcome} of {model.label} has zero probability")
    rng = rng if rng is not None else np.random.default_rng(0)
    return branches[_pick(rng, [br.probability for br in branches])]


def alice_branches(state: np.ndarray, basis: ReconstructionBasis) -> list[tuple[int, float]]:
    if state.shape[0] != basis.dim:
        raise ValueError(f"state dimension {state.shape[0]} != basis dimension {basis.dim}")
    probs = np.abs(basis.vectors.conj() @ state) ** 2
    if abs(probs.sum() - 1) > EPS:
        raise IntegrityError(f"Alice's outcome probabilities sum to {probs.sum()}")
    return [(int(i), float(probs[i])) for i in np.flatnonzero(probs > EPS)]


def alice_measure(state: np.ndarray, basis: ReconstructionBasis, rng: np.random.Generator | None = None) -> int:
    branches = alice_branches(state, basis)
    rng = rng if rng is not None else np.random.default_rng(0)
    return branches[_pick(rng, [p for _, p in branches])][0]


def predict(observed: int, revealed_class: int, real: Realization, basis: ReconstructionBasis) -> int:
    """Block of the revealed class singled out by Alice's outcome."""
    if basis.kind == "point":
        return block_containing(real.design, real.res, revealed_class, basis.labels[observed])
    f = basis.labels[observed]
    return real.res.classes[revealed_class][f(revealed_class) - 1]


def game_tree(
    real: Realization, basis: ReconstructionBasis, model: KingModel, prepare_class: int = 0
) -> tuple[np.ndarray, list[KingBranch], list[list[tuple[int, float]]]]:
    """Prepared state, King branches, and Alice's branches after each King outcome."""
    phi = prepare(real, prepare_class)
    kb = king_branches(phi, model, real)
    return phi, kb, [alice_branches(br.post_state, basis) for br in kb]


def _play(tree, real, basis, model, seed, king_outcome=None) -> Transcript:
    phi, kb, ab = tree
    rng = np.random.default_rng(seed)
    if king_outcome is None:
        i = _pick(rng, [br.probability for br in kb])
    else:
        hits = [i for i, br in enumerate(kb) if br.outcome == king_outcome]
        if not hits:
            raise ValueError(f"outcome {king_outcome} of {model.label} has zero probability")
        i = hits[0]
    king = kb[i]
    seen = ab[i][_pick(rng, [p for _, p in ab[i]])][0]
    revealed = model.revealed_class
    guess = predict(seen, revealed, real, basis)
    return Transcript(
        seed=seed,
        model=model,
        prepared=phi,
        king_class=revealed,
        king_outcome=king.outcome,
        king_block=king.block,
        post_state=king.post_state,
        alice_index=seen,
        revealed_class=revealed,
        predicted_block=guess,
        success=guess == king.block,
    )


def run_game(
    real: Realization,
    basis: ReconstructionBasis,
    model: KingModel,
    seed: int | None = 0,
    prepare_class: int = 0,
    king_outcome: int | None = None,
) -> Transcript:
    return _play(game_tree(real, basis, model, prepare_class), real, basis, model, seed, king_outcome)


@dataclass
class VerificationReport:
    measurements: int
    branches: int
    failures: list[dict]
    support_violations: int
    max_probability_error: float
    reachable: frozenset[tuple[int, int]]  # (King block, Alice index)

    @property
    def ok(self) -> bool:
        return not self.failures and self.support_violations == 0

    def to_json(self) -> dict:
        return {
            "measurements": self.measurements,
            "branches": self.branches,
            "failures": self.failures,
            "support_violations": self.support_violations,
            "max_probability_error": self.max_probability_error,
            "success_probability": 1.0 if self.ok else None,
        }


def _verify_one(real, basis, phi, model):
    leaves, fails, bad_support, perr = 0, [], 0, 0.0
    reach = set()
    kb = king_branches(phi, model, real)
    perr = max(perr, abs(sum(b.probability for b in kb) - 1))
    for br in kb:
        ab = alice_branches(br.post_state, basis)
        perr = max(perr, abs(sum(p for _, p in ab) - 1))
        for idx, _ in ab:
            leaves += 1
            reach.add((br.block, idx))
            if basis.kind == "point" and basis.labels[idx] not in real.design.blocks[br.block]:
                bad_support += 1
            guess = predict(idx, model.revealed_class, real, basis)
            if guess != br.block:
                fails.append({"model": model.label, "king_block": br.block, "alice_index": idx, "predicted_block": guess})
    return leaves, fails, bad_support, perr, reach


def verify_exhaustive(
    real: Realization,
    basis: ReconstructionBasis,
    models: Sequence[KingModel],
    prepare_class: int = 0,
    parallel: bool = False,
) -> VerificationReport:
    """Walk every King choice, every King outcome and every Alice outcome."""
    phi = prepare(real, prepare_class)
    if parallel:
        with ThreadPoolExecutor() as pool:
            parts = list(pool.map(lambda m: _verify_one(real, basis, phi, m), models))
    else:
        parts = [_verify_one(real, basis, phi, m) for m in models]
    reach: set = set()
    for part in parts:
        reach |= part[4]
    return VerificationReport(
        measurements=len(models),
        branches=sum(p[0] for p in parts),
        failures=[f for p in parts for f in p[1]],
        support_violations=sum(p[2] for p in parts),
        max_probability_error=max((p[3] for p in parts), default=0.0),
        reachable=frozenset(reach),
    )


def king_models(real: Realization, kind: str) -> list[KingModel]:
    if kind == "qubit-local":
        return [KingModel("qubit-local", qubit=k, basis=t) for t in "shu" for k in (1, 2, 3)]
    if kind == "mub-factor" and real.mubs is None:
        raise ValueError("mub-factor King needs a MUB realization")
    return [KingModel(kind, class_index=c) for c in range(len(real.res.classes))]


SCENARIOS = ("affine", "hadamard", "hadamard8", "function", "mub-point")


@dataclass(frozen=True)
class Scenario:
    name: str
    real: Realization
    basis: ReconstructionBasis
    models: tuple[KingModel, ...]


def build_scenario(name: str, order: int | None = None, k: int | None = None, class_index: int = 0) -> Scenario:
    """Named configurations.

    affine      incidence realization of AG(2, order), point basis, abstract King
    hadamard    incidence realization of the H_{2^k} design, point basis, abstract King
    hadamard8   three-qubit realization, point basis, qubit-local King
    function    MUB realization of AG(2, order), function basis, mub-factor King
    mub-point   MUB realization of AG(2, order), point basis, mub-factor King
    """
    if name == "affine":
        real = incidence_realization(*affine_plane(_need(order, "order")))
        basis, kind = psi_point_basis(real, class_index), "abstract"
    elif name == "hadamard":
        real = incidence_realization(*hadamard_design(sylvester_hadamard(_need(k, "k"))))
        basis, kind = psi_point_basis(real, class_index), "abstract"
    elif name == "hadamard8":
        real = hadamard8_realization()
        basis, kind = psi_point_basis(real, class_index), "qubit-local"
    elif name in ("function", "mub-point"):
        n = _need(order, "order")
        plane, res = affine_plane(n)
        mubs = mub_build(n)
        real = mub_realization(plane, res, mubs)
        if name == "function":
            basis = psi_function_basis(mubs, functions_from_plane(plane, res))
        else:
            basis = psi_point_basis(real, class_index)
        kind = "mub-factor"
    else:
        raise ValueError(f"unknown scenario {name!r}; choose from {', '.join(SCENARIOS)}")
    return Scenario(name, real, basis, tuple(king_models(real, kind)))


def _need(value, what):
    if value is None:
        raise ValueError(f"scenario needs --{what}")
    return value


def simulate(scenario: Scenario, seed: int = 0, trials: int = 1) -> Iterator[Transcript]:
    """``trials`` games; each draws a King measurement and a game seed from ``seed``.

    Game trees are cached per King measurement, so transcripts equal those of
    ``run_game`` with the drawn seed.
    """
    master = np.random.default_rng(seed)
    trees: dict[KingModel, tuple] = {}
    for _ in range(trials):
        model = scenario.models[int(master.integers(len(scenario.models)))]
        game_seed = int(master.integers(2**63 - 1))
        if model not in trees:
            trees[model] = game_tree(scenario.real, scenario.basis, model)
        yield _play(trees[model], scenario.real, scenario.basis, model, game_seed)
