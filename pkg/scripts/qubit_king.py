"""Three-qubit game: measurement-to-block table, Alice's basis and a sample game."""

from __future__ import annotations

import numpy as np

from meanking.protocol import QUBIT_MEASUREMENT_CLASS, KingModel, king_branches, prepare, run_game
from meanking.realization import hadamard8_realization
from meanking.reconstruction import psi_point_basis


def ket_string(vec: np.ndarray) -> str:
    terms = []
    for i, amp in enumerate(vec):
        if abs(amp) > 1e-9:
            terms.append(f"({amp.real:+.3f}{amp.imag:+.3f}j)|{i:03b}>")
    return " ".join(terms)


def block_name(i: int) -> str:
    return f"B{i // 2 + 1}{'+-'[i % 2]}"


def main() -> None:
    real = hadamard8_realization()
    phi = prepare(real)
    print("prepared:", ket_string(phi))
    print("\nmeasurement  outcome 0  outcome 1")
    for (q, tag), cls in sorted(QUBIT_MEASUREMENT_CLASS.items(), key=lambda kv: (kv[1], kv[0])):
        blocks = [block_name(br.block) for br in king_branches(phi, KingModel("qubit-local", qubit=q, basis=tag), real)]
        print(f"M_{q},{tag}        {blocks[0]:<10} {blocks[1]}")
    basis = psi_point_basis(real)
    print(f"\nalpha={basis.alpha} beta={basis.beta}")
    for p, vec in zip(basis.labels, basis.vectors):
        print(f"psi_{p + 1} = {ket_string(vec)}")
    tr = run_game(real, basis, KingModel("qubit-local", qubit=2, basis="h"), seed=0, king_outcome=1)
    print(
        f"\nqubit 2, Hadamard basis, outcome 1: state {block_name(tr.king_block)}, "
        f"Alice sees p={basis.labels[tr.alice_index] + 1}, predicts {block_name(tr.predicted_block)}"
    )


if __name__ == "__main__":
    main()
