"""JSON shapes for designs, MUB families, realizations, bases and reports."""

from __future__ import annotations

import numpy as np

from .algebra import from_pairs
from .designs import (
    DesignError,
    IncidenceDesign,
    Resolution,
    plane_point_label,
    verify_design,
    verify_resolution,
)
from .functions import CollisionFunction
from .mub import MubFamily
from .realization import Realization
from .reconstruction import ReconstructionBasis


def _pairs(arr: np.ndarray) -> list:
    arr = np.asarray(arr, dtype=np.complex128)
    return np.stack([arr.real, arr.imag], axis=-1).tolist()


def design_to_json(design: IncidenceDesign, res: Resolution | None = None, labels: str | None = None) -> dict:
    """``labels``: None, "plane" (1-indexed (x, y)) or "one-based"."""
    out: dict = {"v": design.v, "blocks": [list(b) for b in design.blocks]}
    if res is not None:
        out["classes"] = [list(c) for c in res.classes]
    out["params"] = design.params.as_dict()
    if labels == "plane":
        q = int(round(design.v**0.5))
        out["point_labels"] = [list(plane_point_label(p, q)) for p in range(design.v)]
    elif labels == "one-based":
        out["point_labels"] = [p + 1 for p in range(design.v)]
    return out


def design_from_json(data: dict) -> tuple[IncidenceDesign, Resolution | None]:
    design = verify_design(int(data["v"]), data["blocks"])
    params = data.get("params")
    if params is not None and params != design.params.as_dict():
        raise DesignError(f"declared params {params} differ from computed {design.params.as_dict()}")
    res = verify_resolution(design, data["classes"]) if data.get("classes") is not None else None
    return design, res


def mub_to_json(family: MubFamily) -> dict:
    return {"q": family.q, "bases": _pairs(family.bases)}


def mub_from_json(data: dict) -> MubFamily:
    return MubFamily(int(data["q"]), from_pairs(data["bases"]))


def realization_to_json(real: Realization) -> dict:
    out = design_to_json(real.design, real.res)
    out["kind"] = real.kind
    out["vectors"] = _pairs(real.vectors)
    if real.mubs is not None:
        out["mubs"] = mub_to_json(real.mubs)
    return out


def realization_from_json(data: dict) -> Realization:
    design, res = design_from_json(data)
    if res is None:
        raise DesignError("realization JSON needs parallel classes")
    vecs = from_pairs(data["vectors"])
    if vecs.shape[0] != design.b:
        raise DesignError(f"{vecs.shape[0]} vectors for {design.b} blocks")
    mubs = mub_from_json(data["mubs"]) if "mubs" in data else None
    return Realization(design, res, vecs, kind=data.get("kind", "custom"), mubs=mubs)


def basis_to_json(basis: ReconstructionBasis, real: Realization | None = None) -> dict:
    """Design fields of ``real`` (when given) plus the basis vectors and index labels."""
    out = design_to_json(real.design, real.res) if real is not None else {}
    labels = [list(f.values) if isinstance(f, CollisionFunction) else int(f) for f in basis.labels]
    out.update(
        {
            "vectors": _pairs(basis.vectors),
            "alpha": basis.alpha,
            "beta": basis.beta,
            "class_index": basis.class_index,
            "index": [basis.kind, *labels],
        }
    )
    return out


def basis_from_json(data: dict) -> ReconstructionBasis:
    kind, *labels = data["index"]
    if kind == "function":
        labels = [CollisionFunction(tuple(int(x) for x in f)) for f in labels]
    elif kind == "point":
        labels = [int(p) for p in labels]
    else:
        raise ValueError(f"unknown basis index kind {kind!r}")
    return ReconstructionBasis(
        from_pairs(data["vectors"]),
        kind,
        tuple(labels),
        alpha=data.get("alpha"),
        beta=data.get("beta"),
        class_index=data.get("class_index"),
    )
