"""On-disk JSON caches for Brandt modules and Hecke algebra summaries.

Files are keyed by (p, q), written atomically (temp file + rename) and
re-verified on load.
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

from .brandt import BrandtModule, IdealClassSet, RightIdeal, eichler_mass
from .linalg import IntMatrix
from .quaternion import QLattice, QuaternionAlgebra, norm_gram

FORMAT = 1


class CacheError(ValueError):
    pass


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def atomic_write(path: Path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=path.name + ".", suffix=".tmp", dir=path.parent)
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def brandt_path(cache_dir, p: int, q: int) -> Path:
    return Path(cache_dir) / f"brandt-{p}-{q}.json"


def hecke_path(cache_dir, p: int, q: int) -> Path:
    return Path(cache_dir) / f"hecke-{p}-{q}.json"


def brandt_to_json(B: BrandtModule) -> dict:
    reps = B.classes.representatives
    return {
        "format": FORMAT,
        "p": B.p,
        "q": B.q,
        "algebra": [B.algebra.a, B.algebra.b],
        "maximalOrder": B.maximal_order.to_json(),
        "order": B.order.to_json(),
        "ideals": [{"lattice": I.lattice.to_json(), "norm": str(I.norm)} for I in reps],
        "weights": list(B.weights),
        "grams": [g.to_json() for g in B.classes.grams],
        "brandt": {str(n): m.to_json() for n, m in sorted(B._hecke.items())},
    }


def brandt_from_json(obj: dict) -> BrandtModule:
    if obj.get("format") != FORMAT:
        raise CacheError("unknown cache format")
    p, q = int(obj["p"]), int(obj["q"])
    alg = QuaternionAlgebra(*obj["algebra"])
    reps = tuple(RightIdeal(QLattice.from_json(d["lattice"]), int(d["norm"])) for d in obj["ideals"])
    grams = tuple(IntMatrix.from_json(g) for g in obj["grams"])
    weights = tuple(int(w) for w in obj["weights"])
    classes = IdealClassSet(reps, weights, grams)
    if classes.mass() != eichler_mass(p, q):
        raise CacheError(f"mass {classes.mass()} != {eichler_mass(p, q)}")
    for I, g in zip(reps, grams):
        if IntMatrix(norm_gram(alg, I.lattice, I.norm)) != g:
            raise CacheError("stored Gram matrix does not match its ideal")
    B = BrandtModule(p, q, classes, algebra=alg, order=QLattice.from_json(obj["order"]),
                     maximal=QLattice.from_json(obj["maximalOrder"]))
    for n, m in obj["brandt"].items():
        B._hecke[int(n)] = IntMatrix.from_json(m)
    if 1 in B._hecke and B._hecke[1] != IntMatrix.identity(B.rank):
        raise CacheError("stored B(1) is not the identity")
    return B


def save_brandt(B: BrandtModule, cache_dir) -> Path:
    path = brandt_path(cache_dir, B.p, B.q)
    atomic_write(path, dumps(brandt_to_json(B)))
    return path


def load_brandt(cache_dir, p: int, q: int) -> BrandtModule:
    path = brandt_path(cache_dir, p, q)
    try:
        obj = json.loads(path.read_text())
    except json.JSONDecodeError as e:
        raise CacheError(f"{path}: {e}") from e
    if (int(obj.get("p", -1)), int(obj.get("q", -1))) != (p, q):
        raise CacheError(f"{path} holds a different (p, q)")
    return brandt_from_json(obj)
