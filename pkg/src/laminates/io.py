"""JSON encoding of matrices, trees, forests and certificates.

Exact scalars are written as strings ("3", "-1/16"); floats as JSON numbers.
Decoding accepts both, plus integers, and reports the JSON path of anything
malformed.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Any, Optional

from .mat2 import Mat2, Vec2, is_exact
from .measures import AtomicMeasure, Leaf, MeasureForest, Split, SplittingTree, cube_weights
from .periodic import PeriodicDeformation, SawtoothMode

SCHEMA_VERSION = 1


class InputError(ValueError):
    def __init__(self, path: str, msg: str):
        super().__init__(f"{path}: {msg}")
        self.path = path


# -- encoding -------------------------------------------------------------

def enc_scalar(v, floats: bool = False):
    if v is None:
        return None
    if floats or not is_exact(v):
        return float(v)
    return str(Fraction(v))


def enc_mat(X: Mat2, floats: bool = False):
    return [[enc_scalar(e, floats) for e in row] for row in X.rows]


def enc_node(nd, floats: bool = False):
    if isinstance(nd, Leaf):
        return {"leaf": enc_mat(nd.point, floats)}
    return {"point": enc_mat(nd.point, floats), "lambda": enc_scalar(nd.lam, floats),
            "left": enc_node(nd.left, floats), "right": enc_node(nd.right, floats)}


def enc_tree(t: SplittingTree, floats: bool = False):
    return enc_node(t.root, floats)


def enc_forest(f: MeasureForest, floats: bool = False):
    return {"components": [{"weight": enc_scalar(w, floats), "tree": enc_tree(t, floats)}
                           for w, t in f.components]}


def enc_measure(m: AtomicMeasure, floats: bool = False):
    return [{"point": enc_mat(X, floats), "weight": enc_scalar(w, floats)} for X, w in m.atoms]


def enc_certificate(cert, floats: bool = False) -> dict:
    from .periodic import sign_str

    fr = cert.frame
    s = lambda v: enc_scalar(v, floats)  # noqa: E731
    out = {
        "schema_version": SCHEMA_VERSION,
        "kind": "laminate-certificate",
        "frame": {"C1": enc_mat(fr.C[0], floats), "C2": enc_mat(fr.C[1], floats),
                  "C3": enc_mat(fr.C[2], floats), "normalization": fr.record()},
        "case": cert.case,
        "ratio": s(cert.ratio),
        "target_ratio": s(cert.target_ratio),
        "alpha": s(cert.alpha),
        "beta": s(cert.beta),
        "component_ratios": [s(v) for v in cert.component_ratios],
        "roles": list(cert.roles) if cert.roles is not None else None,
        "mirrored": cert.mirrored,
        "order": cert.forest.order,
        "forest": enc_forest(cert.forest, floats),
        "flattened": enc_measure(cert.flattened, floats),
    }
    try:
        w = cube_weights(cert.flattened, fr.vertices())
        out["sign_weights"] = {sign_str(e): s(v) for e, v in w.items()}
    except ValueError:
        out["sign_weights"] = None  # coinciding vertices: labels are ambiguous
    return out


# -- decoding -------------------------------------------------------------

def dec_scalar(v, path: str = "$"):
    if isinstance(v, bool):
        raise InputError(path, "expected a number, got a boolean")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, float):
        return Fraction(repr(v))
    if isinstance(v, str):
        try:
            return Fraction(v.strip())
        except (ValueError, ZeroDivisionError):
            raise InputError(path, f"not a rational number: {v!r}") from None
    raise InputError(path, f"expected a number, got {type(v).__name__}")


def dec_mat(v, path: str = "$") -> Mat2:
    if not (isinstance(v, list) and len(v) == 2 and all(isinstance(r, list) and len(r) == 2 for r in v)):
        raise InputError(path, "expected a 2x2 matrix [[m11, m12], [m21, m22]]")
    return Mat2(*(dec_scalar(v[i][j], f"{path}[{i}][{j}]") for i in range(2) for j in range(2)))


def _get(obj, key, path):
    if not isinstance(obj, dict):
        raise InputError(path, "expected an object")
    if key not in obj:
        raise InputError(path, f"missing key {key!r}")
    return obj[key]


def dec_node(v, path: str = "$"):
    if not isinstance(v, dict):
        raise InputError(path, "expected a tree node object")
    if "leaf" in v:
        return Leaf(dec_mat(v["leaf"], path + ".leaf"))
    return Split(dec_mat(_get(v, "point", path), path + ".point"),
                 dec_scalar(_get(v, "lambda", path), path + ".lambda"),
                 dec_node(_get(v, "left", path), path + ".left"),
                 dec_node(_get(v, "right", path), path + ".right"))


def dec_tree_or_forest(v, path: str = "$"):
    if isinstance(v, dict) and "components" in v:
        comps = v["components"]
        if not isinstance(comps, list) or not comps:
            raise InputError(path + ".components", "expected a nonempty list")
        out = []
        for i, c in enumerate(comps):
            p = f"{path}.components[{i}]"
            out.append((dec_scalar(_get(c, "weight", p), p + ".weight"),
                        SplittingTree(dec_node(_get(c, "tree", p), p + ".tree"))))
        return MeasureForest(tuple(out))
    return SplittingTree(dec_node(v, path))


def dec_vec(v, path: str) -> Vec2:
    if not (isinstance(v, list) and len(v) == 2):
        raise InputError(path, "expected a 2-vector")
    return Vec2(dec_scalar(v[0], path + "[0]"), dec_scalar(v[1], path + "[1]"))


def dec_deformation(v, path: str = "$") -> PeriodicDeformation:
    modes = _get(v, "modes", path)
    if not isinstance(modes, list) or not modes:
        raise InputError(path + ".modes", "expected a nonempty list")
    out = []
    for i, m in enumerate(modes):
        p = f"{path}.modes[{i}]"
        n = dec_vec(_get(m, "n", p), p + ".n")
        if any(x.denominator != 1 for x in n):
            raise InputError(p + ".n", "frequencies must be integers")
        a = dec_vec(m["a"], p + ".a") if "a" in m else n
        c = dec_scalar(m.get("c", 0), p + ".c")
        try:
            out.append(SawtoothMode(a, (int(n.v1), int(n.v2)), c))
        except ValueError as e:
            raise InputError(p, str(e)) from None
    return PeriodicDeformation(tuple(out))


def dec_cube(v, path: str = "$"):
    return tuple(dec_mat(_get(v, k, path), f"{path}.{k}") for k in ("C1", "C2", "C3"))


def dec_optional_scalar(v: Optional[Any], path: str):
    return None if v is None else dec_scalar(v, path)
