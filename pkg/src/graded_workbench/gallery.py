"""Built-in instances, each with the verdicts it is expected to reproduce."""
from __future__ import annotations

import copy

from .documents import InstanceDocument, InputError
from .groups import make_cyclic
from .matrix_units import graded_matrix_ring
from .skew import function_skew_spec, rational_twisted_spec

# E_ij in degree 1 exactly when one (not both) of i, j is 3
M3_DEGREES = [[0, 0, 1], [0, 0, 1], [1, 1, 0]]

# (a_i, b_i) with a_i in R_1, b_i in R_1 and sum a_i b_i = 1
M3_DISPLAYED_PARTITION = [("E13", "E31"), ("E23", "E32"), ("E32", "E23")]


def _m3(n):
    r = graded_matrix_ring(make_cyclic(2), M3_DEGREES, "m3-z2")
    return "graded", r.to_json(), {
        "valid": True,
        "strongly_graded": True,
        "crossed_product": False,
        "neutral_commutant_dim": 2,
        "commutant_equals_center_of_neutral": True,
        "center_of_neutral_g_simple": True,
        "center_of_neutral_nontrivial_ideals": 2,
    }


def _gauss(n):
    spec = rational_twisted_spec(make_cyclic(2), {(1, 1): -1}, "gauss-z2")
    return "twisted", spec.to_json(), {
        "valid": True,
        "strongly_graded": True,
        "crossed_product": True,
        "simple": True,
        "max_commutative": False,
        "g_simple": True,
    }


def _laurent(n):
    n = 3 if n is None else n
    spec = function_skew_spec(make_cyclic(n), [(0,)] * n, f"laurent-group-ring-{n}")
    spec_json = spec.to_json()
    spec_json["coefficients"] = {"ring": "rationals"}
    return "skew", spec_json, {
        "valid": True,
        "strongly_graded": True,
        "crossed_product": True,
        "simple": False,
        "max_commutative": False,
        "g_simple": True,
        "augmentation_ideal_dim": n - 1,
    }


def _swap(n):
    spec = function_skew_spec(make_cyclic(2), [(0, 1), (1, 0)], "swap-skew")
    return "skew", spec.to_json(), {
        "valid": True,
        "strongly_graded": True,
        "crossed_product": True,
        "simple": True,
        "max_commutative": True,
        "g_simple": True,
    }


def _weyl(n):
    return "crystalline", {"instance": "weyl"}, {
        "axioms": True,
        "torsion_free": True,
        "g_simple": True,
        "plain_simple": False,
    }


def _orbit(n):
    n = 4 if n is None else n
    return "dynsys", {"x_size": n, "h": [(i + 1) % n for i in range(n)]}, {
        "minimal": True,
        "top_free": False,
        "simple": False,
        "pi_verified": True,
    }


# name -> (builder, citation)
ENTRIES = {
    "m3-z2": (_m3, "M3(Q) with the strong Z2-gradation by block position; not a crossed product"),
    "gauss-z2": (_gauss, "rational analogue of C as a twisted group ring of R by Z2"),
    "laurent-group-ring": (_laurent, "group ring Q[Z_n]; the augmentation ideal is a proper ideal"),
    "swap-skew": (_swap, "Q^2 with Z2 swapping the points; a free transitive skew group ring"),
    "weyl": (_weyl, "first Weyl algebra as a crystalline graded ring over Q[z]"),
    "finite-orbit": (_orbit, "crossed product of a single finite orbit of size n"),
}


def names() -> list:
    return sorted(ENTRIES)


def gallery(name: str, n: int | None = None) -> InstanceDocument:
    """The built-in instance ``name``; identical on every call."""
    if name not in ENTRIES:
        raise InputError(f"unknown gallery entry {name!r}; available: {', '.join(names())}", "/payload/name")
    if n is not None and name not in ("laurent-group-ring", "finite-orbit"):
        raise InputError(f"gallery entry {name!r} takes no size parameter", "/payload/n")
    if n is not None and n < (2 if name == "laurent-group-ring" else 1):
        raise InputError(f"size {n} too small for {name!r}", "/payload/n")
    builder, _ = ENTRIES[name]
    kind, payload, _expect = builder(n)
    return InstanceDocument(kind, payload)


def expectations(name: str, n: int | None = None) -> dict:
    builder, _ = ENTRIES[name]
    return copy.deepcopy(builder(n)[2])


def citation(name: str) -> str:
    return ENTRIES[name][1]
