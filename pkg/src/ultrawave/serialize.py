"""JSON documents for all payload types.

Every document is a flat JSON object carrying format_version, the ambient
prime p and a kind tag next to the payload fields.  Exact rationals are
rendered as strings, field elements as "n" or "n/p^e", scalars as dense
power-basis vectors at their common conductor.  List orderings are fixed
(digit-string lexicographic on canonical representatives), so identical
inputs serialize byte-identically.
"""

from __future__ import annotations

from fractions import Fraction

from .affine import GroupElement, RepSystem, SpecialSubgroup
from .cwt import SampledTransform
from .frames import FrameSpec
from .padic import PAdicNumber
from .scalars import CycloScalar, ScaledScalar
from .stepfn import StepFunction

FORMAT_VERSION = 1


# ---------------------------------------------------------------------------
# scalars and field elements

def scalar_to_json(z: ScaledScalar) -> dict:
    n = max(z.a.n_exp, z.b.n_exp)
    return {
        "conductor_exp": n,
        "a": [str(c) for c in z.a.dense(n)],
        "b": [str(c) for c in z.b.dense(n)],
    }


def scalar_from_json(p: int, obj: dict) -> ScaledScalar:
    n = int(obj["conductor_exp"])
    a = CycloScalar.make(p, n, {i: Fraction(c) for i, c in enumerate(obj["a"])})
    b = CycloScalar.make(p, n, {i: Fraction(c) for i, c in enumerate(obj["b"])})
    return ScaledScalar(a, b)


def _padic_sort_key(x: PAdicNumber, lo: int, hi: int) -> tuple:
    return x.digit_window(lo, hi)


# ---------------------------------------------------------------------------
# step functions

def step_function_to_json(f: StepFunction) -> dict:
    if f.is_zero():
        terms = []
        lo = f.resolution
    else:
        lo = min(f.support_exponent, f.resolution)
        terms = sorted(f.terms.items(),
                       key=lambda cv: _padic_sort_key(cv[0], lo, f.resolution))
    return {
        "format_version": FORMAT_VERSION,
        "kind": "step_function",
        "p": f.p,
        "resolution": f.resolution,
        "terms": [{"center": str(c), "coeff": scalar_to_json(v)}
                  for c, v in terms],
    }


def step_function_from_json(obj: dict) -> StepFunction:
    p = int(obj["p"])
    k = int(obj["resolution"])
    terms = {}
    for item in obj["terms"]:
        c = PAdicNumber.parse(p, item["center"]).canonical_rep(k)
        v = scalar_from_json(p, item["coeff"])
        if not v.is_zero():
            terms[c] = v
    return StepFunction(p, k, terms)


# ---------------------------------------------------------------------------
# group data

def subgroup_to_json(h: SpecialSubgroup) -> dict:
    return {"k": h.k, "m": h.m}


def subgroup_from_json(obj: dict) -> SpecialSubgroup:
    return SpecialSubgroup(int(obj["k"]), int(obj["m"]))


def rep_system_to_json(rs: RepSystem) -> dict:
    return {
        "k": rs.subgroup.k,
        "m": rs.subgroup.m,
        "n_range": [rs.n_lo, rs.n_hi],
        "gamma_window": [rs.gamma_lo, rs.gamma_scale()],
    }


def rep_system_from_json(obj: dict) -> RepSystem:
    sub = SpecialSubgroup(int(obj["k"]), int(obj["m"]))
    n_lo, n_hi = obj["n_range"]
    g_lo, g_hi = obj["gamma_window"]
    return RepSystem(sub, int(n_lo), int(n_hi), int(g_lo), int(g_hi))


def group_element_to_json(r: GroupElement) -> list[str]:
    return [str(r.x), str(r.h)]


def group_element_from_json(p: int, obj) -> GroupElement:
    return GroupElement(PAdicNumber.parse(p, obj[0]), PAdicNumber.parse(p, obj[1]))


def _entry_sort_key(p: int, subgroup: SpecialSubgroup,
                    key: tuple[GroupElement, int], gamma_lo: int):
    r, j = key
    n = int(r.h.valuation)
    lam = r.h / PAdicNumber.p_power(p, n)
    lam_digits = lam.digit_window(0, max(subgroup.m, 1))
    gamma = PAdicNumber.from_fraction(
        p, r.x.as_fraction() / r.h.as_fraction()) if not r.x.is_zero() \
        else PAdicNumber.zero(p)
    gamma_digits = gamma.digit_window(gamma_lo, subgroup.k)
    return (n, lam_digits, gamma_digits, j)


def _sorted_entries(p: int, subgroup: SpecialSubgroup, entries: dict):
    gammas = []
    for (r, _j) in entries:
        if not r.x.is_zero():
            gammas.append(int(r.x.valuation - r.h.valuation))
    gamma_lo = min(gammas) if gammas else subgroup.k
    gamma_lo = min(gamma_lo, subgroup.k)
    return sorted(entries.items(),
                  key=lambda kv: _entry_sort_key(p, subgroup, kv[0], gamma_lo))


def sampled_transform_to_json(st: SampledTransform) -> dict:
    items = _sorted_entries(st.p, st.subgroup, st.entries)
    return {
        "format_version": FORMAT_VERSION,
        "kind": "sampled_transform",
        "p": st.p,
        "subgroup": subgroup_to_json(st.subgroup),
        "wavelet_count": st.wavelet_count,
        "n_range": [st.n_lo, st.n_hi],
        "entries": [{"r": group_element_to_json(r), "j": j,
                     "value": scalar_to_json(v)}
                    for (r, j), v in items],
    }


def sampled_transform_from_json(obj: dict) -> SampledTransform:
    p = int(obj["p"])
    subgroup = subgroup_from_json(obj["subgroup"])
    entries = {}
    for item in obj["entries"]:
        r = group_element_from_json(p, item["r"])
        v = scalar_from_json(p, item["value"])
        if not v.is_zero():
            entries[(r, int(item["j"]))] = v
    n_lo, n_hi = obj.get("n_range", [0, -1])
    return SampledTransform(p, subgroup, int(obj.get("wavelet_count", 1)),
                            entries, int(n_lo), int(n_hi))


def coefficients_to_json(p: int, subgroup: SpecialSubgroup, coeffs: dict) -> dict:
    items = _sorted_entries(p, subgroup, coeffs)
    return {
        "format_version": FORMAT_VERSION,
        "kind": "coefficients",
        "p": p,
        "subgroup": subgroup_to_json(subgroup),
        "entries": [{"r": group_element_to_json(r), "j": j,
                     "value": scalar_to_json(v)}
                    for (r, j), v in items],
    }


def coefficients_from_json(obj: dict) -> tuple[SpecialSubgroup, dict]:
    p = int(obj["p"])
    subgroup = subgroup_from_json(obj["subgroup"])
    coeffs = {}
    for item in obj["entries"]:
        r = group_element_from_json(p, item["r"])
        v = scalar_from_json(p, item["value"])
        if not v.is_zero():
            coeffs[(r, int(item["j"]))] = v
    return subgroup, coeffs


# ---------------------------------------------------------------------------
# frame specifications

def frame_spec_to_json(fs: FrameSpec) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "kind": "frame_spec",
        "p": fs.p,
        "wavelets": [step_function_to_json(g) for g in fs.wavelets],
        "subgroup": subgroup_to_json(fs.subgroup),
        "constant": str(fs.constant) if fs.constant is not None else None,
    }


def frame_spec_from_json(obj: dict) -> FrameSpec:
    p = int(obj["p"])
    wavelets = tuple(step_function_from_json(w) for w in obj["wavelets"])
    subgroup = subgroup_from_json(obj["subgroup"])
    constant = obj.get("constant")
    return FrameSpec(p, wavelets, subgroup,
                     Fraction(constant) if constant is not None else None)


# ---------------------------------------------------------------------------
# dispatch

_PARSERS = {
    "step_function": step_function_from_json,
    "sampled_transform": sampled_transform_from_json,
    "frame_spec": frame_spec_from_json,
    "coefficients": coefficients_from_json,
}


def parse_document(obj: dict):
    kind = obj.get("kind")
    if kind not in _PARSERS:
        raise ValueError(f"unknown document kind {kind!r}")
    return _PARSERS[kind](obj)
