"""Resonance classification of a rational parameter against a configuration.

Facet values l_F(γ) drive everything: the nonresonance trio, the integer
translation lattice tests, and the four derived parameter sets

* res   = ℤA + ⋃ ℂF over facets (⟺ some facet value is an integer),
* sres  = negative multiples of a_A plus the witnessed degree classes of the
          quotient by the shifted module (decided exactly),
* dres  = degree classes killed in powers of the stratum ideals (positive
          side decided exactly through the stratum reduction; negatives on
          non-normal configurations are reported as bound-limited),
* wres  = sres ∪ dres,

plus the facet-sign approximations SRes/DRes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from . import degrees as dg
from . import intlin as il
from .cones import Configuration
from .degrees import TriState
from .errors import DomainError, GKZError

SET_NAMES = ("res", "sres", "dres", "wres", "SRes", "DRes")


@dataclass(frozen=True)
class ResonanceProfile:
    facet_values: tuple  # ((facet indices, Fraction value), ...)
    is_nonresonant: bool
    is_weak: bool
    is_semi: bool
    resonant_facets: tuple  # indices of facets with integer value


def _require_in_span(config: Configuration, gamma) -> None:
    if len(gamma) != config.n:
        raise DomainError("parameter dimension does not match the configuration")
    if not config.in_span(gamma):
        raise DomainError("parameter lies outside the column span")


def classify(config: Configuration, gamma) -> ResonanceProfile:
    _require_in_span(config, gamma)
    values = tuple((f.face.indices, f.value(gamma)) for f in config.facets())
    integral = [(idx, v) for idx, v in values if v.denominator == 1]
    return ResonanceProfile(
        facet_values=values,
        is_nonresonant=not integral,
        is_weak=all(v == 0 for _, v in integral),
        is_semi=all(v >= 0 for _, v in integral),
        resonant_facets=tuple(idx for idx, _ in integral),
    )


def in_res(config: Configuration, gamma) -> bool:
    return not classify(config, gamma).is_nonresonant


def in_SRes(config: Configuration, gamma) -> bool:
    _require_in_span(config, gamma)
    return any(f.value(gamma).denominator == 1 and f.value(gamma) < 0
               for f in config.facets())


def in_DRes(config: Configuration, gamma) -> bool:
    _require_in_span(config, gamma)
    return any(f.value(gamma).denominator == 1 and f.value(gamma) > 0
               for f in config.facets())


def _largest_below(q: Fraction) -> int:
    """Largest integer strictly below q."""
    return q.numerator // q.denominator - (1 if q.denominator == 1 else 0)


def in_sres(config: Configuration, gamma, budget=None) -> bool:
    """γ ∈ −m·a_A + (witnessed module degree classes) for some m ≥ 1; exact.

    Any witnessed class keeps some invariant facet value below the conductor
    bound, and a_A has positive value on every facet, so only finitely many
    shifts can work per face.
    """
    _require_in_span(config, gamma)
    bounds = dg.facet_bounds(config, budget=budget)
    a_A = config.column_sum()
    family = dg.module_family()
    for face in config.all_faces():
        if face.codim == 0:
            continue
        m_max = 0
        for f in config.facets_containing(face):
            q = (bounds[f.face.indices] - f.value(gamma)) / f.value(a_A)
            m_max = max(m_max, _largest_below(q))
        for m in range(1, m_max + 1):
            shifted = tuple(Fraction(g) + m * Fraction(c) for g, c in zip(gamma, a_A))
            if dg.good_class_exists(family, config, face, shifted, budget=budget):
                return True
    return False


def default_k_max(config: Configuration, gamma) -> int:
    _require_in_span(config, gamma)
    top = Fraction(0)
    for f in config.facets():
        v = f.value(gamma)
        if v > top:
            top = v
    return max(2, -(-top.numerator // top.denominator) + 2)


def _dres_certificate(config: Configuration, gamma, budget=None):
    """(level, face, k) for a witnessed power-quotient class, or None; exact.

    A class is witnessed at level i only along faces of codimension above i,
    and there it survives into the k-th power precisely for k above the
    invariant facet-value sum, so the search over (i, face) is complete.
    """
    family_cache = {}
    for level in range(config.rank):
        for face in config.all_faces():
            if face.codim <= level:
                continue
            fam = family_cache.setdefault(level, dg.ideal_family(level))
            hit = dg._first_passing(fam, config, face, gamma, budget=budget)
            if hit is not None:
                total = sum(f.value(hit) for f in config.facets_containing(face))
                return level, face, max(2, int(total) + 1)
    return None


def in_dres(config: Configuration, gamma, k_max=None, window=None,
            budget=None) -> TriState:
    _require_in_span(config, gamma)
    if k_max is None:
        k_max = default_k_max(config, gamma)
    if k_max < 2:
        raise DomainError("the power scan needs k_max >= 2")
    cert = _dres_certificate(config, gamma, budget=budget)
    normal, _ = config.is_normal()
    if normal:
        # on normal input the facet-sign test must agree with the reduction
        direct = in_DRes(config, gamma)
        if direct != (cert is not None):
            raise GKZError("facet test disagrees with the stratum reduction "
                           "on a normal configuration")
    if cert is not None:
        level, face, k_wit = cert
        return TriState("true", {"level": level, "face": list(face.indices),
                                 "power": k_wit, "k_max": k_max})
    meta = {"k_max": k_max, "window": window, "certified": True,
            "method": "stratum reduction"}
    if normal:
        return TriState("false", meta)
    if not in_res(config, gamma):
        meta["method"] = "nonresonant"
        return TriState("false", meta)
    return TriState("false_up_to_bounds", meta)


def in_wres(config: Configuration, gamma, k_max=None, window=None,
            budget=None) -> TriState:
    if in_sres(config, gamma, budget=budget):
        return TriState("true", {"member_of": "sres"})
    out = in_dres(config, gamma, k_max=k_max, window=window, budget=budget)
    if out.is_true:
        return TriState("true", dict(out.bounds, member_of="dres"))
    return out


def _grid_points(box, step: Fraction):
    axes = []
    for lo, hi in box:
        lo, hi = Fraction(lo), Fraction(hi)
        axis = []
        v = lo
        while v <= hi:
            axis.append(v)
            v += step
        axes.append(axis)
    return product(*axes)


def region_scan(config: Configuration, set_name: str, box, step,
                k_max=None, window=None, budget=None) -> list[dict]:
    """Verdicts of a named parameter set over a rational grid.

    ``box`` is one (lo, hi) pair per ambient coordinate; points outside the
    column span get the verdict "outside".
    """
    if set_name not in SET_NAMES:
        raise DomainError(f"unknown set {set_name!r}; choose from {SET_NAMES}")
    if len(box) != config.n:
        raise DomainError("scan box dimension does not match the configuration")
    step = Fraction(step)
    if step <= 0:
        raise DomainError("scan step must be positive")
    out = []
    for gamma in _grid_points(box, step):
        if not config.in_span(gamma):
            out.append({"gamma": gamma, "verdict": "outside"})
            continue
        if set_name == "res":
            verdict = "true" if in_res(config, gamma) else "false"
        elif set_name == "SRes":
            verdict = "true" if in_SRes(config, gamma) else "false"
        elif set_name == "DRes":
            verdict = "true" if in_DRes(config, gamma) else "false"
        elif set_name == "sres":
            verdict = "true" if in_sres(config, gamma, budget=budget) else "false"
        elif set_name == "dres":
            verdict = in_dres(config, gamma, k_max=k_max, window=window,
                              budget=budget).verdict
        else:
            verdict = in_wres(config, gamma, k_max=k_max, window=window,
                              budget=budget).verdict
        out.append({"gamma": gamma, "verdict": verdict})
    return out
