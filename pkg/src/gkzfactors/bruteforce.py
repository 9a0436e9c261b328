"""Independent brute-force oracles for the exact machinery.

Everything here re-derives its answers by bounded exhaustive enumeration and
never calls the production membership, component, or pullback code, so that
agreement between the two paths is meaningful evidence.  Oracles are slow by
design and only intended for desk-scale instances.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from . import intlin as il
from .cones import Configuration
from .errors import DomainError


@dataclass(frozen=True)
class OracleConfig:
    box_radius: int = 8          # coefficient / witness bound R
    coeff_bound: int = 3         # largest matrix entry when generating instances
    seed: int = 20240601
    max_n: int = 3
    max_cols: int = 5
    shift_bound: int = 12        # largest m tried for the shifted-degree locus
    power_bound: int = 5         # largest ideal power k tried
    ray_depth: int = 4           # coefficient-sum depth for "b + NF inside" checks

    def __post_init__(self):
        for name in ("box_radius", "coeff_bound", "max_n", "max_cols",
                     "shift_bound", "power_bound", "ray_depth"):
            if getattr(self, name) <= 0:
                raise DomainError(f"oracle bound {name} must be positive")


# ---------------------------------------------------------------------------
# membership oracle (meet-in-the-middle over bounded coefficients)
# ---------------------------------------------------------------------------

def bf_member(query, target, R: int) -> bool:
    """Exhaustive test of target ∈ shift + ℕ·generators + ℤ·lattice_part.

    All generator coefficients range over [0, R] and all lattice coefficients
    over [-R, R]; independent of the production search.
    """
    shift = tuple(query.shift)
    target = tuple(target)
    gens = [tuple(g) for g in query.generators]
    lats = [tuple(v) for v in query.lattice_part]
    want = tuple(t - s for t, s in zip(target, shift))

    terms = [(g, range(0, R + 1)) for g in gens]
    terms += [(v, range(-R, R + 1)) for v in lats]
    half = len(terms) // 2

    def sums(part):
        acc = {tuple(0 for _ in want)}
        for vec, rng in part:
            acc = {tuple(s + c * x for s, x in zip(base, vec))
                   for base in acc for c in rng}
        return acc

    left = sums(terms[:half])
    right = sums(terms[half:])
    complements = {tuple(w - l for w, l in zip(want, lv)) for lv in left}
    return any(r in complements for r in right)


# ---------------------------------------------------------------------------
# first-principles cone combinatorics
# ---------------------------------------------------------------------------

def _bf_lattice_basis(cols, n):
    H, _ = il.hermite_normal_form(il.from_columns(cols, dim=n))
    return [c for c in il.columns(H) if not il.is_zero_vec(c)]


def _bf_in_lattice(basis, v) -> bool:
    if not basis:
        return il.is_zero_vec(tuple(v))
    x = il.rational_solve(il.from_columns(basis, dim=len(v)), tuple(v))
    return x is not None and all(Fraction(c).denominator == 1 for c in x)


def bf_facets(matrix, h_range: int = 9):
    """Primitive facet functionals found by searching small integer forms.

    Returns (facet column-index tuple, h vector) pairs; h is scaled so its
    values generate the full value group on the column lattice.
    """
    cols = [tuple(c) for c in zip(*matrix)]
    n = len(matrix)
    basis = _bf_lattice_basis(cols, n)
    rank = len(basis)
    seen = {}
    for h in itertools.product(range(-h_range, h_range + 1), repeat=n):
        vals = [sum(a * b for a, b in zip(h, c)) for c in cols]
        if any(v < 0 for v in vals) or all(v == 0 for v in vals):
            continue
        zero = tuple(j for j, v in enumerate(vals) if v == 0)
        zcols = [cols[j] for j in zero]
        if not zcols:
            zrank = 0
        else:
            zrank = il.rational_rank(il.from_columns(zcols, dim=n))
        if zrank != rank - 1:
            continue
        g = 0
        for b in basis:
            g = gcd(g, sum(a * x for a, x in zip(h, b)))
        hv = tuple(Fraction(x, g) for x in h)
        seen.setdefault(zero, hv)
    return sorted(seen.items())


def _bf_semigroup_points(cols, n, radius: int):
    """All points of ℕ·cols with coefficients at most radius."""
    pts = {tuple(0 for _ in range(n))}
    for c in cols:
        pts = {tuple(p + k * x for p, x in zip(base, c))
               for base in pts for k in range(radius + 1)}
    return pts


def _bf_faces(matrix, h_range: int = 9):
    """All faces as index tuples: zero sets of nonnegative forms, plus the full set."""
    cols = [tuple(c) for c in zip(*matrix)]
    n = len(matrix)
    out = {tuple(range(len(cols)))}
    for h in itertools.product(range(-h_range, h_range + 1), repeat=n):
        vals = [sum(a * b for a, b in zip(h, c)) for c in cols]
        if any(v < 0 for v in vals):
            continue
        out.add(tuple(j for j, v in enumerate(vals) if v == 0))
    return sorted(out)


def _bf_in_span(cols, v) -> bool:
    if not cols:
        return all(Fraction(x) == 0 for x in v)
    return il.rational_solve(il.from_columns(cols, dim=len(v)), tuple(v)) is not None


def _bf_ray_inside(base, face_cols, degset, depth: int) -> bool:
    """Bounded check that base + ℕ·face_cols stays inside degset."""
    if not face_cols:
        return base in degset
    combos = [tuple(0 for _ in base)]
    for _ in range(depth):
        combos = combos + [tuple(c + x for c, x in zip(cc, fc))
                           for cc in combos for fc in face_cols]
    return all(tuple(b + c for b, c in zip(base, cc)) in degset
               for cc in set(combos))


def _bf_qdeg_member(gamma, degset, faces, cols, depth: int) -> bool:
    """gamma ∈ ∪ {b + ℚ·F : b ∈ degset, b + ℕF ⊆ degset (bounded)}."""
    gamma = tuple(Fraction(x) for x in gamma)
    for face in faces:
        fcols = [cols[j] for j in face]
        for b in degset:
            if not _bf_ray_inside(b, fcols, degset, depth):
                continue
            diff = tuple(g - x for g, x in zip(gamma, b))
            if _bf_in_span(fcols, diff):
                return True
    return False


# ---------------------------------------------------------------------------
# first-principles resonance loci
# ---------------------------------------------------------------------------

def _bf_degree_sets(matrix, radius: int):
    cols = [tuple(c) for c in zip(*matrix)]
    n = len(matrix)
    NA = _bf_semigroup_points(cols, n, radius)
    a_A = tuple(sum(c[i] for c in cols) for i in range(n))
    shifted = {tuple(a + b for a, b in zip(a_A, p)) for p in NA}
    return cols, n, NA, a_A, NA - shifted


def bf_in_sres(matrix, gamma, cfg: OracleConfig = OracleConfig()) -> bool:
    cols, n, NA, a_A, D = _bf_degree_sets(matrix, cfg.box_radius)
    faces = _bf_faces(matrix)
    for m in range(1, cfg.shift_bound + 1):
        x = tuple(Fraction(g) + m * c for g, c in zip(gamma, a_A))
        if _bf_qdeg_member(x, D, faces, cols, cfg.ray_depth):
            return True
    return False


def _bf_ideal_degrees(matrix, level: int, radius: int):
    cols, n, NA, a_A, _ = _bf_degree_sets(matrix, radius)
    basis = _bf_lattice_basis(cols, n)
    rank = len(basis)
    bad = set()
    for face in _bf_faces(matrix):
        fcols = [cols[j] for j in face]
        frank = (il.rational_rank(il.from_columns(fcols, dim=n)) if fcols else 0)
        if rank - frank > level:
            bad |= _bf_semigroup_points(fcols, n, radius) & NA
    return cols, n, NA - bad


def bf_in_dres(matrix, gamma, cfg: OracleConfig = OracleConfig()) -> bool:
    n = len(matrix)
    cols = [tuple(c) for c in zip(*matrix)]
    basis = _bf_lattice_basis(cols, n)
    faces = _bf_faces(matrix)
    NA = _bf_semigroup_points(cols, n, cfg.box_radius)
    for level in range(len(basis)):
        cols, n, I = _bf_ideal_degrees(matrix, level, cfg.box_radius)
        for k in range(2, cfg.power_bound + 1):
            Ik = set(I)
            for _ in range(k - 1):
                Ik = {tuple(a + b for a, b in zip(p, q)) for p in Ik for q in I}
            Ik = {tuple(a + b for a, b in zip(p, q)) for p in Ik for q in NA}
            D = I - Ik
            if _bf_qdeg_member(gamma, D, faces, cols, cfg.ray_depth):
                return True
    return False


def bf_in_set(matrix, set_name: str, gamma,
              cfg: OracleConfig = OracleConfig()) -> bool:
    facets = bf_facets(matrix)
    values = []
    for _, h in facets:
        values.append(sum(Fraction(a) * Fraction(x) for a, x in zip(h, gamma)))
    if set_name == "res":
        return any(v.denominator == 1 for v in values)
    if set_name == "SRes":
        return any(v.denominator == 1 and v < 0 for v in values)
    if set_name == "DRes":
        return any(v.denominator == 1 and v > 0 for v in values)
    if set_name == "sres":
        return bf_in_sres(matrix, gamma, cfg)
    if set_name == "dres":
        return bf_in_dres(matrix, gamma, cfg)
    if set_name == "wres":
        return bf_in_sres(matrix, gamma, cfg) or bf_in_dres(matrix, gamma, cfg)
    raise DomainError(f"unknown set name: {set_name}")


def bf_region(matrix, set_name: str, box, cfg: OracleConfig = OracleConfig()):
    """Integer-grid verdicts for a resonance locus, from first principles."""
    axes = [range(int(lo), int(hi) + 1) for lo, hi in box]
    out = []
    for point in itertools.product(*axes):
        gamma = tuple(Fraction(p) for p in point)
        cols = [tuple(c) for c in zip(*matrix)]
        if not _bf_in_span(cols, gamma):
            out.append({"gamma": point, "verdict": "outside"})
            continue
        v = bf_in_set(matrix, set_name, gamma, cfg)
        out.append({"gamma": point, "verdict": "true" if v else "false"})
    return out


# ---------------------------------------------------------------------------
# pullback-count oracle
# ---------------------------------------------------------------------------

def bf_pullback_count(matrix, face_indices, ambient_rep, order_bound: int) -> int:
    """Count face-torus characters of order ≤ bound pulling back to the class.

    Enumerates candidates as rational combinations of a face-lattice basis
    with denominators up to the bound and tests the congruence directly.
    """
    cols = [tuple(c) for c in zip(*matrix)]
    n = len(matrix)
    ambient_basis = _bf_lattice_basis(cols, n)
    fcols = [cols[j] for j in face_indices]
    fbasis = _bf_lattice_basis(fcols, n) if fcols else []
    rep = tuple(Fraction(x) for x in ambient_rep)

    # the ambient class itself must have order within the bound
    coords = (il.rational_solve(il.from_columns(ambient_basis, dim=n), rep)
              if ambient_basis else None)
    if ambient_basis and coords is not None:
        order = 1
        for c in coords:
            d = Fraction(c).denominator
            order = order * d // gcd(order, d)
        if order > order_bound:
            raise DomainError("ambient class order exceeds the oracle bound")

    found = []
    for d in range(1, order_bound + 1):
        if not fbasis:
            cands = [tuple(Fraction(0) for _ in range(n))] if d == 1 else []
        else:
            cands = []
            for num in itertools.product(range(d), repeat=len(fbasis)):
                v = tuple(sum(Fraction(p, d) * Fraction(b[i]) for p, b in
                              zip(num, fbasis)) for i in range(n))
                cands.append(v)
        for v in cands:
            diff = tuple(a - b for a, b in zip(v, rep))
            if not _bf_in_lattice(ambient_basis, diff):
                continue
            if any(_bf_in_lattice(fbasis, tuple(a - b for a, b in zip(v, w)))
                   for w in found):
                continue
            found.append(v)
    return len(found)


# ---------------------------------------------------------------------------
# randomized property suite
# ---------------------------------------------------------------------------

@dataclass
class PropertyReport:
    instances: int = 0
    checks: int = 0
    failures: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, prop: str, seed: int, detail: str):
        self.failures.append({"property": prop, "seed": seed, "detail": detail})


def _random_matrix(rng: random.Random, cfg: OracleConfig):
    n = rng.randint(1, cfg.max_n)
    N = rng.randint(1, cfg.max_cols)
    return [[rng.randint(-cfg.coeff_bound, cfg.coeff_bound) for _ in range(N)]
            for _ in range(n)]


def _grid_gammas(config: Configuration, rng: random.Random, count: int):
    out = []
    for _ in range(count):
        coeffs = [Fraction(rng.randint(-4, 4), rng.choice((1, 1, 2, 3)))
                  for _ in config.lattice_basis]
        g = tuple(sum(c * Fraction(b[i]) for c, b in
                      zip(coeffs, config.lattice_basis))
                  for i in range(config.n))
        out.append(g)
    return out


def property_suite(cfg: OracleConfig = OracleConfig(), instances: int = 25,
                   gammas_per_instance: int = 4) -> PropertyReport:
    """Randomized invariant checks; failures carry the reproduction seed."""
    from . import resonance

    report = PropertyReport()
    master = random.Random(cfg.seed)
    for _ in range(instances):
        seed = master.randrange(1 << 30)
        rng = random.Random(seed)
        matrix = _random_matrix(rng, cfg)
        if all(all(x == 0 for x in row) for row in matrix):
            report.notes.append(f"seed {seed}: degenerate instance skipped")
            continue
        try:
            config = Configuration(matrix)
        except Exception as exc:  # zero matrix etc.
            report.notes.append(f"seed {seed}: degenerate ({exc})")
            continue
        if config.rank == 0:
            report.notes.append(f"seed {seed}: degenerate (rank zero)")
            continue
        report.instances += 1

        # facet-functional axioms
        for f in config.facets():
            vals = [f.value(c) for c in config.cols]
            zero = {j for j, v in enumerate(vals) if v == 0}
            g = 0
            for b in config.lattice_basis:
                v = f.value(b)
                g = gcd(g, v.numerator) if v.denominator == 1 else -1
            report.checks += 1
            if any(v < 0 or v.denominator != 1 for v in vals):
                report.fail("facet-values-in-N", seed, str(matrix))
            if zero != set(f.face.indices):
                report.fail("facet-zero-set", seed, str(matrix))
            if g != 1:
                report.fail("facet-primitive", seed, str(matrix))

        normal, _ = config.is_normal()
        for gamma in _grid_gammas(config, rng, gammas_per_instance):
            prof = resonance.classify(config, gamma)
            sres = resonance.in_sres(config, gamma)
            dres = resonance.in_dres(config, gamma)
            wres = resonance.in_wres(config, gamma)
            res = resonance.in_res(config, gamma)
            report.checks += 1
            # one-sided implications, all configurations
            if not sres and not prof.is_semi:
                report.fail("not-sres-implies-semi", seed, f"{matrix} {gamma}")
            if dres.is_true and not resonance.in_DRes(config, gamma):
                report.fail("dres-implies-positive-facet", seed,
                            f"{matrix} {gamma}")
            # chain sres ⊆ wres ⊆ res
            if sres and wres.verdict != "true":
                report.fail("sres-subset-wres", seed, f"{matrix} {gamma}")
            if wres.verdict == "true" and not res:
                report.fail("wres-subset-res", seed, f"{matrix} {gamma}")
            # equivalences under normality
            if normal:
                if sres != (not prof.is_semi):
                    report.fail("normal-sres-equivalence", seed,
                                f"{matrix} {gamma}")
                if dres.is_true != resonance.in_DRes(config, gamma):
                    report.fail("normal-dres-equivalence", seed,
                                f"{matrix} {gamma}")
                if (wres.verdict == "true") != (not prof.is_weak):
                    report.fail("normal-wres-equivalence", seed,
                                f"{matrix} {gamma}")

        # witness property of shifted-degree components on normal instances
        if normal and config.is_pointed():
            from . import degrees
            a_A = config.column_sum()
            try:
                comps = degrees.qdeg_components(degrees.module_family(), config)
            except Exception as exc:
                report.notes.append(f"seed {seed}: component budget ({exc})")
                comps = []
            for comp in comps:
                report.checks += 1
                over = config.facets_containing(comp.face)
                diff = il.vsub(tuple(comp.base), tuple(a_A))
                if not any(f.value(diff) < 0 for f in over):
                    report.fail("component-negative-facet-witness", seed,
                                f"{matrix} {comp}")
    return report
