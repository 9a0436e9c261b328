"""Composition-factor tables for the two filtrations attached to a configuration.

The D-module side lists, per codimension i, one factor for each face F of
codimension i whose span contains the parameter; the factor is labelled by the
rank-one character class of the parameter modulo the face lattice ZF.  The
topological side lists, per codimension, every character class on the face
torus whose pullback along the torus surjection equals the ambient character.
Both tables come with the hypothesis flags that certify whether the canonical
surjection onto the listed factors is an isomorphism, and whether the layers
are semisimple.

`gap_factor_candidates` is advisory: it labels the witnessed classes of the
saturation gap, which flag potential extra factors of the bottom layer for a
non-normal configuration, but it is not a certified classification.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd

from . import intlin as il
from .cones import Configuration, Face
from .degrees import gap_family, qdeg_components
from .errors import DomainError, GKZError
from . import resonance

INFINITE = "infinite"

CERT_EPI = "epimorphism-only"
CERT_ISO = "isomorphism"
CERT_SEMISIMPLE = "semisimple-certified"


# ---------------------------------------------------------------------------
# character classes on face tori
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class LocalSystemClass:
    """A rank-one character class on the torus of a face, taken modulo ZF."""

    face_indices: tuple
    representative: tuple  # rational ambient vector
    canonical: tuple       # representative reduced into the ZF fundamental domain
    order: object          # least k >= 1 with k*rep in ZF, or "infinite"

    @property
    def is_trivial(self) -> bool:
        return self.order == 1

    def key(self):
        return (self.face_indices, self.canonical)

    def __eq__(self, other):
        return isinstance(other, LocalSystemClass) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        tag = "trivial" if self.is_trivial else f"order {self.order}"
        return f"LocalSystemClass(F={list(self.face_indices)}, rep={[str(c) for c in self.canonical]}, {tag})"


def _face_basis(config: Configuration, indices) -> list:
    cols = [config.cols[j] for j in indices]
    if not cols:
        return []
    return il.column_lattice_basis(il.from_columns(cols, dim=config.n))


def _in_col_span(config: Configuration, indices, v) -> bool:
    cols = [config.cols[j] for j in indices]
    if not cols:
        return il.is_zero_vec(tuple(v))
    return il.rational_solve(il.from_columns(cols, dim=config.n), tuple(v)) is not None


def _reduce_mod_lattice(basis, v) -> tuple:
    """Canonical representative of v modulo the integer lattice spanned by basis."""
    v = [Fraction(x) for x in v]
    if not basis:
        return tuple(v)
    H = il.from_columns([tuple(b) for b in basis], dim=len(v))
    H, _ = il.hermite_normal_form(H)
    hcols = il.columns(H)
    pivots = sorted(il.hnf_pivots(H))  # (row, col), increasing pivot row
    for r, c in pivots:
        d = H[r][c]
        t = v[r] // d  # floor division of a Fraction by a positive integer
        if t:
            v = [x - t * Fraction(y) for x, y in zip(v, hcols[c])]
    return tuple(v)


def _class_order(config: Configuration, indices, rep):
    if not _in_col_span(config, indices, rep):
        return INFINITE
    basis = _face_basis(config, indices)
    if not basis:
        return 1  # rep must be 0 here
    coords = il.rational_solve(il.from_columns(basis, dim=config.n), tuple(rep))
    order = 1
    for c in coords:
        c = Fraction(c)
        order = order * c.denominator // gcd(order, c.denominator)
    return order


def _make_class(config: Configuration, indices, rep, require_span=True) -> LocalSystemClass:
    indices = tuple(indices)
    rep = tuple(Fraction(x) for x in rep)
    if len(rep) != config.n:
        raise DomainError("representative dimension does not match the configuration")
    if require_span and not _in_col_span(config, indices, rep):
        raise DomainError("representative lies outside the span of the face")
    canonical = _reduce_mod_lattice(_face_basis(config, indices), rep)
    return LocalSystemClass(face_indices=indices, representative=rep,
                            canonical=canonical,
                            order=_class_order(config, indices, rep))


def class_of(config: Configuration, face, gamma) -> LocalSystemClass:
    """Character class of a parameter on the torus of a face (parameter in QF)."""
    indices = face.indices if isinstance(face, Face) else tuple(face)
    return _make_class(config, indices, gamma, require_span=True)


def trivial_class(config: Configuration, indices=None) -> LocalSystemClass:
    if indices is None:
        indices = tuple(range(config.N))
    zero = tuple(Fraction(0) for _ in range(config.n))
    return _make_class(config, indices, zero)


# ---------------------------------------------------------------------------
# pullback solutions on a face torus
# ---------------------------------------------------------------------------

def _span_lattice(config: Configuration, indices) -> list:
    """Basis of Qspan(columns at `indices`) ∩ ZA, as ambient vectors."""
    cols = [config.cols[j] for j in indices]
    if not cols:
        return []
    ann = il.rational_kernel(il.transpose(il.from_columns(cols, dim=config.n)))
    rows = tuple(il.clear_denominators(a) for a in ann) if ann else ()
    if not rows:
        cands = il.columns(il.identity(config.n))
    else:
        cands = il.integer_kernel(rows)
    return config._intersect_with_lattice(cands)


def _torsion_deltas(config: Configuration, indices) -> list:
    """Coset representatives of (Qspan(F) ∩ ZA) / ZF, as ambient vectors."""
    span_lat = _span_lattice(config, indices)
    if not span_lat:
        return [tuple(0 for _ in range(config.n))]
    S = il.from_columns(span_lat, dim=config.n)
    fcoords = []
    for j in indices:
        c = il.rational_solve(S, config.cols[j])
        fcoords.append(tuple(int(x) for x in c))
    quot = il.quotient(len(span_lat), fcoords)
    return [il.matvec(S, t) for t in quot.coset_representatives()]


def pullback_solutions(ambient: Configuration, face, cls: LocalSystemClass) -> list:
    """All character classes on the face torus pulling back to the given class.

    The class must live on the full column set of `ambient`.  `face` may be a
    face of the configuration or, more generally, a tuple of column indices
    whose columns span a subcone of full intersection with the lattice span
    (the count is then the torsion order of ZA modulo the sublattice).
    """
    if tuple(cls.face_indices) != tuple(range(ambient.N)):
        raise DomainError("the pulled-back class must live on the full column set")
    indices = face.indices if isinstance(face, Face) else tuple(face)
    if not set(indices) <= set(range(ambient.N)):
        raise DomainError("face indices out of range")

    # work in ZA coordinates: find one shift z in ZA with rep + z in Qspan(F)
    B = il.from_columns(ambient.lattice_basis, dim=ambient.n)
    g = il.rational_solve(B, cls.representative)
    if g is None:
        raise DomainError("class representative lies outside the column span")
    fcoords = [tuple(int(c) for c in ambient.lattice_coords(ambient.cols[j]))
               for j in indices]
    if fcoords:
        ann = il.rational_kernel(il.transpose(il.from_columns(fcoords, dim=ambient.rank)))
    else:
        ann = il.columns(il.identity(ambient.rank))
    if not ann:
        z = tuple(0 for _ in range(ambient.rank))
    else:
        rows, rhs = [], []
        for w in ann:
            val = -sum(Fraction(a) * Fraction(x) for a, x in zip(w, g))
            lcm = 1
            for x in list(w) + [val]:
                x = Fraction(x)
                lcm = lcm * x.denominator // gcd(lcm, x.denominator)
            rows.append(tuple(int(Fraction(x) * lcm) for x in w))
            rhs.append(int(val * lcm))
        z = il.integral_system_solve(il.freeze(rows), tuple(rhs))
        if z is None:
            return []
    base = tuple(Fraction(a) + Fraction(b) for a, b in
                 zip(cls.representative, il.matvec(B, z)))
    out = [_make_class(ambient, indices,
                       tuple(Fraction(x) + Fraction(y) for x, y in zip(base, d)))
           for d in _torsion_deltas(ambient, indices)]
    out.sort(key=lambda c: c.canonical)
    return out


# ---------------------------------------------------------------------------
# filtration reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FactorLabel:
    codim: int
    face_indices: tuple
    cls: LocalSystemClass
    multiplicity: int = 1

    def key(self):
        return (self.codim, self.face_indices, self.cls.canonical)


@dataclass(frozen=True)
class FiltrationReport:
    kind: str                 # "dmod" or "perverse"
    matrix: tuple
    parameter: object         # rational vector (dmod) or LocalSystemClass (perverse)
    factors: tuple            # factors[i] = tuple of FactorLabel at codimension i
    flags: dict
    certification: str
    notes: tuple = ()

    def level(self, i):
        return self.factors[i]


def _faces_by_codim(config: Configuration) -> dict:
    out = {}
    for f in config.all_faces():
        out.setdefault(f.codim, []).append(f)
    return out


def _resonant_facet_faces(config: Configuration, gamma) -> list:
    prof = resonance.classify(config, gamma)
    return [config.face(idx) for idx in prof.resonant_facets]


def _simplicial_hypothesis(config: Configuration, facet_faces) -> bool:
    if not facet_faces:
        return True
    return config.is_simplicial_family(facet_faces)


def _check_minimal_resonant_intersection(config, gamma, facet_faces) -> None:
    """Every face whose span contains gamma must contain the common
    intersection of the resonant facets; a violation would contradict the
    isomorphism hypothesis bookkeeping, so it is a hard error."""
    if not facet_faces:
        return
    common = set(range(config.N))
    for f in facet_faces:
        common &= set(f.indices)
    f0 = config.face(tuple(sorted(common)))
    for f in config.all_faces():
        if _in_col_span(config, f.indices, gamma) and not f0.leq(f):
            raise GKZError("a face carrying the parameter misses the minimal "
                           "resonant intersection")


def dmod_report(config: Configuration, gamma, k_max=None, window=None,
                budget=None) -> FiltrationReport:
    """Factor table of the filtration by boundary supports, with hypothesis flags."""
    gamma = tuple(Fraction(x) for x in gamma)
    resonance._require_in_span(config, gamma)
    by_codim = _faces_by_codim(config)
    factors = []
    for i in range(config.rank + 1):
        level = []
        for f in sorted(by_codim.get(i, []), key=lambda f: f.indices):
            if _in_col_span(config, f.indices, gamma):
                level.append(FactorLabel(i, f.indices, class_of(config, f, gamma)))
        factors.append(tuple(level))

    facet_faces = _resonant_facet_faces(config, gamma)
    simplicial = _simplicial_hypothesis(config, facet_faces)
    if simplicial:
        _check_minimal_resonant_intersection(config, gamma, facet_faces)
    normal, _ = config.is_normal()
    weak = resonance.classify(config, gamma).is_weak
    res = resonance.in_res(config, gamma)
    sres = resonance.in_sres(config, gamma, budget=budget)
    dres = resonance.in_dres(config, gamma, k_max=k_max, window=window, budget=budget)
    wres = resonance.in_wres(config, gamma, k_max=k_max, window=window, budget=budget)

    flags = {
        "simplicial_resonant_facets": simplicial,   # isomorphism hypothesis
        "normal_and_weak_nonresonant": normal and weak,  # semisimplicity hypothesis
        "normal": normal,
        "weak_nonresonant": weak,
        "resonance": {"res": res, "sres": sres,
                      "dres": dres.verdict, "wres": wres.verdict},
        "bounds": dict(dres.bounds),
    }
    notes = []
    if not res:
        notes.append("parameter is nonresonant: every filtration step equals "
                     "the minimal extension and the module is irreducible")
    cert = CERT_EPI
    if simplicial:
        cert = CERT_SEMISIMPLE if flags["normal_and_weak_nonresonant"] else CERT_ISO
    return FiltrationReport(kind="dmod", matrix=config.matrix, parameter=gamma,
                            factors=tuple(factors), flags=flags,
                            certification=cert, notes=tuple(notes))


def perverse_report(config: Configuration, cls: LocalSystemClass) -> FiltrationReport:
    """Factor table of the topological filtration of the pushed-forward character."""
    if tuple(cls.face_indices) != tuple(range(config.N)):
        raise DomainError("the class must live on the full column set")
    normal, _ = config.is_normal()
    by_codim = _faces_by_codim(config)
    factors = []
    solution_facets = []
    for i in range(config.rank + 1):
        level = []
        for f in sorted(by_codim.get(i, []), key=lambda f: f.indices):
            sols = pullback_solutions(config, f, cls)
            if normal and len(sols) > 1:
                raise GKZError("a normal configuration produced a torsion "
                               "face quotient")
            if i == 1 and sols:
                solution_facets.append(f)
            level.extend(FactorLabel(i, f.indices, c) for c in sols)
        factors.append(tuple(level))

    simplicial = _simplicial_hypothesis(config, solution_facets)
    notes = []
    if not simplicial:
        for i, level in enumerate(factors):
            bound = comb(config.rank, i)
            if len(level) > bound:
                notes.append(
                    f"codimension {i}: {len(level)} factors exceed the "
                    f"exterior-power count {bound} at the fixed point, "
                    f"flagging the canonical surjection as a non-isomorphism")
    flags = {
        "simplicial_solution_facets": simplicial,  # isomorphism hypothesis
        "normal": normal,
    }
    cert = CERT_ISO if simplicial else CERT_EPI
    return FiltrationReport(kind="perverse", matrix=config.matrix, parameter=cls,
                            factors=tuple(factors), flags=flags,
                            certification=cert, notes=tuple(notes))


# ---------------------------------------------------------------------------
# comparison of the two sides
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ComparisonReport:
    dmod: FiltrationReport
    perverse: FiltrationReport
    levels: tuple      # per-codimension dicts with counts and discrepancies
    matched: bool
    asserted: bool     # True when the match was certified and enforced
    notes: tuple = ()


def rh_compare(config: Configuration, gamma, k_max=None, window=None,
               budget=None) -> ComparisonReport:
    """Compare factor labels of the two filtrations codimension by codimension.

    When the configuration is normal and the parameter is weak-nonresonant the
    label multisets must agree and a mismatch raises; otherwise the per-level
    discrepancies are reported without asserting.
    """
    gamma = tuple(Fraction(x) for x in gamma)
    d = dmod_report(config, gamma, k_max=k_max, window=window, budget=budget)
    full = tuple(range(config.N))
    p = perverse_report(config, class_of(config, full, gamma))

    levels = []
    matched = True
    for i in range(config.rank + 1):
        dkeys = sorted(lbl.key() for lbl in d.factors[i])
        pkeys = sorted(lbl.key() for lbl in p.factors[i])
        dc, pc = Counter(dkeys), Counter(pkeys)
        d_only = sorted((dc - pc).elements())
        p_only = sorted((pc - dc).elements())
        ok = not d_only and not p_only
        matched = matched and ok
        levels.append({"codim": i, "dmod_count": len(dkeys),
                       "perverse_count": len(pkeys), "match": ok,
                       "dmod_only": tuple(d_only), "perverse_only": tuple(p_only)})

    certified = d.flags["normal_and_weak_nonresonant"]
    if certified and not matched:
        raise GKZError("label multisets disagree on a normal configuration "
                       "with a weak-nonresonant parameter")
    notes = []
    if not matched and not d.flags["normal"]:
        notes.append("the topological side follows the saturated filtration, "
                     "which can carry extra rank-one factors from the "
                     "normalization that the unsaturated side omits")
    return ComparisonReport(dmod=d, perverse=p, levels=tuple(levels),
                            matched=matched, asserted=certified,
                            notes=tuple(notes))


# ---------------------------------------------------------------------------
# saturation-gap labels (advisory)
# ---------------------------------------------------------------------------

def gap_factor_candidates(config: Configuration, budget=None) -> list:
    """Labels of the witnessed classes of the saturation gap, one per component.

    Advisory output: for a non-normal configuration these flag character
    classes that may appear as extra factors of the bottom filtration layer;
    the list is empty exactly when the configuration is normal.
    """
    labels = []
    for comp in qdeg_components(gap_family(), config, budget=budget):
        cls = _make_class(config, comp.face.indices, comp.base, require_span=False)
        labels.append(FactorLabel(comp.face.codim, comp.face.indices, cls))
    labels.sort(key=lambda l: (l.codim, l.face_indices, l.cls.canonical))
    return labels
