"""Command-line front end.

Commands take one input document (JSON file path or ``-`` for stdin):

    {"matrix": [[2, 3]], "gamma": ["1/2"], "character": ["0"],
     "bounds": {"K_max": 4, "W": 20, "R": 8}}

All rational numbers cross the boundary as exact "p/q" strings.  Exit codes:
0 success, 2 invalid input, 3 computation budget exceeded, 4 a bounded
(``false_up_to_bounds``) verdict was demanded as definite via ``--strict``.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from importlib import resources

from . import bruteforce, factors, resonance
from .cones import Configuration
from .degrees import TriState
from .errors import ComputationLimitError, DomainError, GKZError

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_LIMIT = 3
EXIT_STRICT = 4


# ---------------------------------------------------------------------------
# exact-rational (de)serialization
# ---------------------------------------------------------------------------

def _fr(x) -> str:
    return str(Fraction(x))


def _parse_fr(s) -> Fraction:
    try:
        return Fraction(str(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"not an exact rational: {s!r}") from exc


def _vec(v):
    return [_fr(x) for x in v]


def _parse_vec(v):
    return tuple(_parse_fr(x) for x in v)


def _tristate(t: TriState):
    return {"verdict": t.verdict,
            "bounds": {k: (v if not isinstance(v, Fraction) else _fr(v))
                       for k, v in sorted(t.bounds.items())}}


def _cls(c: factors.LocalSystemClass):
    return {"face": list(c.face_indices),
            "representative": _vec(c.representative),
            "canonical": _vec(c.canonical),
            "order": c.order,
            "trivial": c.is_trivial}


def _label(l: factors.FactorLabel):
    return {"codim": l.codim, "face": list(l.face_indices),
            "class": _cls(l.cls), "multiplicity": l.multiplicity}


def _filtration(r: factors.FiltrationReport):
    out = {
        "kind": r.kind,
        "matrix": [list(row) for row in r.matrix],
        "parameter": (_vec(r.parameter) if r.kind == "dmod"
                      else _cls(r.parameter)),
        "factors": {str(i): [_label(l) for l in level]
                    for i, level in enumerate(r.factors)},
        "flags": _plain(r.flags),
        "certification": r.certification,
        "notes": list(r.notes),
    }
    return out


def _plain(obj):
    """Recursively convert flags/bounds to JSON-safe exact values."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, Fraction):
        return _fr(obj)
    if isinstance(obj, TriState):
        return _tristate(obj)
    return obj


def _has_bounded_verdict(obj) -> bool:
    if isinstance(obj, dict):
        if obj.get("verdict") == "false_up_to_bounds":
            return True
        return any(_has_bounded_verdict(v) for v in obj.values())
    if isinstance(obj, list):
        return any(_has_bounded_verdict(v) for v in obj)
    return False


# ---------------------------------------------------------------------------
# input documents
# ---------------------------------------------------------------------------

def _load_document(path: str) -> dict:
    try:
        text = sys.stdin.read() if path == "-" else open(path).read()
        doc = json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise DomainError(f"cannot read input document: {exc}") from exc
    if not isinstance(doc, dict) or "matrix" not in doc:
        raise DomainError("input document must be an object with a 'matrix'")
    m = doc["matrix"]
    if (not m or not all(isinstance(r, list) for r in m)
            or len({len(r) for r in m}) != 1
            or not all(isinstance(x, int) for r in m for x in r)):
        raise DomainError("'matrix' must be a rectangular integer array")
    return doc


def _config(doc: dict) -> Configuration:
    return Configuration(doc["matrix"])


def _gamma(doc: dict, args, config: Configuration):
    raw = getattr(args, "gamma", None) or doc.get("gamma")
    if raw is None:
        raise DomainError("a parameter is required ('gamma' in the document "
                          "or --gamma)")
    if isinstance(raw, str):
        raw = raw.split(",")
    v = _parse_vec(raw)
    if len(v) != config.n:
        raise DomainError("parameter length does not match the matrix")
    return v


def _character(doc: dict, args, config: Configuration) -> factors.LocalSystemClass:
    raw = getattr(args, "character", None) or doc.get("character")
    if raw is None:
        return factors.trivial_class(config)
    if isinstance(raw, str):
        raw = raw.split(",")
    v = _parse_vec(raw)
    if len(v) != config.n:
        raise DomainError("character length does not match the matrix")
    return factors.class_of(config, tuple(range(config.N)), v)


def _bounds(doc: dict):
    b = doc.get("bounds", {}) or {}
    return {"k_max": b.get("K_max"), "window": b.get("W")}


# ---------------------------------------------------------------------------
# command payloads
# ---------------------------------------------------------------------------

def cmd_faces(doc, args):
    config = _config(doc)
    return {
        "matrix": doc["matrix"],
        "rank": config.rank,
        "pointed": config.is_pointed(),
        "faces": [{"columns": list(f.indices), "codim": f.codim}
                  for f in config.all_faces()],
        "facets": [{"columns": list(f.face.indices),
                    "functional": _vec(f.l)} for f in config.facets()],
    }


def cmd_normality(doc, args):
    config = _config(doc)
    normal, hole = config.is_normal()
    return {
        "matrix": doc["matrix"],
        "normal": normal,
        "hole": list(hole) if hole is not None else None,
        "hilbert_basis": sorted(list(h) for h in config.saturation_hilbert_basis()),
    }


def cmd_resonance(doc, args):
    config = _config(doc)
    gamma = _gamma(doc, args, config)
    prof = resonance.classify(config, gamma)
    b = _bounds(doc)
    return {
        "matrix": doc["matrix"],
        "gamma": _vec(gamma),
        "facet_values": [{"face": list(idx), "value": _fr(v)}
                         for idx, v in prof.facet_values],
        "nonresonant": prof.is_nonresonant,
        "weak_nonresonant": prof.is_weak,
        "semi_nonresonant": prof.is_semi,
        "resonant_facets": [list(idx) for idx in prof.resonant_facets],
        "sets": {
            "res": resonance.in_res(config, gamma),
            "sres": resonance.in_sres(config, gamma),
            "dres": _tristate(resonance.in_dres(config, gamma, **b)),
            "wres": _tristate(resonance.in_wres(config, gamma, **b)),
            "SRes": resonance.in_SRes(config, gamma),
            "DRes": resonance.in_DRes(config, gamma),
        },
    }


def _parse_box(spec: str):
    box = []
    for part in spec.split(","):
        lo, _, hi = part.partition(":")
        box.append((_parse_fr(lo), _parse_fr(hi)))
    return box


def cmd_sets(doc, args):
    config = _config(doc)
    if args.name not in resonance.SET_NAMES:
        raise DomainError(f"unknown set name: {args.name}")
    box = _parse_box(args.box)
    if len(box) != config.n:
        raise DomainError("box dimension does not match the matrix")
    step = _parse_fr(args.step)
    b = _bounds(doc)
    grid = resonance.region_scan(config, args.name, box, step,
                                 k_max=b["k_max"], window=b["window"])
    return {
        "matrix": doc["matrix"],
        "set": args.name,
        "box": [[_fr(lo), _fr(hi)] for lo, hi in box],
        "step": _fr(step),
        "grid": [{"gamma": _vec(cell["gamma"]),
                  "verdict": (cell["verdict"] if isinstance(cell["verdict"], str)
                              else _tristate(cell["verdict"])["verdict"])}
                 for cell in grid],
    }


def cmd_factors(doc, args):
    config = _config(doc)
    b = _bounds(doc)
    if args.table == "dmod":
        return _filtration(factors.dmod_report(config, _gamma(doc, args, config),
                                               k_max=b["k_max"], window=b["window"]))
    if args.table == "perverse":
        return _filtration(factors.perverse_report(config,
                                                   _character(doc, args, config)))
    cmp = factors.rh_compare(config, _gamma(doc, args, config),
                             k_max=b["k_max"], window=b["window"])
    return {
        "dmod": _filtration(cmp.dmod),
        "perverse": _filtration(cmp.perverse),
        "levels": [_plain(lv) for lv in cmp.levels],
        "matched": cmp.matched,
        "asserted": cmp.asserted,
        "notes": list(cmp.notes),
    }


def cmd_gap_factors(doc, args):
    config = _config(doc)
    return {
        "matrix": doc["matrix"],
        "advisory": True,
        "note": ("labels of witnessed saturation-gap classes; candidate extra "
                 "bottom-layer factors, not a certified classification"),
        "labels": [_label(l) for l in factors.gap_factor_candidates(config)],
    }


# ---------------------------------------------------------------------------
# fixtures and suites
# ---------------------------------------------------------------------------

def _fixture_files():
    root = resources.files("gkzfactors") / "fixtures"
    return sorted(p for p in root.iterdir() if p.name.endswith(".json"))


def _diff(expected, actual, path=""):
    """Flat list of mismatch strings between two JSON-like values."""
    if isinstance(expected, dict) and isinstance(actual, dict):
        out = []
        for k, v in expected.items():
            if k not in actual:
                out.append(f"{path}/{k}: missing")
            else:
                out.extend(_diff(v, actual[k], f"{path}/{k}"))
        return out
    if isinstance(expected, list) and isinstance(actual, list):
        if len(expected) != len(actual):
            return [f"{path}: length {len(actual)} != expected {len(expected)}"]
        return [d for i, (e, a) in enumerate(zip(expected, actual))
                for d in _diff(e, a, f"{path}[{i}]")]
    if expected != actual:
        return [f"{path}: {actual!r} != expected {expected!r}"]
    return []


def run_fixture(fix: dict) -> list:
    """Evaluate one golden fixture; returns a list of mismatch strings."""
    doc = {"matrix": fix["matrix"], "bounds": fix.get("bounds")}
    expect = fix["expect"]
    ns = argparse.Namespace(gamma=None, character=None)
    mismatches = []

    if "faces" in expect:
        mismatches += _diff(expect["faces"], cmd_faces(doc, ns), "faces")
    if "normality" in expect:
        mismatches += _diff(expect["normality"], cmd_normality(doc, ns),
                            "normality")
    if "resonance" in expect:
        sub = dict(expect["resonance"])
        ns2 = argparse.Namespace(gamma=sub.pop("gamma"), character=None)
        mismatches += _diff(sub, cmd_resonance(doc, ns2), "resonance")
    for probe in expect.get("set_probes", []):
        config = _config(doc)
        gamma = _parse_vec(probe["gamma"])
        name = probe["name"]
        if name in ("dres", "wres"):
            b = _bounds(doc)
            verdict = getattr(resonance, f"in_{name}")(config, gamma, **b).verdict
        else:
            verdict = ("true" if getattr(resonance, f"in_{name}")(config, gamma)
                       else "false")
        if verdict != probe["verdict"]:
            mismatches.append(f"set_probe {name}@{probe['gamma']}: "
                              f"{verdict} != expected {probe['verdict']}")
    for spec in expect.get("sets", []):
        ns2 = argparse.Namespace(name=spec["name"], box=spec["box"],
                                 step=spec.get("step", "1"))
        payload = cmd_sets(doc, ns2)
        truth = [c["gamma"] for c in payload["grid"] if c["verdict"] == "true"]
        mismatches += _diff(spec["true_points"], truth,
                            f"sets/{spec['name']}")
    if "dmod" in expect:
        sub = dict(expect["dmod"])
        ns2 = argparse.Namespace(gamma=sub.pop("gamma"), character=None,
                                 table="dmod")
        mismatches += _diff(sub, cmd_factors(doc, ns2), "dmod")
    if "perverse" in expect:
        sub = dict(expect["perverse"])
        ns2 = argparse.Namespace(gamma=None, character=sub.pop("character", None),
                                 table="perverse")
        mismatches += _diff(sub, cmd_factors(doc, ns2), "perverse")
    if "compare" in expect:
        sub = dict(expect["compare"])
        ns2 = argparse.Namespace(gamma=sub.pop("gamma"), character=None,
                                 table="compare")
        mismatches += _diff(sub, cmd_factors(doc, ns2), "compare")
    if "gap_factors" in expect:
        mismatches += _diff(expect["gap_factors"], cmd_gap_factors(doc, ns),
                            "gap_factors")
    return mismatches


def cmd_verify(args):
    payload = {"fixtures": [], "suite": None, "ok": True}
    if args.suite:
        rep = bruteforce.property_suite(instances=args.instances)
        payload["suite"] = {"instances": rep.instances, "checks": rep.checks,
                            "failures": rep.failures, "notes": rep.notes}
        payload["ok"] = payload["ok"] and rep.ok
    if args.fixtures or not args.suite:
        for path in _fixture_files():
            fix = json.loads(path.read_text())
            if args.filter and args.filter not in fix["name"]:
                continue
            mismatches = run_fixture(fix)
            payload["fixtures"].append({"name": fix["name"],
                                        "ok": not mismatches,
                                        "diff": mismatches})
            payload["ok"] = payload["ok"] and not mismatches
    return payload


# ---------------------------------------------------------------------------
# rendering and dispatch
# ---------------------------------------------------------------------------

def _render_text(payload, out):
    def walk(obj, indent=0):
        pad = "  " * indent
        if isinstance(obj, dict):
            for k, v in obj.items():
                if isinstance(v, (dict, list)) and v:
                    out.write(f"{pad}{k}:\n")
                    walk(v, indent + 1)
                else:
                    out.write(f"{pad}{k}: {v if v != [] else '[]'}\n")
        elif isinstance(obj, list):
            for v in obj:
                if isinstance(v, (dict, list)):
                    walk(v, indent)
                    out.write("\n" if indent == 0 else "")
                else:
                    out.write(f"{pad}- {v}\n")
        else:
            out.write(f"{pad}{obj}\n")
    walk(payload)


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--json", action="store_true",
                        help="machine-readable output with exact 'p/q' rationals")
    shared.add_argument("--strict", action="store_true",
                        help="exit 4 when any verdict is only false-up-to-bounds")
    p = argparse.ArgumentParser(
        prog="gkzfactors",
        description="Exact combinatorial classification of composition-factor "
                    "labels for hypergeometric systems attached to an integer "
                    "configuration.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help, **kw):
        return sub.add_parser(name, help=help, parents=[shared], **kw)

    def common(sp, gamma=False, character=False):
        sp.add_argument("input", help="JSON input document, or '-' for stdin")
        if gamma:
            sp.add_argument("--gamma", help="comma-separated exact rationals")
        if character:
            sp.add_argument("--character",
                            help="comma-separated exact rationals")

    common(add("faces", "face lattice and facet functionals"))
    common(add("normality", "normality, hole, Hilbert basis"))
    common(add("resonance", "facet values, flags, set memberships"), gamma=True)
    sp = add("sets", "grid scan of one resonance locus")
    sp.add_argument("name", choices=resonance.SET_NAMES)
    sp.add_argument("--box", required=True,
                    help="per-axis lo:hi ranges, comma-separated "
                         "(use --box=-6:6 for negative bounds)")
    sp.add_argument("--step", default="1")
    common(sp)
    sp = add("factors", "composition-factor tables")
    sp.add_argument("table", choices=("dmod", "perverse", "compare"))
    common(sp, gamma=True, character=True)
    common(add("gap-factors", "advisory saturation-gap factor labels"))
    sp = add("verify", "golden fixtures and randomized suite")
    sp.add_argument("--suite", action="store_true")
    sp.add_argument("--fixtures", action="store_true")
    sp.add_argument("--filter", default=None)
    sp.add_argument("--instances", type=int, default=12)
    return p


_COMMANDS = {
    "faces": cmd_faces,
    "normality": cmd_normality,
    "resonance": cmd_resonance,
    "sets": cmd_sets,
    "factors": cmd_factors,
    "gap-factors": cmd_gap_factors,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            payload = cmd_verify(args)
        else:
            doc = _load_document(args.input)
            payload = _COMMANDS[args.command](doc, args)
    except ComputationLimitError as exc:
        print(f"computation limit exceeded: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (DomainError, GKZError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID

    if args.json:
        json.dump(payload, sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        _render_text(payload, sys.stdout)

    if args.command == "verify" and not payload["ok"]:
        return 1
    if args.strict and _has_bounded_verdict(payload):
        return EXIT_STRICT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
