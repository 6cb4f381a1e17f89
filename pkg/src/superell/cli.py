"""Command-line driver.

Reads a curve spec (JSON: {"n": 4, "f": [...] or [["x^2-3", 1], ...],
"p": 3}), runs the pipeline and prints either a human-readable derivation
trail or canonical JSON.  Exit codes: 0 success, 2 validation failure,
3 catalog exhausted, 4 precision exhausted, 5 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys

from .curve import SuperellipticCurve
from .errors import SuperellError
from .fieldsearch import SearchConfig, build_tower
from .pipeline import compute_with_retry


def _parser():
    ap = argparse.ArgumentParser(
        prog="superell",
        description="Local L-factor and conductor exponent of a "
                    "superelliptic curve y^n = f(x) over Q at a prime p "
                    "(p not dividing n), via semistable reduction.")
    ap.add_argument("input", help="path to the curve spec JSON "
                                  "('-' for stdin)")
    ap.add_argument("--precision", type=int, default=50,
                    help="p-adic working precision in digits (default 50, "
                         "minimum 8)")
    ap.add_argument("--max-cyclotomic", type=int, default=64,
                    help="catalog bound on the p-power cyclotomic part "
                         "(default 64)")
    ap.add_argument("--max-degree", type=int, default=64,
                    help="catalog bound on the field degree (default 64)")
    ap.add_argument("--field-tower", metavar="PATH", default=None,
                    help="JSON spec of an explicit field tower to use "
                         "instead of the catalog search")
    ap.add_argument("--json", action="store_true",
                    help="print the full result as canonical JSON")
    ap.add_argument("--trace", action="store_true",
                    help="print pipeline stages to stderr")
    return ap


def _load_json(path):
    if path == "-":
        return json.load(sys.stdin)
    with open(path) as fh:
        return json.load(fh)


def _ascii_tree(tree, result):
    lines = []
    red = result.fiber.reductions

    def walk(v, prefix):
        r = red[v]
        marked = tree.vertices[v].marked
        lines.append(
            f"{prefix}v{v}  radius {tree.vertices[v].disc_radius}/"
            f"{result.L.e}  eta(f) = {r.eta_vp1}  n_v = {r.n_v}  "
            f"genus {r.component_genus}  marked {marked}")
        for c in tree.vertices[v].children:
            walk(c, prefix + "    ")

    walk(tree.root, "")
    return "\n".join(lines)


def _poly_str(coeffs, var="T"):
    terms = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        if i == 0:
            terms.append(str(c))
        elif i == 1:
            terms.append(f"{c}*{var}" if c != 1 else var)
        else:
            terms.append(f"{c}*{var}^{i}" if c != 1 else f"{var}^{i}")
    return " + ".join(terms) if terms else "0"


def _print_text(result):
    curve = result.curve
    cond = result.conductor
    print(f"curve: y^{curve.n} = f(x), deg f = {curve.degree()}, "
          f"p = {curve.p}, genus = {curve.genus()}")
    print(f"field: {result.L.label}  [L:Q_p] = {result.L.degree}, "
          f"e = {result.L.e}, f = {result.L.f}")
    print(f"Galois group: order {result.G.order()}, inertia "
          f"{len(result.G.inertia)}, ramification filtration sizes "
          f"{[len(g) for g in result.filt.groups]}")
    print("marked tree (specialization and reduction data):")
    print(_ascii_tree(result.tree, result))
    print("inertial reduction components:")
    for comp in result.inertial.components:
        for piece in comp.geometric_pieces:
            eq = piece["equation"]
            print(f"  z^{piece['n_geo']} = {eq!r} over GF({eq.field.q}) "
                  f"(orbit size {piece['d_j']}, genus {piece['genus']})")
    print("node orbits (size, epsilon):",
          result.inertial.node_orbit_data())
    print(f"dim H^1 = {result.inertial.dim_h1}")
    print(f"P1(T) = {_poly_str(result.lfactor.p1)}")
    print(f"conductor exponent: f = epsilon + delta = {cond.epsilon} + "
          f"{cond.delta} = {cond.conductor}")


def main(argv=None):
    args = _parser().parse_args(argv)
    if args.precision < 8:
        print("error: precision must be at least 8", file=sys.stderr)
        return 2
    config = SearchConfig(precision=args.precision,
                          max_cyclotomic=args.max_cyclotomic,
                          max_degree=args.max_degree)
    trace = sys.stderr if args.trace else None
    try:
        spec = _load_json(args.input)
        curve = SuperellipticCurve.from_json_dict(spec)
        explicit = None
        if args.field_tower:
            tower = _load_json(args.field_tower)
            modulus = tower.get("unramified_modulus")
            f0 = len(modulus) - 1 if modulus else 1
            explicit = build_tower(
                tower["p"], f0, tower.get("eisenstein", []),
                tower.get("precision", args.precision),
                unramified_modulus=modulus)
        result = compute_with_retry(curve, config, explicit_field=explicit,
                                    trace=trace)
    except SuperellError as exc:
        diag = {"error": type(exc).__name__, "message": str(exc),
                "exit_code": exc.exit_code}
        if args.json:
            print(json.dumps(diag, sort_keys=True))
        else:
            print(f"error [{type(exc).__name__}]: {exc}", file=sys.stderr)
        return exc.exit_code
    except (OSError, ValueError, KeyError) as exc:
        print(f"error reading input: {exc}", file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps(result.to_json_dict(), sort_keys=True,
                         separators=(",", ":")))
    else:
        _print_text(result)
    return 0


if __name__ == "__main__":
    sys.exit(main())
