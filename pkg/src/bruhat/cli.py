"""Command-line front end.

Exit codes: 0 on success, 1 for bad input, 2 when an invariant that must
always hold is found broken (the report is printed so it can be reproduced).
"""
from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction

from . import gallery
from .complex import (
    bdata,
    homology_enhancement,
    induced_map_rook,
    pair_by_dims,
    poincare_dual,
    rel_dims,
    slice_bdata,
    slice_complex,
    upside_down,
)
from .errors import BruhatError, InputError, InvariantViolation
from .integral import check_pair_torsion_formula, check_pm1_equivalence, short_pair_check
from .io import (
    bdata_table,
    bdata_to_json,
    complex_to_json,
    dumps,
    load_complex,
    matrix_from_json,
    read_json,
    rook_to_json,
    script_from_json,
    script_to_json,
    trace_to_json,
)
from .paths import akh_report, empty_state, random_closed_script, realize, run, simulate
from .scalars import QQ, ZZ, Integers, PrimeField, parse_field
from .torsion import milnor_torsion, overlaps, perm_sigma, tau, tau_prime


def _field_arg(text):
    try:
        return parse_field(text)
    except InputError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _load(path, field):
    c = load_complex(path, field)
    if field is None and isinstance(c.ring, Integers):
        c = c.over(QQ)
    return c


def _emit(obj):
    sys.stdout.write(dumps(obj))


def cmd_bdata(args):
    c = _load(args.input, args.field)
    d = bdata(c)
    _emit(bdata_to_json(d))
    print(bdata_table(d, c.names), file=sys.stderr)
    return 0


def cmd_torsion(args):
    c = _load(args.input, args.field)
    d = bdata(c)
    t = tau(d)
    oracle = milnor_torsion(c, homology_enhancement(c))
    f = c.field
    _emit({
        "tau": f.format(t.value),
        "tau_abs": f.format(t.abs),
        "sigma_sign": perm_sigma(d).sign,
        "tau_prime": f.format(tau_prime(d).value),
        "overlaps": overlaps(d),
        "oracle_agrees": oracle.value == t.value,
    })
    if oracle.value != t.value:
        print(f"torsion oracle gives {f.format(oracle.value)}", file=sys.stderr)
        return 2
    return 0


def cmd_duality(args):
    c = _load(args.input, args.field)
    top = args.top if args.top is not None else max(c.degrees, default=0)
    dual = poincare_dual(c, top)
    d, dd = bdata(c), bdata(dual)
    agrees = dd == upside_down(d, top)
    _emit({"complex": complex_to_json(dual), "bdata": bdata_to_json(dd), "upside_down_agrees": agrees})
    return 0 if agrees else 2


def cmd_slice(args):
    c = _load(args.input, args.field)
    s = slice_complex(c, args.l, args.m)
    direct = bdata(s)
    agrees = direct == slice_bdata(bdata(c), args.l, args.m)
    _emit({"complex": complex_to_json(s), "bdata": bdata_to_json(direct), "coherent": agrees})
    return 0 if agrees else 2


def cmd_rel_dims(args):
    c = _load(args.input, args.field)
    dims = rel_dims(c, args.s, args.t)
    is_pair = bdata(c).b.get(args.s) == args.t
    crit = pair_by_dims(dims)
    _emit({"dims": list(dims), "pair_by_dims": crit, "is_pair": is_pair})
    return 0 if crit == is_pair else 2


def cmd_induced_map(args):
    a = _load(args.source, args.field)
    b = _load(args.target, args.field)
    obj, _ = read_json(args.map)
    f = a.field
    maps = {}
    for k, rows in obj.items():
        k = int(k)
        maps[k] = matrix_from_json(rows, f, len(b.positions(k)), len(a.positions(k)))
    rooks = induced_map_rook(a, b, maps)
    _emit({str(k): rook_to_json(r, f) for k, r in sorted(rooks.items())})
    return 0


def cmd_int_check(args):
    c = load_complex(args.input, ZZ)
    rng = random.Random(args.seed)
    pairs = check_pair_torsion_formula(c)
    shorts = short_pair_check(c, rng=rng)
    try:
        pm1 = list(check_pm1_equivalence(c))
        pm1_ok = True
    except InvariantViolation as exc:
        print(str(exc), file=sys.stderr)
        pm1, pm1_ok = None, False
    ok = pm1_ok and all(p.ok for p in pairs) and all(p.ok for p in shorts)
    _emit({
        "pairs": [{"upper": p.upper, "lower": p.lower, "bruhat": str(p.bruhat),
                   "numerator": p.numerator, "denominator": p.denominator, "pass": p.ok} for p in pairs],
        "short_pairs": [{"upper": p.upper, "lower": p.lower, "bruhat": str(p.bruhat),
                         "raw": str(p.raw), "stable": p.stable, "pass": p.ok} for p in shorts],
        "pm1": pm1,
        "ok": ok,
    })
    return 0 if ok else 2


def cmd_simulate(args):
    field = args.field or QQ
    if args.random is not None:
        passed, failures = 0, []
        for i in range(args.random):
            rng = random.Random(f"{args.seed}:{i}")
            start, script = random_closed_script(rng)
            rep = akh_report(simulate(script, start, field))
            if rep.ok:
                passed += 1
            else:
                failures.append({"trial": i, "failed_step": rep.failed_step,
                                 "start": complex_to_json(start), "script": script_to_json(script)})
        _emit({"field": str(field), "seed": args.seed, "trials": args.random,
               "passed": passed, "failures": failures})
        return 0 if not failures else 2
    if args.script is None:
        raise InputError("simulate needs a script file or --random N")
    obj, _ = read_json(args.script)
    script = script_from_json(obj)
    start = load_complex(args.start, ZZ) if args.start else empty_state()
    trace = simulate(script, start, field)
    out = trace_to_json(trace)
    try:
        rep = akh_report(trace)
        out["akh"] = {"pass": rep.ok, "identity": rep.identity, "corollary": rep.corollary,
                      "failed_step": rep.failed_step}
    except InputError as exc:
        out["akh"] = {"pass": None, "skipped": str(exc)}
        rep = None
    _emit(out)
    return 2 if rep is not None and not rep.ok else 0


def cmd_realize(args):
    field = args.field or QQ
    base = load_complex(args.base, ZZ) if args.base else empty_state()
    try:
        lam = Fraction(args.value)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"not a rational number: {args.value!r}") from None
    if isinstance(field, PrimeField) and lam.denominator != 1:
        lam = Fraction(field.coerce(lam).value)
    script = realize(lam, base, args.degree, args.position, field)
    d = bdata(run(base, script).over(field))
    target = field.coerce(lam)
    vals = [v for _, _, v in d.pairs]
    if target not in vals or -1 / target not in vals:
        print("realized B-data lacks the requested numbers", file=sys.stderr)
        return 2
    _emit(script_to_json(script))
    return 0


def cmd_gen(args):
    ring = args.field or ZZ
    c = gallery.generate(args.name, args.params, ring)
    _emit(complex_to_json(c))
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="bruhat", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def with_field(p):
        p.add_argument("--field", type=_field_arg, default=None,
                       help="Q or Fp:<p>; overrides the field named in the file")
        return p

    p = with_field(sub.add_parser("bdata", help="Barannikov pairs and Bruhat numbers"))
    p.add_argument("input")
    p.set_defaults(func=cmd_bdata)

    p = with_field(sub.add_parser("torsion", help="tau, tau' and the torsion cross-check"))
    p.add_argument("input")
    p.set_defaults(func=cmd_torsion)

    p = with_field(sub.add_parser("duality", help="dual complex and upside-down B-data check"))
    p.add_argument("input")
    p.add_argument("--top", type=int, default=None, help="top degree (default: largest present)")
    p.set_defaults(func=cmd_duality)

    p = with_field(sub.add_parser("slice", help="the subquotient (l, m] and its B-data"))
    p.add_argument("input")
    p.add_argument("l", type=int)
    p.add_argument("m", type=int)
    p.set_defaults(func=cmd_slice)

    p = with_field(sub.add_parser("rel-dims", help="four relative homology dimensions around (s, t)"))
    p.add_argument("input")
    p.add_argument("s", type=int)
    p.add_argument("t", type=int)
    p.set_defaults(func=cmd_rel_dims)

    p = with_field(sub.add_parser("induced-map", help="rook matrices of a chain map on homology"))
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("map", help='JSON object {"k": [[...], ...]} of per-degree matrices')
    p.set_defaults(func=cmd_induced_map)

    p = sub.add_parser("int-check", help="torsion-ratio, short-pair and +-1 checks on a Z complex")
    p.add_argument("input")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_int_check)

    p = with_field(sub.add_parser("simulate", help="run a move script and check the parity law"))
    p.add_argument("script", nargs="?")
    p.add_argument("--start", help="start complex (default: empty)")
    p.add_argument("--random", type=int, default=None, metavar="N",
                   help="run N seeded random closed scripts instead")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_simulate)

    p = with_field(sub.add_parser("realize", help="script producing a given Bruhat number"))
    p.add_argument("value", help="integer or a/b")
    p.add_argument("--degree", type=int, default=2, help="degree of the new upper points")
    p.add_argument("--base", help="complex to insert into (default: empty)")
    p.add_argument("--position", type=int, default=None)
    p.set_defaults(func=cmd_realize)

    p = with_field(sub.add_parser("gen", help="write a named example complex"))
    p.add_argument("name", help="rp N | cp2 | sphere N | lens P | eight | random SEED [SIZE]")
    p.add_argument("params", nargs="*")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InvariantViolation as exc:
        print(f"invariant violated: {exc}", file=sys.stderr)
        return 2
    except (BruhatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
