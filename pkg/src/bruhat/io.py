"""JSON formats for complexes, B-data, rook matrices, move scripts and traces.

All scalars are written as strings so that nothing passes through floating
point; indices are plain integers and 1-based.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Optional, Union

from .complex import BData, FilteredComplex, validate
from .enhanced_linear import RookMatrix
from .errors import InputError, InvalidComplex
from .linalg import Matrix
from .paths import Birth, Death, Move, Negate, PathTrace, Slide, Swap
from .scalars import Ring, parse_field


def dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _line_of(text: str, needle: str) -> Optional[int]:
    i = text.find(needle)
    return text.count("\n", 0, i) + 1 if i >= 0 else None


def read_json(path: Union[str, Path]):
    text = Path(path).read_text(encoding="utf-8")
    try:
        return json.loads(text), text
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


# ---------------------------------------------------------------- complexes

def complex_to_json(c: FilteredComplex) -> dict:
    names = [c.name(s) for s in range(1, c.n + 1)]
    return {
        "field": str(c.ring),
        "generators": [{"name": names[s - 1], "degree": c.deg(s)} for s in range(1, c.n + 1)],
        "boundary": [{"of": names[s - 1], "coeff": c.ring.format(v), "on": names[t - 1]}
                     for (t, s), v in sorted(c.boundary.items(), key=lambda kv: (kv[0][1], kv[0][0]))],
    }


def complex_from_json(obj, ring: Optional[Ring] = None, text: str = "") -> FilteredComplex:
    """Parse a complex; ``ring`` overrides the field named in the data."""
    def where(name):
        line = _line_of(text, f'"{name}"') if text else None
        return f" (line {line})" if line else ""

    if not isinstance(obj, dict):
        raise InputError("a complex must be a JSON object")
    try:
        file_ring = parse_field(str(obj.get("field", "Q")))
        gens = obj.get("generators", [])
        names = [str(g["name"]) for g in gens]
        degrees = [g["degree"] for g in gens]
    except (KeyError, TypeError):
        raise InputError("every generator needs a name and a degree") from None
    for name, d in zip(names, degrees):
        if not isinstance(d, int) or isinstance(d, bool):
            raise InputError(f"generator {name!r}{where(name)}: degree must be an integer")
    if len(set(names)) != len(names):
        dup = next(n for n in names if names.count(n) > 1)
        raise InputError(f"generator {dup!r}{where(dup)} is listed twice")
    index = {n: i + 1 for i, n in enumerate(names)}
    bd: dict = {}
    for e in obj.get("boundary", []):
        try:
            s, t, coeff = e["of"], e["on"], str(e["coeff"])
        except (KeyError, TypeError):
            raise InputError("boundary entries need 'of', 'coeff' and 'on'") from None
        for nm in (s, t):
            if nm not in index:
                raise InputError(f"boundary mentions unknown generator {nm!r}")
        try:
            v = file_ring.parse(coeff)
        except InputError as exc:
            raise InputError(f"boundary of {s!r}{where(s)}: {exc}") from None
        key = (index[t], index[s])
        bd[key] = bd.get(key, file_ring.zero) + v
    c = FilteredComplex(file_ring, degrees, bd, tuple(names))
    rep = validate(c)
    if not rep.ok:
        name = c.name(rep.where[-1]) if rep.where and 1 <= rep.where[-1] <= c.n else ""
        raise InvalidComplex(f"{rep.reason}{where(name) if name else ''}")
    if ring is not None and ring != file_ring:
        c = c.over(ring)
        rep = validate(c)
        if not rep.ok:
            raise InvalidComplex(rep.reason)
    return c


def load_complex(path, ring: Optional[Ring] = None) -> FilteredComplex:
    obj, text = read_json(path)
    try:
        return complex_from_json(obj, ring, text)
    except InputError as exc:
        raise type(exc)(f"{path}: {exc}") from None


# ---------------------------------------------------------------- B-data

def bdata_to_json(d: BData) -> dict:
    f = d.field
    fmt = f.format if f is not None else str
    return {
        "field": str(f) if f is not None else "Q",
        "n": d.n,
        "degrees": list(d.degrees),
        "pairs": [{"upper": s, "lower": t, "bruhat": fmt(v), "degree": d.deg(s)} for s, t, v in d.pairs],
        "homological": [{"index": s, "degree": d.deg(s)} for s in d.homological],
    }


def bdata_from_json(obj) -> BData:
    f = parse_field(obj.get("field", "Q"))
    pairs = tuple((p["upper"], p["lower"], f.parse(p["bruhat"])) for p in obj["pairs"])
    d = BData(obj["n"], tuple(obj["degrees"]), pairs, f)
    d.check()
    return d


def bdata_table(d: BData, names=None) -> str:
    def nm(s):
        return names[s - 1] if names else str(s)

    f = d.field
    lines = [f"{'upper':>8} {'lower':>8} {'deg':>4}  bruhat"]
    for s, t, v in d.pairs:
        lines.append(f"{nm(s):>8} {nm(t):>8} {d.deg(s):>4}  {f.format(v) if f else v}")
    if d.homological:
        lines.append("homological: " + ", ".join(f"{nm(s)} (deg {d.deg(s)})" for s in d.homological))
    else:
        lines.append("homological: none")
    return "\n".join(lines)


# ---------------------------------------------------------------- rook and plain matrices

def rook_to_json(r: RookMatrix, field: Ring) -> dict:
    return {"rows": r.rows, "cols": r.cols, "hits": [[i, j, field.format(v)] for i, j, v in r.hits]}


def rook_from_json(obj, field: Ring) -> RookMatrix:
    return RookMatrix(obj["rows"], obj["cols"], tuple((i, j, field.parse(str(v))) for i, j, v in obj["hits"]))


def matrix_to_json(m: Matrix) -> list:
    return [[m.field.format(x) for x in row] for row in m.data]


def matrix_from_json(obj, field: Ring, rows: Optional[int] = None, cols: Optional[int] = None) -> Matrix:
    data = [[field.parse(str(x)) for x in row] for row in obj]
    return Matrix(field, data, rows if rows is not None else len(data), cols)


# ---------------------------------------------------------------- scripts and traces

def move_to_json(m: Move) -> dict:
    if isinstance(m, Birth):
        return {"move": "birth", "position": m.position, "degree": m.degree, "sign": m.sign}
    if isinstance(m, Slide):
        return {"move": "slide", "position": m.position, "coeff": m.coeff}
    return {"move": m.kind, "position": m.position}


def move_from_json(obj) -> Move:
    try:
        kind = obj["move"]
        p = int(obj["position"])
        if kind == "birth":
            return Birth(p, int(obj["degree"]), int(obj.get("sign", 1)))
        if kind == "death":
            return Death(p)
        if kind == "swap":
            return Swap(p)
        if kind == "slide":
            return Slide(p, int(obj["coeff"]))
        if kind == "negate":
            return Negate(p)
    except (KeyError, TypeError, ValueError):
        raise InputError(f"malformed move {obj!r}") from None
    raise InputError(f"unknown move kind {obj.get('move')!r}")


def script_to_json(script) -> list:
    return [move_to_json(m) for m in script]


def script_from_json(obj) -> list:
    if not isinstance(obj, list):
        raise InputError("a move script is a JSON list")
    return [move_from_json(x) for x in obj]


def trace_to_json(trace: PathTrace) -> dict:
    f = trace.field
    return {
        "field": str(f),
        "start": bdata_to_json(trace.start_bdata),
        "steps": [{"move": move_to_json(s.move), "event": s.event,
                   "cusp_sign": s.cusp_sign, "tau_prime": f.format(s.tau_prime),
                   "bdata": bdata_to_json(s.bdata)} for s in trace.steps],
        "maxwell_count": trace.maxwell_count,
        "cusps": [{"kind": k, "sign": sg} for k, sg in trace.cusps],
        "negative_cusps": trace.negative_cusps,
        "orientation_flips": trace.orientation_flips,
        "tau_prime": [f.format(x) for x in trace.tau_prime_ledger],
    }
