"""Serialization: rationals as "p/q" strings, JSON inputs, and PORTA-style ieq/poi files.

Parsers raise :class:`ParseError` carrying a 1-based line and column.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction

from . import exact as ex
from .inequalities import InequalityError, LinearInequality


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)
        self.line = line
        self.column = column


# --- rationals ---------------------------------------------------------------------

_RATIONAL = re.compile(r"^\s*[+-]?\d+(\s*/\s*[+-]?\d+)?\s*$")


def format_rational(x) -> str:
    return ex.fmt(x)


def parse_rational(s, line: int = 0, column: int = 0) -> Fraction:
    """Accept ints and "p/q" strings; JSON floats are rejected to keep values exact."""
    if isinstance(s, bool):
        raise ParseError(f"expected a rational, got {s!r}", line, column)
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, str) and _RATIONAL.match(s):
        try:
            return Fraction(s.replace(" ", ""))
        except ZeroDivisionError:
            raise ParseError(f"zero denominator in {s!r}", line, column) from None
    raise ParseError(f"expected a rational like '-3/2', got {s!r}", line, column)


def parse_number(s) -> float:
    """Float-valued input: numbers or rational strings."""
    if isinstance(s, (int, float)) and not isinstance(s, bool):
        return float(s)
    return float(parse_rational(s))


def parse_vector_arg(text: str) -> tuple[Fraction, ...]:
    """Comma-separated rationals from the command line, e.g. ``1,-1/2,0``."""
    out = []
    col = 1
    for tok in text.split(","):
        out.append(parse_rational(tok.strip(), 1, col))
        col += len(tok) + 1
    return tuple(out)


# --- JSON ----------------------------------------------------------------------------


def load_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno, e.colno) from None


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _require(obj: dict, key: str, where: str):
    if not isinstance(obj, dict) or key not in obj:
        raise ParseError(f"{where}: missing key {key!r}")
    return obj[key]


def parse_apartment(obj) -> tuple[str, list]:
    """``{root_system, points: [{word: [ints], h: [rationals]}]}``."""
    name = _require(obj, "root_system", "apartment")
    points = []
    for k, p in enumerate(_require(obj, "points", "apartment")):
        word = _require(p, "word", f"point {k}")
        if not all(isinstance(i, int) and not isinstance(i, bool) for i in word):
            raise ParseError(f"point {k}: word must be a list of integers")
        h = [parse_rational(x) for x in _require(p, "h", f"point {k}")]
        points.append((tuple(word), h))
    return name, points


def apartment_to_json(name: str, points) -> dict:
    return {"root_system": name,
            "points": [{"word": list(w), "h": [format_rational(x) for x in h]} for w, h in points]}


def parse_grassmannian(obj) -> dict:
    """``{n, q, form?, atoms: [{basis, mass}]}`` with rational entries."""
    n = _require(obj, "n", "grassmannian")
    q = _require(obj, "q", "grassmannian")
    form = obj.get("form")
    if form is not None:
        form = [[parse_rational(x) for x in r] for r in form]
    atoms = []
    for k, a in enumerate(_require(obj, "atoms", "grassmannian")):
        basis = [[parse_rational(x) for x in r] for r in _require(a, "basis", f"atom {k}")]
        atoms.append((basis, parse_rational(_require(a, "mass", f"atom {k}"))))
    return {"n": n, "q": q, "form": form, "atoms": atoms}


def grassmannian_to_json(n: int, q: int, atoms, form=None) -> dict:
    out = {"n": n, "q": q,
           "atoms": [{"basis": [[format_rational(x) for x in r] for r in b],
                      "mass": format_rational(m)} for b, m in atoms]}
    if form is not None:
        out["form"] = [[format_rational(x) for x in r] for r in form]
    return out


def parse_spectra(obj) -> list[list[float]]:
    return [[parse_number(x) for x in h] for h in _require(obj, "spectra", "polygon input")]


def parse_circle(obj) -> tuple[list[float], list[float]]:
    """``{masses: [...], angles: [...]}``; angles in radians."""
    masses = [parse_number(x) for x in _require(obj, "masses", "circle configuration")]
    angles = [parse_number(x) for x in _require(obj, "angles", "circle configuration")]
    return masses, angles


# --- inequality text -----------------------------------------------------------------


def inequalities_to_text(ineqs) -> str:
    return "".join(q.to_text() + "\n" for q in ineqs)


def inequalities_from_text(text: str) -> list[LinearInequality]:
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        try:
            out.append(LinearInequality.from_text(line))
        except (InequalityError, ValueError) as e:
            raise ParseError(str(e), lineno, 1) from None
    return out


# --- PORTA ieq / poi -----------------------------------------------------------------


def _term(c: Fraction, k: int) -> str:
    sign = "-" if c < 0 else "+"
    a = abs(c)
    coef = "" if a == 1 else format_rational(a)
    return f"{sign}{coef}x{k}"


def write_ieq(dim: int, rows, equations=()) -> str:
    """``DIM = d``, then ``INEQUALITIES_SECTION`` with lines ``( k) ... <= 0``."""
    lines = [f"DIM = {dim}", "", "INEQUALITIES_SECTION"]
    k = 1
    for rel, block in (("==", equations), ("<=", rows)):
        for r in block:
            terms = "".join(_term(ex.frac(c), i) for i, c in enumerate(r, start=1) if c != 0)
            lines.append(f"({k:3d}) {terms} {rel} 0")
            k += 1
    lines += ["", "END", ""]
    return "\n".join(lines)


_TERM = re.compile(r"\s*([+-])\s*(\d+(?:/\d+)?)?\s*x(\d+)")


def _parse_expr(expr: str, dim: int, lineno: int, offset: int) -> list[Fraction]:
    coeffs = [Fraction(0)] * dim
    pos = 0
    expr = expr.rstrip()
    if expr and expr.lstrip()[0] not in "+-":
        expr = "+" + expr
    while pos < len(expr):
        m = _TERM.match(expr, pos)
        if not m:
            raise ParseError(f"cannot parse term near {expr[pos:pos + 12]!r}", lineno, offset + pos)
        k = int(m.group(3))
        if not 1 <= k <= dim:
            raise ParseError(f"variable x{k} outside DIM = {dim}", lineno, offset + m.start(3))
        c = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        coeffs[k - 1] += c if m.group(1) == "+" else -c
        pos = m.end()
    return coeffs


def _read_dim(lines) -> tuple[int, int]:
    for lineno, line in enumerate(lines, start=1):
        s = line.strip()
        if not s:
            continue
        m = re.fullmatch(r"DIM\s*=\s*(\d+)", s)
        if not m:
            raise ParseError("expected 'DIM = <d>'", lineno, 1)
        return int(m.group(1)), lineno
    raise ParseError("empty file")


_INDEX = re.compile(r"^\s*\(\s*\d+\s*\)")


def read_ieq(text: str) -> tuple[int, list[list[Fraction]], list[list[Fraction]]]:
    """Returns ``(dim, inequality rows, equation rows)``, each reading ``row . x (<=|==) 0``."""
    lines = text.splitlines()
    dim, start = _read_dim(lines)
    rows, eqs = [], []
    section = False
    for lineno in range(start + 1, len(lines) + 1):
        line = lines[lineno - 1]
        s = line.strip()
        if not s:
            continue
        if s == "INEQUALITIES_SECTION":
            section = True
            continue
        if s == "END":
            return dim, rows, eqs
        if not section:
            raise ParseError(f"unexpected {s!r} before INEQUALITIES_SECTION", lineno, 1)
        m = _INDEX.match(line)
        offset = m.end() if m else 0
        body = line[offset:]
        for rel, target in (("<=", rows), ("==", eqs), (">=", None)):
            if rel in body:
                lhs, rhs = body.split(rel, 1)
                if rhs.strip() != "0":
                    raise ParseError("only homogeneous rows '... <= 0' are supported",
                                     lineno, offset + len(lhs) + 3)
                c = _parse_expr(lhs, dim, lineno, offset + 1)
                if target is None:
                    rows.append([-x for x in c])
                else:
                    target.append(c)
                break
        else:
            raise ParseError("missing relation (<=, >= or ==)", lineno, len(line))
    raise ParseError("missing END", len(lines), 1)


def write_poi(dim: int, rays) -> str:
    lines = [f"DIM = {dim}", "", "CONE_SECTION"]
    for k, r in enumerate(rays, start=1):
        lines.append(f"({k:3d}) " + " ".join(format_rational(x) for x in r))
    lines += ["", "END", ""]
    return "\n".join(lines)


def read_poi(text: str) -> tuple[int, list[list[Fraction]]]:
    lines = text.splitlines()
    dim, start = _read_dim(lines)
    rays = []
    section = False
    for lineno in range(start + 1, len(lines) + 1):
        line = lines[lineno - 1]
        s = line.strip()
        if not s:
            continue
        if s == "CONE_SECTION":
            section = True
            continue
        if s == "END":
            return dim, rays
        if not section:
            raise ParseError(f"unexpected {s!r} before CONE_SECTION", lineno, 1)
        m = _INDEX.match(line)
        offset = m.end() if m else 0
        vals = []
        for tok in re.finditer(r"\S+", line[offset:]):
            vals.append(parse_rational(tok.group(), lineno, offset + tok.start() + 1))
        if len(vals) != dim:
            raise ParseError(f"expected {dim} entries, got {len(vals)}", lineno, 1)
        rays.append(vals)
    raise ParseError("missing END", len(lines), 1)
