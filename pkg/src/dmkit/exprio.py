"""Text and JSON formats: polynomial expressions, series documents, reports.

Polynomial grammar (no implicit multiplication)::

    expr   := ['+' | '-'] term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := base ('^' nat)?
    base   := ident | integer ['/' integer] | '(' expr ')'

The leading sign on ``expr`` is what lets printed negative polynomials parse
back; ``a/b`` literals are accepted for rational coefficients.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from importlib import resources

import jsonschema

from .algebra import SERIES_VARIABLE, Polynomial, RingSpec
from .errors import ParseError, SchemaError

MAX_EXPONENT = 1024
REPORT_SCHEMA = "dm-report/1"

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r\n]+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<int>[0-9]+)|(?P<op>[-+*^()/])"
)


def _tokenize(src):
    tokens = []
    pos, line, col = 0, 1, 1
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None:
            raise ParseError(f"unexpected character {src[pos]!r}", line, col)
        text = m.group()
        if m.lastgroup != "ws":
            tokens.append((m.lastgroup if m.lastgroup != "op" else text, text, line, col))
        for ch in text:
            if ch == "\n":
                line, col = line + 1, 1
            else:
                col += 1
        pos = m.end()
    tokens.append(("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, src, ring):
        self.tokens = _tokenize(src)
        self.i = 0
        self.ring = ring
        self.gens = dict(zip(ring.variables, ring.gens()))

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, what, tok=None):
        kind, text, line, col = tok or self.peek()
        got = "end of input" if kind == "eof" else repr(text)
        raise ParseError(f"expected {what}, got {got}", line, col)

    def parse(self):
        p = self.expr()
        if self.peek()[0] != "eof":
            self.fail("'+', '-', '*' or end of input")
        return p

    def expr(self):
        sign = 1
        if self.peek()[0] in "+-":
            sign = -1 if self.take()[0] == "-" else 1
        p = self.term()
        if sign < 0:
            p = -p
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.factor()
        while self.peek()[0] == "*":
            self.take()
            p = p * self.factor()
        return p

    def factor(self):
        p = self.base()
        if self.peek()[0] == "^":
            self.take()
            tok = self.peek()
            if tok[0] != "int":
                self.fail("a non-negative integer exponent")
            self.take()
            e = int(tok[1])
            if e > MAX_EXPONENT:
                raise ParseError(f"exponent overflow: {e} > {MAX_EXPONENT}", tok[2], tok[3])
            p = p ** e
        return p

    def base(self):
        tok = self.peek()
        kind = tok[0]
        if kind == "ident":
            self.take()
            name = tok[1]
            if name == SERIES_VARIABLE:
                raise ParseError(f"{SERIES_VARIABLE!r} is reserved for the series variable", tok[2], tok[3])
            if name not in self.gens:
                raise ParseError(f"unknown identifier {name!r}", tok[2], tok[3])
            return self.gens[name]
        if kind == "int":
            self.take()
            value = Fraction(int(tok[1]))
            if self.peek()[0] == "/":
                self.take()
                den = self.peek()
                if den[0] != "int":
                    self.fail("an integer denominator")
                self.take()
                if int(den[1]) == 0:
                    raise ParseError("zero denominator", den[2], den[3])
                value /= int(den[1])
            try:
                return self.ring.constant(value)
            except ZeroDivisionError as exc:
                raise ParseError(str(exc), tok[2], tok[3]) from None
        if kind == "(":
            self.take()
            p = self.expr()
            if self.peek()[0] != ")":
                self.fail("')'")
            self.take()
            return p
        self.fail("an identifier, integer or '('")


def parse_poly(src: str, ring: RingSpec) -> Polynomial:
    """Parse ``src`` into a canonical polynomial of ``ring``."""
    return _Parser(src, ring).parse()


def _monomial_text(ring, m):
    parts = []
    for name, e in zip(ring.variables, m):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def print_poly(p: Polynomial) -> str:
    """Canonical text: terms in descending monomial order, ``parse_poly`` inverts it."""
    if p.is_zero():
        return "0"
    out = []
    for m, c in p.terms():
        negative = c < 0
        a = -c if negative else c
        mono = _monomial_text(p.ring, m)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if not out:
            out.append("-" + body if negative else body)
        else:
            out.append((" - " if negative else " + ") + body)
    return "".join(out)


def parse_point(text: str, ring: RingSpec):
    from .algebra import RationalPoint

    parts = [s.strip() for s in text.split(",")] if text.strip() else []
    try:
        coords = [ring.field.convert(Fraction(s)) for s in parts]
        return RationalPoint(ring, coords)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad point {text!r}: {exc}") from None


# ---------------------------------------------------------------------------
# series documents


def _load_schema(name):
    return json.loads(resources.files("dmkit").joinpath("schemas", name).read_text())


def series_schema() -> dict:
    return _load_schema("series-doc.schema.json")


def report_schema() -> dict:
    return _load_schema("dm-report.schema.json")


def _validate(doc, schema):
    validator = jsonschema.Draft202012Validator(schema)
    errors = sorted(validator.iter_errors(doc), key=lambda e: (len(e.absolute_path), list(map(str, e.absolute_path))))
    if errors:
        err = jsonschema.exceptions.best_match(errors)
        raise SchemaError(err.message, list(err.absolute_path))


def ring_from_doc(d, path=("ring",)) -> RingSpec:
    try:
        return RingSpec.from_description(d)
    except (ValueError, KeyError) as exc:
        raise SchemaError(str(exc), path) from None


def _poly_at(src, ring, path):
    try:
        return parse_poly(src, ring)
    except ParseError as exc:
        raise SchemaError(exc.args[0], path) from None


def load_series(doc):
    """Build a :class:`~dmkit.series.UnitTailSeries` from a SeriesDoc (dict or JSON text)."""
    from .series import (
        DEFAULT_PRECISION,
        TruncatedSeries,
        UnitSeries,
        UnitTailSeries,
        unit_tail_rewrite,
    )

    if isinstance(doc, (str, bytes)):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})") from None
    _validate(doc, series_schema())
    ring = ring_from_doc(doc["ring"])
    d = doc.get("precision", DEFAULT_PRECISION)

    if "coeffs" in doc:
        coeffs = [_poly_at(s, ring, ("coeffs", i)) for i, s in enumerate(doc["coeffs"])]
        if "recurrence" not in doc:
            return UnitTailSeries.polynomial(ring, coeffs, d)
        rows = [
            [_poly_at(s, ring, ("recurrence", i, j)) for j, s in enumerate(row)]
            for i, row in enumerate(doc["recurrence"])
        ]
        n = len(rows[0]) - 1 if rows else len(coeffs) - 1
        if len(coeffs) != n + 1 + len(rows):
            raise SchemaError(
                f"{len(coeffs)} coefficients but recurrence covers indices up to {n + len(rows)}", ("coeffs",))
        from .errors import RecurrenceMismatch

        try:
            return unit_tail_rewrite(TruncatedSeries(ring, tuple(coeffs)), rows)
        except RecurrenceMismatch as exc:
            raise SchemaError(str(exc), ("recurrence",)) from None

    terms = []
    seen = set()
    for i, t in enumerate(doc["terms"]):
        a = _poly_at(t["a"], ring, ("terms", i, "a"))
        j = t["j"]
        if j in seen:
            raise SchemaError(f"exponent {j} repeated", ("terms", i, "j"))
        if j > d:
            raise SchemaError(f"exponent {j} exceeds precision {d}", ("terms", i, "j"))
        seen.add(j)
        unit = t.get("unit", "one")
        if unit == "one":
            u = UnitSeries.one(ring)
        elif unit == "geom":
            u = UnitSeries.geometric(ring, d)
        else:
            coeffs = [_poly_at(s, ring, ("terms", i, "unit", "coeffs", k)) for k, s in enumerate(unit["coeffs"])]
            if not coeffs[0].is_constant() or coeffs[0].is_zero():
                raise SchemaError("unit constant term must be a nonzero scalar", ("terms", i, "unit", "coeffs", 0))
            u = UnitSeries(ring, tuple(coeffs), unit.get("precision"))
        terms.append((a, j, u))
    return UnitTailSeries(ring, tuple(terms), d)


def dump_series(f) -> dict:
    """Inverse of :func:`load_series` for unit-tail documents."""
    terms = []
    for a, j, u in f.terms:
        if u.is_one():
            unit = "one"
        elif u.precision is not None and all(c == 1 for c in u.coeffs) and u.precision == f.precision:
            unit = "geom"
        else:
            unit = {"coeffs": [print_poly(c) for c in u.coeffs]}
            if u.precision is not None:
                unit["precision"] = u.precision
        terms.append({"a": print_poly(a), "j": j, "unit": unit})
    return {"ring": f.ring.describe(), "precision": f.precision, "terms": terms}


# ---------------------------------------------------------------------------
# reports


def dump_report(report) -> str:
    """Deterministic JSON text for a report (sorted keys, no timing data)."""
    return json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n"


def load_report(text):
    from .dmcheck import DMReport

    doc = json.loads(text) if isinstance(text, (str, bytes)) else text
    _validate(doc, report_schema())
    return DMReport.from_dict(doc)
