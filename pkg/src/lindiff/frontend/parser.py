"""Recursive-descent parser for linear difference systems.

Grammar (whitespace is insignificant)::

    system   := equation (";" equation)*
    equation := expr ("=" expr)?
    expr     := ["+"|"-"] term (("+"|"-") term)*
    term     := factor (("*"|"/") factor)*
    factor   := atom ("^" ["-"] integer)?
    atom     := integer | symbol | dep "[" arg ("," arg)* "]" | dep
              | "S_" indep | "(" expr ")"
    arg      := indep (("+"|"-") integer)?

``symbol`` is an independent variable or a parameter; a bare ``dep``
means the unshifted dependent variable and ``S_x`` is the shift operator
along ``x`` (coefficients to its right are shifted as it passes them).
Every equation must be linear in the dependents.  Parsed polynomials are
in internal coordinates: for a backward ring the shifts are negated and
each index variable ``x`` in a coefficient becomes ``-x``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from ..diffring import DiffPoly, Monomial, RingSpec
from ..scalars import RatFun, shift_coeff_vec

__all__ = [
    "ParseError",
    "ParsedSystem",
    "parse_ring",
    "parse_system",
    "parse_expression",
    "parse_relation",
    "parse_relations",
]


class ParseError(ValueError):
    """Malformed equation text; ``pos`` is the 0-based character offset."""

    def __init__(self, message: str, pos: int | None = None, text: str | None = None):
        self.message = message
        self.pos = pos
        self.text = text
        where = f" at position {pos}" if pos is not None else ""
        super().__init__(f"{message}{where}")


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()\[\],;=]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


def parse_ring(text: str, direction: str = "forward") -> RingSpec:
    """``"x,y; u,ux,uy; d,m2"`` -> RingSpec (the parameter part is optional)."""
    parts = [p.strip() for p in text.split(";")]
    if len(parts) < 2 or len(parts) > 3:
        raise ParseError("ring must look like 'indeps; deps[; params]'")

    def names(s: str) -> tuple[str, ...]:
        out = tuple(x.strip() for x in s.split(",") if x.strip())
        for x in out:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", x) or x.startswith("S_"):
                raise ParseError(f"invalid symbol name {x!r}")
        return out

    indep, dep = names(parts[0]), names(parts[1])
    params = names(parts[2]) if len(parts) == 3 else ()
    try:
        return RingSpec(indep, dep, params, direction)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


class _Val:
    """Operator part (shift -> left coefficient) plus linear part (monomial -> coefficient)."""

    __slots__ = ("ops", "lin")

    def __init__(self, ops=None, lin=None):
        self.ops = ops or {}
        self.lin = lin or {}

    def is_scalar(self) -> bool:
        return not self.lin and all(not any(s) for s in self.ops)

    def scalar(self) -> RatFun:
        for s, c in self.ops.items():
            return c
        return RatFun._ZERO


def _merge(a: dict, b: dict, sign: int = 1) -> dict:
    out = dict(a)
    for k, v in b.items():
        w = out.get(k)
        w = (v if sign > 0 else -v) if w is None else (w + v if sign > 0 else w - v)
        if w:
            out[k] = w
        else:
            out.pop(k, None)
    return out


def _add_shift(s: tuple, t: tuple) -> tuple:
    return tuple(a + b for a, b in zip(s, t))


class _Parser:
    def __init__(self, text: str, ring: RingSpec):
        self.text = text
        self.ring = ring
        self.toks = _tokenize(text)
        self.i = 0
        self.n = ring.n
        self.zero = (0,) * ring.n
        self.back = ring.direction == "backward"
        self.index = {v: i for i, v in enumerate(ring.independent)}
        self.params = set(ring.parameters)
        self.deps = {d: k for k, d in enumerate(ring.dependent)}

    # -- token helpers -----------------------------------------------------
    def peek(self):
        return self.toks[self.i]

    def next(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        tok = self.next()
        if tok[1] != value or tok[0] == "end":
            found = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {value!r}, found {found}", tok[2], self.text)
        return tok

    def error(self, msg: str, tok=None):
        tok = tok or self.peek()
        return ParseError(msg, tok[2], self.text)

    # -- value algebra -----------------------------------------------------
    def const(self, c: RatFun) -> _Val:
        return _Val({self.zero: c} if c else {})

    def mul(self, a: _Val, b: _Val, tok) -> _Val:
        if a.lin and b.lin:
            raise self.error("nonlinear product of dependent variables", tok)
        if a.lin and not b.is_scalar():
            raise self.error("shift operator applied from the right", tok)
        ops: dict = {}
        for sa, ca in a.ops.items():
            for sb, cb in b.ops.items():
                ops = _merge(ops, {_add_shift(sa, sb): ca * shift_coeff_vec(cb, sa)})
        lin: dict = {}
        for sa, ca in a.ops.items():
            for m, cb in b.lin.items():
                lin = _merge(lin, {m.times(sa): ca * shift_coeff_vec(cb, sa)})
        if a.lin:
            c = b.scalar()
            lin = _merge(lin, {m: v * c for m, v in a.lin.items()})
        return _Val(ops, lin)

    # -- grammar -----------------------------------------------------------
    def system(self) -> list[tuple[_Val, int]]:
        eqs = [self.equation()]
        while self.peek()[1] == ";" and self.peek()[0] == "op":
            self.next()
            if self.peek()[0] == "end":
                break
            eqs.append(self.equation())
        tok = self.peek()
        if tok[0] != "end":
            raise self.error(f"unexpected {tok[1]!r}")
        return eqs

    def equation(self) -> tuple[_Val, int]:
        start = self.peek()[2]
        lhs = self.expr()
        if self.peek()[1] == "=" and self.peek()[0] == "op":
            self.next()
            rhs = self.expr()
            lhs = _Val(_merge(lhs.ops, rhs.ops, -1), _merge(lhs.lin, rhs.lin, -1))
        return lhs, start

    def expr(self) -> _Val:
        sign = 1
        if self.peek()[0] == "op" and self.peek()[1] in ("+", "-"):
            sign = -1 if self.next()[1] == "-" else 1
        val = self.term()
        if sign < 0:
            val = _Val(_merge({}, val.ops, -1), _merge({}, val.lin, -1))
        while self.peek()[0] == "op" and self.peek()[1] in ("+", "-"):
            op = self.next()[1]
            rhs = self.term()
            s = 1 if op == "+" else -1
            val = _Val(_merge(val.ops, rhs.ops, s), _merge(val.lin, rhs.lin, s))
        return val

    def term(self) -> _Val:
        val = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            tok = self.next()
            rhs = self.factor()
            if tok[1] == "*":
                val = self.mul(val, rhs, tok)
            else:
                if not rhs.is_scalar():
                    raise self.error("division by a non-scalar", tok)
                c = rhs.scalar()
                if not c:
                    raise self.error("division by zero in K", tok)
                val = self.mul(val, self.const(RatFun._ONE / c), tok)
        return val

    def factor(self) -> _Val:
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            tok = self.next()
            neg = False
            if self.peek()[1] == "-" and self.peek()[0] == "op":
                self.next()
                neg = True
            num = self.next()
            if num[0] != "num":
                raise self.error("exponent must be an integer", num)
            k = -int(num[1]) if neg else int(num[1])
            if base.is_scalar():
                c = base.scalar()
                if k < 0 and not c:
                    raise self.error("division by zero in K", tok)
                return self.const(c**k)
            if base.lin:
                if k == 1:
                    return base
                raise self.error("nonlinear power of a dependent variable", tok)
            if k < 0:
                raise self.error("negative power of a shift operator", tok)
            out = self.const(RatFun._ONE)
            for _ in range(k):
                out = self.mul(out, base, tok)
            return out
        return base

    def atom(self) -> _Val:
        tok = self.next()
        kind, value, pos = tok
        if kind == "num":
            return self.const(RatFun(int(value)))
        if kind == "op" and value == "(":
            val = self.expr()
            self.expect(")")
            return val
        if kind == "name":
            if value in self.index:
                c = self.ring.field.gen(value)
                return self.const(-c if self.back else c)
            if value in self.params:
                return self.const(self.ring.field.gen(value))
            if value.startswith("S_") and value[2:] in self.index:
                s = [0] * self.n
                s[self.index[value[2:]]] = 1
                return _Val({tuple(s): RatFun._ONE})
            if value in self.deps:
                k = self.deps[value]
                if self.peek()[1] == "[" and self.peek()[0] == "op":
                    self.next()
                    shift = self.args(value)
                else:
                    shift = self.zero
                return _Val({}, {Monomial(shift, k): RatFun._ONE})
            raise ParseError(f"unknown symbol {value!r}", pos, self.text)
        if kind == "end":
            raise ParseError("unexpected end of input", pos, self.text)
        raise ParseError(f"unexpected {value!r}", pos, self.text)

    def args(self, dep: str) -> tuple[int, ...]:
        shifts = []
        while True:
            tok = self.next()
            if tok[0] != "name" or tok[1] not in self.index:
                raise self.error(f"malformed shift argument for {dep!r}", tok)
            axis = self.index[tok[1]]
            if axis != len(shifts):
                raise self.error(
                    f"argument {len(shifts) + 1} of {dep!r} must be "
                    f"{self.ring.independent[len(shifts)]!r}", tok)
            k = 0
            nxt = self.peek()
            if nxt[0] == "op" and nxt[1] in ("+", "-"):
                self.next()
                num = self.next()
                if num[0] != "num":
                    raise self.error(f"malformed shift argument for {dep!r}", num)
                k = int(num[1]) if nxt[1] == "+" else -int(num[1])
            shifts.append(-k if self.back else k)
            nxt = self.next()
            if nxt[0] == "op" and nxt[1] == ",":
                continue
            if nxt[0] == "op" and nxt[1] == "]":
                break
            raise self.error(f"malformed shift argument for {dep!r}", nxt)
        if len(shifts) != self.n:
            raise self.error(f"{dep!r} takes {self.n} arguments, got {len(shifts)}")
        return tuple(shifts)


@dataclass
class ParsedSystem:
    """Linear parts and affine right-hand sides: ``polys[i] = rhs[i]``."""

    ring: RingSpec
    polys: list[DiffPoly]
    rhs: list[RatFun] = field(default_factory=list)

    @property
    def is_homogeneous(self) -> bool:
        return not any(self.rhs)

    def __iter__(self):
        return iter(self.polys)

    def __len__(self) -> int:
        return len(self.polys)


def _finish(val: _Val, parser: _Parser, pos: int) -> tuple[DiffPoly, RatFun]:
    if not all(not any(s) for s in val.ops):
        raise ParseError("dangling shift operator without a dependent variable", pos, parser.text)
    scalar = val.ops.get(parser.zero, RatFun._ZERO)
    return DiffPoly(parser.ring, val.lin), -scalar


def parse_system(text: str, ring: RingSpec) -> ParsedSystem:
    """Parse ``;``-separated equations; ``lhs = rhs`` becomes ``lhs - rhs``."""
    parser = _Parser(text, ring)
    polys, rhs = [], []
    for val, pos in parser.system():
        p, r = _finish(val, parser, pos)
        polys.append(p)
        rhs.append(r)
    return ParsedSystem(ring, polys, rhs)


def parse_expression(text: str, ring: RingSpec) -> DiffPoly:
    """Parse one homogeneous linear expression."""
    parser = _Parser(text, ring)
    val = parser.expr()
    tok = parser.peek()
    if tok[0] != "end":
        raise parser.error(f"unexpected {tok[1]!r}")
    p, r = _finish(val, parser, 0)
    if r:
        raise ParseError("expression has a pure-coefficient part", 0, text)
    return p


_PATTERN = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_]*)\s*\[([^\]]*)\]\s*$")


def parse_relation(text: str, ring: RingSpec):
    """``f[0,*]`` -> RelationPattern; entries are shift values or ``*``."""
    from ..quotient import RelationPattern

    m = _PATTERN.match(text)
    if not m:
        raise ParseError(f"malformed relation pattern {text.strip()!r}", 0, text)
    name, body = m.groups()
    if name not in ring.dependent:
        raise ParseError(f"unknown dependent variable {name!r}", m.start(1), text)
    entries = []
    for raw in body.split(","):
        raw = raw.strip()
        if raw == "*":
            entries.append(None)
            continue
        if not re.fullmatch(r"[-+]?\d+", raw):
            raise ParseError(f"pattern entry must be an integer or '*', got {raw!r}", m.start(2), text)
        v = int(raw)
        v = -v if ring.direction == "backward" else v
        if v < 0:
            raise ParseError(f"pattern entry {raw!r} lies outside the normalized range", m.start(2), text)
        entries.append(v)
    if len(entries) != ring.n:
        raise ParseError(f"{name!r} pattern needs {ring.n} entries, got {len(entries)}", m.start(2), text)
    return RelationPattern(ring.dep_index(name), tuple(entries))


def parse_relations(text: str, ring: RingSpec) -> list:
    """One pattern per line; blank lines and ``#`` comments are skipped."""
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(parse_relation(line, ring))
    return out
