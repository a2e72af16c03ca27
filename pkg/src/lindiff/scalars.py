"""Exact coefficient field K = Q(x_1..x_n, p_1..p_r) with the shift action.

Coefficients are rational functions in the index variables (the
independent variables of the difference ring) and in free parameters.
The shift sigma_i acts by x_i -> x_i + 1 and fixes every parameter.

A :class:`RatFun` stores one of two canonical forms:

* a ground rational (``QQ.dtype``) when the value is constant, or
* a cancelled sympy ``FracElement`` otherwise (denominator with positive
  leading coefficient, see ``PolyElement.cancel``).

Both forms are normalized on construction, so equality and hashing are
structural.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Sequence

from sympy import QQ
from sympy.polys.fields import FracElement, field

__all__ = [
    "RatFun",
    "ScalarField",
    "ratfun_normalize",
    "ratfun_arith",
    "shift_coeff",
    "render_ratfun",
    "render_coefpoly",
]

_MPQ = QQ.dtype


class ScalarField:
    """The difference field Q(indices, parameters).

    ``indices`` are the symbols moved by the shifts (one per axis, in axis
    order); ``parameters`` are sigma-constants.
    """

    def __init__(self, indices: Sequence[str], parameters: Sequence[str] = ()):
        self.indices = tuple(indices)
        self.parameters = tuple(parameters)
        names = self.indices + self.parameters
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate symbol names in {names}")
        if names:
            self._field = field(",".join(names), QQ)[0]
        else:
            self._field = None
        self.symbols = names

    def __repr__(self) -> str:
        return f"ScalarField(indices={self.indices!r}, parameters={self.parameters!r})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ScalarField)
            and self.indices == other.indices
            and self.parameters == other.parameters
        )

    def __hash__(self) -> int:
        return hash((self.indices, self.parameters))

    @property
    def zero(self) -> "RatFun":
        return RatFun._ZERO

    @property
    def one(self) -> "RatFun":
        return RatFun._ONE

    def __call__(self, value) -> "RatFun":
        """Coerce an int, Fraction, ground rational or RatFun into the field."""
        if isinstance(value, RatFun):
            return value
        if isinstance(value, FracElement):
            return RatFun._from_frac(value)
        if isinstance(value, (int, Rational)) or isinstance(value, _MPQ):
            return RatFun(_to_mpq(value))
        raise TypeError(f"cannot coerce {value!r} into {self!r}")

    def gen(self, name: str) -> "RatFun":
        """The field generator called ``name``."""
        try:
            idx = self.symbols.index(name)
        except ValueError:
            raise KeyError(f"unknown symbol {name!r}") from None
        return RatFun(self._field.gens[idx])

    def lift(self, value: "RatFun") -> FracElement:
        """Return ``value`` as an element of the underlying sympy field."""
        v = value._v
        if isinstance(v, FracElement):
            return v
        if self._field is None:
            raise ValueError("field has no symbols; constants only")
        return self._field.ground_new(v)


def _to_mpq(value) -> _MPQ:
    if isinstance(value, _MPQ):
        return value
    if isinstance(value, int):
        return _MPQ(value)
    if isinstance(value, Rational):
        return _MPQ(int(value.numerator), int(value.denominator))
    raise TypeError(f"not a rational number: {value!r}")


class RatFun:
    """An element of the coefficient field in canonical form."""

    __slots__ = ("_v",)

    def __init__(self, value=0):
        if isinstance(value, FracElement):
            value = _demote(value)
        elif not isinstance(value, _MPQ):
            value = _to_mpq(value)
        self._v = value

    @classmethod
    def _from_frac(cls, f: FracElement) -> "RatFun":
        obj = cls.__new__(cls)
        obj._v = _demote(f)
        return obj

    @classmethod
    def _raw(cls, v) -> "RatFun":
        obj = cls.__new__(cls)
        obj._v = v
        return obj

    # -- inspection -------------------------------------------------------
    @property
    def is_constant(self) -> bool:
        return not isinstance(self._v, FracElement)

    @property
    def is_zero(self) -> bool:
        return not self._v

    def __bool__(self) -> bool:
        return bool(self._v)

    def as_fraction(self) -> Fraction:
        """Value as :class:`fractions.Fraction`; only for constants."""
        if not self.is_constant:
            raise ValueError(f"{self} is not constant")
        return Fraction(int(self._v.numerator), int(self._v.denominator))

    @property
    def numerator(self):
        """Numerator as a sympy ``PolyElement`` (or ground integer)."""
        v = self._v
        return v.numer if isinstance(v, FracElement) else v.numerator

    @property
    def denominator(self):
        v = self._v
        return v.denom if isinstance(v, FracElement) else v.denominator

    def free_symbols(self) -> set[str]:
        v = self._v
        if not isinstance(v, FracElement):
            return set()
        syms = v.field.symbols
        out = set()
        for poly in (v.numer, v.denom):
            for exps in poly.monoms():
                out.update(str(syms[i]) for i, e in enumerate(exps) if e)
        return out

    def leading_sign(self) -> int:
        """Sign of the numerator's leading coefficient (lex, field symbol order)."""
        v = self._v
        if not v:
            return 0
        if isinstance(v, FracElement):
            return 1 if v.numer.LC > 0 else -1
        return 1 if v > 0 else -1

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._v, other._v
        if not isinstance(a, FracElement) and not isinstance(b, FracElement):
            return RatFun._raw(a + b)
        return RatFun._from_frac(_mixed(a, b, "add"))

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._v, other._v
        if not isinstance(a, FracElement) and not isinstance(b, FracElement):
            return RatFun._raw(a - b)
        return RatFun._from_frac(_mixed(a, b, "sub"))

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._v, other._v
        if not isinstance(a, FracElement) and not isinstance(b, FracElement):
            return RatFun._raw(a * b)
        if not a or not b:
            return RatFun._ZERO
        return RatFun._from_frac(_mixed(a, b, "mul"))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not other._v:
            raise ZeroDivisionError("division by zero in K")
        a, b = self._v, other._v
        if not isinstance(a, FracElement) and not isinstance(b, FracElement):
            return RatFun._raw(a / b)
        return RatFun._from_frac(_mixed(a, b, "div"))

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __neg__(self):
        return RatFun._raw(-self._v)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if not self._v:
                raise ZeroDivisionError("division by zero in K")
            return RatFun._ONE / (self ** (-k))
        return RatFun._from_frac(self._v**k) if isinstance(self._v, FracElement) else RatFun._raw(self._v**k)

    def inverse(self) -> "RatFun":
        return RatFun._ONE / self

    # -- comparison ---------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, RatFun):
            return _same(self._v, other._v)
        if isinstance(other, (int, Rational)) or isinstance(other, _MPQ):
            return not isinstance(self._v, FracElement) and self._v == _to_mpq(other)
        return NotImplemented

    def __hash__(self) -> int:
        v = self._v
        if isinstance(v, FracElement):
            return hash((v.numer, v.denom))
        return hash(v)

    def __repr__(self) -> str:
        return f"RatFun({render_ratfun(self)!r})"

    def __str__(self) -> str:
        return render_ratfun(self)


RatFun._ZERO = RatFun._raw(_MPQ(0))
RatFun._ONE = RatFun._raw(_MPQ(1))


def _same(a, b) -> bool:
    fa, fb = isinstance(a, FracElement), isinstance(b, FracElement)
    if fa != fb:
        return False
    if fa:
        return a.numer == b.numer and a.denom == b.denom
    return a == b


def _coerce(value):
    if isinstance(value, RatFun):
        return value
    if isinstance(value, (int, Rational)) or isinstance(value, _MPQ):
        return RatFun._raw(_to_mpq(value))
    return NotImplemented


def _mixed(a, b, op: str) -> FracElement:
    if not isinstance(a, FracElement):
        a = b.field.ground_new(a)
    elif not isinstance(b, FracElement):
        b = a.field.ground_new(b)
    elif a.field is not b.field and a.field != b.field:
        raise ValueError("coefficients from different fields")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    return a / b


def _demote(f: FracElement):
    """Collapse constant fractions to a ground rational."""
    if f.numer.is_ground and f.denom.is_ground:
        num = f.numer.LC if f.numer else QQ.zero
        return _MPQ(num) / _MPQ(f.denom.LC)
    return f


# ---------------------------------------------------------------------------
# field-level operations


def ratfun_normalize(num, den, K: ScalarField | None = None) -> RatFun:
    """Canonical representative of ``num/den``.

    ``num`` and ``den`` may be integers, rationals, RatFun values or sympy
    ring elements of the same field.
    """
    if isinstance(den, RatFun):
        d = den
    elif K is not None and not isinstance(den, (int, Rational, _MPQ)):
        d = RatFun._from_frac(K._field.new(den))
    else:
        d = _coerce(den)
        if d is NotImplemented:
            d = RatFun._from_frac(den.ring.to_field().new(den))
    if not d:
        raise ZeroDivisionError("division by zero in K")
    if isinstance(num, RatFun):
        n = num
    else:
        n = _coerce(num)
        if n is NotImplemented:
            n = RatFun._from_frac(num.ring.to_field().new(num))
    return n / d


def ratfun_arith(a: RatFun, b: RatFun, op: str) -> RatFun:
    """Field operation ``op`` in {add, sub, mul, div} on canonical inputs."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown field operation {op!r}")


def shift_coeff(c: RatFun, axis: int, steps: int = 1) -> RatFun:
    """Apply sigma_axis^steps to ``c``: x_axis -> x_axis + steps.

    ``axis`` is the 0-based position of the index variable in the field's
    symbol list.  Parameters are sigma-constants.
    """
    if not steps or c.is_constant:
        return c
    shifts = [0] * (axis + 1)
    shifts[axis] = steps
    return shift_coeff_vec(c, tuple(shifts))


def shift_coeff_vec(c: RatFun, shifts: tuple[int, ...]) -> RatFun:
    """Apply sigma^shifts (one entry per leading field symbol)."""
    v = c._v
    if not isinstance(v, FracElement) or not any(shifts):
        return c
    return RatFun._raw(_shift_frac(v, shifts))


@lru_cache(maxsize=1 << 16)
def _shift_frac(f: FracElement, shifts: tuple[int, ...]) -> FracElement:
    ring = f.field.ring
    gens = ring.gens
    subs = []
    for i, k in enumerate(shifts):
        if not k:
            continue
        if f.numer.degree(i) <= 0 and f.denom.degree(i) <= 0:
            continue
        subs.append((gens[i], gens[i] + k))
    if not subs:
        return f
    return f.field.new(f.numer.compose(subs), f.denom.compose(subs))


def substitute_coeff(c: RatFun, mapping: dict[int, tuple[int, int]]) -> RatFun:
    """Affine substitution x_i -> a*x_i + b for ``mapping = {i: (a, b)}``."""
    v = c._v
    if not isinstance(v, FracElement):
        return c
    gens = v.field.ring.gens
    subs = [(gens[i], a * gens[i] + b) for i, (a, b) in mapping.items()]
    if not subs:
        return c
    return RatFun._from_frac(v.field.new(v.numer.compose(subs), v.denom.compose(subs)))


# ---------------------------------------------------------------------------
# text rendering


def _render_rational(q) -> str:
    q = _to_mpq(q) if not isinstance(q, _MPQ) else q
    if q.denominator == 1:
        return str(int(q.numerator))
    return f"{int(q.numerator)}/{int(q.denominator)}"


def render_coefpoly(poly, symbols: Iterable[str]) -> str:
    """Render a sympy PolyElement with ``^`` powers, terms in lex-descending order."""
    symbols = [str(s) for s in symbols]
    if not poly:
        return "0"
    parts = []
    for exps, coeff in sorted(poly.terms(), key=lambda t: t[0], reverse=True):
        mono = "*".join(
            s if e == 1 else f"{s}^{e}" for s, e in zip(symbols, exps) if e
        )
        c = _MPQ(coeff)
        neg = c < 0
        c = -c if neg else c
        if mono and c == 1:
            body = mono
        elif mono:
            body = f"{_render_rational(c)}*{mono}"
        else:
            body = _render_rational(c)
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("-" if neg else "+") + body)
    return "".join(parts)


def render_ratfun(c: RatFun) -> str:
    """Canonical text: constants plain, polynomial parts parenthesized."""
    v = c._v
    if not isinstance(v, FracElement):
        return _render_rational(v)
    syms = v.field.symbols
    num = render_coefpoly(v.numer, syms)
    if v.denom.is_ground and v.denom.LC == 1:
        return f"({num})"
    if v.numer.is_ground:
        num_txt = num
    else:
        num_txt = f"({num})"
    if v.denom.is_ground:
        return f"{num_txt}/{render_coefpoly(v.denom, syms)}"
    return f"{num_txt}/({render_coefpoly(v.denom, syms)})"
