"""Linear difference polynomials: shift monomials, rankings and the sigma-action.

A monomial ``theta^mu o y^k`` is stored as ``Monomial(shift=mu, dep=k)``
with 0-based ``k``.  A :class:`DiffPoly` is a finite map from monomials to
nonzero :class:`~lindiff.scalars.RatFun` coefficients.

Multiplying by a shift operator twists coefficients::

    sigma_i (c * theta^mu y^k) = sigma_i(c) * theta^(mu + e_i) y^k

which is what :func:`prolong` implements.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence

from .scalars import RatFun, ScalarField, shift_coeff_vec

__all__ = [
    "RingSpec",
    "Monomial",
    "DiffPoly",
    "Ranking",
    "rank_compare",
    "leading_term",
    "prolong",
    "poly_combine",
]

LT, EQ, GT = -1, 0, 1


@dataclass(frozen=True)
class RingSpec:
    """Independent variables, dependent variables, parameters and shift direction."""

    independent: tuple[str, ...]
    dependent: tuple[str, ...]
    parameters: tuple[str, ...] = ()
    direction: str = "forward"
    field: ScalarField = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "independent", tuple(self.independent))
        object.__setattr__(self, "dependent", tuple(self.dependent))
        object.__setattr__(self, "parameters", tuple(self.parameters))
        if not self.independent:
            raise ValueError("at least one independent variable is required")
        if not self.dependent:
            raise ValueError("at least one dependent variable is required")
        names = self.independent + self.dependent + self.parameters
        if len(set(names)) != len(names):
            raise ValueError(f"symbol lists must be pairwise disjoint: {names}")
        if self.direction not in ("forward", "backward"):
            raise ValueError(f"direction must be 'forward' or 'backward', got {self.direction!r}")
        object.__setattr__(self, "field", ScalarField(self.independent, self.parameters))

    @property
    def n(self) -> int:
        return len(self.independent)

    @property
    def m(self) -> int:
        return len(self.dependent)

    def extend(self, dependents: Sequence[str]) -> "RingSpec":
        """Same ring with extra dependent variables appended."""
        return RingSpec(
            self.independent,
            self.dependent + tuple(dependents),
            self.parameters,
            self.direction,
        )

    def dep_index(self, name: str) -> int:
        try:
            return self.dependent.index(name)
        except ValueError:
            raise KeyError(f"unknown dependent variable {name!r}") from None

    def monomial(self, dep: str | int, *shift: int) -> "Monomial":
        k = dep if isinstance(dep, int) else self.dep_index(dep)
        if not shift:
            shift = (0,) * self.n
        if len(shift) != self.n:
            raise ValueError(f"expected {self.n} shifts, got {len(shift)}")
        return Monomial(tuple(shift), k)

    def var(self, dep: str | int, *shift: int) -> "DiffPoly":
        """The polynomial consisting of the single monomial ``dep[shift]``."""
        return DiffPoly(self, {self.monomial(dep, *shift): RatFun._ONE})

    def coeff(self, value) -> RatFun:
        """Coerce a number or a symbol name into the coefficient field."""
        if isinstance(value, str):
            return self.field.gen(value)
        return self.field(value)


class Monomial(NamedTuple):
    shift: tuple[int, ...]
    dep: int

    def degree(self) -> int:
        return sum(self.shift)

    def divides(self, other: "Monomial") -> bool:
        return self.dep == other.dep and all(a <= b for a, b in zip(self.shift, other.shift))

    def quotient(self, other: "Monomial") -> tuple[int, ...]:
        """Exponent difference ``self - other`` (caller checks divisibility)."""
        return tuple(a - b for a, b in zip(self.shift, other.shift))

    def times(self, shift: Sequence[int]) -> "Monomial":
        return Monomial(tuple(a + b for a, b in zip(self.shift, shift)), self.dep)


@dataclass(frozen=True)
class Ranking:
    """Admissible total order on shift monomials.

    ``order`` is ``"degrevlex"`` or ``"lex"`` and applies inside each block
    of ``blocks`` (an ordered partition of the 0-based axes; blocks are
    compared left to right).  ``dependent_order`` lists dependent indices
    from highest to lowest.  With ``priority="top"`` the shift part is
    compared first; ``"pot"`` compares dependents first (elimination).
    ``dependent_blocks`` optionally groups dependents; groups are always
    compared first, and ``priority`` applies inside a group.

    Degrevlex inside a block: larger total degree wins; on a tie the
    monomial with the *smaller* exponent in the last differing axis wins,
    so ``(2, 0) > (1, 1) > (0, 2)``.
    """

    order: str = "degrevlex"
    priority: str = "top"
    blocks: tuple[tuple[int, ...], ...] | None = None
    dependent_order: tuple[int, ...] | None = None
    dependent_blocks: tuple[tuple[int, ...], ...] | None = None
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.order not in ("degrevlex", "lex"):
            raise ValueError(f"unknown monomial order {self.order!r}")
        if self.priority not in ("top", "pot"):
            raise ValueError(f"priority must be 'top' or 'pot', got {self.priority!r}")
        if self.blocks is not None:
            blocks = tuple(tuple(b) for b in self.blocks)
            flat = [a for b in blocks for a in b]
            if sorted(flat) != list(range(len(flat))) or any(not b for b in blocks):
                raise ValueError(f"blocks must partition the axes: {blocks}")
            object.__setattr__(self, "blocks", blocks)
        if self.dependent_order is not None:
            order = tuple(self.dependent_order)
            if sorted(order) != list(range(len(order))):
                raise ValueError(f"dependent_order must be a permutation: {order}")
            object.__setattr__(self, "dependent_order", order)
        if self.dependent_blocks is not None:
            object.__setattr__(
                self, "dependent_blocks", tuple(tuple(b) for b in self.dependent_blocks)
            )

    def check(self, ring: RingSpec) -> None:
        """Raise ValueError if this ranking does not fit ``ring``."""
        if self.blocks is not None and sum(map(len, self.blocks)) != ring.n:
            raise ValueError(f"blocks {self.blocks} do not partition {ring.n} axes")
        if self.dependent_order is not None and len(self.dependent_order) != ring.m:
            raise ValueError(f"dependent_order has wrong length for {ring.m} dependents")
        if self.dependent_blocks is not None:
            flat = sorted(a for b in self.dependent_blocks for a in b)
            if flat != list(range(ring.m)):
                raise ValueError(f"dependent_blocks must partition {ring.m} dependents")

    def _dep_rank(self, k: int) -> tuple[int, int]:
        cache = self._cache
        ck = ("dep", k)
        r = cache.get(ck)
        if r is None:
            pos = self.dependent_order.index(k) if self.dependent_order is not None else k
            group = 0
            if self.dependent_blocks is not None:
                for g, members in enumerate(self.dependent_blocks):
                    if k in members:
                        group = g
                        break
            r = cache[ck] = (-group, -pos)
        return r

    def _shift_key(self, shift: tuple[int, ...]) -> tuple:
        blocks = self.blocks or (tuple(range(len(shift))),)
        parts = []
        if self.order == "lex":
            for b in blocks:
                parts.extend(shift[a] for a in b)
        else:
            for b in blocks:
                parts.append(sum(shift[a] for a in b))
                parts.extend(-shift[a] for a in reversed(b))
        return tuple(parts)

    def key(self, mon: Monomial) -> tuple:
        """Sort key: ``key(u) < key(v)`` iff u ranks below v."""
        cache = self._cache
        k = cache.get(mon)
        if k is None:
            group, pos = self._dep_rank(mon.dep)
            sk = self._shift_key(mon.shift)
            k = (group, sk, pos) if self.priority == "top" else (group, pos, sk)
            if len(cache) > 200_000:
                cache.clear()
            cache[mon] = k
        return k

    def compare(self, u: Monomial, v: Monomial) -> int:
        ku, kv = self.key(u), self.key(v)
        return GT if ku > kv else (LT if ku < kv else EQ)


class DiffPoly:
    """A K-linear combination of shift monomials over a :class:`RingSpec`.

    Shifts may be negative only transiently (right after parsing); every
    engine entry point requires nonnegative shifts.
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring: RingSpec, terms: Mapping[Monomial, RatFun] | None = None):
        self.ring = ring
        if terms:
            self.terms = {Monomial(tuple(m[0]), m[1]): c for m, c in terms.items() if c}
        else:
            self.terms = {}

    @classmethod
    def _wrap(cls, ring: RingSpec, terms: dict) -> "DiffPoly":
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.terms = terms
        return obj

    @classmethod
    def zero(cls, ring: RingSpec) -> "DiffPoly":
        return cls._wrap(ring, {})

    def __bool__(self) -> bool:
        return bool(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[Monomial, RatFun]]:
        return iter(self.terms.items())

    def monomials(self) -> list[Monomial]:
        return list(self.terms)

    def coefficient(self, mon: Monomial) -> RatFun:
        return self.terms.get(mon, RatFun._ZERO)

    def dependents(self) -> set[int]:
        return {m.dep for m in self.terms}

    def is_nonnegative(self) -> bool:
        return all(min(m.shift, default=0) >= 0 for m in self.terms)

    def sorted_terms(self, ranking: Ranking, descending: bool = True) -> list[tuple[Monomial, RatFun]]:
        return sorted(self.terms.items(), key=lambda t: ranking.key(t[0]), reverse=descending)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiffPoly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "DiffPoly") -> "DiffPoly":
        return poly_combine(RatFun._ONE, self, RatFun._ONE, other)

    def __sub__(self, other: "DiffPoly") -> "DiffPoly":
        return poly_combine(RatFun._ONE, self, -RatFun._ONE, other)

    def __neg__(self) -> "DiffPoly":
        return DiffPoly._wrap(self.ring, {m: -c for m, c in self.terms.items()})

    def scale(self, c) -> "DiffPoly":
        c = self.ring.field(c)
        if not c:
            return DiffPoly.zero(self.ring)
        return DiffPoly._wrap(self.ring, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, c) -> "DiffPoly":
        if isinstance(c, DiffPoly):
            raise TypeError("product of two difference polynomials is not linear")
        return self.scale(c)

    __rmul__ = __mul__

    def shift(self, vec: Sequence[int]) -> "DiffPoly":
        """Apply sigma^vec termwise with the coefficient twist (vec may be negative)."""
        vec = tuple(vec)
        if not any(vec):
            return self
        return DiffPoly._wrap(
            self.ring,
            {m.times(vec): shift_coeff_vec(c, vec) for m, c in self.terms.items()},
        )

    def leading_term(self, ranking: Ranking) -> tuple[Monomial, RatFun]:
        return leading_term(self, ranking)

    def leading_monomial(self, ranking: Ranking) -> Monomial:
        return leading_term(self, ranking)[0]

    def monic(self, ranking: Ranking) -> "DiffPoly":
        _, c = leading_term(self, ranking)
        if c == 1:
            return self
        inv = RatFun._ONE / c
        return DiffPoly._wrap(self.ring, {m: inv * v for m, v in self.terms.items()})

    def __repr__(self) -> str:
        from .frontend.serialize import format_poly

        return f"DiffPoly({format_poly(self)!r})"

    def __str__(self) -> str:
        from .frontend.serialize import format_poly

        return format_poly(self)


def rank_compare(u: Monomial, v: Monomial, rk: Ranking) -> int:
    """-1, 0 or 1 as ``u`` ranks below, equal to, or above ``v``."""
    return rk.compare(u, v)


def leading_term(p: DiffPoly, rk: Ranking) -> tuple[Monomial, RatFun]:
    if not p.terms:
        raise ValueError("no leading term: zero polynomial")
    m = max(p.terms, key=rk.key)
    return m, p.terms[m]


def prolong(p: DiffPoly, axis: int, power: int = 1) -> DiffPoly:
    """sigma_axis^power * p, twisting every coefficient."""
    vec = [0] * p.ring.n
    vec[axis] = power
    return p.shift(vec)


def poly_combine(a, p: DiffPoly, b, q: DiffPoly) -> DiffPoly:
    """``a*p + b*q`` with cancellation."""
    if p.ring != q.ring:
        raise ValueError("polynomials over different rings")
    a = p.ring.field(a)
    b = p.ring.field(b)
    out: dict[Monomial, RatFun] = {}
    if a:
        for m, c in p.terms.items():
            out[m] = a * c
    if b:
        for m, c in q.terms.items():
            v = out.get(m)
            v = b * c if v is None else v + b * c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return DiffPoly._wrap(p.ring, out)


def linear_combination(ring: RingSpec, items: Iterable[tuple[RatFun, DiffPoly]]) -> DiffPoly:
    """Sum of ``c * p`` over ``items``."""
    out: dict[Monomial, RatFun] = {}
    for c, p in items:
        if not c:
            continue
        for m, v in p.terms.items():
            w = out.get(m)
            w = c * v if w is None else w + c * v
            if w:
                out[m] = w
            else:
                out.pop(m, None)
    return DiffPoly._wrap(ring, out)
