"""The residue module R_L / (I & R_L): masters, Hilbert data, compatibility conditions.

Standard monomials (masters) are the monomials outside every involutive
cone of the basis leading monomials.  Hilbert data are graded by the total
shift degree and summed over dependent classes; they come from the
disjoint Janet cones of the leading-monomial set.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Iterator, Sequence

from .diffring import DiffPoly, Monomial, Ranking, RingSpec
from .division import JANET, inv_divisor, janet_assign
from .engine import Basis, inv_reduce, janet_basis
from .scalars import RatFun

__all__ = [
    "StandardMonomialSet",
    "HilbertSeries",
    "HilbertPolynomial",
    "RelationPattern",
    "RelationSet",
    "residue_class_basis",
    "hilbert_series",
    "hilbert_function",
    "hilbert_polynomial",
    "comp_cond",
    "substitute_rhs",
    "add_relation",
    "list_relations",
    "reduce_with_relations",
    "janet_complete",
    "monomials_of_degree",
]


def monomials_of_degree(n: int, d: int) -> Iterator[tuple[int, ...]]:
    """All exponent vectors in n variables with total degree d."""
    if n == 1:
        yield (d,)
        return
    for a in range(d, -1, -1):
        for rest in monomials_of_degree(n - 1, d - a):
            yield (a,) + rest


def _minimalize(U: Iterable[tuple[int, ...]]) -> list[tuple[int, ...]]:
    U = sorted(set(U), key=lambda u: (sum(u), u))
    out: list[tuple[int, ...]] = []
    for u in U:
        if not any(all(a <= b for a, b in zip(v, u)) for v in out):
            out.append(u)
    return out


def janet_complete(U: Iterable[tuple[int, ...]]) -> dict[tuple[int, ...], frozenset[int]]:
    """Janet completion of a monomial set; returns its Janet assignment."""
    U = _minimalize(U)
    if not U:
        return {}
    n = len(U[0])
    while True:
        assign = janet_assign(U)
        grown = False
        for u in sorted(U):
            for i in range(n):
                if i in assign[u]:
                    continue
                w = u[:i] + (u[i] + 1,) + u[i + 1:]
                if inv_divisor(w, assign, JANET) is None:
                    U.append(w)
                    grown = True
                    break
            if grown:
                break
        if not grown:
            return assign


# ---------------------------------------------------------------------------
# relations on masters


@dataclass(frozen=True)
class RelationPattern:
    """Zeroes every monomial of ``dep`` whose shift matches ``entries``.

    An entry is a fixed shift value or ``None`` (wildcard).
    """

    dep: int
    entries: tuple[int | None, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        for e in self.entries:
            if e is not None and e < 0:
                raise ValueError("fixed pattern entries must be nonnegative")

    def matches(self, mon: Monomial) -> bool:
        if mon.dep != self.dep or len(mon.shift) != len(self.entries):
            return False
        return all(e is None or e == a for e, a in zip(self.entries, mon.shift))

    @property
    def is_sequence(self) -> bool:
        return any(e is None for e in self.entries)

    def format(self, ring: RingSpec) -> str:
        back = ring.direction == "backward"
        vals = ["*" if e is None else str(-e if back else e) for e in self.entries]
        return f"{ring.dependent[self.dep]}[{','.join(vals)}]"


class RelationSet:
    """Session-scoped user relations, stored once each in insertion order."""

    def __init__(self, patterns: Iterable[RelationPattern] = ()):
        self._patterns: list[RelationPattern] = []
        for p in patterns:
            self.add(p)

    def add(self, pattern: RelationPattern) -> None:
        if pattern not in self._patterns:
            self._patterns.append(pattern)

    def list(self) -> list[RelationPattern]:
        return list(self._patterns)

    def __len__(self) -> int:
        return len(self._patterns)

    def __iter__(self):
        return iter(self._patterns)

    def __bool__(self) -> bool:
        return bool(self._patterns)

    def matches(self, mon: Monomial) -> bool:
        return any(p.matches(mon) for p in self._patterns)

    def filter(self, p: DiffPoly) -> DiffPoly:
        if not self._patterns:
            return p
        return DiffPoly._wrap(p.ring, {m: c for m, c in p.terms.items() if not self.matches(m)})


def add_relation(state: RelationSet, pattern: RelationPattern) -> RelationSet:
    state.add(pattern)
    return state


def list_relations(state: RelationSet) -> list[RelationPattern]:
    return state.list()


def reduce_with_relations(p: DiffPoly, J: Basis, relations: RelationSet | Iterable[RelationPattern] = ()) -> DiffPoly:
    """Involutive normal form of ``p`` with terms matching a relation deleted."""
    if not isinstance(relations, RelationSet):
        relations = RelationSet(relations)
    return relations.filter(inv_reduce(p, J))


# ---------------------------------------------------------------------------
# standard monomials


class StandardMonomialSet:
    """Monomials with no involutive divisor among the basis leading monomials.

    Finite sets iterate completely; infinite ones iterate through
    ``degree_bound`` (which must then be given).
    """

    def __init__(self, J: Basis, degree_bound: int | None = None, relations: RelationSet | None = None):
        self.ring = J.ring
        self.ranking = J.ranking
        self.assignment = J.assignment
        self.degree_bound = degree_bound
        self.relations = relations or RelationSet()
        self._lms: dict[int, list[tuple[int, ...]]] = {k: [] for k in range(J.ring.m)}
        for m in J.leading_monomials:
            self._lms[m.dep].append(m.shift)
        self._series = hilbert_series(J)
        self.finite = _is_finite(self._lms, J.ring.n)

    def __contains__(self, mon: Monomial) -> bool:
        if min(mon.shift, default=0) < 0:
            return False
        return self.assignment.divisor_monomial(mon) is None and not self.relations.matches(mon)

    def _box(self) -> list[Monomial]:
        n = self.ring.n
        out = []
        for k, U in self._lms.items():
            bounds = []
            for i in range(n):
                pure = [u[i] for u in U if all(a == 0 for j, a in enumerate(u) if j != i)]
                bounds.append(min(pure))
            for s in itertools.product(*(range(b) for b in bounds)):
                mon = Monomial(tuple(s), k)
                if mon in self:
                    out.append(mon)
        return out

    def of_degree(self, d: int) -> list[Monomial]:
        out = []
        for k in range(self.ring.m):
            for s in monomials_of_degree(self.ring.n, d):
                mon = Monomial(s, k)
                if mon in self:
                    out.append(mon)
        return sorted(out, key=self.ranking.key)

    def count(self, d: int) -> int:
        return len(self.of_degree(d))

    def enumerate(self, max_degree: int) -> list[Monomial]:
        out = []
        for d in range(max_degree + 1):
            out.extend(self.of_degree(d))
        return sorted(out, key=self.ranking.key)

    def monomials(self) -> list[Monomial]:
        if self.finite:
            return sorted(self._box(), key=self.ranking.key)
        if self.degree_bound is None:
            raise ValueError("infinite set of standard monomials; give degree_bound")
        return self.enumerate(self.degree_bound)

    def __iter__(self):
        return iter(self.monomials())

    def __len__(self) -> int:
        if not self.finite:
            raise TypeError("infinite set of standard monomials has no length")
        return len(self._box())

    @property
    def series(self) -> "HilbertSeries":
        """Generating series (ignores user relations)."""
        return self._series

    def summary(self) -> dict:
        return {
            "finite": self.finite,
            "count": len(self) if self.finite else None,
            "generating_function": str(self._series),
            "degree_bound": self.degree_bound,
        }

    def __repr__(self) -> str:
        if self.finite:
            return f"StandardMonomialSet(finite, {len(self)} masters)"
        return f"StandardMonomialSet(infinite, series={self._series})"


def _is_finite(lms: dict[int, list[tuple[int, ...]]], n: int) -> bool:
    for U in lms.values():
        for i in range(n):
            if not any(all(a == 0 for j, a in enumerate(u) if j != i) for u in U):
                return False
    return True


def residue_class_basis(J: Basis, degree_bound: int | None = None, relations: RelationSet | None = None) -> StandardMonomialSet:
    """Masters of ``J``: a K-basis of the residue module (filtered by relations)."""
    return StandardMonomialSet(J, degree_bound, relations)


# ---------------------------------------------------------------------------
# Hilbert data


def _poly_mul(a: list, b: list) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _trim(a: list) -> list:
    a = list(a)
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


@dataclass(frozen=True)
class HilbertSeries:
    """``numerator(t) / (1 - t)^power`` with integer numerator coefficients."""

    numerator: tuple[int, ...]
    power: int

    def coefficient(self, d: int) -> int:
        if d < 0:
            return 0
        if self.power == 0:
            return self.numerator[d] if d < len(self.numerator) else 0
        D = self.power
        return sum(c * comb(d - j + D - 1, D - 1) for j, c in enumerate(self.numerator) if j <= d)

    def coefficients(self, upto: int) -> list[int]:
        return [self.coefficient(d) for d in range(upto + 1)]

    def to_sympy(self):
        import sympy

        t = sympy.Symbol("t")
        num = sum(c * t**j for j, c in enumerate(self.numerator))
        return num / (1 - t) ** self.power

    def __str__(self) -> str:
        terms = []
        for j, c in enumerate(self.numerator):
            if not c:
                continue
            mono = "" if j == 0 else ("t" if j == 1 else f"t^{j}")
            if mono and abs(c) == 1:
                body = mono
            elif mono:
                body = f"{abs(c)}*{mono}"
            else:
                body = str(abs(c))
            if terms:
                terms.append(("-" if c < 0 else "+") + body)
            else:
                terms.append(("-" if c < 0 else "") + body)
        num = "".join(terms) or "0"
        if self.power == 0:
            return num
        den = "(1-t)" if self.power == 1 else f"(1-t)^{self.power}"
        if len([c for c in self.numerator if c]) > 1:
            num = f"({num})"
        return f"{num}/{den}"


@dataclass(frozen=True)
class HilbertPolynomial:
    """Polynomial in ``d`` (ascending Fraction coefficients) valid for d >= regularity."""

    coefficients: tuple[Fraction, ...]
    regularity: int

    def __call__(self, d: int) -> Fraction:
        return sum((c * d**i for i, c in enumerate(self.coefficients)), Fraction(0))

    @property
    def degree(self) -> int:
        nz = [i for i, c in enumerate(self.coefficients) if c]
        return nz[-1] if nz else -1

    def __str__(self) -> str:
        parts = []
        for i in range(len(self.coefficients) - 1, -1, -1):
            c = self.coefficients[i]
            if not c:
                continue
            mono = "" if i == 0 else ("d" if i == 1 else f"d^{i}")
            a = abs(c)
            if mono and a == 1:
                body = mono
            elif mono:
                body = f"{a}*{mono}"
            else:
                body = str(a)
            if parts:
                parts.append(("-" if c < 0 else "+") + body)
            else:
                parts.append(("-" if c < 0 else "") + body)
        return "".join(parts) or "0"


def _leading_sets(J: Basis) -> dict[int, list[tuple[int, ...]]]:
    lms: dict[int, list[tuple[int, ...]]] = {k: [] for k in range(J.ring.m)}
    for m in J.leading_monomials:
        lms[m.dep].append(m.shift)
    return lms


def series_from_leading(lms: dict[int, list[tuple[int, ...]]], n: int) -> HilbertSeries:
    """Quotient series from per-class leading-monomial sets via Janet cones."""
    num = [0]
    for U in lms.values():
        part = [1]
        for u, mult in janet_complete(U).items():
            cone = [0] * sum(u) + [1]
            for _ in range(n - len(mult)):
                cone = _poly_mul(cone, [1, -1])
            size = max(len(part), len(cone))
            part = [(part[i] if i < len(part) else 0) - (cone[i] if i < len(cone) else 0) for i in range(size)]
        size = max(len(num), len(part))
        num = [(num[i] if i < len(num) else 0) + (part[i] if i < len(part) else 0) for i in range(size)]
    num = _trim(num)
    power = n
    # cancel (1 - t) factors by synthetic division at t = 1
    while power > 0 and sum(num) == 0 and any(num):
        q = []
        acc = 0
        for c in num[:-1]:
            acc += c
            q.append(acc)
        num = _trim(q) if q else [0]
        power -= 1
    if not any(num):
        power = 0
        num = [0]
    return HilbertSeries(tuple(num), power)


def hilbert_series(J: Basis) -> HilbertSeries:
    return series_from_leading(_leading_sets(J), J.ring.n)


def hilbert_function(J: Basis, d: int) -> int:
    return hilbert_series(J).coefficient(d)


def _binomial_poly(shift: int, r: int) -> list[Fraction]:
    """binom(d + shift, r) as ascending coefficients in d."""
    out = [Fraction(1)]
    for i in range(r):
        out = _poly_mul(out, [Fraction(shift - i), Fraction(1)])
    f = factorial(r)
    return [Fraction(c) / f for c in out]


def polynomial_from_series(hs: HilbertSeries) -> HilbertPolynomial:
    D = hs.power
    P = hs.numerator
    degP = max((j for j, c in enumerate(P) if c), default=0)
    if D == 0:
        coeffs = (Fraction(0),)
        reg = degP + 1 if any(P) else 0
    else:
        acc = [Fraction(0)] * D
        for j, c in enumerate(P):
            if not c:
                continue
            b = _binomial_poly(D - 1 - j, D - 1)
            for i, v in enumerate(b):
                acc[i] += c * v
        coeffs = tuple(_trim(acc))
        reg = max(0, degP - D + 1)
    hp = HilbertPolynomial(tuple(coeffs), reg)
    while reg > 0 and hp(reg - 1) == hs.coefficient(reg - 1):
        reg -= 1
    return HilbertPolynomial(tuple(coeffs), reg)


def hilbert_polynomial(J: Basis) -> HilbertPolynomial:
    return polynomial_from_series(hilbert_series(J))


# ---------------------------------------------------------------------------
# compatibility conditions


def _tag_names(ring: RingSpec, s: int) -> tuple[str, ...]:
    taken = set(ring.independent) | set(ring.dependent) | set(ring.parameters)
    prefix = "r"
    while any(f"{prefix}{i}" in taken for i in range(1, s + 1)):
        prefix = "_" + prefix
    return tuple(f"{prefix}{i}" for i in range(1, s + 1))


def elimination_ranking(rk: Ranking, m: int, s: int) -> Ranking:
    """``rk`` on the original dependents, all of which outrank ``s`` appended tags."""
    order = tuple(rk.dependent_order or range(m)) + tuple(range(m, m + s))
    return Ranking(
        order=rk.order,
        priority=rk.priority,
        blocks=rk.blocks,
        dependent_order=order,
        dependent_blocks=(tuple(range(m)), tuple(range(m, m + s))),
    )


def comp_cond(
    F: Sequence[DiffPoly],
    rk: Ranking | None = None,
    mode: str = JANET,
    criteria: Iterable[str] = (),
) -> list[DiffPoly]:
    """Compatibility conditions on right-hand sides ``r_i`` of ``F[i] = r_i``.

    The result lives in ``F[0].ring`` extended by tag dependents
    ``r1..rs``; each condition is a minimal generator of the elimination
    module, an operator identity in the tags only.
    """
    rk = rk or Ranking()
    F = list(F)
    if not F:
        return []
    ring = F[0].ring
    m, s = ring.m, len(F)
    ext = ring.extend(_tag_names(ring, s))
    erk = elimination_ranking(rk, m, s)
    gens = []
    for i, f in enumerate(F):
        terms = dict(f.terms)
        terms[Monomial((0,) * ring.n, m + i)] = -RatFun._ONE
        gens.append(DiffPoly(ext, terms))
    J = janet_basis(gens, erk, mode, criteria)
    conds = [e for e in J.elements if e.lm.dep >= m]
    lms = [e.lm for e in conds]
    minimal = [e.poly for e in conds if not any(o != e.lm and o.divides(e.lm) for o in lms)]
    return minimal


def substitute_rhs(cond: DiffPoly, F: Sequence[DiffPoly]) -> DiffPoly:
    """Replace each tag ``r_i`` in ``cond`` by the operator ``F[i]`` (zero for a true condition)."""
    ring = F[0].ring
    m = ring.m
    out = DiffPoly.zero(ring)
    for mon, c in cond.terms.items():
        if mon.dep < m:
            raise ValueError("condition involves original dependents")
        out = out + F[mon.dep - m].shift(mon.shift).scale(c)
    return out
