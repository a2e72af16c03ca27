"""Involutive normal forms and the completion to a minimal Janet(-like) basis."""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .diffring import DiffPoly, Monomial, Ranking, RingSpec
from .division import JANET, JANET_LIKE, DivisionAssignment
from .scalars import RatFun, shift_coeff_vec

__all__ = [
    "CRITERIA",
    "BasisElement",
    "Basis",
    "autoreduce",
    "inv_reduce",
    "janet_basis",
    "criterion_applies",
]

log = logging.getLogger(__name__)

CRITERIA = ("C1", "C2", "C3", "C4")


@dataclass(eq=False)
class BasisElement:
    """A monic polynomial with its completion bookkeeping.

    ``ancestor`` is the leading monomial of the element this one was
    prolonged from; ``processed`` holds the ``(axis, power)``
    prolongations already enqueued.
    """

    poly: DiffPoly
    lm: Monomial
    ancestor: Monomial
    processed: set = field(default_factory=set)

    def __repr__(self) -> str:
        return f"BasisElement({self.poly}, anc={self.ancestor.shift})"


class Basis:
    """Minimal monic tail-reduced Janet or Janet-like basis."""

    def __init__(
        self,
        elements: Sequence[BasisElement],
        ring: RingSpec,
        ranking: Ranking,
        mode: str = JANET,
        stats: dict | None = None,
    ):
        self.ring = ring
        self.ranking = ranking
        self.mode = mode
        self.elements = sorted(elements, key=lambda e: ranking.key(e.lm))
        self.assignment = DivisionAssignment([(e.lm, e) for e in self.elements], mode)
        self.stats = stats or {}

    @property
    def polys(self) -> list[DiffPoly]:
        return [e.poly for e in self.elements]

    @property
    def leading_monomials(self) -> list[Monomial]:
        return [e.lm for e in self.elements]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.polys)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Basis):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.ranking == other.ranking
            and self.mode == other.mode
            and self.polys == other.polys
        )

    __hash__ = None

    def prolongations(self, element: BasisElement) -> list[tuple[int, int]]:
        """Nonmultiplicative ``(axis, power)`` prolongations of ``element``."""
        return self.assignment.prolongations(element.lm, self.ring.n)

    def reduce(self, p: DiffPoly) -> DiffPoly:
        return inv_reduce(p, self)

    def __repr__(self) -> str:
        body = "; ".join(str(p) for p in self.polys)
        return f"Basis([{body}], mode={self.mode!r})"


# ---------------------------------------------------------------------------
# reduction


def _check_poly(p: DiffPoly, ring: RingSpec) -> None:
    if p.ring != ring:
        raise ValueError("polynomial and basis live over different rings")
    if not p.is_nonnegative():
        raise ValueError("negative shifts present; apply normalize_direction first")


def _subtract_multiple(p: dict, c: RatFun, g: DiffPoly, shift: tuple[int, ...], skip: Monomial) -> None:
    """In place: p -= c * sigma^shift(g), omitting g's term ``skip``."""
    for gm, gc in g.terms.items():
        if gm == skip:
            continue
        nm = gm.times(shift)
        v = p.get(nm)
        d = c * shift_coeff_vec(gc, shift)
        v = -d if v is None else v - d
        if v:
            p[nm] = v
        else:
            del p[nm]


def _normal_form(terms: dict, assignment: DivisionAssignment, ranking: Ranking, head_only: bool = False) -> dict:
    """Involutive normal form of a term dict; rank-highest reducible term first."""
    p = dict(terms)
    out: dict[Monomial, RatFun] = {}
    key = ranking.key
    while p:
        m = max(p, key=key)
        c = p.pop(m)
        g = assignment.divisor(m)
        if g is None:
            out[m] = c
            if head_only:
                out.update(p)
                return out
            continue
        _subtract_multiple(p, c, g.poly, m.quotient(g.lm), g.lm)
    return out


def inv_reduce(p: DiffPoly, J: Basis) -> DiffPoly:
    """Full involutive normal form of ``p`` modulo ``J``."""
    _check_poly(p, J.ring)
    return DiffPoly._wrap(J.ring, _normal_form(p.terms, J.assignment, J.ranking))


def _monic(terms: dict, ranking: Ranking) -> tuple[dict, Monomial]:
    lm = max(terms, key=ranking.key)
    c = terms[lm]
    if c != 1:
        inv = RatFun._ONE / c
        terms = {m: RatFun._ONE if m == lm else inv * v for m, v in terms.items()}
    return terms, lm


def autoreduce(F: Iterable[DiffPoly], ranking: Ranking) -> list[DiffPoly]:
    """Pairwise ordinary head reduction until leading monomials are non-divisible.

    Results are monic; zero results are dropped.
    """
    F = [f for f in F if f]
    if not F:
        return []
    ring = F[0].ring
    key = ranking.key
    queue = [dict(f.terms) for f in F]
    done: list[tuple[dict, Monomial]] = []
    while queue:
        queue.sort(key=lambda t: key(max(t, key=key)))
        p = queue.pop(0)
        while p:
            lm = max(p, key=key)
            hit = next((r for r in done if r[1].divides(lm)), None)
            if hit is None:
                break
            rt, rlm = hit
            c = p.pop(lm) / rt[rlm]
            _subtract_multiple(p, c, DiffPoly._wrap(ring, rt), lm.quotient(rlm), rlm)
        if not p:
            continue
        p, lm = _monic(p, ranking)
        keep = []
        for r in done:
            if lm.divides(r[1]):
                queue.append(r[0])
            else:
                keep.append(r)
        done = keep + [(p, lm)]
    done.sort(key=lambda t: key(t[1]))
    return [DiffPoly._wrap(ring, t) for t, _ in done]


# ---------------------------------------------------------------------------
# criteria


def _lcm(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(max(x, y) for x, y in zip(a, b))


def _properly_divides(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    return a != b and all(x <= y for x, y in zip(a, b))


def criterion_applies(
    p: BasisElement,
    g: BasisElement,
    T: Sequence[BasisElement],
    which: str,
    commutative: bool = False,
) -> bool:
    """True if criterion ``which`` proves that ``p`` reduces to zero.

    ``g`` is the involutive divisor of ``p.lm`` in ``T``.  All monomials
    compared are in the class of ``p.lm``.

    C1  ancestors multiply to the prolonged leading monomial.  Only valid
        when the ideal lives in a commutative polynomial ring, i.e. one
        dependent class and sigma-constant coefficients; otherwise never
        applies.
    C2  the ancestors' lcm properly divides the leading monomial.
    C3  a chain through some ``t`` in ``T``: both lcm(anc t, anc p) and
        lcm(anc t, anc g) properly divide the leading monomial.
    C4  a chain through some ``t`` in ``T`` whose leading monomial equals
        its ancestor: lcm(lm t, anc p) properly divides the leading
        monomial and lcm(lm t, anc g) does too.
    """
    u = p.lm.shift
    dep = p.lm.dep
    ap, ag = p.ancestor.shift, g.ancestor.shift
    if which == "C1":
        return commutative and tuple(a + b for a, b in zip(ap, ag)) == u
    if which == "C2":
        return _properly_divides(_lcm(ap, ag), u)
    if which == "C3":
        for t in T:
            if t.ancestor.dep != dep:
                continue
            at = t.ancestor.shift
            if _properly_divides(_lcm(at, ap), u) and _properly_divides(_lcm(at, ag), u):
                return True
        return False
    if which == "C4":
        for t in T:
            if t.lm.dep != dep or t.lm != t.ancestor or t is g:
                continue
            lt = t.lm.shift
            if _properly_divides(_lcm(lt, ap), u) and _properly_divides(_lcm(lt, ag), u):
                return True
        return False
    raise ValueError(f"unknown criterion {which!r}")


def _is_commutative(F: Sequence[DiffPoly]) -> bool:
    deps = set()
    for f in F:
        deps |= f.dependents()
        for c in f.terms.values():
            if not c.is_constant and c.free_symbols() & set(f.ring.independent):
                return False
    return len(deps) <= 1


# ---------------------------------------------------------------------------
# completion


def _normalize_criteria(criteria) -> tuple[str, ...]:
    out = []
    for c in criteria or ():
        c = str(c).upper()
        if not c.startswith("C"):
            c = "C" + c
        if c not in CRITERIA:
            raise ValueError(f"unknown criterion {c!r}; expected a subset of {CRITERIA}")
        if c not in out:
            out.append(c)
    return tuple(sorted(out))


def janet_basis(
    F: Iterable[DiffPoly],
    ranking: Ranking | None = None,
    mode: str = JANET,
    criteria: Iterable[str] = (),
    tie_break: str = "fifo",
) -> Basis:
    """Minimal monic tail-reduced Janet (or Janet-like) basis of the ideal of ``F``.

    ``tie_break`` ("fifo" or "lifo") orders queue entries with equal
    leading monomials; the result does not depend on it.
    """
    ranking = ranking or Ranking()
    if mode not in (JANET, JANET_LIKE):
        raise ValueError(f"unknown division {mode!r}")
    if tie_break not in ("fifo", "lifo"):
        raise ValueError(f"tie_break must be 'fifo' or 'lifo', got {tie_break!r}")
    crit = _normalize_criteria(criteria)
    F = list(F)
    if not F:
        raise ValueError("zero ideal input")
    ring = F[0].ring
    ranking.check(ring)
    for f in F:
        _check_poly(f, ring)
    G = autoreduce(F, ranking)
    if not G:
        raise ValueError("zero ideal input")
    commutative = _is_commutative(G)
    key = ranking.key
    n = ring.n
    stats: dict = {"reductions": 0, "zero": 0, "skipped": Counter()}

    queue: list[tuple[int, BasisElement]] = []
    counter = 0

    def push(e: BasisElement) -> None:
        nonlocal counter
        queue.append((counter, e))
        counter += 1

    sign = 1 if tie_break == "fifo" else -1

    def pop() -> BasisElement:
        best = min(range(len(queue)), key=lambda i: (key(queue[i][1].lm), sign * queue[i][0]))
        return queue.pop(best)[1]

    for g in G:
        lm = max(g.terms, key=key)
        push(BasisElement(g, lm, lm))

    T: list[BasisElement] = []
    assignment = DivisionAssignment([], mode)
    while queue:
        p = pop()
        if crit and p.ancestor != p.lm:
            g = assignment.divisor(p.lm)
            if g is not None:
                hit = next((c for c in crit if criterion_applies(p, g, T, c, commutative)), None)
                if hit is not None:
                    stats["skipped"][hit] += 1
                    continue
        stats["reductions"] += 1
        h = _normal_form(p.poly.terms, assignment, ranking)
        if not h:
            stats["zero"] += 1
            continue
        h, lm = _monic(h, ranking)
        hp = DiffPoly._wrap(ring, h)
        if lm == p.lm:
            new = BasisElement(hp, lm, p.ancestor, set(p.processed))
        else:
            new = BasisElement(hp, lm, lm)
        kept = []
        for q in T:
            if q.lm.dep == lm.dep and _properly_divides(lm.shift, q.lm.shift):
                push(q)
            else:
                kept.append(q)
        T = kept + [new]
        assignment = DivisionAssignment([(q.lm, q) for q in T], mode)
        for q in T:
            for pr in assignment.prolongations(q.lm, n):
                if pr in q.processed:
                    continue
                q.processed.add(pr)
                axis, power = pr
                vec = [0] * n
                vec[axis] = power
                push(BasisElement(q.poly.shift(vec), q.lm.times(vec), q.ancestor))

    # tail reduction; the set is involutive so the result is canonical
    final = []
    for e in T:
        tail = dict(e.poly.terms)
        lc = tail.pop(e.lm)
        red = _normal_form(tail, assignment, ranking)
        red[e.lm] = lc
        final.append(BasisElement(DiffPoly._wrap(ring, red), e.lm, e.ancestor, e.processed))
    stats["skipped"] = dict(stats["skipped"])
    log.debug("janet_basis: %d elements, stats %s", len(final), stats)
    return Basis(final, ring, ranking, mode, stats)
