"""Janet and Janet-like monomial divisions on exponent vectors.

Both divisions group a finite set ``U`` by prefixes: for axis ``i`` the
class of ``u`` is ``[u]_i = {v in U : v_j = u_j for all j < i}``.

Janet
    axis ``i`` is multiplicative for ``u`` iff ``u_i = max{v_i : v in [u]_i}``.

Janet-like
    if some ``v in [u]_i`` has ``v_i > u_i``, ``u`` gets the
    nonmultiplicative power ``sigma_i^k`` with ``k`` the smallest positive
    gap ``v_i - u_i``.

Assignments are recomputed from scratch for every new set, and divisor
search is a linear scan over ``U`` in the order given.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Iterable, Sequence

from .diffring import Monomial

__all__ = [
    "JANET",
    "JANET_LIKE",
    "janet_assign",
    "janet_like_assign",
    "janet_divides",
    "janet_like_divides",
    "inv_divisor",
    "DivisionAssignment",
]

JANET = "janet"
JANET_LIKE = "janet-like"

Exps = tuple[int, ...]


def _prefix_groups(U: Sequence[Exps], i: int) -> dict[Exps, list[int]]:
    groups: dict[Exps, list[int]] = defaultdict(list)
    for u in U:
        groups[u[:i]].append(u[i])
    return groups


def janet_assign(U: Iterable[Exps]) -> dict[Exps, frozenset[int]]:
    """Multiplicative axes (0-based) of every exponent vector in ``U``."""
    U = list(dict.fromkeys(tuple(u) for u in U))
    if not U:
        return {}
    n = len(U[0])
    mult: dict[Exps, set[int]] = {u: set() for u in U}
    for i in range(n):
        top = {p: max(ds) for p, ds in _prefix_groups(U, i).items()}
        for u in U:
            if u[i] == top[u[:i]]:
                mult[u].add(i)
    return {u: frozenset(s) for u, s in mult.items()}


def janet_like_assign(U: Iterable[Exps]) -> dict[Exps, dict[int, int]]:
    """Nonmultiplicative powers ``{axis: k}`` of every exponent vector in ``U``."""
    U = list(dict.fromkeys(tuple(u) for u in U))
    if not U:
        return {}
    n = len(U[0])
    nmp: dict[Exps, dict[int, int]] = {u: {} for u in U}
    for i in range(n):
        groups = {p: sorted(set(ds)) for p, ds in _prefix_groups(U, i).items()}
        for u in U:
            above = [d for d in groups[u[:i]] if d > u[i]]
            if above:
                nmp[u][i] = above[0] - u[i]
    return nmp


def janet_divides(u: Exps, w: Exps, mult: frozenset[int]) -> bool:
    for i, (a, b) in enumerate(zip(u, w)):
        if a > b or (a < b and i not in mult):
            return False
    return True


def janet_like_divides(u: Exps, w: Exps, nmp: dict[int, int]) -> bool:
    for a, b in zip(u, w):
        if a > b:
            return False
    for i, k in nmp.items():
        if w[i] - u[i] >= k:
            return False
    return True


def inv_divisor(w: Exps, assignment: dict, mode: str = JANET) -> Exps | None:
    """First ``u`` (in the assignment's order) that involutively divides ``w``."""
    w = tuple(w)
    test = janet_divides if mode == JANET else janet_like_divides
    for u, data in assignment.items():
        if test(u, w, data):
            return u
    return None


class DivisionAssignment:
    """Division data for a set of leading monomials, one class per dependent.

    ``items`` is a sequence of ``(Monomial, payload)`` pairs; the payload
    comes back from :meth:`divisor` so callers can map a monomial to the
    basis element that owns it.
    """

    def __init__(self, items: Sequence[tuple[Monomial, object]], mode: str = JANET):
        if mode not in (JANET, JANET_LIKE):
            raise ValueError(f"unknown division {mode!r}")
        self.mode = mode
        self._owner: dict[Monomial, object] = {}
        by_class: dict[int, list[Exps]] = defaultdict(list)
        for mon, payload in items:
            if mon in self._owner:
                raise ValueError(f"duplicate leading monomial {mon}")
            self._owner[mon] = payload
            by_class[mon.dep].append(mon.shift)
        assign = janet_assign if mode == JANET else janet_like_assign
        self.classes: dict[int, dict] = {k: assign(U) for k, U in by_class.items()}

    def data(self, mon: Monomial):
        """Multiplicative axes (Janet) or NMP dict (Janet-like) of ``mon``."""
        return self.classes[mon.dep][mon.shift]

    def divisor(self, w: Monomial):
        """Payload of the involutive divisor of ``w``, or None."""
        cls = self.classes.get(w.dep)
        if cls is None:
            return None
        u = inv_divisor(w.shift, cls, self.mode)
        if u is None:
            return None
        return self._owner[Monomial(u, w.dep)]

    def divisor_monomial(self, w: Monomial) -> Monomial | None:
        cls = self.classes.get(w.dep)
        if cls is None:
            return None
        u = inv_divisor(w.shift, cls, self.mode)
        return None if u is None else Monomial(u, w.dep)

    def prolongations(self, mon: Monomial, n: int) -> list[tuple[int, int]]:
        """Nonmultiplicative prolongations ``(axis, power)`` of ``mon``."""
        d = self.data(mon)
        if self.mode == JANET:
            return [(i, 1) for i in range(n) if i not in d]
        return sorted(d.items())
