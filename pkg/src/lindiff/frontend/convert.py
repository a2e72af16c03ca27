"""Shift-direction normalization and operator/equation conversions."""

from __future__ import annotations

from typing import Mapping, Sequence

from ..diffring import DiffPoly, Monomial, RingSpec
from ..scalars import RatFun, render_ratfun, shift_coeff_vec, substitute_coeff
from .parser import ParsedSystem

__all__ = ["OperatorPoly", "normalize_direction", "shift2pol", "pol2shift", "format_rows"]


def _lift_vector(p: DiffPoly) -> tuple[int, ...]:
    lows = [0] * p.ring.n
    for m in p.terms:
        for i, a in enumerate(m.shift):
            if a < lows[i]:
                lows[i] = a
    return tuple(-a for a in lows)


def normalize_direction(F):
    """Shift every equation by its maximal negative shift so all shifts are >= 0.

    Accepts a list of DiffPoly or a :class:`ParsedSystem` (whose affine
    right-hand sides are shifted along).  Coefficients are twisted.  The
    backward-direction negation happens at parse time, so the input is
    already in internal coordinates.
    """
    if isinstance(F, ParsedSystem):
        polys, rhs = [], []
        for p, r in zip(F.polys, F.rhs):
            vec = _lift_vector(p)
            polys.append(p.shift(vec))
            rhs.append(shift_coeff_vec(r, vec))
        return ParsedSystem(F.ring, polys, rhs)
    return [p.shift(_lift_vector(p)) for p in F]


class OperatorPoly:
    """``sum c_mu * sigma^mu`` with coefficients written on the left."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: RingSpec, terms: Mapping[tuple[int, ...], RatFun] | None = None):
        self.ring = ring
        self.terms = {tuple(s): c for s, c in (terms or {}).items() if c}

    def apply(self, target: DiffPoly) -> DiffPoly:
        """``sum c_mu * sigma^mu(target)``."""
        out: dict[Monomial, RatFun] = {}
        for s, c in self.terms.items():
            for m, v in target.shift(s).terms.items():
                w = out.get(m)
                w = c * v if w is None else w + c * v
                if w:
                    out[m] = w
                else:
                    out.pop(m, None)
        return DiffPoly._wrap(self.ring, out)

    def __mul__(self, other: "OperatorPoly") -> "OperatorPoly":
        out: dict = {}
        for sa, ca in self.terms.items():
            for sb, cb in other.terms.items():
                s = tuple(a + b for a, b in zip(sa, sb))
                w = out.get(s, RatFun._ZERO) + ca * shift_coeff_vec(cb, sa)
                if w:
                    out[s] = w
                else:
                    out.pop(s, None)
        return OperatorPoly(self.ring, out)

    def __eq__(self, other) -> bool:
        return isinstance(other, OperatorPoly) and self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __str__(self) -> str:
        ring = self.ring
        if not self.terms:
            return "0"
        back = ring.direction == "backward"
        parts = []
        # descending total degree, then lexicographic
        for s in sorted(self.terms, key=lambda s: (sum(s), s), reverse=True):
            c = self.terms[s]
            if back:
                c = substitute_coeff(c, {i: (-1, 0) for i in range(ring.n)})
            neg = c.leading_sign() < 0
            if neg:
                c = -c
            ops = "*".join(
                f"S_{v}" if k == 1 else f"S_{v}^{k}"
                for v, k in zip(ring.independent, s) if k
            )
            if ops and c == 1:
                body = ops
            elif ops:
                body = f"{render_ratfun(c)}*{ops}"
            else:
                body = render_ratfun(c)
            if parts:
                parts.append(f" - {body}" if neg else f" + {body}")
            else:
                parts.append(f"-{body}" if neg else body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"OperatorPoly({str(self)!r})"


def shift2pol(p: DiffPoly) -> dict[int, OperatorPoly]:
    """Operator row of ``p``: dependent index -> operator acting on it."""
    rows: dict[int, dict] = {}
    for m, c in p.terms.items():
        rows.setdefault(m.dep, {})[m.shift] = c
    return {k: OperatorPoly(p.ring, t) for k, t in sorted(rows.items())}


def pol2shift(
    rows: Mapping[int, OperatorPoly] | Sequence[Mapping[int, OperatorPoly]],
    targets: Mapping[int, DiffPoly] | None = None,
    ring: RingSpec | None = None,
):
    """Apply operator rows to target expressions (default: the dependents themselves).

    A single row mapping gives one DiffPoly, a sequence of rows a list.
    """
    if not isinstance(rows, Mapping):
        return [pol2shift(r, targets, ring) for r in rows]
    if ring is None:
        ring = next(iter(rows.values())).ring
    out = DiffPoly.zero(ring)
    for k, op in rows.items():
        target = targets[k] if targets is not None and k in targets else ring.var(k)
        out = out + op.apply(target)
    return out


def format_rows(rows: Mapping[int, OperatorPoly]) -> str:
    """Text like ``(S_x - 1)*u``; parses back to the original equation."""
    if not rows:
        return "0"
    parts = []
    for k, op in rows.items():
        name = op.ring.dependent[k]
        parts.append(f"({op})*{name}")
    return " + ".join(parts)
