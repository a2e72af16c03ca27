"""Input checks shared by the estimator and the command line."""

from __future__ import annotations

from typing import Iterable, Sequence

from .diffring import DiffPoly, Ranking, RingSpec
from .frontend.convert import normalize_direction
from .frontend.parser import ParsedSystem, parse_expression, parse_ring, parse_system
from .scalars import RatFun


def check_ring(ring, direction: str = "forward") -> RingSpec:
    if isinstance(ring, RingSpec):
        if ring.direction != direction:
            return RingSpec(ring.independent, ring.dependent, ring.parameters, direction)
        return ring
    if isinstance(ring, str):
        return parse_ring(ring, direction)
    raise TypeError(f"ring must be a RingSpec or 'indeps; deps[; params]' text, got {type(ring).__name__}")


def _axis_list(names: Sequence[str] | str, ring: RingSpec) -> tuple[int, ...]:
    if isinstance(names, str):
        names = [s for s in names.replace(" ", "").split(",") if s]
    out = []
    for a in names:
        if isinstance(a, int):
            out.append(a)
        elif a in ring.independent:
            out.append(ring.independent.index(a))
        else:
            raise ValueError(f"unknown independent variable {a!r} in blocks")
    return tuple(out)


def check_ranking(
    ring: RingSpec,
    order: str = "degrevlex",
    priority: str = "top",
    blocks=None,
    dependent_order=None,
) -> Ranking:
    """Build a Ranking from user-level names.

    ``blocks`` is ``"x,y|z"`` or a list of name lists; ``dependent_order``
    lists dependent names (or indices) from highest to lowest.
    """
    if isinstance(blocks, str):
        blocks = [b for b in blocks.split("|") if b.strip()]
    if blocks is not None:
        blocks = tuple(_axis_list(b, ring) for b in blocks)
    if isinstance(dependent_order, str):
        dependent_order = [s for s in dependent_order.replace(" ", "").split(",") if s]
    if dependent_order is not None:
        dependent_order = tuple(
            d if isinstance(d, int) else ring.dep_index(d) for d in dependent_order
        )
    rk = Ranking(order=order, priority=priority, blocks=blocks, dependent_order=dependent_order)
    rk.check(ring)
    return rk


def check_system(X, ring: RingSpec) -> ParsedSystem:
    """Text, a ParsedSystem, or an iterable of text/DiffPoly -> normalized ParsedSystem."""
    if isinstance(X, str):
        sys = parse_system(X, ring)
    elif isinstance(X, ParsedSystem):
        sys = X
    else:
        polys, rhs = [], []
        for x in X:
            if isinstance(x, str):
                part = parse_system(x, ring)
                polys.extend(part.polys)
                rhs.extend(part.rhs)
            else:
                polys.append(check_poly(x, ring, normalize=False))
                rhs.append(RatFun._ZERO)
        sys = ParsedSystem(ring, polys, rhs)
    return normalize_direction(sys)


def check_poly(x, ring: RingSpec, normalize: bool = True) -> DiffPoly:
    if isinstance(x, str):
        p = parse_expression(x, ring)
    elif isinstance(x, DiffPoly):
        if x.ring != ring:
            raise ValueError("polynomial belongs to a different ring")
        p = x
    else:
        raise TypeError(f"expected equation text or DiffPoly, got {type(x).__name__}")
    return normalize_direction([p])[0] if normalize else p


def check_polys(X, ring: RingSpec) -> list[DiffPoly]:
    if isinstance(X, (str, DiffPoly)):
        X = [X]
    return [check_poly(x, ring) for x in X]

