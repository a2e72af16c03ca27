"""Session-wide options with per-call overrides."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable

from ..diffring import DiffPoly, Ranking, RingSpec
from ..division import JANET, JANET_LIKE
from ..engine import CRITERIA, Basis, _normalize_criteria, inv_reduce, janet_basis
from ..quotient import (
    RelationPattern,
    RelationSet,
    StandardMonomialSet,
    comp_cond,
    reduce_with_relations,
    residue_class_basis,
)
from .convert import normalize_direction
from .parser import ParsedSystem, parse_expression, parse_relation, parse_system

__all__ = ["SessionOptions", "Session"]


@dataclass(frozen=True)
class SessionOptions:
    mode: str = JANET
    criteria: tuple[str, ...] = ()
    direction: str = "forward"
    ranking: Ranking = field(default_factory=Ranking)
    format: str = "text"

    def __post_init__(self):
        if self.mode not in (JANET, JANET_LIKE):
            raise ValueError(f"mode must be {JANET!r} or {JANET_LIKE!r}")
        object.__setattr__(self, "criteria", _normalize_criteria(self.criteria))
        if self.direction not in ("forward", "backward"):
            raise ValueError("direction must be 'forward' or 'backward'")
        if self.format not in ("text", "json"):
            raise ValueError("format must be 'text' or 'json'")


class Session:
    """Options plus relations shared by a sequence of computations.

    Keyword arguments to each method override the session options for
    that call only.
    """

    def __init__(self, ring: RingSpec, options: SessionOptions | None = None, **overrides):
        self.options = replace(options or SessionOptions(), **overrides)
        if ring.direction != self.options.direction:
            ring = RingSpec(ring.independent, ring.dependent, ring.parameters, self.options.direction)
        self.ring = ring
        self.relations = RelationSet()

    def set_options(self, **changes) -> SessionOptions:
        self.options = replace(self.options, **changes)
        return self.options

    def _opts(self, overrides: dict) -> SessionOptions:
        return replace(self.options, **overrides) if overrides else self.options

    def system(self, F) -> ParsedSystem:
        """Parse (if text) and normalize a system to nonnegative shifts."""
        if isinstance(F, str):
            F = parse_system(F, self.ring)
        elif not isinstance(F, ParsedSystem):
            F = list(F)
            F = ParsedSystem(self.ring, F, [])
        return normalize_direction(F)

    def polynomial(self, p) -> DiffPoly:
        if isinstance(p, str):
            p = parse_expression(p, self.ring)
        return normalize_direction([p])[0]

    def basis(self, F, **overrides) -> Basis:
        o = self._opts(overrides)
        polys = [p for p in self.system(F).polys if p]
        return janet_basis(polys, o.ranking, o.mode, o.criteria)

    def reduce(self, p, J: Basis) -> DiffPoly:
        p = self.polynomial(p)
        if self.relations:
            return reduce_with_relations(p, J, self.relations)
        return inv_reduce(p, J)

    def masters(self, J: Basis, degree_bound: int | None = None) -> StandardMonomialSet:
        return residue_class_basis(J, degree_bound, self.relations)

    def comp_cond(self, F, **overrides) -> list[DiffPoly]:
        o = self._opts(overrides)
        polys = self.system(F).polys
        return comp_cond(polys, o.ranking, o.mode, o.criteria)

    def add_relation(self, pattern: RelationPattern | str) -> None:
        if isinstance(pattern, str):
            pattern = parse_relation(pattern, self.ring)
        self.relations.add(pattern)

    def list_relations(self) -> list[RelationPattern]:
        return self.relations.list()
