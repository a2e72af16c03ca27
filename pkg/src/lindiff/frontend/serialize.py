"""Text and JSON renderings that round-trip through the parser."""

from __future__ import annotations

import json
from typing import TYPE_CHECKING, Iterable

from ..diffring import DiffPoly, Monomial, Ranking, RingSpec
from ..scalars import RatFun, render_ratfun, substitute_coeff

if TYPE_CHECKING:  # pragma: no cover
    from ..engine import Basis
    from ..quotient import HilbertPolynomial, HilbertSeries, StandardMonomialSet

__all__ = [
    "format_monomial",
    "format_poly",
    "format_system",
    "to_json",
    "serialize",
]

_DEFAULT_RANKING = Ranking()


def _display(ring: RingSpec, mon: Monomial, c: RatFun | None = None):
    """Map an internal monomial (and coefficient) to user coordinates."""
    if ring.direction == "backward":
        mon = Monomial(tuple(-a for a in mon.shift), mon.dep)
        if c is not None:
            c = substitute_coeff(c, {i: (-1, 0) for i in range(ring.n)})
    return mon, c


def _arg(var: str, k: int) -> str:
    if k > 0:
        return f"{var}+{k}"
    if k < 0:
        return f"{var}-{-k}"
    return var


def format_monomial(ring: RingSpec, mon: Monomial, internal: bool = True) -> str:
    if internal:
        mon, _ = _display(ring, mon)
    args = ",".join(_arg(v, k) for v, k in zip(ring.independent, mon.shift))
    return f"{ring.dependent[mon.dep]}[{args}]"


def format_poly(p: DiffPoly, ranking: Ranking | None = None) -> str:
    """Terms in descending rank, e.g. ``f[n+2] - f[n+1] - f[n]``."""
    if not p.terms:
        return "0"
    ring = p.ring
    parts: list[str] = []
    for mon, c in p.sorted_terms(ranking or _DEFAULT_RANKING):
        dmon, c = _display(ring, mon, c)
        neg = c.leading_sign() < 0
        if neg:
            c = -c
        body = format_monomial(ring, dmon, internal=False)
        if c != 1:
            body = f"{render_ratfun(c)}*{body}"
        if parts:
            parts.append(f" - {body}" if neg else f" + {body}")
        else:
            parts.append(f"-{body}" if neg else body)
    return "".join(parts)


def format_system(polys: Iterable[DiffPoly], ranking: Ranking | None = None) -> str:
    return ";\n".join(format_poly(p, ranking) for p in polys)


def _ring_json(ring: RingSpec) -> dict:
    return {
        "independent": list(ring.independent),
        "dependent": list(ring.dependent),
        "parameters": list(ring.parameters),
        "direction": ring.direction,
    }


def _ranking_json(ranking: Ranking, ring: RingSpec) -> dict:
    blocks = ranking.blocks or (tuple(range(ring.n)),)
    order = ranking.dependent_order or tuple(range(ring.m))
    return {
        "order": ranking.order,
        "priority": ranking.priority,
        "blocks": [[ring.independent[a] for a in b] for b in blocks],
        "dependent_order": [ring.dependent[k] for k in order],
    }


def to_json(
    ring: RingSpec,
    ranking: Ranking | None = None,
    mode: str | None = None,
    elements: Iterable[DiffPoly] = (),
    masters: "StandardMonomialSet | Iterable[Monomial] | None" = None,
    series: dict | None = None,
    conditions: Iterable[DiffPoly] = (),
) -> dict:
    """Stable JSON document: ring, ranking, mode, elements, masters, series, conditions."""
    ranking = ranking or _DEFAULT_RANKING
    elements = sorted(elements, key=lambda p: ranking.key(p.leading_monomial(ranking)))
    if masters is None:
        master_list = []
    else:
        master_list = [format_monomial(ring, m) for m in masters]
    return {
        "ring": _ring_json(ring),
        "ranking": _ranking_json(ranking, ring),
        "mode": mode,
        "elements": [format_poly(p, ranking) for p in elements],
        "masters": master_list,
        "series": series,
        "conditions": [format_poly(c, ranking) for c in conditions],
    }


def serialize(result, format: str = "text", ranking: Ranking | None = None) -> str:
    """Render a Basis, StandardMonomialSet, HilbertSeries or list of polynomials."""
    from ..engine import Basis
    from ..quotient import HilbertSeries, StandardMonomialSet

    if format not in ("text", "json"):
        raise ValueError(f"unknown format {format!r}")
    if isinstance(result, Basis):
        if format == "text":
            return format_system(result.polys, result.ranking)
        doc = to_json(result.ring, result.ranking, result.mode, elements=result.polys)
    elif isinstance(result, StandardMonomialSet):
        if format == "text":
            return "[" + ", ".join(format_monomial(result.ring, m) for m in result) + "]"
        doc = to_json(result.ring, ranking, None, masters=list(result), series=result.summary())
    elif isinstance(result, HilbertSeries):
        if format == "text":
            return str(result)
        return json.dumps({"series": str(result)}, sort_keys=True)
    else:
        polys = list(result)
        if format == "text":
            return format_system(polys, ranking)
        ring = polys[0].ring if polys else None
        if ring is None:
            return json.dumps({"conditions": []})
        doc = to_json(ring, ranking, None, conditions=polys)
    return json.dumps(doc, indent=2, sort_keys=False)
