"""scikit-learn style wrapper: ``fit`` completes a basis, ``transform`` reduces."""

from __future__ import annotations

from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_polys, check_ranking, check_ring, check_system
from .engine import janet_basis
from .quotient import (
    RelationSet,
    hilbert_polynomial,
    hilbert_series,
    reduce_with_relations,
    residue_class_basis,
)


class DifferenceBasis(TransformerMixin, BaseEstimator):
    """Janet(-like) basis of a linear difference system.

    Parameters
    ----------
    ring : str or RingSpec
        ``"x,y; u,ux,uy; d,m2"`` style declaration.
    order : {"degrevlex", "lex"}
    priority : {"top", "pot"}
    blocks : str or list, optional
        Ordered axis blocks, e.g. ``"x|y"``.
    dependent_order : str or list, optional
        Dependent names from highest to lowest rank.
    mode : {"janet", "janet-like"}
    criteria : tuple of str
        Subset of ``("C1", "C2", "C3", "C4")``.
    direction : {"forward", "backward"}
    degree_bound : int, optional
        Enumeration bound for infinite sets of masters.
    relations : list of str, optional
        Patterns such as ``"f[0,*]"`` zeroed after reduction.

    Attributes
    ----------
    ring_ : RingSpec
    ranking_ : Ranking
    basis_ : Basis
    rhs_ : list of RatFun
        Affine right-hand sides of the fitted system (zeros if homogeneous).

    Examples
    --------
    >>> est = DifferenceBasis(ring="n; f").fit("f[n+2] - f[n+1] - f[n]")
    >>> [str(m) for m in est.transform(["f[n+3]"])]
    ['2*f[n+1] + f[n]']
    """

    def __init__(
        self,
        ring="x; y",
        order="degrevlex",
        priority="top",
        blocks=None,
        dependent_order=None,
        mode="janet",
        criteria=(),
        direction="forward",
        degree_bound=None,
        relations=None,
    ):
        self.ring = ring
        self.order = order
        self.priority = priority
        self.blocks = blocks
        self.dependent_order = dependent_order
        self.mode = mode
        self.criteria = criteria
        self.direction = direction
        self.degree_bound = degree_bound
        self.relations = relations

    def fit(self, X, y=None):
        from .frontend.parser import parse_relation

        self.ring_ = check_ring(self.ring, self.direction)
        self.ranking_ = check_ranking(
            self.ring_, self.order, self.priority, self.blocks, self.dependent_order
        )
        system = check_system(X, self.ring_)
        polys = [p for p in system.polys if p]
        self.rhs_ = list(system.rhs)
        self.basis_ = janet_basis(polys, self.ranking_, self.mode, self.criteria)
        self.relations_ = RelationSet(parse_relation(r, self.ring_) for r in (self.relations or ()))
        return self

    def transform(self, X):
        """Normal forms of ``X`` (text, DiffPoly, or a list of either)."""
        check_is_fitted(self, "basis_")
        return [
            reduce_with_relations(p, self.basis_, self.relations_)
            for p in check_polys(X, self.ring_)
        ]

    def masters(self):
        check_is_fitted(self, "basis_")
        return residue_class_basis(self.basis_, self.degree_bound, self.relations_)

    def hilbert_series(self):
        check_is_fitted(self, "basis_")
        return hilbert_series(self.basis_)

    def hilbert_polynomial(self):
        check_is_fitted(self, "basis_")
        return hilbert_polynomial(self.basis_)

    def __sklearn_is_fitted__(self):
        return hasattr(self, "basis_")
