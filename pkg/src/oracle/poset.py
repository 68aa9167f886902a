"""
Module theory on the truncated poset, computed from the Hom calculus alone.

Supports, generators, kernels and arc realizations are all recomputed here
on the finite set of tilting vertices with tail positions 1..L, so the
oracle can diff them against the closed-form engine.
"""
import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from sympy import Matrix

from src.errors import DomainError, RealizationError
from src.modules.vectors import K0PrimeElement
from src.surface.hom import composite_nonzero, hom_dim
from src.surface.model import Acc, Arc, BoundaryPoint, point_key, shift, try_arc
from src.tilting.spec import CTVertex, TiltingSpec, surface_points_near, tail_vertex

logger = logging.getLogger(__name__)


@dataclass
class TruncatedPoset:
    """
    Tilting vertices with tail positions up to ``truncate``.

    Presentations use ``truncate + margin`` positions so that kernels of
    submodules cut near L still see their tops.
    """

    spec: TiltingSpec
    truncate: int
    margin: int
    _supports: Optional[Dict[FrozenSet[CTVertex], List[Arc]]] = field(default=None, repr=False)
    _indices: Dict[Arc, K0PrimeElement] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.window = self.spec.window(self.truncate)
        self.wide = self.spec.window(self.truncate + self.margin)
        self.edge = self.truncate + self.margin
        self.arcs = {v: self.spec.arc_of(v) for v in self.wide}

    # ===== supports =====

    def support(self, arc: Arc, window: Optional[Sequence[CTVertex]] = None) -> FrozenSet[CTVertex]:
        window = self.window if window is None else window
        return frozenset(v for v in window if hom_dim(self.arcs[v], arc))

    def _candidate_points(self) -> List[BoundaryPoint]:
        pts: List[BoundaryPoint] = []
        for arc in self.arcs.values():
            pts.extend(arc.ends)
        pts = surface_points_near(pts, reach=1)
        pts.extend(Acc(i) for i in range(self.spec.r))
        return sorted(set(pts), key=point_key)

    def _extended(self, members) -> FrozenSet[CTVertex]:
        """``members`` on the wide window; each tail continues like its vertex at L."""
        out = set(members)
        for acc, side in self.spec.tails:
            if tail_vertex(acc, side, self.truncate) in out:
                out.update(tail_vertex(acc, side, n) for n in range(self.truncate + 1, self.edge + 1))
        return frozenset(out)

    def _support_index(self) -> Dict[FrozenSet[CTVertex], List[Arc]]:
        if self._supports is None:
            index: Dict[FrozenSet[CTVertex], List[Arc]] = {}
            for p, q in combinations(self._candidate_points(), 2):
                try:
                    arc = try_arc(self.spec.surface, p, q)
                except ValueError:
                    continue
                if arc is not None:
                    index.setdefault(self.support(arc, self.wide), []).append(arc)
            for arcs in index.values():
                arcs.sort(key=Arc.sort_key)
            self._supports = index
            logger.debug("truncated poset: %d candidate supports", len(index))
        return self._supports

    # ===== presentations =====

    def presentation(self, arc: Arc) -> Tuple[K0PrimeElement, K0PrimeElement]:
        """
        (P1, P0) of Hom(-, arc) on the wide window.

        Raises:
            DomainError: a generator or kernel top sits on the last position
        """
        members = self.support(arc, self.wide)
        gens = [
            v for v in self.wide if v in members
            and not any(
                w != v and hom_dim(self.arcs[v], self.arcs[w]) and composite_nonzero(self.arcs[v], self.arcs[w], arc)
                for w in members
            )
        ]
        coords: Dict[CTVertex, List[CTVertex]] = {}
        kernels: Dict[CTVertex, List[Matrix]] = {}
        for u in self.wide:
            cs = [g for g in gens if hom_dim(self.arcs[u], self.arcs[g])]
            if not cs:
                continue
            row = Matrix([[int(composite_nonzero(self.arcs[u], self.arcs[g], arc)) for g in cs]])
            basis = row.nullspace()
            if basis:
                coords[u] = cs
                kernels[u] = basis

        tops: Dict[CTVertex, int] = {}
        for u, basis in kernels.items():
            images = []
            for w, w_basis in kernels.items():
                if w == u or not hom_dim(self.arcs[u], self.arcs[w]):
                    continue
                along = Matrix([
                    [int(g == h and composite_nonzero(self.arcs[u], self.arcs[w], self.arcs[g])) for h in coords[w]]
                    for g in coords[u]
                ])
                images.extend(c for c in (along * vec for vec in w_basis) if any(c))
            spanned = Matrix.hstack(*images).rank() if images else 0
            top = Matrix.hstack(*basis, *images).rank() - spanned
            if top:
                tops[u] = top

        for v in list(gens) + list(tops):
            if v.tail is not None and v.pos == self.edge:
                raise DomainError(f"{self.spec.label(v)} of Hom(-, {arc}) sits on the truncation edge")
        return K0PrimeElement.of(tops), K0PrimeElement.of({g: 1 for g in gens})

    def index(self, arc: Arc) -> K0PrimeElement:
        if arc not in self._indices:
            v = self.spec.shifted_vertex(arc)
            if v is not None:
                self._indices[arc] = -K0PrimeElement.basis(v)
            else:
                p1, p0 = self.presentation(arc)
                self._indices[arc] = p0 - p1
        return self._indices[arc]

    def coindex(self, arc: Arc) -> K0PrimeElement:
        return -self.index(shift(arc, -1))

    # ===== submodules =====

    def realize(self, members: FrozenSet[CTVertex], linked) -> List[Arc]:
        """
        One arc per connected piece of ``members``.

        ``linked(u, v)`` says whether u and v are joined by a nonzero map.

        Raises:
            RealizationError: no candidate arc has a piece's support
        """
        pending = set(members)
        arcs = []
        while pending:
            todo = [pending.pop()]
            piece = set(todo)
            while todo:
                v = todo.pop()
                for u in [u for u in pending if linked(u, v) or linked(v, u)]:
                    pending.discard(u)
                    piece.add(u)
                    todo.append(u)
            found = self._support_index().get(self._extended(piece))
            if not found:
                labels = ", ".join(sorted(self.spec.label(v) for v in piece))
                raise RealizationError(f"no arc on the truncated poset has support {{{labels}}}")
            arcs.append(found[0])
        return sorted(arcs, key=Arc.sort_key)

    def coind_minus_ind(self, members: FrozenSet[CTVertex], linked) -> K0PrimeElement:
        total = K0PrimeElement()
        for arc in self.realize(members, linked):
            total = total + self.coindex(arc) - self.index(arc)
        return total
