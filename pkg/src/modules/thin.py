"""
Thin modules Hom(-, M) restricted to the tilting subcategory.

A module is kept as one piece per indecomposable summand of M: the piece's
support is the set of vertices v with Hom(arc(v), A) != 0. Structure maps are
never stored; the map along u -> v is nonzero iff the composite
arc(u) -> arc(v) -> A is nonzero.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from src.errors import DomainError
from src.modules.vectors import TailKey, UniformVector
from src.surface.hom import composite_nonzero, hom_dim
from src.surface.model import Arc, BoundaryPoint
from src.tilting.spec import TAIL, CTVertex, TiltingSpec, surface_points_near, tail_vertex
from src.utils.settings import get_settings

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ThinPiece:
    """Submodule of Hom(-, origin) given by its support."""

    origin: Arc
    support: UniformVector

    def is_zero(self) -> bool:
        return self.support.is_zero()


@dataclass(frozen=True)
class ThinModule:
    """Direct sum of thin pieces; ``dims`` adds the piece supports."""

    pieces: Tuple[ThinPiece, ...] = ()

    @property
    def origin(self) -> List[Arc]:
        return [p.origin for p in self.pieces]

    @property
    def dims(self) -> UniformVector:
        total = UniformVector()
        for piece in self.pieces:
            total = total + piece.support
        return total

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.pieces)


@lru_cache(maxsize=4096)
def phi_support(t: TiltingSpec, arc: Arc) -> UniformVector:
    """Support of Hom(-, arc) on the tilting vertices."""
    return UniformVector.evaluate(
        t,
        lambda v: hom_dim(t.arc_of(v), arc),
        points=surface_points_near(arc.ends, reach=2),
        margin=get_settings().tail_margin,
    )


def module_of(t: TiltingSpec, arcs: Sequence[Arc]) -> ThinModule:
    """
    The module Hom(-, M) of M = direct sum of ``arcs``.

    Args:
        t: Tilting spec
        arcs: Summands of M

    Returns:
        ThinModule with one piece per summand

    Raises:
        DomainError: a summand is arc(v)[1] for a tilting vertex v
    """
    pieces = []
    for arc in arcs:
        v = t.shifted_vertex(arc)
        if v is not None:
            raise DomainError(
                f"character input must be T[1]-free: {arc} is the shift of {t.label(v)}"
            )
        pieces.append(ThinPiece(arc, phi_support(t, arc)))
    return ThinModule(tuple(pieces))


def maps_nonzero(t: TiltingSpec, u: CTVertex, v: CTVertex, origin: Arc) -> bool:
    """Whether the structure map along u -> v of Hom(-, origin) is nonzero."""
    if u == v:
        return False
    x, y = t.arc_of(u), t.arc_of(v)
    return bool(hom_dim(x, y)) and composite_nonzero(x, y, origin)


# ===== windows =====

def piece_points(t: TiltingSpec, origin: Arc, support: Optional[UniformVector] = None) -> List[BoundaryPoint]:
    """Boundary points near which a piece may behave exceptionally."""
    pts: List[BoundaryPoint] = list(origin.ends)
    if support is not None:
        for v, _ in support.entries:
            if v.kind == TAIL:
                pts.append(t.tail_point(v.acc, v.side, v.pos))
    return surface_points_near(pts, reach=2)


def piece_window(
    t: TiltingSpec,
    origin: Arc,
    support: Optional[UniformVector] = None,
    margin: Optional[int] = None,
) -> Tuple[CTVertex, ...]:
    margin = get_settings().tail_margin if margin is None else margin
    return t.window_for(piece_points(t, origin, support), margin)


def generic_starts(t: TiltingSpec, origin: Arc, support: Optional[UniformVector] = None) -> Dict[TailKey, int]:
    """First tail position from which everything repeats by translation."""
    pts = piece_points(t, origin, support)
    return {key: t.tail_cutoff(key[0], key[1], pts) + 2 for key in t.tails}


def window_ends(window: Iterable[CTVertex]) -> Dict[TailKey, int]:
    ends: Dict[TailKey, int] = {}
    for v in window:
        if v.kind == TAIL:
            ends[v.tail] = max(ends.get(v.tail, 0), v.pos)
    return ends


def is_maximal(t: TiltingSpec, v: CTVertex, members: Set[CTVertex], origin: Arc) -> bool:
    return not any(maps_nonzero(t, v, w, origin) for w in members if w != v)


def unbounded_tails(
    t: TiltingSpec,
    origin: Arc,
    members: Set[CTVertex],
    window: Sequence[CTVertex],
) -> List[TailKey]:
    """
    Tails along which ``members`` (extended past the window) has no top.

    The window's last vertex on a tail stands for the whole run beyond it. If
    it belongs to the set, nothing in the set lies above it, and it maps
    nonzero to the next vertex outwards, then the run climbs forever without a
    generator and the set is not finitely generated.
    """
    bad = []
    for key, last in window_ends(window).items():
        v = tail_vertex(key[0], key[1], last)
        if v not in members or not is_maximal(t, v, members, origin):
            continue
        if maps_nonzero(t, v, tail_vertex(key[0], key[1], last + 1), origin):
            bad.append(key)
    return bad


def support_from_members(
    members: Set[CTVertex],
    window: Sequence[CTVertex],
) -> UniformVector:
    """Window member set as a support; each tail continues like its last vertex."""
    ends = window_ends(window)
    defaults = {}
    for key, last in ends.items():
        defaults[key] = int(tail_vertex(key[0], key[1], last) in members)
    return UniformVector.build({v: int(v in members) for v in window}, defaults)
