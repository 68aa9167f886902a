"""
Arc realization of thin modules and the coind - ind class of a submodule.
"""
import logging
from functools import lru_cache
from itertools import combinations
from typing import Dict, List, Sequence, Set, Union

from src.errors import RealizationError
from src.modules.presentation import coindex, index, piece_presentation
from src.modules.thin import (
    ThinModule,
    ThinPiece,
    maps_nonzero,
    phi_support,
    piece_window,
    support_from_members,
)
from src.modules.vectors import K0PrimeElement, UniformVector
from src.surface.hom import hom_dim
from src.surface.model import Acc, Arc, BoundaryPoint, point_key, try_arc
from src.tilting.spec import CTVertex, TiltingSpec, surface_points_near

logger = logging.getLogger(__name__)


def components(t: TiltingSpec, piece: ThinPiece) -> List[UniformVector]:
    """Supports of the indecomposable summands of a thin piece."""
    window = piece_window(t, piece.origin, piece.support)
    members = piece.support.support(window)
    parent: Dict[CTVertex, CTVertex] = {v: v for v in members}

    def find(v: CTVertex) -> CTVertex:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for u, v in combinations(members, 2):
        if maps_nonzero(t, u, v, piece.origin) or maps_nonzero(t, v, u, piece.origin):
            parent[find(u)] = find(v)

    groups: Dict[CTVertex, Set[CTVertex]] = {}
    for v in members:
        groups.setdefault(find(v), set()).add(v)
    return [support_from_members(g, window) for g in groups.values()]


def _candidate_points(t: TiltingSpec, piece: ThinPiece, reach: int) -> List[BoundaryPoint]:
    pres = piece_presentation(t, piece)
    pts: List[BoundaryPoint] = list(piece.origin.ends)
    for elem in (pres.p0, pres.p1):
        for v, _ in elem.coeffs:
            pts.extend(t.arc_of(v).ends)
    pts = surface_points_near(pts, reach=reach)
    pts.extend(Acc(i) for i in range(t.r) if Acc(i) not in pts)
    return sorted(set(pts), key=point_key)


def _realize_component(t: TiltingSpec, origin: Arc, support: UniformVector) -> Arc:
    piece = ThinPiece(origin, support)
    pres = piece_presentation(t, piece)
    gens = [v for v, _ in pres.p0.coeffs]
    if not pres.p1 and len(gens) == 1:
        arc = t.arc_of(gens[0])
        if phi_support(t, arc) == support:
            return arc

    gen_arcs = [t.arc_of(g) for g in gens]
    for reach in (1, 2):
        pts = _candidate_points(t, piece, reach)
        for p, q in combinations(pts, 2):
            arc = try_arc(t.surface, p, q)
            if arc is None or not all(hom_dim(g, arc) for g in gen_arcs):
                continue
            if phi_support(t, arc) == support:
                return arc
    raise RealizationError(
        f"no arc realizes the submodule {support.format(t)} of Hom(-, {origin})"
    )


def module_to_arcs(t: TiltingSpec, module: Union[ThinModule, ThinPiece]) -> List[Arc]:
    """
    Arcs B with Hom(-, B) equal to ``module`` on the tilting vertices.

    Args:
        t: Tilting spec
        module: Finitely presented thin module or a single piece

    Returns:
        Summand arcs, sorted

    Raises:
        RealizationError: some indecomposable summand has no arc
    """
    pieces = module.pieces if isinstance(module, ThinModule) else (module,)
    arcs: List[Arc] = []
    for piece in pieces:
        for comp in components(t, piece):
            arcs.append(_realize_component(t, piece.origin, comp))
    return sorted(arcs, key=Arc.sort_key)


@lru_cache(maxsize=16384)
def _piece_value(t: TiltingSpec, piece: ThinPiece) -> K0PrimeElement:
    if piece.is_zero():
        return K0PrimeElement()
    arcs = module_to_arcs(t, piece)
    logger.debug("submodule over %s realized by %s", piece.origin, ", ".join(map(str, arcs)))
    return coindex(t, arcs) - index(t, arcs)


def coind_minus_ind(t: TiltingSpec, pieces: Union[ThinPiece, Sequence[ThinPiece]]) -> K0PrimeElement:
    """
    coind(N) - ind(N) for the arcs N realizing a submodule.

    Args:
        t: Tilting spec
        pieces: One finitely presented submodule piece, or one per summand

    Returns:
        K0PrimeElement (additive over pieces)
    """
    if isinstance(pieces, ThinPiece):
        pieces = (pieces,)
    total = K0PrimeElement()
    for piece in pieces:
        total = total + _piece_value(t, piece)
    return total
