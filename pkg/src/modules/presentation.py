"""
Minimal projective presentations, index and coindex.

Presentations are computed on a finite window wide enough that every tail
ends in a generic run. P0 sits on the generators of the support; P1 sits on
the tops of the kernel of P0 -> G, found vertex by vertex with exact rank
computations.
"""
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import Matrix

from src.errors import DomainError, RealizationError
from src.modules.thin import (
    ThinModule,
    ThinPiece,
    phi_support,
    maps_nonzero,
    piece_window,
    unbounded_tails,
    window_ends,
)
from src.modules.vectors import K0PrimeElement
from src.surface.hom import composite_nonzero, hom_dim
from src.surface.model import Arc, shift
from src.tilting.spec import CTVertex, TiltingSpec

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Presentation:
    """P1 -> P0 -> G -> 0 as classes in K_0'."""

    p1: K0PrimeElement = field(default_factory=K0PrimeElement)
    p0: K0PrimeElement = field(default_factory=K0PrimeElement)

    @property
    def index(self) -> K0PrimeElement:
        return self.p0 - self.p1

    def __add__(self, other: "Presentation") -> "Presentation":
        return Presentation(self.p1 + other.p1, self.p0 + other.p0)


@dataclass(frozen=True)
class ApproximationTriangle:
    """T1 -> T0 -> target -> T1[1] with T0, T1 sums of tilting arcs."""

    t1: Tuple[Arc, ...]
    t0: Tuple[Arc, ...]
    target: Arc


def generators(
    t: TiltingSpec,
    piece: ThinPiece,
    window: Optional[Sequence[CTVertex]] = None,
) -> List[CTVertex]:
    """
    Maximal support vertices of a piece.

    Raises:
        DomainError: the piece is not finitely generated
    """
    window = window or piece_window(t, piece.origin, piece.support)
    members = set(piece.support.support(window))
    bad = unbounded_tails(t, piece.origin, members, window)
    if bad:
        raise DomainError(f"module over {piece.origin} is not finitely generated along tail(s) {bad}")
    return [v for v in window if v in members
            and not any(maps_nonzero(t, v, w, piece.origin) for w in members)]


def _kernel_basis(coords: List[CTVertex], values: List[int]) -> List[Dict[CTVertex, int]]:
    """Basis of {x : sum x_g values_g = 0} in coordinates ``coords``."""
    hits = [g for g, e in zip(coords, values) if e]
    basis = [{g: 1} for g, e in zip(coords, values) if not e]
    for g in hits[1:]:
        basis.append({g: 1, hits[0]: -1})
    return basis


def _piece_presentation(t: TiltingSpec, piece: ThinPiece, margin: Optional[int] = None) -> Presentation:
    if piece.is_zero():
        return Presentation()
    origin = piece.origin
    window = piece_window(t, origin, piece.support, margin)
    gens = generators(t, piece, window)
    arcs = {v: t.arc_of(v) for v in window}
    g_arcs = {g: t.arc_of(g) for g in gens}

    # kernel of P0(u) -> G(u) at every window vertex
    coords: Dict[CTVertex, List[CTVertex]] = {}
    kernel: Dict[CTVertex, List[Dict[CTVertex, int]]] = {}
    for u in window:
        cs = [g for g in gens if hom_dim(arcs[u], g_arcs[g])]
        if not cs:
            continue
        values = [int(composite_nonzero(arcs[u], g_arcs[g], origin)) for g in cs]
        basis = _kernel_basis(cs, values)
        if basis:
            coords[u] = cs
            kernel[u] = basis

    tops: Dict[CTVertex, int] = {}
    for u, basis in kernel.items():
        images = []
        for w, w_basis in kernel.items():
            if w == u or not hom_dim(arcs[u], arcs[w]):
                continue
            for vec in w_basis:
                img = [
                    vec.get(g, 0) if composite_nonzero(arcs[u], arcs[w], g_arcs[g]) else 0
                    for g in coords[u]
                ]
                if any(img):
                    images.append(img)
        rank = Matrix(images).rank() if images else 0
        top = len(basis) - rank
        if top:
            tops[u] = top

    ends = window_ends(window)
    for u in tops:
        if u.tail is not None and u.pos == ends.get(u.tail):
            raise RealizationError(
                f"kernel generator {t.label(u)} sits on the window edge for {origin}"
            )

    p0 = K0PrimeElement.of({g: 1 for g in gens})
    p1 = K0PrimeElement.of(tops)
    logger.debug("presentation over %s: P1 = %s, P0 = %s", origin, p1.format(t), p0.format(t))
    return Presentation(p1, p0)


@lru_cache(maxsize=8192)
def piece_presentation(t: TiltingSpec, piece: ThinPiece) -> Presentation:
    return _piece_presentation(t, piece)


def min_projective_presentation(t: TiltingSpec, module) -> Presentation:
    """
    Minimal projective presentation P1 -> P0 -> G -> 0.

    Args:
        t: Tilting spec
        module: ThinModule or a single ThinPiece

    Returns:
        Presentation (sum over the pieces)

    Raises:
        DomainError: G is not finitely generated
    """
    pieces = module.pieces if isinstance(module, ThinModule) else (module,)
    total = Presentation()
    for piece in pieces:
        total = total + piece_presentation(t, piece)
    return total


def arc_presentation(t: TiltingSpec, arc: Arc, margin: Optional[int] = None) -> Presentation:
    """Presentation of Hom(-, arc); an explicit ``margin`` bypasses the cache."""
    piece = ThinPiece(arc, phi_support(t, arc))
    if margin is not None:
        return _piece_presentation(t, piece, margin)
    return piece_presentation(t, piece)


@lru_cache(maxsize=8192)
def _arc_index(t: TiltingSpec, arc: Arc) -> K0PrimeElement:
    v = t.shifted_vertex(arc)
    if v is not None:
        return -K0PrimeElement.basis(v)
    return arc_presentation(t, arc).index


def index(t: TiltingSpec, arcs: Sequence[Arc]) -> K0PrimeElement:
    """
    ind(M) = [P0] - [P1]; a summand arc(v)[1] contributes -[P_v].

    Args:
        t: Tilting spec
        arcs: Summands of M

    Returns:
        K0PrimeElement
    """
    total = K0PrimeElement()
    for arc in arcs:
        total = total + _arc_index(t, arc)
    return total


def coindex(t: TiltingSpec, arcs: Sequence[Arc]) -> K0PrimeElement:
    """coind(M) = -ind(M[-1])."""
    return -index(t, [shift(a, -1) for a in arcs])


def approximation_triangle(t: TiltingSpec, arc: Arc) -> ApproximationTriangle:
    """
    Right tilting approximation T1 -> T0 -> A -> T1[1].

    For A = arc(v)[1] this is T -> 0 -> T[1] -> T[1].
    """
    v = t.shifted_vertex(arc)
    if v is not None:
        return ApproximationTriangle((t.arc_of(v),), (), arc)

    def expand(elem: K0PrimeElement) -> Tuple[Arc, ...]:
        out: List[Arc] = []
        for u, c in elem.coeffs:
            out.extend([t.arc_of(u)] * c)
        return tuple(out)

    pres = arc_presentation(t, arc)
    return ApproximationTriangle(expand(pres.p1), expand(pres.p0), arc)
