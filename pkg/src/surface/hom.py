"""
Hom/Ext dimensions between indecomposables and the triangle shapes they span.

Every Hom and Ext space between arcs is at most one dimensional, so all
dimensions here are 0 or 1.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import List, Optional, Tuple

from src.errors import ArgumentError, DomainError, RealizationError
from src.surface.model import (
    Acc,
    Arc,
    ArcKind,
    arc_kind,
    crosses,
    cyclic_between,
    point_key,
    shift,
    try_arc,
)

logger = logging.getLogger(__name__)

CASE_CROSSING = "crossing"
CASE_ROTATION = "rotation"
CASE_DOUBLE_LIMIT = "double limit"
CASE_NONE = "none"


def _same_surface(x: Arc, y: Arc) -> None:
    if x.surface != y.surface:
        raise ArgumentError(f"arcs {x} and {y} live on different surfaces")


def ext1_case(x: Arc, y: Arc) -> Tuple[int, str]:
    """
    dim Hom(X, Y[1]) together with the rule that decided it.

    Args:
        x: Arc of X
        y: Arc of Y

    Returns:
        (dimension, case name)
    """
    _same_surface(x, y)
    if crosses(x, y):
        return 1, CASE_CROSSING
    shared = set(x.ends) & set(y.ends)
    if x != y and len(shared) == 1:
        z = shared.pop()
        if isinstance(z, Acc) and cyclic_between(x.other(z), y.other(z), z):
            return 1, CASE_ROTATION
    if x == y and arc_kind(x) == ArcKind.DOUBLE_LIMIT:
        return 1, CASE_DOUBLE_LIMIT
    return 0, CASE_NONE


def ext1_dim(x: Arc, y: Arc) -> int:
    return ext1_case(x, y)[0]


@lru_cache(maxsize=1 << 18)
def hom_dim(x: Arc, y: Arc) -> int:
    """dim Hom(X, Y) = dim Hom(X, (Y[-1])[1])."""
    return ext1_dim(x, shift(y, -1))


def _weakly_ordered(points) -> bool:
    """Points met in this order on one counterclockwise turn starting at points[0]."""
    start = points[0]
    k0 = point_key(start)
    moved = False
    last = (0,)
    for p in points[1:]:
        if p == start:
            rel = (3,) if moved else (0,)
        else:
            moved = True
            k = point_key(p)
            rel = (1, k) if k > k0 else (2, k)
        if rel < last:
            return False
        last = rel
    return True


@lru_cache(maxsize=1 << 18)
def composite_nonzero(x: Arc, y: Arc, z: Arc) -> bool:
    """
    Whether the composite X -> Y -> Z of nonzero maps is nonzero.

    Needs hom(X,Y) = hom(Y,Z) = hom(X,Z) = 1 and the nesting
    a <= e <= c <= b <= f <= d (cyclically) for some labelling
    X = {a,b}, Y = {e,f}, Z = {c,d}.
    """
    if not (hom_dim(x, y) and hom_dim(y, z) and hom_dim(x, z)):
        return False
    if x == y or y == z:
        return True
    for a, b in permutations(x.ends):
        for c, d in permutations(z.ends):
            for e, f in permutations(y.ends):
                if _weakly_ordered([a, e, c, b, f, d]):
                    return True
    return False


@dataclass(frozen=True)
class Triangle:
    """Exact triangle left -> middle -> right -> left[1]; ``middle`` is a direct sum."""

    left: Arc
    middle: Tuple[Arc, ...]
    right: Arc

    def __str__(self) -> str:
        mid = " + ".join(str(a) for a in self.middle) if self.middle else "0"
        return f"{self.left} -> {mid} -> {self.right} -> {self.left}[1]"


def _quadrilateral_sides(x: Arc, y: Arc) -> Tuple[List[Optional[Arc]], List[Optional[Arc]]]:
    """Opposite side pairs of the quadrilateral spanned by two crossing arcs."""
    pts = sorted(list(x.ends) + list(y.ends), key=point_key)
    surface = x.surface
    sides = [try_arc(surface, pts[i], pts[(i + 1) % 4]) for i in range(4)]
    return [sides[0], sides[2]], [sides[1], sides[3]]


def _middle(left: Arc, right: Arc, pairs) -> Tuple[Arc, ...]:
    for pair in pairs:
        real = [s for s in pair if s is not None]
        if real and all(hom_dim(left, s) and hom_dim(s, right) for s in real):
            return tuple(sorted(real, key=Arc.sort_key))
    # both sides of the right pair are boundary segments
    for pair, other in ((pairs[0], pairs[1]), (pairs[1], pairs[0])):
        if all(s is None for s in pair):
            real = [s for s in other if s is not None]
            if not (real and all(hom_dim(left, s) and hom_dim(s, right) for s in real)):
                return ()
    raise RealizationError(f"no side pair of the quadrilateral fits {left} -> ? -> {right}")


def exchange_triangles(x: Arc, y: Arc) -> List[Triangle]:
    """
    The non-split triangles between X and Y.

    Args:
        x: Arc of X
        y: Arc of Y

    Returns:
        Crossing arcs: both X -> B -> Y and Y -> A -> X.
        Rotation about a shared accumulation point: the single triangle whose
        third map is the nonzero extension. Double limit X = Y: X -> 0 -> X.
    """
    xy, case = ext1_case(x, y)
    yx = ext1_dim(y, x)
    if not xy and not yx:
        raise DomainError(f"no nonzero extension between {x} and {y}")

    if case == CASE_DOUBLE_LIMIT:
        return [Triangle(x, (), x)]

    if case == CASE_CROSSING:
        pairs = _quadrilateral_sides(x, y)
        return [
            Triangle(x, _middle(x, y, pairs), y),
            Triangle(y, _middle(y, x, pairs), x),
        ]

    # rotation about a shared accumulation point
    z = (set(x.ends) & set(y.ends)).pop()
    joined = try_arc(x.surface, x.other(z), y.other(z))
    middle = (joined,) if joined is not None else ()
    if yx:
        return [Triangle(x, middle, y)]
    return [Triangle(y, middle, x)]


def is_rigid(arcs) -> bool:
    """No nonzero extensions between any two of ``arcs`` (itself included)."""
    arcs = list(arcs)
    return all(ext1_dim(a, b) == 0 for a in arcs for b in arcs)


def check_local_cy(x: Arc, y: Arc) -> bool:
    """Whether ext1(X, Y) = ext1(Y, X)."""
    return ext1_dim(x, y) == ext1_dim(y, x)


def orientation_self_test(surface) -> None:
    """
    Hom(X, X) = 1 on a probe set of arcs of every kind.

    Raises:
        RealizationError: when the rotation convention is inconsistent
    """
    from src.surface.model import Regular

    probes = [Arc(Regular(0, 0), Regular(0, 5), surface), Arc(Regular(0, 0), Acc(0), surface)]
    if surface.r >= 2:
        probes.append(Arc(Acc(0), Acc(1), surface))
        probes.append(Arc(Regular(1, 3), Acc(0), surface))
    for arc in probes:
        if hom_dim(arc, arc) != 1:
            raise RealizationError(f"orientation self-test failed: Hom({arc}, {arc}) = 0")
    logger.debug("orientation self-test passed on %d probes", len(probes))
