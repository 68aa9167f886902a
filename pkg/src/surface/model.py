"""
Marked disk with r two-sided accumulation points.

The boundary is an abstract cyclic order: block i is ``Acc(i)`` followed by the
regular points ``Regular(i, j)`` in increasing j, blocks ordered by i, wrapping
around after block r-1. Counterclockwise means increasing in this order.
"""
import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, List, Tuple, Union

from src.errors import ArcError, ArgumentError, ParseError


@dataclass(frozen=True)
class SurfaceSpec:
    """Disk whose boundary carries r accumulation points."""

    r: int

    def __post_init__(self):
        if not isinstance(self.r, int) or self.r < 1:
            raise ArgumentError(f"surface needs at least one accumulation point, got r={self.r!r}")


@dataclass(frozen=True)
class Regular:
    interval: int
    index: int

    def __str__(self) -> str:
        return f"p{self.interval}:{self.index}"


@dataclass(frozen=True)
class Acc:
    which: int

    def __str__(self) -> str:
        return f"a{self.which}"


BoundaryPoint = Union[Regular, Acc]


def point_key(p: BoundaryPoint) -> Tuple[int, int, int]:
    """Linearization of the cyclic order (cut just before Acc(0))."""
    if isinstance(p, Acc):
        return (p.which, 0, 0)
    return (p.interval, 1, p.index)


def check_point(surface: SurfaceSpec, p: BoundaryPoint) -> None:
    """Raise ArcError unless p is a point of ``surface``."""
    which = p.which if isinstance(p, Acc) else p.interval
    if not 0 <= which < surface.r:
        raise ArcError(f"point {p} does not exist on a surface with r={surface.r}")


def cyclic_between(a: BoundaryPoint, b: BoundaryPoint, c: BoundaryPoint) -> bool:
    """
    Whether b lies in the open counterclockwise interval (a, c).

    Args:
        a, b, c: Pairwise distinct points

    Returns:
        True iff walking counterclockwise from a meets b before c
    """
    if a == b or b == c or a == c:
        raise ArgumentError(f"cyclic_between needs distinct points, got {a}, {b}, {c}")
    ka, kb, kc = point_key(a), point_key(b), point_key(c)
    if ka < kc:
        return ka < kb < kc
    return kb > ka or kb < kc


def sigma(p: BoundaryPoint, k: int = 1) -> BoundaryPoint:
    """sigma^k: Regular(i, j) -> Regular(i, j - k); accumulation points are fixed."""
    if isinstance(p, Acc):
        return p
    return Regular(p.interval, p.index - k)


def adjacent(p: BoundaryPoint, q: BoundaryPoint) -> bool:
    """Boundary neighbours; accumulation points have none."""
    if isinstance(p, Regular) and isinstance(q, Regular):
        return p.interval == q.interval and abs(p.index - q.index) == 1
    return False


class ArcKind(str, Enum):
    ORDINARY = "ordinary"
    ONE_SIDED_LIMIT = "one-sided limit"
    DOUBLE_LIMIT = "double limit"


@dataclass(frozen=True)
class Arc:
    """
    Unordered pair of non-adjacent boundary points.

    Endpoints are stored in linear order so equal arcs compare equal.
    """

    p: BoundaryPoint
    q: BoundaryPoint
    surface: SurfaceSpec

    def __post_init__(self):
        check_point(self.surface, self.p)
        check_point(self.surface, self.q)
        if self.p == self.q:
            raise ArcError(f"arc endpoints coincide: {self.p}")
        if adjacent(self.p, self.q):
            raise ArcError(f"endpoints {self.p} and {self.q} are boundary-adjacent")
        if point_key(self.q) < point_key(self.p):
            p, q = self.q, self.p
            object.__setattr__(self, "p", p)
            object.__setattr__(self, "q", q)

    @property
    def ends(self) -> Tuple[BoundaryPoint, BoundaryPoint]:
        return (self.p, self.q)

    def other(self, point: BoundaryPoint) -> BoundaryPoint:
        if point == self.p:
            return self.q
        if point == self.q:
            return self.p
        raise ArgumentError(f"{point} is not an endpoint of {self}")

    def sort_key(self):
        return (point_key(self.p), point_key(self.q))

    def __str__(self) -> str:
        return f"{self.p}-{self.q}"


def make_arc(surface: SurfaceSpec, p: BoundaryPoint, q: BoundaryPoint) -> Arc:
    return Arc(p, q, surface)


def try_arc(surface: SurfaceSpec, p: BoundaryPoint, q: BoundaryPoint):
    """The arc {p, q}, or None when p, q are equal or adjacent."""
    if p == q or adjacent(p, q):
        return None
    return Arc(p, q, surface)


def crosses(a: Arc, b: Arc) -> bool:
    """Disjoint endpoints that strictly separate each other."""
    if set(a.ends) & set(b.ends):
        return False
    inside = [cyclic_between(a.p, x, a.q) for x in b.ends]
    return inside[0] != inside[1]


def shift(a: Arc, k: int = 1) -> Arc:
    """Suspension [k]: sigma^k on both endpoints."""
    return Arc(sigma(a.p, k), sigma(a.q, k), a.surface)


def arc_kind(a: Arc) -> ArcKind:
    count = sum(isinstance(x, Acc) for x in a.ends)
    return (ArcKind.ORDINARY, ArcKind.ONE_SIDED_LIMIT, ArcKind.DOUBLE_LIMIT)[count]


# ===== literals =====

_POINT = r"(?:a\d+|p\d+:-?\d+)"
_POINT_RE = re.compile(r"^a(\d+)$|^p(\d+):(-?\d+)$")
_ARC_RE = re.compile(rf"^({_POINT})-({_POINT})(?:\[(-?\d+)\])?$")


def parse_point(text: str) -> BoundaryPoint:
    """``a<i>`` or ``p<i>:<j>``."""
    m = _POINT_RE.match(text.strip())
    if not m:
        raise ParseError(f"bad point literal {text!r} (expected a<i> or p<i>:<j>)")
    if m.group(1) is not None:
        return Acc(int(m.group(1)))
    return Regular(int(m.group(2)), int(m.group(3)))


def parse_arc(surface: SurfaceSpec, text: str) -> Arc:
    """``point-point`` with an optional ``[k]`` shift suffix."""
    m = _ARC_RE.match(text.strip())
    if not m:
        raise ParseError(f"bad arc literal {text!r} (expected point-point[k])")
    arc = Arc(parse_point(m.group(1)), parse_point(m.group(2)), surface)
    if m.group(3) is not None:
        arc = shift(arc, int(m.group(3)))
    return arc


def parse_object(surface: SurfaceSpec, text: str) -> List[Arc]:
    """Direct sum literal ``arc+arc+...``; ``0`` is the zero object."""
    text = text.strip()
    if text in ("0", ""):
        return []
    return [parse_arc(surface, part) for part in text.split("+")]


def format_object(arcs: Iterable[Arc]) -> str:
    arcs = list(arcs)
    return "+".join(str(a) for a in arcs) if arcs else "0"
