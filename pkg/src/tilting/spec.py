"""
Finite descriptions of cluster-tilting subcategories in fountain normal form.

A fountain at accumulation point ``acc`` with base b consists of the left tail
{b, Regular(acc-1, j)} for j >= left_from, the right tail {b, Regular(acc, j)}
for j <= right_to and the limit arc {b, Acc(acc)}. Tail position n counts from
the arc farthest from the accumulation point (n = 1) towards it.
"""
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Tuple

from src.errors import ParseError
from src.surface.model import (
    Acc,
    Arc,
    BoundaryPoint,
    Regular,
    SurfaceSpec,
    sigma,
)

LEFT = "L"
RIGHT = "R"

TAIL = "tail"
LIMIT = "limit"
EXTRA = "extra"


@dataclass(frozen=True)
class CTVertex:
    """An indecomposable of the tilting subcategory (a vertex of its quiver)."""

    kind: str
    acc: int = -1
    side: str = ""
    pos: int = 0

    def sort_key(self) -> Tuple[int, int, int, int]:
        if self.kind == EXTRA:
            return (1, 0, 0, self.pos)
        group = {LEFT: 0, RIGHT: 2}.get(self.side, 1)
        return (0, self.acc, group, self.pos)

    @property
    def tail(self) -> Optional[Tuple[int, str]]:
        return (self.acc, self.side) if self.kind == TAIL else None

    def __str__(self) -> str:
        if self.kind == TAIL:
            return f"f{self.acc}{self.side}{self.pos}"
        if self.kind == LIMIT:
            return f"z{self.acc}"
        return f"e{self.pos}"


def tail_vertex(acc: int, side: str, n: int) -> CTVertex:
    return CTVertex(TAIL, acc, side, n)


def limit_vertex(acc: int) -> CTVertex:
    return CTVertex(LIMIT, acc)


def extra_vertex(k: int) -> CTVertex:
    return CTVertex(EXTRA, pos=k)


@dataclass(frozen=True)
class FountainSpec:
    acc: int
    base: BoundaryPoint
    left_from: int
    right_to: int


@dataclass(frozen=True)
class Chain:
    """
    A linearly ordered run of tail vertices.

    Tail chains ``f<acc><L|R>`` use the tail position n >= 1. A merged chain
    ``c<a>`` joins the right tail of fountain a and the left tail of fountain
    a+1 and uses the index j of the moving endpoint Regular(a, j).
    """

    name: str
    acc: int
    side: str = ""
    merged: bool = False
    right_to: int = 0
    next_acc: int = 0
    left_from: int = 0

    @property
    def lower(self) -> Optional[int]:
        return None if self.merged else 1

    def vertex(self, coord: int) -> Optional[CTVertex]:
        if not self.merged:
            return tail_vertex(self.acc, self.side, coord) if coord >= 1 else None
        if coord <= self.right_to:
            return tail_vertex(self.acc, RIGHT, self.right_to - coord + 1)
        return tail_vertex(self.next_acc, LEFT, coord - self.left_from + 1)

    def coord(self, v: CTVertex) -> Optional[int]:
        if v.kind != TAIL:
            return None
        if not self.merged:
            return v.pos if (v.acc, v.side) == (self.acc, self.side) else None
        if (v.acc, v.side) == (self.acc, RIGHT):
            return self.right_to - v.pos + 1
        if (v.acc, v.side) == (self.next_acc, LEFT):
            return self.left_from + v.pos - 1
        return None

    def covers_tail(self, tail: Tuple[int, str]) -> bool:
        if not self.merged:
            return tail == (self.acc, self.side)
        return tail in ((self.acc, RIGHT), (self.next_acc, LEFT))


@dataclass(frozen=True)
class TiltingSpec:
    """
    Fountains plus finitely many extra ordinary arcs.

    Construction only checks types; ``validate_ct`` decides whether the
    collection is cluster-tilting.
    """

    surface: SurfaceSpec
    fountains: Tuple[FountainSpec, ...]
    extra_arcs: Tuple[Arc, ...] = field(default=())

    @property
    def r(self) -> int:
        return self.surface.r

    def fountain(self, acc: int) -> Optional[FountainSpec]:
        for f in self.fountains:
            if f.acc == acc:
                return f
        return None

    @property
    def tails(self) -> List[Tuple[int, str]]:
        return [(f.acc, side) for f in self.fountains for side in (LEFT, RIGHT)]

    def tail_interval(self, acc: int, side: str) -> int:
        return (acc - 1) % self.r if side == LEFT else acc

    # ===== vertices and arcs =====

    def tail_point(self, acc: int, side: str, n: int) -> Regular:
        f = self.fountain(acc)
        if side == LEFT:
            return Regular(self.tail_interval(acc, side), f.left_from + n - 1)
        return Regular(acc, f.right_to - n + 1)

    def tail_position(self, acc: int, side: str, point: BoundaryPoint) -> Optional[int]:
        """Tail position whose moving endpoint is ``point`` (None if off the tail)."""
        if not isinstance(point, Regular) or point.interval != self.tail_interval(acc, side):
            return None
        f = self.fountain(acc)
        n = point.index - f.left_from + 1 if side == LEFT else f.right_to - point.index + 1
        return n if n >= 1 else None

    def arc_of(self, v: CTVertex) -> Arc:
        if v.kind == EXTRA:
            return self.extra_arcs[v.pos]
        f = self.fountain(v.acc)
        if v.kind == LIMIT:
            return Arc(f.base, Acc(v.acc), self.surface)
        return Arc(f.base, self.tail_point(v.acc, v.side, v.pos), self.surface)

    def vertex_of(self, arc: Arc) -> Optional[CTVertex]:
        """The vertex whose arc is ``arc``, if ``arc`` belongs to the subcategory."""
        return _vertex_index(self).get(arc) or self._tail_vertex_of(arc)

    def _tail_vertex_of(self, arc: Arc) -> Optional[CTVertex]:
        for f in self.fountains:
            if f.base not in arc.ends:
                continue
            other = arc.other(f.base)
            for side in (LEFT, RIGHT):
                n = self.tail_position(f.acc, side, other)
                if n is not None:
                    return tail_vertex(f.acc, side, n)
        return None

    def shifted_vertex(self, arc: Arc) -> Optional[CTVertex]:
        """The vertex v with arc = arc(v)[1], if any."""
        from src.surface.model import shift

        return self.vertex_of(shift(arc, -1))

    # ===== labels =====

    def label(self, v: CTVertex) -> str:
        if v.kind == EXTRA:
            return f"e{v.pos}"
        if self.r == 1:
            if v.kind == LIMIT:
                return "z"
            return f"{v.pos}" if v.side == LEFT else f"{v.pos}'"
        if v.kind == LIMIT:
            return f"z{v.acc}"
        return f"f{v.acc}{v.side}{v.pos}"

    def vertex_by_label(self, text: str) -> CTVertex:
        text = text.strip()
        m = re.match(r"^e(\d+)$", text)
        if m:
            k = int(m.group(1))
            if k >= len(self.extra_arcs):
                raise ParseError(f"no extra arc e{k}")
            return extra_vertex(k)
        if self.r == 1:
            if text == "z":
                return limit_vertex(0)
            m = re.match(r"^(\d+)('?)$", text)
            if m and int(m.group(1)) >= 1:
                return tail_vertex(0, RIGHT if m.group(2) else LEFT, int(m.group(1)))
        else:
            m = re.match(r"^z(\d+)$", text)
            if m and int(m.group(1)) < self.r:
                return limit_vertex(int(m.group(1)))
            m = re.match(r"^f(\d+)([LR])(\d+)$", text)
            if m and int(m.group(1)) < self.r and int(m.group(3)) >= 1:
                return tail_vertex(int(m.group(1)), m.group(2), int(m.group(3)))
        raise ParseError(f"unknown vertex label {text!r}")

    # ===== chains =====

    def chains(self) -> Tuple[Chain, ...]:
        return _chains(self)

    def chain_of(self, v: CTVertex) -> Optional[Tuple[Chain, int]]:
        for chain in self.chains():
            c = chain.coord(v)
            if c is not None:
                return chain, c
        return None

    def chain_by_name(self, name: str) -> Chain:
        for chain in self.chains():
            if chain.name == name:
                return chain
        raise ParseError(f"unknown chain {name!r}")

    # ===== windows =====

    def special_points(self) -> Tuple[BoundaryPoint, ...]:
        pts = []
        for f in self.fountains:
            pts.append(f.base)
            pts.append(Regular(self.tail_interval(f.acc, LEFT), f.left_from))
            pts.append(Regular(f.acc, f.right_to))
        for arc in self.extra_arcs:
            pts.extend(arc.ends)
        return tuple(pts)

    def tail_cutoff(self, acc: int, side: str, points: Iterable[BoundaryPoint] = ()) -> int:
        """Last tail position touched by a special point or one of ``points``."""
        cutoff = 0
        for p in list(self.special_points()) + list(points):
            for k in (-1, 0, 1):
                n = self.tail_position(acc, side, sigma(p, k))
                if n is not None:
                    cutoff = max(cutoff, n)
        return cutoff

    def window(self, radius: int) -> Tuple[CTVertex, ...]:
        """Tail positions 1..radius, every limit and every extra vertex."""
        verts = [extra_vertex(k) for k in range(len(self.extra_arcs))]
        for f in self.fountains:
            verts.append(limit_vertex(f.acc))
        for acc, side in self.tails:
            verts.extend(tail_vertex(acc, side, n) for n in range(1, radius + 1))
        return tuple(sorted(verts, key=CTVertex.sort_key))

    def window_for(self, points: Iterable[BoundaryPoint], margin: int) -> Tuple[CTVertex, ...]:
        """
        Window wide enough that every tail ends in a generic run.

        Each tail keeps positions up to its cutoff plus ``margin + 1``.
        """
        points = list(points)
        verts = [extra_vertex(k) for k in range(len(self.extra_arcs))]
        for f in self.fountains:
            verts.append(limit_vertex(f.acc))
        for acc, side in self.tails:
            last = self.tail_cutoff(acc, side, points) + margin + 1
            verts.extend(tail_vertex(acc, side, n) for n in range(1, last + 1))
        return tuple(sorted(verts, key=CTVertex.sort_key))


@lru_cache(maxsize=256)
def _vertex_index(t: TiltingSpec) -> Dict[Arc, CTVertex]:
    index = {}
    for k, arc in enumerate(t.extra_arcs):
        index.setdefault(arc, extra_vertex(k))
    for f in t.fountains:
        try:
            index.setdefault(Arc(f.base, Acc(f.acc), t.surface), limit_vertex(f.acc))
        except ValueError:
            continue
    return index


@lru_cache(maxsize=256)
def _chains(t: TiltingSpec) -> Tuple[Chain, ...]:
    merged = []
    used = set()
    if t.r >= 2:
        for f in t.fountains:
            g = t.fountain((f.acc + 1) % t.r)
            if g is None or g is f or g.base != f.base:
                continue
            if f.right_to + 1 == g.left_from:
                merged.append(Chain(
                    f"c{f.acc}", f.acc, merged=True,
                    right_to=f.right_to, next_acc=g.acc, left_from=g.left_from,
                ))
                used.add((f.acc, RIGHT))
                used.add((g.acc, LEFT))
    chains = [Chain(f"f{acc}{side}", acc, side) for acc, side in t.tails if (acc, side) not in used]
    return tuple(chains + merged)


def surface_points_near(points: Iterable[BoundaryPoint], reach: int = 2) -> List[BoundaryPoint]:
    """``points`` together with their sigma^k images for |k| <= reach."""
    out = []
    for p in points:
        for k in range(-reach, reach + 1):
            q = sigma(p, k)
            if q not in out:
                out.append(q)
    return out
