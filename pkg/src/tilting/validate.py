"""
Cluster-tilting validation for fountain-normal-form specs.

A spec is accepted iff every arc is valid, the arcs are pairwise
non-crossing, every accumulation point carries exactly one limit arc, no
double limit arc occurs and every residual finite polygon is triangulated.
"""
import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import List, Optional, Tuple

from src.errors import ArcError
from src.modules.vectors import UniformVector
from src.surface.model import (
    Acc,
    Arc,
    ArcKind,
    BoundaryPoint,
    Regular,
    arc_kind,
    crosses,
    cyclic_between,
    point_key,
    try_arc,
)
from src.tilting.spec import (
    LEFT,
    RIGHT,
    CTVertex,
    TiltingSpec,
    extra_vertex,
    limit_vertex,
    tail_vertex,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Violation:
    message: str
    witness: Tuple[str, ...] = ()

    def __str__(self) -> str:
        if self.witness:
            return f"{self.message} (witness: {', '.join(self.witness)})"
        return self.message


@dataclass
class CTReport:
    accepted: bool = True
    violations: List[Violation] = field(default_factory=list)
    regions: List[List[BoundaryPoint]] = field(default_factory=list)

    def add(self, message: str, *witness) -> None:
        self.accepted = False
        self.violations.append(Violation(message, tuple(str(w) for w in witness)))


def _fountain_arcs_valid(t: TiltingSpec, report: CTReport) -> bool:
    ok = True
    for f in t.fountains:
        if not isinstance(f.base, Regular):
            report.add(f"fountain at acc {f.acc} has a non-regular base", f.base)
            ok = False
            continue
        for side in (LEFT, RIGHT):
            interval = t.tail_interval(f.acc, side)
            if f.base.interval != interval:
                continue
            # the tail runs towards the accumulation point and must stay clear of the base
            if side == LEFT and f.left_from <= f.base.index + 1:
                bad = Regular(interval, max(f.left_from, f.base.index - 1))
                report.add(f"left tail of fountain {f.acc} reaches its base", f"{f.base}-{bad}")
                ok = False
            if side == RIGHT and f.right_to >= f.base.index - 1:
                bad = Regular(interval, min(f.right_to, f.base.index + 1))
                report.add(f"right tail of fountain {f.acc} reaches its base", f"{f.base}-{bad}")
                ok = False
    return ok


def _tail_crossings(t: TiltingSpec, acc: int, side: str, arc: Arc, extra_points=()) -> List[int]:
    """Tail positions whose arcs cross ``arc`` (generic positions stand for the whole run)."""
    last = t.tail_cutoff(acc, side, list(arc.ends) + list(extra_points)) + 2
    hits = []
    for n in range(1, last + 1):
        if crosses(t.arc_of(tail_vertex(acc, side, n)), arc):
            hits.append(n)
    return hits


def ct_vertices_crossing(t: TiltingSpec, arc: Arc) -> UniformVector:
    """
    Indicator of the CT vertices whose arcs cross ``arc``.

    Args:
        t: Tilting spec
        arc: Any valid arc

    Returns:
        0/1 UniformVector: finite exceptions plus eventual membership per tail
    """
    return UniformVector.evaluate(
        t,
        lambda v: int(crosses(t.arc_of(v), arc)),
        points=list(arc.ends),
        margin=2,
    )


def _finite_arcs(t: TiltingSpec) -> List[Tuple[CTVertex, Arc]]:
    out = [(extra_vertex(k), a) for k, a in enumerate(t.extra_arcs)]
    for f in t.fountains:
        out.append((limit_vertex(f.acc), Arc(f.base, Acc(f.acc), t.surface)))
    return out


def _check_crossings(t: TiltingSpec, report: CTReport) -> None:
    finite = _finite_arcs(t)
    for (u, a), (v, b) in combinations(finite, 2):
        if a == b:
            report.add("arc listed twice", a)
        elif crosses(a, b):
            report.add("arcs cross", a, b)

    for _, a in finite:
        for acc, side in t.tails:
            hits = _tail_crossings(t, acc, side, a)
            if hits:
                report.add("arcs cross", a, t.arc_of(tail_vertex(acc, side, hits[0])))

    tails = t.tails
    for i, (acc1, side1) in enumerate(tails):
        for acc2, side2 in tails[i + 1:]:
            b1 = t.fountain(acc1).base
            b2 = t.fountain(acc2).base
            if b1 == b2:
                continue
            pts = t.special_points()
            n1 = t.tail_cutoff(acc1, side1, pts) + 2
            n2 = t.tail_cutoff(acc2, side2, pts) + 2
            found = None
            for p in range(1, n1 + 1):
                x = t.arc_of(tail_vertex(acc1, side1, p))
                for q in range(1, n2 + 1):
                    y = t.arc_of(tail_vertex(acc2, side2, q))
                    if crosses(x, y):
                        found = (x, y)
                        break
                if found:
                    break
            if found:
                report.add("arcs cross", *found)


def _boundary_vertices(t: TiltingSpec) -> List[BoundaryPoint]:
    """Regular points outside every fountain's swept boundary range, in cyclic order."""
    pts = set()
    covered = []
    for f in t.fountains:
        first_left = t.tail_point(f.acc, LEFT, 1)
        first_right = t.tail_point(f.acc, RIGHT, 1)
        covered.append((first_left, first_right))
        pts.update([f.base, first_left, first_right])
    for arc in t.extra_arcs:
        pts.update(arc.ends)
    # fill every finite gap between consecutive tails
    for i in range(t.r):
        right = t.fountain(i)
        left = t.fountain((i + 1) % t.r)
        if right is None or left is None:
            continue
        for j in range(right.right_to, left.left_from + 1):
            pts.add(Regular(i, j))

    def is_covered(p: BoundaryPoint) -> bool:
        for lo, hi in covered:
            if p != lo and p != hi and cyclic_between(lo, p, hi):
                return True
        return False

    return sorted((p for p in pts if isinstance(p, Regular) and not is_covered(p)), key=point_key)


def _split(face: List[BoundaryPoint], u: BoundaryPoint, v: BoundaryPoint):
    i, j = sorted((face.index(u), face.index(v)))
    return face[i:j + 1], face[j:] + face[:i + 1]


def region_decomposition(t: TiltingSpec) -> List[List[BoundaryPoint]]:
    """
    The complement regions with more than three marked points.

    The swept range of each fountain is already triangulated by its tails and
    limit arc; it enters the finite polygon as the single edge joining the
    first left-tail and first right-tail endpoints.

    Returns:
        Each region as its cyclic vertex list
    """
    faces = [_boundary_vertices(t)]
    chords = []
    for f in t.fountains:
        chords.append((f.base, t.tail_point(f.acc, LEFT, 1)))
        chords.append((f.base, t.tail_point(f.acc, RIGHT, 1)))
    chords.extend(a.ends for a in t.extra_arcs)

    for u, v in chords:
        for idx, face in enumerate(faces):
            if u in face and v in face:
                i, j = face.index(u), face.index(v)
                if abs(i - j) in (1, len(face) - 1):
                    break
                a, b = _split(face, u, v)
                faces[idx:idx + 1] = [a, b]
                break
    return [face for face in faces if len(face) > 3]


def _missing_diagonal(t: TiltingSpec, region: List[BoundaryPoint]) -> Optional[Arc]:
    for i in range(len(region)):
        for j in range(i + 2, len(region)):
            arc = try_arc(t.surface, region[i], region[j])
            if arc is not None:
                return arc
    return None


def validate_ct(t: TiltingSpec) -> CTReport:
    """
    Decide whether ``t`` describes a cluster-tilting subcategory.

    Args:
        t: Tilting spec (already schema-checked)

    Returns:
        CTReport listing every violation with a witness arc
    """
    report = CTReport()

    seen = {}
    for f in t.fountains:
        if f.acc in seen:
            report.add(f"two limit arcs at acc {f.acc}", f"{f.base}-a{f.acc}", f"{seen[f.acc].base}-a{f.acc}")
        seen.setdefault(f.acc, f)
    for acc in range(t.r):
        if acc not in seen:
            report.add(f"no fountain at acc {acc}", f"a{acc}")

    for arc in t.extra_arcs:
        kind = arc_kind(arc)
        if kind == ArcKind.DOUBLE_LIMIT:
            report.add("double limit arc", arc)
        elif kind == ArcKind.ONE_SIDED_LIMIT:
            acc = next(p.which for p in arc.ends if isinstance(p, Acc))
            report.add(f"two limit arcs at acc {acc}", arc)

    if not report.accepted:
        return report
    try:
        if not _fountain_arcs_valid(t, report):
            return report
    except ArcError as e:
        report.add(str(e))
        return report

    _check_crossings(t, report)
    if not report.accepted:
        return report

    report.regions = region_decomposition(t)
    for region in report.regions:
        corners = ",".join(str(p) for p in region)
        report.add(f"untriangulated region ({corners})", _missing_diagonal(t, region))
    logger.info("validate_ct: %s, %d violation(s)", "accepted" if report.accepted else "rejected",
                len(report.violations))
    return report
