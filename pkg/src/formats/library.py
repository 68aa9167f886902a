"""
Built-in example configurations and their named arcs.

example1: one accumulation point, fountain based at p0:0 with left tail from
p0:2 and right tail to p0:-2. The named arcs alpha<i>/beta<i> are its left and
right tail arcs, gamma its limit arc; eta and zeta are the crossing pair used
for the exchange identity.

example3: two accumulation points sharing the base p1:0; gamma2 is the double
limit arc a0-a1.
"""
import re
from typing import Callable, Dict, List, Optional

from src.errors import ParseError
from src.surface.model import Acc, Arc, Regular, SurfaceSpec, parse_object, shift
from src.tilting.spec import FountainSpec, LEFT, RIGHT, TiltingSpec, limit_vertex, tail_vertex

_NAME_RE = re.compile(r"^([a-z]+)(\d*)(?:\[(-?\d+)\])?$")


def example1() -> TiltingSpec:
    surface = SurfaceSpec(1)
    return TiltingSpec(surface, (FountainSpec(0, Regular(0, 0), 2, -2),))


def example3() -> TiltingSpec:
    surface = SurfaceSpec(2)
    return TiltingSpec(
        surface,
        (
            FountainSpec(0, Regular(1, 0), 2, 0),
            FountainSpec(1, Regular(1, 0), 1, -2),
        ),
    )


EXAMPLES: Dict[str, Callable[[], TiltingSpec]] = {
    "example1": example1,
    "example3": example3,
}


def _example1_arc(t: TiltingSpec, name: str, index: Optional[int]) -> Optional[Arc]:
    if name == "alpha" and index:
        return t.arc_of(tail_vertex(0, LEFT, index))
    if name == "beta" and index:
        return t.arc_of(tail_vertex(0, RIGHT, index))
    if index is not None:
        return None
    if name == "gamma":
        return t.arc_of(limit_vertex(0))
    if name == "eta":
        return Arc(Regular(0, 3), Regular(0, -2), t.surface)
    if name == "zeta":
        return Arc(Regular(0, 4), Regular(0, -2), t.surface)
    return None


def _example3_arc(t: TiltingSpec, name: str, index: Optional[int]) -> Optional[Arc]:
    if name == "gamma" and index == 2:
        return Arc(Acc(0), Acc(1), t.surface)
    return None


_NAMED = {
    "example1": _example1_arc,
    "example3": _example3_arc,
}


def example_name(t: TiltingSpec) -> Optional[str]:
    for name, build in EXAMPLES.items():
        if build() == t:
            return name
    return None


def named_arc(t: TiltingSpec, text: str) -> Arc:
    """
    Resolve ``alpha3``, ``eta``, ``gamma2[1]`` ... on a built-in example.

    Raises:
        ParseError: unknown name or ``t`` is not a built-in example
    """
    m = _NAME_RE.match(text.strip())
    example = example_name(t)
    if not m or example is None:
        raise ParseError(f"unknown arc name {text!r}")
    name, digits, k = m.groups()
    arc = _NAMED[example](t, name, int(digits) if digits else None)
    if arc is None:
        raise ParseError(f"{example} has no arc named {name}{digits}")
    return shift(arc, int(k)) if k is not None else arc


def resolve_object(t: TiltingSpec, text: str) -> List[Arc]:
    """
    Object literal where summands may be arc literals or example arc names.

    Raises:
        ParseError: neither an arc literal nor a known name
    """
    arcs: List[Arc] = []
    text = text.strip()
    if text in ("0", ""):
        return arcs
    for part in text.split("+"):
        part = part.strip()
        if _NAME_RE.match(part):
            arcs.append(named_arc(t, part))
        else:
            arcs.extend(parse_object(t.surface, part))
    return arcs
