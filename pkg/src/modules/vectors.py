"""
Tail-uniform vertex functions and classes in K_0'.
"""
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Tuple

from src.tilting.spec import TAIL, CTVertex, TiltingSpec, extra_vertex, limit_vertex, tail_vertex

TailKey = Tuple[int, str]


@dataclass(frozen=True)
class UniformVector:
    """
    Integer function on CT vertices, constant far out on every tail.

    ``entries`` holds the finitely many values that differ from the tail
    default (tail vertices) or from zero (limit and extra vertices).
    """

    entries: Tuple[Tuple[CTVertex, int], ...] = ()
    defaults: Tuple[Tuple[TailKey, int], ...] = ()

    @classmethod
    def build(
        cls,
        values: Mapping[CTVertex, int],
        defaults: Optional[Mapping[TailKey, int]] = None,
    ) -> "UniformVector":
        defaults = {k: v for k, v in (defaults or {}).items() if v != 0}
        kept = {}
        for v, x in values.items():
            base = defaults.get(v.tail, 0) if v.kind == TAIL else 0
            if x != base:
                kept[v] = x
        return cls(
            tuple(sorted(kept.items(), key=lambda kv: kv[0].sort_key())),
            tuple(sorted(defaults.items())),
        )

    @classmethod
    def evaluate(
        cls,
        t: TiltingSpec,
        func: Callable[[CTVertex], int],
        points: Iterable = (),
        margin: int = 2,
    ) -> "UniformVector":
        """
        Tabulate ``func`` assuming it is constant past each tail's cutoff.

        Args:
            t: Tilting spec
            func: Vertex function
            points: Boundary points whose neighbourhoods are exceptional
            margin: Extra positions tabulated past the cutoff
        """
        points = list(points)
        values: Dict[CTVertex, int] = {}
        defaults: Dict[TailKey, int] = {}
        for k in range(len(t.extra_arcs)):
            values[extra_vertex(k)] = func(extra_vertex(k))
        for f in t.fountains:
            values[limit_vertex(f.acc)] = func(limit_vertex(f.acc))
        for acc, side in t.tails:
            last = t.tail_cutoff(acc, side, points) + margin
            for n in range(1, last + 1):
                values[tail_vertex(acc, side, n)] = func(tail_vertex(acc, side, n))
            defaults[(acc, side)] = func(tail_vertex(acc, side, last + 1))
        return cls.build(values, defaults)

    @cached_property
    def _lookup(self) -> Dict[CTVertex, int]:
        return dict(self.entries)

    @cached_property
    def _tail_defaults(self) -> Dict[TailKey, int]:
        return dict(self.defaults)

    def value(self, v: CTVertex) -> int:
        x = self._lookup.get(v)
        if x is not None:
            return x
        if v.kind == TAIL:
            return self._tail_defaults.get(v.tail, 0)
        return 0

    def __call__(self, v: CTVertex) -> int:
        return self.value(v)

    def default(self, tail: TailKey) -> int:
        return self._tail_defaults.get(tail, 0)

    def is_zero(self) -> bool:
        return not self.entries and not self.defaults

    def last_entry(self, tail: TailKey) -> int:
        """Largest tail position with an explicit entry (0 if none)."""
        return max((v.pos for v, _ in self.entries if v.tail == tail), default=0)

    def support(self, window: Iterable[CTVertex]) -> List[CTVertex]:
        return [v for v in window if self.value(v) != 0]

    def __add__(self, other: "UniformVector") -> "UniformVector":
        values: Dict[CTVertex, int] = {}
        keys = {v for v, _ in self.entries} | {v for v, _ in other.entries}
        for v in keys:
            values[v] = self.value(v) + other.value(v)
        tails = {k for k, _ in self.defaults} | {k for k, _ in other.defaults}
        defaults = {k: self.default(k) + other.default(k) for k in tails}
        return UniformVector.build(values, defaults)

    def format(self, t: TiltingSpec) -> str:
        """``{1:1, 2:1, z:1 | tails: L=1, R=0}``."""
        body = ", ".join(f"{t.label(v)}:{x}" for v, x in self.entries)
        tails = ", ".join(
            f"{_tail_name(t, key)}={self.default(key)}" for key in t.tails
        )
        return "{" + body + (" | " if body else "| ") + "tails: " + tails + "}"


def _tail_name(t: TiltingSpec, key: TailKey) -> str:
    acc, side = key
    return side if t.r == 1 else f"f{acc}{side}"


@dataclass(frozen=True)
class K0PrimeElement:
    """Finite integer combination of indecomposable projectives [P_v]."""

    coeffs: Tuple[Tuple[CTVertex, int], ...] = ()

    @classmethod
    def of(cls, mapping: Mapping[CTVertex, int]) -> "K0PrimeElement":
        return cls(tuple(sorted(
            ((v, c) for v, c in mapping.items() if c != 0),
            key=lambda kv: kv[0].sort_key(),
        )))

    @classmethod
    def basis(cls, v: CTVertex) -> "K0PrimeElement":
        return cls(((v, 1),))

    def as_dict(self) -> Dict[CTVertex, int]:
        return dict(self.coeffs)

    def coeff(self, v: CTVertex) -> int:
        return self.as_dict().get(v, 0)

    def __add__(self, other: "K0PrimeElement") -> "K0PrimeElement":
        out = self.as_dict()
        for v, c in other.coeffs:
            out[v] = out.get(v, 0) + c
        return K0PrimeElement.of(out)

    def __neg__(self) -> "K0PrimeElement":
        return K0PrimeElement(tuple((v, -c) for v, c in self.coeffs))

    def __sub__(self, other: "K0PrimeElement") -> "K0PrimeElement":
        return self + (-other)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def format(self, t: TiltingSpec) -> str:
        """``[P_1] - [P_2]``; zero prints as ``0``."""
        if not self.coeffs:
            return "0"
        parts = []
        for i, (v, c) in enumerate(self.coeffs):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            term = f"{'' if mag == 1 else mag}[P_{t.label(v)}]"
            if i == 0:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"{sign} {term}")
        return " ".join(parts)
