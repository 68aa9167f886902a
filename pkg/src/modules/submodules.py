"""
Finitely presented submodules of a thin module as parametric families.

On a window wide enough that every tail ends in a generic run, the closed
support sets are enumerated exactly. A set whose generic run is cut at
position n stands for a whole family indexed by n; sets cut earlier are
folded into that family whenever they continue the same pattern.
"""
import logging
from dataclasses import dataclass
from itertools import product
from typing import Dict, FrozenSet, Iterator, Mapping, Optional, Sequence, Set, Tuple

from src.errors import ArgumentError, RealizationError
from src.modules.thin import (
    ThinModule,
    ThinPiece,
    generic_starts,
    maps_nonzero,
    piece_window,
    unbounded_tails,
    window_ends,
)
from src.modules.vectors import TailKey, UniformVector
from src.surface.model import Arc
from src.tilting.spec import TAIL, CTVertex, TiltingSpec, tail_vertex

logger = logging.getLogger(__name__)

# members are the positions up to the cut / from the cut outwards
HEAD = "head"
FAR = "far"


@dataclass(frozen=True)
class TailCut:
    """
    One family parameter n >= lo on a tail.

    Positions lo, lo+1, ... of the tail are governed by the cut: a HEAD cut
    keeps the supported positions <= n, a FAR cut keeps those >= n.
    """

    tail: TailKey
    kind: str
    lo: int

    def keeps(self, pos: int, n: int) -> bool:
        return pos <= n if self.kind == HEAD else pos >= n


def _fill(
    values: Dict[CTVertex, int],
    defaults: Dict[TailKey, int],
    support: UniformVector,
    cut: TailCut,
    n: int,
) -> None:
    acc, side = cut.tail
    for v in [v for v in values if v.tail == cut.tail and v.pos >= cut.lo]:
        del values[v]
    # positions below the cut keep their value when the tail default changes
    below = defaults.get(cut.tail, 0)
    for p in range(1, cut.lo):
        values.setdefault(tail_vertex(acc, side, p), below)
    top = max(n, support.last_entry(cut.tail), cut.lo) + 1
    for p in range(cut.lo, top + 1):
        v = tail_vertex(acc, side, p)
        values[v] = support(v) if cut.keeps(p, n) else 0
    defaults[cut.tail] = support.default(cut.tail) if cut.kind == FAR else 0


@dataclass(frozen=True)
class FPFamily:
    """
    Supports of finitely presented submodules of the piece over ``origin``.

    ``pattern`` fixes every vertex outside the cut regions; each cut adds one
    integer parameter. A family without cuts is a single submodule.
    """

    origin: Arc
    module_support: UniformVector
    pattern: UniformVector
    cuts: Tuple[TailCut, ...] = ()

    @property
    def is_single(self) -> bool:
        return not self.cuts

    def instantiate(self, params: Optional[Mapping[TailKey, int]] = None) -> UniformVector:
        params = params or {}
        values = dict(self.pattern.entries)
        defaults = dict(self.pattern.defaults)
        for cut in self.cuts:
            n = params.get(cut.tail)
            if n is None or n < cut.lo:
                raise ArgumentError(f"parameter for tail {cut.tail} must be >= {cut.lo}, got {n}")
            _fill(values, defaults, self.module_support, cut, n)
        return UniformVector.build(values, defaults)

    def piece(self, params: Optional[Mapping[TailKey, int]] = None) -> ThinPiece:
        return ThinPiece(self.origin, self.instantiate(params))

    def members(self, bound: int) -> Iterator[Tuple[Dict[TailKey, int], UniformVector]]:
        """Instantiations with every parameter at most ``bound``."""
        ranges = [range(c.lo, max(c.lo, bound) + 1) for c in self.cuts]
        for combo in product(*ranges):
            params = {c.tail: n for c, n in zip(self.cuts, combo)}
            yield params, self.instantiate(params)

    def sort_key(self):
        return (
            len(self.cuts),
            len(self.pattern.entries),
            tuple((v.sort_key(), x) for v, x in self.pattern.entries),
            self.pattern.defaults,
            tuple((c.tail, c.kind, c.lo) for c in self.cuts),
        )

    def format(self, t: TiltingSpec) -> str:
        text = self.pattern.format(t)
        for c in self.cuts:
            name = c.tail[1] if t.r == 1 else f"f{c.tail[0]}{c.tail[1]}"
            rule = "<= n" if c.kind == HEAD else ">= n"
            text += f" ; {name} positions {rule} from {c.lo} on, n >= {c.lo}"
        return text


@dataclass(frozen=True)
class FPFamilyList:
    """Families per piece of a thin module; submodules of a sum pair them up."""

    module: ThinModule
    per_piece: Tuple[Tuple[FPFamily, ...], ...]

    @property
    def families(self) -> Tuple[FPFamily, ...]:
        return tuple(f for fams in self.per_piece for f in fams)

    def combinations(self) -> Iterator[Tuple[FPFamily, ...]]:
        return product(*self.per_piece)

    def __len__(self) -> int:
        count = 1
        for fams in self.per_piece:
            count *= len(fams)
        return count


# ===== closed sets =====

def closed_sets(
    t: TiltingSpec,
    origin: Arc,
    elements: Sequence[CTVertex],
) -> Iterator[FrozenSet[CTVertex]]:
    """
    All subsets S of ``elements`` with v in S and u -> v nonzero => u in S.

    Down-sets of the forced-membership relation, enumerated by branching on
    one undecided vertex at a time.
    """
    m = len(elements)
    down = [1 << i for i in range(m)]
    for i, v in enumerate(elements):
        for j, u in enumerate(elements):
            if maps_nonzero(t, u, v, origin):
                down[i] |= 1 << j
    for k in range(m):
        bit = 1 << k
        for i in range(m):
            if down[i] & bit:
                down[i] |= down[k]
    up = [0] * m
    for i in range(m):
        for j in range(m):
            if down[i] >> j & 1:
                up[j] |= 1 << i
    full = (1 << m) - 1

    stack = [(0, 0)]
    while stack:
        inc, exc = stack.pop()
        free = full & ~(inc | exc)
        if not free:
            yield frozenset(elements[j] for j in range(m) if inc >> j & 1)
            continue
        i = (free & -free).bit_length() - 1
        stack.append((inc, exc | up[i]))
        stack.append((inc | down[i], exc))


# ===== families =====

def _classify(
    members: Set[CTVertex],
    support: UniformVector,
    key: TailKey,
    start: int,
    last: int,
) -> Optional[str]:
    """Cut kind of a tail's generic run, None when uncut."""
    seq = [int(tail_vertex(key[0], key[1], p) in members) for p in range(start, last + 1)]
    if len(set(seq)) <= 1:
        return None
    if any(support(tail_vertex(key[0], key[1], p)) == 0 for p in range(start, last + 1)):
        raise RealizationError(f"cut inside a non-uniform run on tail {key}")
    if seq == sorted(seq, reverse=True):
        return HEAD
    if seq == sorted(seq):
        return FAR
    raise RealizationError(f"non-monotone submodule pattern on tail {key}: {seq}")


def _family_of(
    piece: ThinPiece,
    members: Set[CTVertex],
    window: Sequence[CTVertex],
    starts: Mapping[TailKey, int],
) -> FPFamily:
    ends = window_ends(window)
    cuts = []
    for key in sorted(ends):
        kind = _classify(members, piece.support, key, starts[key], ends[key])
        if kind is not None:
            lo = starts[key] if kind == HEAD else starts[key] + 1
            cuts.append(TailCut(key, kind, lo))
    regions = {c.tail: c.lo for c in cuts}
    values = {}
    for v in window:
        if v.kind == TAIL and v.tail in regions and v.pos >= regions[v.tail]:
            continue
        values[v] = int(v in members)
    defaults = {}
    for key, last in ends.items():
        if key not in regions:
            defaults[key] = int(tail_vertex(key[0], key[1], last) in members)
    pattern = UniformVector.build(values, defaults)
    return FPFamily(piece.origin, piece.support, pattern, tuple(cuts))


def _lowered(fam: FPFamily, cut: TailCut) -> Optional[Tuple[FPFamily, FPFamily]]:
    """
    (member family at n = lo - 1, family with the cut extended down by one).

    None when position lo - 1 of the pattern does not continue the cut.
    """
    acc, side = cut.tail
    below = tail_vertex(acc, side, cut.lo - 1)
    expected = fam.module_support(below) if cut.kind == HEAD else 0
    if fam.pattern(below) != expected:
        return None
    lower = TailCut(cut.tail, cut.kind, cut.lo - 1)

    values = dict(fam.pattern.entries)
    defaults = dict(fam.pattern.defaults)
    _fill(values, defaults, fam.module_support, lower, cut.lo - 1)
    rest = tuple(c for c in fam.cuts if c != cut)
    member = FPFamily(fam.origin, fam.module_support, UniformVector.build(values, defaults), rest)

    kept = {v: x for v, x in fam.pattern.entries if not (v.tail == cut.tail and v.pos >= cut.lo - 1)}
    extended = FPFamily(
        fam.origin,
        fam.module_support,
        UniformVector.build(kept, dict(fam.pattern.defaults)),
        tuple(lower if c == cut else c for c in fam.cuts),
    )
    return member, extended


def _merge(families: Set[FPFamily]) -> Set[FPFamily]:
    changed = True
    while changed:
        changed = False
        for fam in sorted(families, key=FPFamily.sort_key):
            for cut in fam.cuts:
                if cut.lo <= 1:
                    continue
                step = _lowered(fam, cut)
                if step is None or step[0] not in families:
                    continue
                member, extended = step
                families = (families - {fam, member}) | {extended}
                changed = True
                break
            if changed:
                break
    return families


def piece_families(t: TiltingSpec, piece: ThinPiece) -> Tuple[FPFamily, ...]:
    """Disjoint families covering every finitely presented submodule of ``piece``."""
    window = piece_window(t, piece.origin, piece.support)
    starts = generic_starts(t, piece.origin, piece.support)
    elements = piece.support.support(window)
    families: Set[FPFamily] = set()
    count = 0
    for members in closed_sets(t, piece.origin, elements):
        members = set(members)
        if unbounded_tails(t, piece.origin, members, window):
            continue
        families.add(_family_of(piece, members, window, starts))
        count += 1
    merged = sorted(_merge(families), key=FPFamily.sort_key)
    logger.debug("%d closed window sets over %s -> %d families", count, piece.origin, len(merged))
    return tuple(merged)


def enumerate_fp_submodules(t: TiltingSpec, module: ThinModule) -> FPFamilyList:
    """
    Finitely presented submodules of ``module``.

    Args:
        t: Tilting spec
        module: Thin module (one piece per summand)

    Returns:
        FPFamilyList; the zero module gives the single zero submodule
    """
    return FPFamilyList(module, tuple(piece_families(t, p) for p in module.pieces))
