"""
Cluster characters and the multiplication / exchange checks.

X(M) = x^{-coind(M)} * sum over finitely presented submodules N of
x^{coind(N) - ind(N)}. Every submodule Grassmannian of a thin module is a
point or empty, so each family member contributes with coefficient 1.
"""
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from src.character.series import (
    Character,
    FormalSeries,
    LaurentPolynomial,
    Monomial,
    SeriesTerm,
    TailSlot,
    WindowProduct,
    series_mul,
    window_expand,
)
from src.errors import ArgumentError, SeriesError
from src.modules.presentation import coindex
from src.modules.realize import coind_minus_ind
from src.modules.submodules import FPFamily, TailCut, piece_families
from src.modules.thin import ThinPiece, generic_starts, phi_support
from src.modules.vectors import TailKey
from src.surface.hom import Triangle, exchange_triangles
from src.surface.model import Arc, ArcKind, arc_kind, shift
from src.tilting.spec import CTVertex, TiltingSpec, tail_vertex

logger = logging.getLogger(__name__)

# generic representative sits this far past the generic start
_REP_OFFSET = 3


def _value(t: TiltingSpec, fam: FPFamily, params: Mapping[TailKey, int]) -> Monomial:
    return Monomial.from_k0(coind_minus_ind(t, fam.piece(params)))


def _split_moving(m: Monomial, tail: TailKey, threshold: int) -> Tuple[Monomial, Dict[int, int]]:
    """(variables below the threshold, tail positions >= threshold with exponents)."""
    fixed, moving = {}, {}
    for v, e in m.exps:
        if v.tail == tail and v.pos >= threshold:
            moving[v.pos] = e
        else:
            fixed[v] = e
    return Monomial.of(fixed), moving


def _placed(tail: TailKey, template: Mapping[int, int], n: int) -> Optional[Monomial]:
    out = {}
    for o, e in template.items():
        if n + o < 1:
            return None
        out[tail_vertex(tail[0], tail[1], n + o)] = e
    return Monomial.of(out)


@dataclass
class _CutShape:
    cut: TailCut
    rep: int
    template: Dict[int, int]
    start: int
    exceptional: List[int] = field(default_factory=list)


def _cut_shape(t: TiltingSpec, fam: FPFamily, cut: TailCut, reps: Dict[TailKey, int]) -> _CutShape:
    rep = reps[cut.tail]
    base = _value(t, fam, reps)
    fixed, moving = _split_moving(base, cut.tail, rep - _REP_OFFSET)
    template = {p - rep: e for p, e in moving.items()}

    def matches(n: int) -> bool:
        placed = _placed(cut.tail, template, n)
        return placed is not None and _value(t, fam, {**reps, cut.tail: n}) == fixed * placed

    for k in (1, 2):
        if not matches(rep + k):
            raise SeriesError(
                f"submodule family over {fam.origin} is not translation invariant on tail {cut.tail}"
            )
    start = rep
    while start - 1 >= cut.lo and matches(start - 1):
        start -= 1
    return _CutShape(cut, rep, template, start, list(range(cut.lo, start)))


def _to_chain_slot(t: TiltingSpec, shape: _CutShape) -> TailSlot:
    acc, side = shape.cut.tail
    chain = next(c for c in t.chains() if c.covers_tail(shape.cut.tail))
    c0 = chain.coord(tail_vertex(acc, side, shape.start))
    c1 = chain.coord(tail_vertex(acc, side, shape.start + 1))
    step = c1 - c0
    template = tuple(sorted((o * step, e) for o, e in shape.template.items() if e))
    if step > 0:
        return TailSlot(chain, c0, None, template).normalized()
    return TailSlot(chain, None, c0, template).normalized()


def family_terms(t: TiltingSpec, fam: FPFamily) -> List[SeriesTerm]:
    """
    Series terms x^{coind - ind} summed over one submodule family.

    Each parameter contributes a slot over its generic run; the finitely
    many exceptional parameter values are listed as separate terms.

    Raises:
        SeriesError: the family does not repeat by translation
    """
    if fam.is_single:
        return [SeriesTerm(1, _value(t, fam, {}))]

    starts = generic_starts(t, fam.origin, fam.pattern)
    reps = {c.tail: max(c.lo, starts[c.tail]) + _REP_OFFSET for c in fam.cuts}
    shapes = [_cut_shape(t, fam, c, reps) for c in fam.cuts]

    terms = []
    options = [[("exc", n) for n in s.exceptional] + [("gen", s.rep)] for s in shapes]
    for combo in product(*options):
        params = {s.cut.tail: n for s, (_, n) in zip(shapes, combo)}
        generic = [s for s, (kind, _) in zip(shapes, combo) if kind == "gen"]
        m = _value(t, fam, params)
        fixed = m
        for s in generic:
            fixed = fixed / _placed(s.cut.tail, s.template, s.rep)
        for s in generic:
            moved = {**params, s.cut.tail: s.rep + 1}
            expect = fixed
            for g in generic:
                expect = expect * _placed(g.cut.tail, g.template, moved[g.cut.tail])
            if _value(t, fam, moved) != expect:
                raise SeriesError(f"submodule family over {fam.origin} does not separate its parameters")
        slots = tuple(sorted((_to_chain_slot(t, s) for s in generic), key=TailSlot.sort_key))
        terms.append(SeriesTerm(1, fixed, slots))
    return terms


@lru_cache(maxsize=4096)
def arc_character(t: TiltingSpec, arc: Arc) -> FormalSeries:
    """Character of one indecomposable; arc(v)[1] gives x_v."""
    v = t.shifted_vertex(arc)
    if v is not None:
        return FormalSeries.monomial(Monomial.var(v))
    prefactor = Monomial.from_k0(-coindex(t, [arc]))
    terms: List[SeriesTerm] = []
    for fam in piece_families(t, ThinPiece(arc, phi_support(t, arc))):
        terms.extend(family_terms(t, fam))
    series = FormalSeries.canonical(term.times_monomial(prefactor) for term in terms)
    logger.info("character of %s: %d term(s)", arc, len(series.terms))
    return series


def cluster_character(t: TiltingSpec, arcs: Sequence[Arc]) -> Character:
    """
    X(M) for M the direct sum of ``arcs``.

    Args:
        t: Tilting spec
        arcs: Summands of M (arc(v)[1] summands allowed)

    Returns:
        FormalSeries, or a WindowProduct when summands share a chain
    """
    result: Character = FormalSeries.one()
    for arc in arcs:
        result = series_mul(result, arc_character(t, arc))
    return result


def joint_character(t: TiltingSpec, arcs: Sequence[Arc]) -> FormalSeries:
    """
    X(M) of a direct sum computed from pairs of submodule families.

    Every family combination of the summands contributes its joint
    x^{coind - ind}; the result keeps slots of different summands on a common
    chain inside one term.
    """
    terms = [SeriesTerm(1)]
    shifted = Monomial()
    plain: List[Arc] = []
    for arc in arcs:
        v = t.shifted_vertex(arc)
        if v is not None:
            shifted = shifted * Monomial.var(v)
        else:
            plain.append(arc)
    for arc in plain:
        fams = piece_families(t, ThinPiece(arc, phi_support(t, arc)))
        piece_terms = [term for fam in fams for term in family_terms(t, fam)]
        terms = [a.times(b) for a in terms for b in piece_terms]
    prefactor = Monomial.from_k0(-coindex(t, plain)) * shifted
    return FormalSeries.canonical(term.times_monomial(prefactor) for term in terms)


def check_multiplication(t: TiltingSpec, m: Sequence[Arc], n: Sequence[Arc], window: Sequence[CTVertex]) -> bool:
    """Whether X(M + N) and X(M) X(N) agree on ``window``."""
    joint = window_expand(joint_character(t, list(m) + list(n)), window)
    split = window_expand(WindowProduct((cluster_character(t, m), cluster_character(t, n))), window)
    if joint != split:
        diff = joint.first_difference(split)
        logger.warning("multiplication check failed at %s", diff[0].format(t) if diff else "?")
    return joint == split


@dataclass
class ExchangeReport:
    holds: bool
    triangles: List[Triangle]
    lhs: LaurentPolynomial
    rhs: LaurentPolynomial
    outside_hypotheses: bool = False
    first_difference: Optional[Tuple[Monomial, int, int]] = None


def check_exchange(t: TiltingSpec, m: Sequence[Arc], n: Sequence[Arc], window: Sequence[CTVertex]) -> ExchangeReport:
    """
    Compare X(M) X(N) with X(B1) + X(B2) on ``window``.

    B1, B2 are the middle terms of the two non-split triangles between M and
    N; when only one triangle exists the other middle term is 0.

    Raises:
        ArgumentError: M or N is not a single arc
        DomainError: no extension between M and N
    """
    if len(m) != 1 or len(n) != 1:
        raise ArgumentError("the exchange check takes one arc on each side")
    x, y = m[0], n[0]
    triangles = exchange_triangles(x, y)
    middles = [tri.middle for tri in triangles]
    while len(middles) < 2:
        middles.append(())

    lhs = window_expand(WindowProduct((arc_character(t, x), arc_character(t, y))), window)
    rhs = LaurentPolynomial()
    for mid in middles:
        rhs = rhs + window_expand(cluster_character(t, list(mid)), window)
    outside = any(arc_kind(a) != ArcKind.ORDINARY for a in (x, y))
    report = ExchangeReport(lhs == rhs, triangles, lhs, rhs, outside, lhs.first_difference(rhs))
    logger.info("exchange %s / %s: %s", x, y, "holds" if report.holds else "fails")
    return report


def check_shifted_characters(t: TiltingSpec, vertices: Sequence[CTVertex]) -> List[CTVertex]:
    """Vertices v for which X(arc(v)[1]) != x_v."""
    bad = []
    for v in vertices:
        series = cluster_character(t, [shift(t.arc_of(v), 1)])
        if series != FormalSeries.monomial(Monomial.var(v)):
            bad.append(v)
    return bad
