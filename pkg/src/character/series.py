"""
Formal Laurent series over the tilting indeterminates.

A series is a finite list of terms ``coeff * fixed * sum_n template(n) ...``
where every sum runs over an interval of a chain coordinate. Only window
expansions are ever multiplied out; equality of infinite series is decided
on canonical forms or on windows.
"""
import logging
from dataclasses import dataclass
from itertools import product
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple, Union

from src.modules.vectors import K0PrimeElement
from src.tilting.spec import Chain, CTVertex, TiltingSpec

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Monomial:
    """Finite Laurent monomial prod x_v^e."""

    exps: Tuple[Tuple[CTVertex, int], ...] = ()

    @classmethod
    def of(cls, mapping: Mapping[CTVertex, int]) -> "Monomial":
        return cls(tuple(sorted(
            ((v, e) for v, e in mapping.items() if e != 0),
            key=lambda kv: kv[0].sort_key(),
        )))

    @classmethod
    def from_k0(cls, elem: K0PrimeElement) -> "Monomial":
        """x^elem: the coefficient of [P_v] becomes the exponent of x_v."""
        return cls.of(elem.as_dict())

    @classmethod
    def var(cls, v: CTVertex, e: int = 1) -> "Monomial":
        return cls.of({v: e})

    def as_dict(self) -> Dict[CTVertex, int]:
        return dict(self.exps)

    def __mul__(self, other: "Monomial") -> "Monomial":
        out = self.as_dict()
        for v, e in other.exps:
            out[v] = out.get(v, 0) + e
        return Monomial.of(out)

    def __truediv__(self, other: "Monomial") -> "Monomial":
        return self * Monomial(tuple((v, -e) for v, e in other.exps))

    @property
    def support(self) -> FrozenSet[CTVertex]:
        return frozenset(v for v, _ in self.exps)

    def is_one(self) -> bool:
        return not self.exps

    def sort_key(self):
        return tuple((v.sort_key(), e) for v, e in self.exps)

    def format(self, t: TiltingSpec) -> str:
        if not self.exps:
            return "1"
        return "*".join(_power(f"x({t.label(v)})", e) for v, e in self.exps)


def _power(base: str, e: int) -> str:
    return base if e == 1 else f"{base}^{e}"


@dataclass(frozen=True)
class TailSlot:
    """
    sum over n in [lo, hi] of prod_o x_{chain(n + o)}^{template(o)}.

    ``lo``/``hi`` are None for an unbounded end.
    """

    chain: Chain
    lo: Optional[int]
    hi: Optional[int]
    template: Tuple[Tuple[int, int], ...]

    def normalized(self) -> "TailSlot":
        """Same sum with the smallest template offset moved to 0."""
        if not self.template:
            return self
        low = min(o for o, _ in self.template)
        if low == 0:
            return self
        return TailSlot(
            self.chain,
            None if self.lo is None else self.lo + low,
            None if self.hi is None else self.hi + low,
            tuple((o - low, e) for o, e in self.template),
        )

    def in_domain(self, n: int) -> bool:
        return (self.lo is None or n >= self.lo) and (self.hi is None or n <= self.hi)

    def monomial_at(self, n: int) -> Optional[Monomial]:
        """The instantiated monomial; None when a position is off the chain."""
        out: Dict[CTVertex, int] = {}
        for o, e in self.template:
            v = self.chain.vertex(n + o)
            if v is None:
                return None
            out[v] = out.get(v, 0) + e
        return Monomial.of(out)

    def with_domain(self, lo: Optional[int], hi: Optional[int]) -> "TailSlot":
        return TailSlot(self.chain, lo, hi, self.template)

    def sort_key(self):
        return (
            self.chain.name,
            self.template,
            (0, 0) if self.lo is None else (1, self.lo),
            (1, 0) if self.hi is None else (0, self.hi),
        )

    def domain_text(self) -> str:
        left = "(-inf" if self.lo is None else f"[{self.lo}"
        right = "inf)" if self.hi is None else f"{self.hi}]"
        return f"{left},{right}"

    def template_text(self, var: str) -> str:
        parts = []
        for o, e in self.template:
            pos = var if o == 0 else f"{var}{o:+d}"
            parts.append(_power(f"x({self.chain.name}({pos}))", e))
        return "*".join(parts)


@dataclass(frozen=True)
class SeriesTerm:
    coeff: int
    fixed: Monomial = Monomial()
    slots: Tuple[TailSlot, ...] = ()

    @property
    def key(self):
        return (self.fixed, self.slots)

    def times(self, other: "SeriesTerm") -> "SeriesTerm":
        return SeriesTerm(
            self.coeff * other.coeff,
            self.fixed * other.fixed,
            tuple(sorted(self.slots + other.slots, key=TailSlot.sort_key)),
        )

    def times_monomial(self, m: Monomial) -> "SeriesTerm":
        return SeriesTerm(self.coeff, self.fixed * m, self.slots)

    @property
    def chains(self) -> FrozenSet[str]:
        return frozenset(s.chain.name for s in self.slots)

    def sort_key(self):
        return (len(self.slots), self.fixed.sort_key(), tuple(s.sort_key() for s in self.slots), self.coeff)


def _merge_like(terms: Iterable[SeriesTerm]) -> Dict[tuple, SeriesTerm]:
    out: Dict[tuple, SeriesTerm] = {}
    for term in terms:
        slots = tuple(sorted((s.normalized() for s in term.slots), key=TailSlot.sort_key))
        term = SeriesTerm(term.coeff, term.fixed, slots)
        if term.key in out:
            prev = out[term.key]
            term = SeriesTerm(prev.coeff + term.coeff, term.fixed, term.slots)
        out[term.key] = term
    return {k: t for k, t in out.items() if t.coeff != 0}


def _absorb_once(terms: Dict[tuple, SeriesTerm]) -> bool:
    """Fold a term equal to a slot's next instantiation into that slot."""
    for key, term in sorted(terms.items(), key=lambda kv: kv[1].sort_key()):
        for k, slot in enumerate(term.slots):
            rest = term.slots[:k] + term.slots[k + 1:]
            for n, new in ((None if slot.lo is None else slot.lo - 1, "lo"),
                           (None if slot.hi is None else slot.hi + 1, "hi")):
                if n is None:
                    continue
                m = slot.monomial_at(n)
                if m is None:
                    continue
                other = terms.get((term.fixed * m, rest))
                if other is None or other.coeff != term.coeff:
                    continue
                grown = slot.with_domain(n, slot.hi) if new == "lo" else slot.with_domain(slot.lo, n)
                slots = tuple(sorted(rest + (grown,), key=TailSlot.sort_key))
                del terms[key]
                del terms[other.key]
                merged = SeriesTerm(term.coeff, term.fixed, slots)
                terms[merged.key] = merged
                return True
    return False


def _join_once(terms: Dict[tuple, SeriesTerm]) -> bool:
    """Join two terms whose only difference is one slot over adjacent intervals."""
    items = sorted(terms.values(), key=SeriesTerm.sort_key)
    for i, a in enumerate(items):
        for b in items[i + 1:]:
            if a.coeff != b.coeff or a.fixed != b.fixed or len(a.slots) != len(b.slots):
                continue
            diff = [k for k, (x, y) in enumerate(zip(a.slots, b.slots)) if x != y]
            if len(diff) != 1:
                continue
            x, y = a.slots[diff[0]], b.slots[diff[0]]
            if x.chain != y.chain or x.template != y.template:
                continue
            if x.hi is not None and y.lo is not None and x.hi + 1 == y.lo:
                joined = x.with_domain(x.lo, y.hi)
            elif y.hi is not None and x.lo is not None and y.hi + 1 == x.lo:
                joined = x.with_domain(y.lo, x.hi)
            else:
                continue
            slots = list(a.slots)
            slots[diff[0]] = joined
            del terms[a.key]
            del terms[b.key]
            merged = SeriesTerm(a.coeff, a.fixed, tuple(sorted(slots, key=TailSlot.sort_key)))
            terms[merged.key] = merged
            return True
    return False


@dataclass(frozen=True)
class FormalSeries:
    terms: Tuple[SeriesTerm, ...] = ()

    @classmethod
    def canonical(cls, terms: Iterable[SeriesTerm]) -> "FormalSeries":
        """
        Canonical form: slots normalized, like terms merged, zero terms
        dropped, terms folded into neighbouring slots, adjacent slots joined.
        """
        merged = _merge_like(terms)
        while _absorb_once(merged) or _join_once(merged):
            merged = _merge_like(merged.values())
        return cls(tuple(sorted(merged.values(), key=SeriesTerm.sort_key)))

    @classmethod
    def zero(cls) -> "FormalSeries":
        return cls(())

    @classmethod
    def one(cls) -> "FormalSeries":
        return cls.monomial(Monomial())

    @classmethod
    def monomial(cls, m: Monomial, coeff: int = 1) -> "FormalSeries":
        return cls((SeriesTerm(coeff, m),))

    def times_monomial(self, m: Monomial) -> "FormalSeries":
        return FormalSeries.canonical(term.times_monomial(m) for term in self.terms)

    def __add__(self, other: "FormalSeries") -> "FormalSeries":
        return FormalSeries.canonical(self.terms + other.terms)

    @property
    def has_slots(self) -> bool:
        return any(term.slots for term in self.terms)

    def format(self, t: TiltingSpec) -> str:
        from src.character.grammar import format_series

        return format_series(t, self)


@dataclass(frozen=True)
class LaurentPolynomial:
    """Finite integer combination of monomials."""

    coeffs: Tuple[Tuple[Monomial, int], ...] = ()

    @classmethod
    def of(cls, mapping: Mapping[Monomial, int]) -> "LaurentPolynomial":
        return cls(tuple(sorted(
            ((m, c) for m, c in mapping.items() if c != 0),
            key=lambda kv: kv[0].sort_key(),
        )))

    @classmethod
    def constant(cls, c: int) -> "LaurentPolynomial":
        return cls.of({Monomial(): c})

    def as_dict(self) -> Dict[Monomial, int]:
        return dict(self.coeffs)

    def __add__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        out = self.as_dict()
        for m, c in other.coeffs:
            out[m] = out.get(m, 0) + c
        return LaurentPolynomial.of(out)

    def __mul__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        out: Dict[Monomial, int] = {}
        for m1, c1 in self.coeffs:
            for m2, c2 in other.coeffs:
                m = m1 * m2
                out[m] = out.get(m, 0) + c1 * c2
        return LaurentPolynomial.of(out)

    def restrict(self, window: Iterable[CTVertex]) -> "LaurentPolynomial":
        w = frozenset(window)
        return LaurentPolynomial(tuple((m, c) for m, c in self.coeffs if m.support <= w))

    def __len__(self) -> int:
        return len(self.coeffs)

    def first_difference(self, other: "LaurentPolynomial") -> Optional[Tuple[Monomial, int, int]]:
        """(monomial, coefficient here, coefficient there) of the first disagreement."""
        a, b = self.as_dict(), other.as_dict()
        for m in sorted(set(a) | set(b), key=Monomial.sort_key):
            if a.get(m, 0) != b.get(m, 0):
                return m, a.get(m, 0), b.get(m, 0)
        return None

    def format(self, t: TiltingSpec) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"{c}*{m.format(t)}" for m, c in self.coeffs)


@dataclass(frozen=True)
class WindowProduct:
    """
    Product whose exact form is not computed.

    Expanding it on W multiplies the factors' expansions on W and keeps the
    monomials supported in W.
    """

    factors: Tuple[Union[FormalSeries, "WindowProduct"], ...]


Character = Union[FormalSeries, WindowProduct]


def _slot_choices(slot: TailSlot, anchors: FrozenSet[CTVertex]) -> List[int]:
    coords = set()
    for v in anchors:
        c = slot.chain.coord(v)
        if c is not None:
            coords.add(c)
    found = set()
    for c in coords:
        for o, _ in slot.template:
            n = c - o
            if slot.in_domain(n) and slot.monomial_at(n) is not None:
                found.add(n)
    return sorted(found)


def window_expand(s: Character, window: Iterable[CTVertex]) -> LaurentPolynomial:
    """
    The instantiated monomials of ``s`` supported in ``window``.

    A slot is instantiated at every n touching the window or the term's fixed
    variables; slots on a common chain are assumed not to cancel each other
    completely.
    """
    w = frozenset(window)
    if isinstance(s, WindowProduct):
        out = LaurentPolynomial.constant(1)
        for factor in s.factors:
            out = (out * window_expand(factor, w)).restrict(w)
        return out

    acc: Dict[Monomial, int] = {}
    for term in s.terms:
        anchors = w | term.fixed.support
        choices = [_slot_choices(slot, anchors) for slot in term.slots]
        for combo in product(*choices):
            m = term.fixed
            for slot, n in zip(term.slots, combo):
                m = m * slot.monomial_at(n)
            if m.support <= w:
                acc[m] = acc.get(m, 0) + term.coeff
    return LaurentPolynomial.of(acc)


def series_mul(a: Character, b: Character) -> Character:
    """
    Product of two series.

    Exact when no pair of terms carries slots on a common chain; otherwise a
    WindowProduct handle.
    """
    if isinstance(a, WindowProduct) or isinstance(b, WindowProduct):
        return WindowProduct((a, b))
    for ta in a.terms:
        for tb in b.terms:
            if ta.chains & tb.chains:
                logger.debug("series product kept symbolic: shared chain(s) %s", sorted(ta.chains & tb.chains))
                return WindowProduct((a, b))
    return FormalSeries.canonical(ta.times(tb) for ta in a.terms for tb in b.terms)
