"""
Text form of formal series.

    series   := "0" | term (" + " term)*
    term     := coeff "*" monomial ("*sum{" var " in " domain "} " template)*
    monomial := "1" | factor ("*" factor)*
    factor   := "x(" label ")" ["^" int]
    domain   := ("[" int | "(-inf") "," (int "]" | "inf)")
    template := "x(" chain "(" var [("+"|"-") int] "))" ["^" int] ("*" ...)*

Example: ``1*x(z)*sum{n in [1,inf)} x(f0L(n))^-1*x(f0L(n+1))^-1``
"""
import re
from typing import List

from src.character.series import FormalSeries, Monomial, SeriesTerm, TailSlot
from src.errors import ParseError
from src.tilting.spec import TiltingSpec

SLOT_VARS = ("n", "m", "k", "l", "p", "q")

_FACTOR_RE = re.compile(r"^x\(([^()]+)\)(?:\^(-?\d+))?$")
_SLOT_RE = re.compile(r"^(\w+) in (\[-?\d+|\(-inf),(-?\d+\]|inf\))\} (.+)$")
_TEMPLATE_RE = re.compile(r"^x\((\w+)\((\w+)([+-]\d+)?\)\)(?:\^(-?\d+))?$")


def format_series(t: TiltingSpec, s: FormalSeries) -> str:
    if not s.terms:
        return "0"
    parts = []
    for term in s.terms:
        text = f"{term.coeff}*{term.fixed.format(t)}"
        for var, slot in zip(SLOT_VARS, term.slots):
            text += f"*sum{{{var} in {slot.domain_text()}}} {slot.template_text(var)}"
        parts.append(text)
    return " + ".join(parts)


def _parse_monomial(t: TiltingSpec, text: str) -> Monomial:
    text = text.strip()
    if text == "1":
        return Monomial()
    exps = {}
    for factor in text.split("*"):
        m = _FACTOR_RE.match(factor.strip())
        if not m:
            raise ParseError(f"bad monomial factor {factor!r}")
        v = t.vertex_by_label(m.group(1))
        exps[v] = exps.get(v, 0) + int(m.group(2) or 1)
    return Monomial.of(exps)


def _parse_bound(text: str):
    text = text.strip("[]()")
    return None if text in ("-inf", "inf") else int(text)


def _parse_slot(t: TiltingSpec, text: str) -> TailSlot:
    m = _SLOT_RE.match(text.strip())
    if not m:
        raise ParseError(f"bad sum {text!r}")
    var, lo, hi, body = m.groups()
    chain = None
    template = {}
    for factor in body.split("*"):
        f = _TEMPLATE_RE.match(factor.strip())
        if not f:
            raise ParseError(f"bad template factor {factor!r}")
        name, fvar, off, exp = f.groups()
        if fvar != var:
            raise ParseError(f"template uses {fvar!r} inside a sum over {var!r}")
        c = t.chain_by_name(name)
        if chain is not None and c != chain:
            raise ParseError(f"one sum runs over two chains: {chain.name}, {c.name}")
        chain = c
        o = int(off or 0)
        template[o] = template.get(o, 0) + int(exp or 1)
    if chain is None:
        raise ParseError(f"empty template in {text!r}")
    lo_v, hi_v = _parse_bound(lo), _parse_bound(hi)
    if lo_v is not None and hi_v is not None and lo_v > hi_v:
        raise ParseError(f"empty domain in {text!r}")
    return TailSlot(chain, lo_v, hi_v, tuple(sorted((o, e) for o, e in template.items() if e)))


def parse_series(t: TiltingSpec, text: str) -> FormalSeries:
    """
    Parse the canonical text form back into a series.

    Raises:
        ParseError: malformed text or unknown labels
    """
    text = text.strip()
    if text == "0":
        return FormalSeries.zero()
    terms: List[SeriesTerm] = []
    for part in text.split(" + "):
        chunks = part.split("*sum{")
        head = chunks[0]
        coeff_text, _, mono_text = head.partition("*")
        try:
            coeff = int(coeff_text)
        except ValueError:
            raise ParseError(f"bad coefficient in term {part!r}")
        if not mono_text:
            raise ParseError(f"term {part!r} lacks a monomial")
        slots = tuple(_parse_slot(t, c) for c in chunks[1:])
        terms.append(SeriesTerm(coeff, _parse_monomial(t, mono_text), slots))
    return FormalSeries.canonical(terms)
