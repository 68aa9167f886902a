"""
LangGraph State Definition for the truncation oracle
"""
from typing import Any, Callable, Dict, List, Optional, Tuple, TypedDict

from typing_extensions import Annotated
import operator

from src.character.series import LaurentPolynomial
from src.modules.vectors import K0PrimeElement, UniformVector
from src.surface.model import Arc
from src.tilting.spec import CTVertex, TiltingSpec

# closure(t, u, v, origin): membership of v forces membership of u
ClosurePredicate = Callable[[TiltingSpec, CTVertex, CTVertex, Arc], bool]


class OracleState(TypedDict, total=False):
    """
    State object for one oracle run.

    truncate -> enumerate -> closed_form -> compare -> report (-> save)
    """

    # ===== 输入 =====
    spec: TiltingSpec
    arcs: List[Arc]
    truncate: int
    closure: ClosurePredicate
    save: bool
    verbose: bool

    # ===== 截断窗口 =====
    window: Tuple[CTVertex, ...]  # tail positions 1..L
    compare_window: Tuple[CTVertex, ...]  # tail positions 1..L-2

    # ===== 暴力枚举 =====
    brute_supports: List[List[UniformVector]]  # per summand
    brute_indices: List[Optional[Dict[str, K0PrimeElement]]]  # index / coindex on the truncated poset
    brute_polynomial: LaurentPolynomial

    # ===== 闭式引擎 =====
    engine_supports: List[Dict[UniformVector, int]]  # per summand, with multiplicity
    engine_polynomial: LaurentPolynomial

    # ===== 比较 =====
    checks: Annotated[List[Dict[str, Any]], operator.add]
    verdict: str  # PASS / FAIL
    divergence: str

    # ===== 输出 =====
    report: str
    output_path: str
    messages: Annotated[List[str], operator.add]
