"""
LangGraph Node Implementations - 截断 oracle
实现 截断 -> 暴力枚举 -> 闭式引擎 -> 比较 -> 报告 -> 保存(可选)
"""
import logging
from collections import Counter
from typing import Any, Dict, FrozenSet, List, Optional, Sequence, Set

from rich.console import Console

from src.character.cluster import cluster_character
from src.character.series import LaurentPolynomial, Monomial, window_expand
from src.errors import DomainError, RealizationError
from src.modules.presentation import coindex, index
from src.modules.submodules import piece_families
from src.modules.thin import ThinPiece, maps_nonzero, phi_support, piece_points, support_from_members
from src.modules.vectors import K0PrimeElement, UniformVector
from src.oracle.poset import TruncatedPoset
from src.oracle.state import ClosurePredicate, OracleState
from src.render.formatter import ReportFormatter
from src.surface.model import Arc
from src.tilting.spec import CTVertex, TiltingSpec, tail_vertex
from src.utils.file_manager import get_file_manager
from src.utils.settings import get_settings

logger = logging.getLogger(__name__)
console = Console(stderr=True)


def default_closure(t: TiltingSpec, u: CTVertex, v: CTVertex, origin: Arc) -> bool:
    """Membership of v forces u iff the structure map u -> v is nonzero."""
    return maps_nonzero(t, u, v, origin)


def _say(state: OracleState, text: str) -> None:
    if state.get("verbose"):
        console.print(text)


def _check(name: str, ok: bool, detail: str = "") -> Dict[str, Any]:
    return {"name": name, "ok": ok, "detail": detail}


# ===== 截断节点 =====

def truncate_node(state: OracleState) -> Dict[str, Any]:
    """
    截断节点 - 每条 tail 只保留前 L 个位置

    L is raised until every tail's last kept position lies past the
    exceptional region of every summand.
    """
    _say(state, "\n[bold green]✂ 截断 tails...[/bold green]")
    t = state["spec"]
    truncate = state["truncate"]
    needed = truncate
    for arc in state["arcs"]:
        pts = piece_points(t, arc)
        for acc, side in t.tails:
            needed = max(needed, t.tail_cutoff(acc, side, pts) + 3)
    messages = [f"truncation L = {truncate}"]
    if needed > truncate:
        messages.append(f"truncation raised to {needed} to clear the exceptional region")
        logger.info("oracle truncation raised from %d to %d", truncate, needed)
    return {
        "truncate": needed,
        "window": t.window(needed),
        "compare_window": t.window(needed - 2),
        "messages": messages,
    }


# ===== 暴力枚举节点 =====

def _closed_by_search(
    elements: Sequence[CTVertex],
    forced: Dict[CTVertex, List[CTVertex]],
) -> List[FrozenSet[CTVertex]]:
    """Every closed subset, reached from the empty set one vertex at a time."""

    def close(members: Set[CTVertex]) -> FrozenSet[CTVertex]:
        todo = list(members)
        while todo:
            v = todo.pop()
            for u in forced[v]:
                if u not in members:
                    members.add(u)
                    todo.append(u)
        return frozenset(members)

    seen = {frozenset()}
    queue = [frozenset()]
    while queue:
        current = queue.pop()
        for v in elements:
            if v in current:
                continue
            nxt = close(set(current) | {v})
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return sorted(seen, key=lambda s: sorted(v.sort_key() for v in s))


def _finitely_generated(
    t: TiltingSpec,
    origin: Arc,
    members: FrozenSet[CTVertex],
    closure: ClosurePredicate,
    truncate: int,
) -> bool:
    for acc, side in t.tails:
        v = tail_vertex(acc, side, truncate)
        if v not in members:
            continue
        if any(closure(t, v, w, origin) for w in members if w != v):
            continue
        if closure(t, v, tail_vertex(acc, side, truncate + 1), origin):
            return False
    return True


def _visible(t: TiltingSpec, s: UniformVector, bound: int) -> bool:
    return all(s.last_entry(key) <= bound for key in t.tails)


def enumerate_node(state: OracleState) -> Dict[str, Any]:
    """
    暴力枚举节点 - 在截断后的有限偏序集上枚举所有闭子集

    Every submodule term is rebuilt on the truncated poset: realizing arcs
    by search, presentations from the Hom calculus.
    """
    _say(state, "\n[bold green]🔍 暴力枚举子模...[/bold green]")
    t = state["spec"]
    window = state["window"]
    truncate = state["truncate"]
    closure = state.get("closure") or default_closure
    compare = state["compare_window"]
    poset = TruncatedPoset(t, truncate, get_settings().tail_margin)

    per_arc: List[List[UniformVector]] = []
    indices: List[Optional[Dict[str, K0PrimeElement]]] = []
    total = LaurentPolynomial.constant(1)
    checks = []
    for arc in state["arcs"]:
        try:
            indices.append({"index": poset.index(arc), "coindex": poset.coindex(arc)})
        except DomainError as e:
            indices.append(None)
            checks.append(_check("presentation", False, f"{arc}: {e}"))

        v = t.shifted_vertex(arc)
        if v is not None:
            per_arc.append([])
            total = (total * LaurentPolynomial.of({Monomial.var(v): 1})).restrict(compare)
            continue

        support = poset.support(arc)
        elements = [w for w in window if w in support]
        forced = {w: [u for u in elements if u != w and closure(t, u, w, arc)] for w in elements}

        def linked(u: CTVertex, w: CTVertex, arc: Arc = arc) -> bool:
            return closure(t, u, w, arc)

        supports = []
        poly: Dict[Monomial, int] = {}
        for members in _closed_by_search(elements, forced):
            if not _finitely_generated(t, arc, members, closure, truncate):
                continue
            s = support_from_members(set(members), window)
            supports.append(s)
            if indices[-1] is None:
                continue
            try:
                m = Monomial.from_k0(poset.coind_minus_ind(members, linked) - indices[-1]["coindex"])
            except (RealizationError, DomainError) as e:
                if _visible(t, s, truncate - 2):
                    checks.append(_check("brute force", False, f"{arc}: {s.format(t)}: {e}"))
                continue
            poly[m] = poly.get(m, 0) + 1
        per_arc.append(supports)
        total = (total * LaurentPolynomial.of(poly)).restrict(compare)

    logger.debug("brute force: %s closed set(s)", [len(s) for s in per_arc])
    return {
        "brute_supports": per_arc,
        "brute_indices": indices,
        "brute_polynomial": total,
        "checks": checks,
        "messages": [f"brute force found {sum(len(s) for s in per_arc)} submodule(s)"],
    }


# ===== 闭式引擎节点 =====

def closed_form_node(state: OracleState) -> Dict[str, Any]:
    """闭式引擎节点 - 参数族实例化并在同一窗口展开特征标"""
    _say(state, "\n[bold green]∑ 闭式引擎...[/bold green]")
    t = state["spec"]
    truncate = state["truncate"]
    per_arc: List[Dict[UniformVector, int]] = []
    for arc in state["arcs"]:
        counts: Counter = Counter()
        if t.shifted_vertex(arc) is None:
            for fam in piece_families(t, ThinPiece(arc, phi_support(t, arc))):
                for _, s in fam.members(truncate):
                    counts[s] += 1
        per_arc.append(dict(counts))
    poly = window_expand(cluster_character(t, state["arcs"]), state["compare_window"])
    return {
        "engine_supports": per_arc,
        "engine_polynomial": poly,
        "messages": ["closed-form character expanded"],
    }


# ===== 比较节点 =====

def compare_node(state: OracleState) -> Dict[str, Any]:
    """比较节点 - 子模、表示、指标与窗口特征标逐项对照"""
    _say(state, "\n[bold green]⚖ 比较...[/bold green]")
    t = state["spec"]
    bound = state["truncate"] - 2
    checks = []

    for arc, brute, engine in zip(state["arcs"], state["brute_supports"], state["engine_supports"]):
        seen = {s for s in brute if _visible(t, s, bound)}
        listed = {s: c for s, c in engine.items() if _visible(t, s, bound)}
        dup = [s for s, c in listed.items() if c > 1]
        missing = sorted(seen - set(listed), key=lambda s: s.format(t))
        extra = sorted(set(listed) - seen, key=lambda s: s.format(t))
        if dup:
            checks.append(_check("submodules", False, f"{arc}: {dup[0].format(t)} listed twice"))
        elif missing:
            checks.append(_check("submodules", False, f"{arc}: engine misses {missing[0].format(t)}"))
        elif extra:
            checks.append(_check("submodules", False, f"{arc}: engine lists non-closed {extra[0].format(t)}"))
        else:
            checks.append(_check("submodules", True, f"{arc}: {len(seen)} visible"))

    for arc, found in zip(state["arcs"], state.get("brute_indices", [])):
        if found is None:
            continue
        for name, engine_value in (("index", index(t, [arc])), ("coindex", coindex(t, [arc]))):
            ok = found[name] == engine_value
            detail = f"{arc}: {engine_value.format(t)}"
            if not ok:
                detail += f" vs {found[name].format(t)} on the truncated poset"
            checks.append(_check(name, ok, detail))

    brute, engine = state["brute_polynomial"], state["engine_polynomial"]
    diff = brute.first_difference(engine)
    if diff is None:
        checks.append(_check("character", True, f"{len(brute)} monomial(s) agree"))
    else:
        m, a, b = diff
        checks.append(_check("character", False, f"{m.format(t)}: brute force {a}, closed form {b}"))

    all_checks = state.get("checks", []) + checks
    failed = [c for c in all_checks if not c["ok"]]
    return {
        "checks": checks,
        "verdict": "FAIL" if failed else "PASS",
        "divergence": f"{failed[0]['name']}: {failed[0]['detail']}" if failed else "",
        "messages": [f"verdict {'FAIL' if failed else 'PASS'}"],
    }


# ===== 报告节点 =====

def report_node(state: OracleState) -> Dict[str, Any]:
    """报告节点"""
    report = ReportFormatter.format_oracle(state)
    return {"report": report, "messages": ["report rendered"]}


def save_node(state: OracleState) -> Dict[str, Any]:
    """保存节点"""
    _say(state, "\n[bold green]💾 正在保存报告...[/bold green]")
    file_manager = get_file_manager()
    t = state["spec"]
    name = "_".join(str(a) for a in state["arcs"]) or "zero"
    try:
        path = file_manager.save_report(ReportFormatter.stamp(state["report"]), name=f"oracle_r{t.r}_{name}")
    except OSError as e:
        logger.warning("could not save oracle report: %s", e)
        return {"output_path": "", "messages": ["保存失败"]}
    _say(state, f"✓ 报告已保存到: [cyan]{path}[/cyan]")
    return {"output_path": path, "messages": [f"报告已保存: {path}"]}
