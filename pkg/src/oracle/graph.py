"""
LangGraph Workflow Definition - 截断 oracle
流程：截断 -> 暴力枚举 -> 闭式引擎 -> 比较 -> 报告 -> 保存(可选)
"""
import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence

from langgraph.graph import StateGraph, END

from src.errors import ArgumentError
from src.oracle.nodes import (
    closed_form_node,
    compare_node,
    enumerate_node,
    report_node,
    save_node,
    truncate_node,
)
from src.oracle.state import ClosurePredicate, OracleState
from src.surface.model import Arc
from src.tilting.spec import TiltingSpec
from src.utils.settings import get_settings

logger = logging.getLogger(__name__)


def should_save(state: OracleState) -> str:
    """判断是否需要保存报告"""
    return "save" if state.get("save", False) else "end"


def create_workflow() -> StateGraph:
    """
    创建并编译 oracle 工作流

    流程：truncate -> enumerate -> closed_form -> compare -> report -> (save | END)
    """
    workflow = StateGraph(OracleState)

    workflow.add_node("truncate", truncate_node)
    workflow.add_node("enumerate", enumerate_node)
    workflow.add_node("closed_form", closed_form_node)
    workflow.add_node("compare", compare_node)
    workflow.add_node("report", report_node)
    workflow.add_node("save", save_node)

    workflow.set_entry_point("truncate")

    workflow.add_edge("truncate", "enumerate")
    workflow.add_edge("enumerate", "closed_form")
    workflow.add_edge("closed_form", "compare")
    workflow.add_edge("compare", "report")

    workflow.add_conditional_edges(
        "report",
        should_save,
        {
            "save": "save",
            "end": END,
        },
    )

    workflow.add_edge("save", END)

    return workflow.compile()


_oracle_app = None


def get_oracle_app():
    """获取或创建编译后的 oracle 应用"""
    global _oracle_app
    if _oracle_app is None:
        _oracle_app = create_workflow()
    return _oracle_app


@dataclass
class OracleReport:
    verdict: str
    truncate: int
    checks: List[Dict[str, Any]]
    divergence: str
    report: str
    output_path: str = ""

    @property
    def passed(self) -> bool:
        return self.verdict == "PASS"


def run_oracle(
    t: TiltingSpec,
    arcs: Sequence[Arc],
    truncate: Optional[int] = None,
    closure: Optional[ClosurePredicate] = None,
    save: bool = False,
    verbose: bool = False,
) -> OracleReport:
    """
    Cross-check the closed-form engine against brute force on truncated tails.

    Args:
        t: Tilting spec
        arcs: Summands of M
        truncate: Tail truncation L (settings default when omitted)
        closure: Override for the "v forces u" predicate
        save: Write the report to the output directory
        verbose: Print node progress to stderr

    Returns:
        OracleReport with the PASS/FAIL verdict and first divergence

    Raises:
        ArgumentError: L too small for the tails to be uniform
    """
    settings = get_settings()
    if truncate is None:
        truncate = settings.truncate
    if truncate < settings.min_truncate:
        raise ArgumentError(f"truncation {truncate} is below the minimum {settings.min_truncate}")

    initial: OracleState = {
        "spec": t,
        "arcs": list(arcs),
        "truncate": truncate,
        "save": save,
        "verbose": verbose,
        "checks": [],
        "messages": [],
    }
    if closure is not None:
        initial["closure"] = closure

    final = get_oracle_app().invoke(initial)
    logger.info("oracle on %s: %s", [str(a) for a in arcs], final["verdict"])
    return OracleReport(
        verdict=final["verdict"],
        truncate=final["truncate"],
        checks=final.get("checks", []),
        divergence=final.get("divergence", ""),
        report=final.get("report", ""),
        output_path=final.get("output_path", ""),
    )
