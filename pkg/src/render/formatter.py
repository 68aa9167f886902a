"""
Report Formatting
"""
import json
from datetime import datetime
from typing import Any, Dict, List, Mapping, Optional, Sequence

from src.character.cluster import ExchangeReport
from src.character.series import LaurentPolynomial
from src.modules.presentation import ApproximationTriangle, Presentation
from src.modules.submodules import FPFamilyList
from src.modules.vectors import K0PrimeElement
from src.surface.hom import Triangle
from src.surface.model import format_object
from src.tilting.spec import TiltingSpec
from src.tilting.validate import CTReport


class ReportFormatter:
    """
    Renders computation results as text reports and JSON payloads.

    Every text report is deterministic: identical inputs give identical bytes.
    """

    @staticmethod
    def format_triangles(triangles: Sequence[Triangle]) -> str:
        if not triangles:
            return "no non-split triangle"
        return "\n".join(str(tri) for tri in triangles)

    @staticmethod
    def format_ct_report(report: CTReport) -> str:
        """
        Format a cluster-tilting validation report.

        Args:
            report: Result of validate_ct

        Returns:
            ``accepted`` or ``rejected`` followed by one violation per line
        """
        if report.accepted:
            return "accepted"
        lines = ["rejected"]
        lines.extend(f"  - {v}" for v in report.violations)
        return "\n".join(lines)

    @staticmethod
    def format_presentation(t: TiltingSpec, pres: Presentation, label: str = "index") -> str:
        return "\n".join([
            f"P0: {pres.p0.format(t)}",
            f"P1: {pres.p1.format(t)}",
            f"{label}: {pres.index.format(t)}",
        ])

    @staticmethod
    def format_triangle(tri: ApproximationTriangle) -> str:
        return f"{format_object(tri.t1)} -> {format_object(tri.t0)} -> {tri.target} -> {format_object(tri.t1)}[1]"

    @staticmethod
    def format_families(t: TiltingSpec, families: FPFamilyList) -> str:
        """One line per family, grouped by summand."""
        lines = []
        for arc, fams in zip(families.module.origin, families.per_piece):
            lines.append(f"{arc}: {len(fams)} famil{'y' if len(fams) == 1 else 'ies'}")
            lines.extend(f"  {fam.format(t)}" for fam in fams)
        if not lines:
            lines.append("zero module: {0}")
        return "\n".join(lines)

    @staticmethod
    def format_exchange(t: TiltingSpec, report: ExchangeReport) -> str:
        lines = ["holds" if report.holds else "fails"]
        if report.outside_hypotheses:
            lines.append("outside theorem hypotheses (limit arc summand)")
        lines.extend(str(tri) for tri in report.triangles)
        lines.append(f"X(M)X(N) = {report.lhs.format(t)}")
        lines.append(f"X(B1)+X(B2) = {report.rhs.format(t)}")
        if report.first_difference is not None:
            m, a, b = report.first_difference
            lines.append(f"first difference at {m.format(t)}: {a} vs {b}")
        return "\n".join(lines)

    @staticmethod
    def format_oracle(state: Mapping[str, Any]) -> str:
        """
        Format an oracle run as a markdown report.

        Args:
            state: Final oracle state

        Returns:
            Markdown report with a check table and the verdict
        """
        t: TiltingSpec = state["spec"]
        lines = [
            "# Truncation oracle",
            "",
            f"- object: {format_object(state.get('arcs', []))}",
            f"- accumulation points: {t.r}",
            f"- truncation L: {state.get('truncate')}",
            f"- verdict: **{state.get('verdict', '?')}**",
            "",
            "| check | result | detail |",
            "|------|------|------|",
        ]
        for c in state.get("checks", []):
            lines.append(f"| {c['name']} | {'ok' if c['ok'] else 'FAIL'} | {c['detail']} |")
        if state.get("divergence"):
            lines.extend(["", f"first divergence: {state['divergence']}"])
        return "\n".join(lines) + "\n"

    @staticmethod
    def stamp(report: str) -> str:
        """Append a generation timestamp; used for saved files only."""
        return f"{report}\n*生成时间: {datetime.now().strftime('%Y-%m-%d %H:%M:%S')}*\n"

    # ===== JSON =====

    @staticmethod
    def k0_json(t: TiltingSpec, elem: K0PrimeElement) -> Dict[str, int]:
        return {t.label(v): c for v, c in elem.coeffs}

    @staticmethod
    def polynomial_json(t: TiltingSpec, poly: LaurentPolynomial) -> List[Dict[str, Any]]:
        return [
            {"coeff": c, "monomial": {t.label(v): e for v, e in m.exps}}
            for m, c in poly.coeffs
        ]

    @staticmethod
    def triangles_json(triangles: Sequence[Triangle]) -> List[Dict[str, Any]]:
        return [
            {"left": str(tri.left), "middle": [str(a) for a in tri.middle], "right": str(tri.right)}
            for tri in triangles
        ]

    @staticmethod
    def ct_report_json(report: CTReport) -> Dict[str, Any]:
        return {
            "accepted": report.accepted,
            "violations": [{"message": v.message, "witness": list(v.witness)} for v in report.violations],
            "regions": [[str(p) for p in region] for region in report.regions],
        }

    @staticmethod
    def exchange_json(t: TiltingSpec, report: ExchangeReport) -> Dict[str, Any]:
        diff: Optional[Dict[str, Any]] = None
        if report.first_difference is not None:
            m, a, b = report.first_difference
            diff = {"monomial": m.format(t), "lhs": a, "rhs": b}
        return {
            "holds": report.holds,
            "outside_hypotheses": report.outside_hypotheses,
            "triangles": ReportFormatter.triangles_json(report.triangles),
            "lhs": ReportFormatter.polynomial_json(t, report.lhs),
            "rhs": ReportFormatter.polynomial_json(t, report.rhs),
            "first_difference": diff,
        }

    @staticmethod
    def to_json(payload: Any) -> str:
        return json.dumps(payload, ensure_ascii=False, indent=2, sort_keys=True)
