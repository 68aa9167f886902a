"""
测试曲面模型：循环序、sigma、交叉、平移与字面量
"""
import pytest
from hypothesis import given, settings, strategies as st

from src.errors import ArcError, ArgumentError, ParseError
from src.surface.model import (
    Acc,
    Arc,
    ArcKind,
    Regular,
    SurfaceSpec,
    arc_kind,
    crosses,
    cyclic_between,
    format_object,
    parse_arc,
    parse_object,
    parse_point,
    shift,
    sigma,
)

R1 = SurfaceSpec(1)
R2 = SurfaceSpec(2)


def R(j, i=0):
    return Regular(i, j)


def arc(p, q, surface=R1):
    return Arc(p, q, surface)


# ===== hypothesis strategies =====

def points(r):
    regular = st.builds(Regular, st.integers(0, r - 1), st.integers(-12, 12))
    return st.one_of(regular, st.builds(Acc, st.integers(0, r - 1)))


@st.composite
def arcs(draw, r=2):
    surface = SurfaceSpec(r)
    p = draw(points(r))
    q = draw(points(r).filter(lambda q: q != p))
    if isinstance(p, Regular) and isinstance(q, Regular) and p.interval == q.interval:
        if abs(p.index - q.index) == 1:
            q = Regular(q.interval, q.index + (1 if q.index > p.index else -1))
    return Arc(p, q, surface)


def test_case_1_cyclic_between():
    assert cyclic_between(R(0), R(3), Acc(0))
    assert not cyclic_between(R(3), R(0), Acc(0))
    assert not cyclic_between(Acc(0), R(-5, 1), Acc(1))
    with pytest.raises(ArgumentError):
        cyclic_between(R(0), R(0), Acc(0))
    print("[PASS] cyclic_between")


def test_case_2_sigma():
    assert sigma(R(5), 1) == R(4)
    assert sigma(Acc(0), 7) == Acc(0)
    assert sigma(R(5), -2) == R(7)
    print("[PASS] sigma")


def test_case_3_crosses():
    assert crosses(arc(R(0), R(2)), arc(R(1), R(3)))
    assert not crosses(arc(R(0), R(2)), arc(R(2), R(4)))
    assert crosses(arc(R(0), Acc(0)), arc(R(4), R(-1)))
    print("[PASS] crosses")


def test_case_4_shift():
    assert shift(arc(R(0), R(5)), 1) == arc(R(-1), R(4))
    double = arc(Acc(0), Acc(1), R2)
    assert shift(double, 1) == double
    assert shift(arc(R(0), Acc(0)), -1) == arc(R(1), Acc(0))
    print("[PASS] shift")


def test_case_5_arc_kind():
    assert arc_kind(arc(R(0), R(5))) == ArcKind.ORDINARY
    assert arc_kind(arc(R(0), Acc(0))) == ArcKind.ONE_SIDED_LIMIT
    assert arc_kind(arc(Acc(0), Acc(1), R2)) == ArcKind.DOUBLE_LIMIT
    print("[PASS] arc_kind")


def test_case_6_invalid_arcs():
    with pytest.raises(ArcError):
        arc(R(0), R(1))
    with pytest.raises(ArcError):
        arc(R(2), R(2))
    with pytest.raises(ArcError):
        arc(R(0), Acc(1))
    with pytest.raises(ArgumentError):
        SurfaceSpec(0)
    print("[PASS] invalid arcs rejected")


def test_case_7_literals():
    assert parse_point("a0") == Acc(0)
    assert parse_point("p1:-5") == R(-5, 1)
    a = parse_arc(R1, "p0:0-a0")
    assert a == arc(R(0), Acc(0))
    assert str(a) == "a0-p0:0"
    assert parse_arc(R1, "p0:0-a0[1]") == arc(R(-1), Acc(0))
    assert parse_object(R1, "0") == []
    both = parse_object(R1, "p0:0-p0:5+p0:0-a0")
    assert len(both) == 2
    assert format_object(both) == "p0:0-p0:5+a0-p0:0"
    for bad in ("q0", "p0", "p0:x-a0", "a0-a0-a0"):
        with pytest.raises(ParseError):
            parse_arc(R1, bad)
    print("[PASS] literals")


@settings(max_examples=200, deadline=None)
@given(arcs(), st.integers(-6, 6))
def test_case_8_shift_round_trip(a, k):
    assert shift(shift(a, k), -k) == a


@settings(max_examples=200, deadline=None)
@given(arcs(), arcs(), st.integers(-4, 4))
def test_case_9_crosses_symmetric_and_shift_invariant(a, b, k):
    assert crosses(a, b) == crosses(b, a)
    assert not crosses(a, a)
    assert crosses(a, b) == crosses(shift(a, k), shift(b, k))


@settings(max_examples=200, deadline=None)
@given(points(2), points(2), points(2), st.integers(-4, 4))
def test_case_10_cyclic_between_shift_invariant(a, b, c, k):
    if len({a, b, c}) < 3:
        return
    assert cyclic_between(a, b, c) == cyclic_between(sigma(a, k), sigma(b, k), sigma(c, k))
    # exactly one of the two orientations holds
    assert cyclic_between(a, b, c) != cyclic_between(c, b, a)


if __name__ == "__main__":
    print("\n[TEST] Surface model\n")
    print("=" * 60)
    test_case_1_cyclic_between()
    test_case_2_sigma()
    test_case_3_crosses()
    test_case_4_shift()
    test_case_5_arc_kind()
    test_case_6_invalid_arcs()
    test_case_7_literals()
    test_case_8_shift_round_trip()
    test_case_9_crosses_symmetric_and_shift_invariant()
    test_case_10_cyclic_between_shift_invariant()
    print("=" * 60)
    print("\n[SUCCESS] All surface tests passed!\n")
