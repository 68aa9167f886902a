"""
测试 Hom / Ext 规则、复合非零判定与交换三角
"""
import pytest
from hypothesis import given, settings, strategies as st

from src.errors import DomainError
from src.formats.library import example1, named_arc
from src.surface.hom import (
    CASE_CROSSING,
    CASE_DOUBLE_LIMIT,
    CASE_ROTATION,
    Triangle,
    check_local_cy,
    composite_nonzero,
    exchange_triangles,
    ext1_case,
    ext1_dim,
    hom_dim,
    is_rigid,
    orientation_self_test,
)
from src.surface.model import Acc, Arc, ArcKind, Regular, SurfaceSpec, arc_kind, crosses, shift
from test_surface import arcs

R1 = SurfaceSpec(1)
R2 = SurfaceSpec(2)
T1 = example1()


def R(j, i=0):
    return Regular(i, j)


def arc(p, q, surface=R1):
    return Arc(p, q, surface)


def name(text):
    return named_arc(T1, text)


def test_case_1_ext_rules():
    assert ext1_case(arc(R(0), R(2)), arc(R(1), R(3))) == (1, CASE_CROSSING)
    assert ext1_dim(arc(R(1), R(3)), arc(R(0), R(2))) == 1
    double = arc(Acc(0), Acc(1), R2)
    assert ext1_case(double, double) == (1, CASE_DOUBLE_LIMIT)
    x, y = arc(R(0), Acc(0)), arc(R(1), Acc(0))
    assert ext1_case(x, y) == (1, CASE_ROTATION)
    assert ext1_dim(y, x) == 0
    assert ext1_dim(arc(R(0), R(5)), arc(R(10), R(20))) == 0
    print("[PASS] ext1 rules")


def test_case_2_hom_examples():
    a = arc(R(0), R(5))
    assert hom_dim(a, a) == 1
    assert hom_dim(a, arc(R(10), R(20))) == 0
    assert hom_dim(name("alpha4"), name("eta")) == 1
    assert hom_dim(name("alpha3"), name("eta")) == 0
    print("[PASS] hom examples")


def test_case_3_composites():
    gamma = name("gamma")
    assert composite_nonzero(name("alpha4"), name("alpha5"), gamma)
    assert hom_dim(name("alpha5"), name("alpha4")) == 0
    assert not composite_nonzero(name("alpha5"), name("alpha4"), gamma)
    assert not composite_nonzero(name("alpha4"), name("beta1"), gamma)
    # along the left tail every composite into the limit arc survives
    for i in range(1, 5):
        assert composite_nonzero(name(f"alpha{i}"), name(f"alpha{i + 2}"), gamma)
    print("[PASS] composite_nonzero")


def test_case_4_exchange_triangles_example():
    eta, alpha3 = name("eta"), name("alpha3")
    triangles = exchange_triangles(eta, alpha3)
    got = {(tri.left, frozenset(tri.middle), tri.right) for tri in triangles}
    assert got == {
        (eta, frozenset({name("alpha2"), name("zeta")}), alpha3),
        (alpha3, frozenset({name("beta1")}), eta),
    }
    print("[PASS] exchange triangles of eta and alpha3")


def test_case_5_degenerate_triangles():
    double = arc(Acc(0), Acc(1), R2)
    assert exchange_triangles(double, double) == [Triangle(double, (), double)]

    x, y = arc(R(0), Acc(0)), arc(R(1), Acc(0))
    # Hom(X, Y[1]) != 0 only: one triangle Y -> 0 -> X (R0-R1 is a boundary segment)
    assert exchange_triangles(x, y) == [Triangle(y, (), x)]

    with pytest.raises(DomainError):
        exchange_triangles(arc(R(0), R(5)), arc(R(10), R(20)))
    print("[PASS] degenerate triangles")


def test_case_6_rigidity_and_local_cy():
    tilting = [T1.arc_of(v) for v in T1.window(6)]
    assert is_rigid(tilting)
    assert not is_rigid([name("eta"), name("alpha3")])
    assert check_local_cy(name("eta"), name("alpha3"))
    # limit arcs sharing an accumulation point break the symmetry
    assert not check_local_cy(arc(R(0), Acc(0)), arc(R(1), Acc(0)))
    print("[PASS] rigidity and local 2-CY")


def test_case_7_orientation_self_test():
    orientation_self_test(R1)
    orientation_self_test(R2)
    print("[PASS] orientation self-test")


@settings(max_examples=1000, deadline=None)
@given(arcs())
def test_case_8_hom_identity(a):
    assert hom_dim(a, a) == 1


@settings(max_examples=1000, deadline=None)
@given(arcs(), arcs())
def test_case_9_ext_symmetric_on_ordinary_arcs(a, b):
    if arc_kind(a) != ArcKind.ORDINARY or arc_kind(b) != ArcKind.ORDINARY:
        return
    assert ext1_dim(a, b) == ext1_dim(b, a)


@settings(max_examples=300, deadline=None)
@given(arcs(), arcs(), st.integers(-5, 5))
def test_case_10_ext_shift_invariant(a, b, k):
    assert ext1_dim(a, b) == ext1_dim(shift(a, k), shift(b, k))


@settings(max_examples=300, deadline=None)
@given(st.integers(-6, 6), st.integers(-6, 6))
def test_case_11_limit_arc_asymmetry(i, j):
    if i == j:
        return
    x, y = arc(R(i), Acc(0)), arc(R(j), Acc(0))
    assert ext1_dim(x, y) + ext1_dim(y, x) == 1


@settings(max_examples=300, deadline=None)
@given(arcs(), arcs(), arcs())
def test_case_12_composite_implies_hom(x, y, z):
    if composite_nonzero(x, y, z):
        assert hom_dim(x, z) == 1


@settings(max_examples=200, deadline=None)
@given(arcs(), arcs())
def test_case_13_triangle_middles(x, y):
    if not crosses(x, y) or {arc_kind(x), arc_kind(y)} != {ArcKind.ORDINARY}:
        return
    for tri in exchange_triangles(x, y):
        for m in tri.middle:
            assert not crosses(m, x) and not crosses(m, y)
            assert set(m.ends) & set(x.ends) and set(m.ends) & set(y.ends)


if __name__ == "__main__":
    print("\n[TEST] Hom calculus\n")
    print("=" * 60)
    test_case_1_ext_rules()
    test_case_2_hom_examples()
    test_case_3_composites()
    test_case_4_exchange_triangles_example()
    test_case_5_degenerate_triangles()
    test_case_6_rigidity_and_local_cy()
    test_case_7_orientation_self_test()
    test_case_8_hom_identity()
    test_case_9_ext_symmetric_on_ordinary_arcs()
    test_case_10_ext_shift_invariant()
    test_case_11_limit_arc_asymmetry()
    test_case_12_composite_implies_hom()
    test_case_13_triangle_middles()
    print("=" * 60)
    print("\n[SUCCESS] All hom tests passed!\n")
