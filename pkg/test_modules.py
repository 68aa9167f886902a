"""
测试 thin module、有限表示子模枚举、投射表示与 index / coindex
"""
import pytest

from src.errors import DomainError
from src.formats.library import example1, example3, named_arc
from src.modules.presentation import (
    approximation_triangle,
    coindex,
    index,
    min_projective_presentation,
)
from src.modules.realize import coind_minus_ind, module_to_arcs
from src.modules.submodules import FAR, HEAD, enumerate_fp_submodules
from src.modules.thin import ThinModule, ThinPiece, module_of, phi_support
from src.modules.vectors import K0PrimeElement, UniformVector
from src.surface.model import shift
from src.tilting.spec import LEFT, RIGHT, limit_vertex, tail_vertex

T1 = example1()
T3 = example3()
Z = limit_vertex(0)


def L(n):
    return tail_vertex(0, LEFT, n)


def Rt(n):
    return tail_vertex(0, RIGHT, n)


def name(text, t=T1):
    return named_arc(t, text)


def k0(mapping):
    return K0PrimeElement.of(mapping)


def prefix_piece(i):
    """Submodule of Hom(-, gamma) supported on the first i left-tail vertices."""
    return ThinPiece(name("gamma"), UniformVector.build({L(n): 1 for n in range(1, i + 1)}))


def test_case_1_module_of_limit_arc():
    dims = module_of(T1, [name("gamma")]).dims
    assert dims(Z) == 1
    assert [dims(L(n)) for n in range(1, 10)] == [1] * 9
    assert [dims(Rt(n)) for n in range(1, 10)] == [0] * 9
    assert dims.default((0, LEFT)) == 1
    assert dims.default((0, RIGHT)) == 0
    assert dims.format(T1) == "{z:1 | tails: L=1, R=0}"
    print("[PASS] module_of(gamma)")


def test_case_2_module_of_eta():
    dims = module_of(T1, [name("eta")]).dims
    assert [dims(L(n)) for n in range(1, 8)] == [0, 0, 0, 1, 1, 1, 1]
    assert [dims(Rt(n)) for n in range(1, 8)] == [1] * 7
    assert dims(Z) == 1
    print("[PASS] module_of(eta)")


def test_case_3_module_of_sums_and_zero():
    assert module_of(T1, []).is_zero()
    both = module_of(T1, [name("gamma"), name("alpha2")]).dims
    assert both(L(1)) == 2 and both(L(2)) == 2 and both(L(3)) == 1
    assert both(Z) == 1
    with pytest.raises(DomainError):
        module_of(T1, [shift(name("alpha1"), 1)])
    print("[PASS] sums, zero module and T[1] rejection")


def test_case_4_submodules_of_limit_arc():
    families = enumerate_fp_submodules(T1, module_of(T1, [name("gamma")]))
    assert len(families) == 3

    supports = set()
    for fam in families.families:
        for _, support in fam.members(4):
            supports.add(support)
    assert UniformVector() in supports
    assert phi_support(T1, name("gamma")) in supports
    for i in range(1, 5):
        assert prefix_piece(i).support in supports
    # the whole left tail without z is not finitely generated
    assert UniformVector.build({}, {(0, LEFT): 1}) not in supports

    prefix = [f for f in families.families if f.cuts]
    assert len(prefix) == 1
    assert prefix[0].cuts[0].kind == HEAD
    assert prefix[0].instantiate({(0, LEFT): 3}) == prefix_piece(3).support
    print("[PASS] submodules of Hom(-, gamma)")


def test_case_5_submodules_of_zero_module():
    families = enumerate_fp_submodules(T1, ThinModule(()))
    assert len(families) == 1
    assert families.families == ()
    print("[PASS] zero module has only the zero submodule")


def test_case_6_presentations():
    pres = min_projective_presentation(T1, module_of(T1, [name("gamma")]))
    assert pres.p0 == K0PrimeElement.basis(Z)
    assert not pres.p1
    for i in (1, 3, 5):
        pres = min_projective_presentation(T1, prefix_piece(i))
        assert pres.p0 == K0PrimeElement.basis(L(i))
        assert not pres.p1
    pres = min_projective_presentation(T3, module_of(T3, [name("gamma2", T3)]))
    assert pres.p0 == K0PrimeElement.basis(limit_vertex(1))
    assert pres.p1 == K0PrimeElement.basis(limit_vertex(0))
    print("[PASS] minimal projective presentations")


def test_case_7_not_finitely_generated():
    whole_tail = ThinPiece(name("gamma"), UniformVector.build({}, {(0, LEFT): 1}))
    with pytest.raises(DomainError):
        min_projective_presentation(T1, whole_tail)
    print("[PASS] infinitely generated support rejected")


def test_case_8_index_coindex_table():
    for i in range(1, 7):
        alpha = name(f"alpha{i}")
        assert index(T1, [alpha]) == K0PrimeElement.basis(L(i))
        assert coindex(T1, [alpha]) == k0({L(1): 1, L(i + 1): -1})
    gamma = name("gamma")
    assert index(T1, [gamma]) == K0PrimeElement.basis(Z)
    assert coindex(T1, [gamma]) == k0({L(1): 1, Z: -1})
    assert coindex(T1, [name("alpha1")]).format(T1) == "[P_1] - [P_2]"

    gamma2 = name("gamma2", T3)
    a, b = limit_vertex(0), limit_vertex(1)
    assert index(T3, [gamma2]) == k0({b: 1, a: -1})
    assert coindex(T3, [gamma2]) == k0({a: 1, b: -1})
    print("[PASS] index / coindex table")


def test_case_9_index_of_shifted_and_sums():
    assert index(T1, [shift(name("gamma"), 1)]) == -K0PrimeElement.basis(Z)
    assert index(T1, []) == K0PrimeElement()
    total = index(T1, [name("alpha2"), name("gamma")])
    assert total == k0({L(2): 1, Z: 1})
    print("[PASS] index of T[1] summands and of sums")


def test_case_10_coind_minus_ind():
    P = K0PrimeElement.basis
    for i in range(1, 6):
        assert coind_minus_ind(T1, prefix_piece(i)) == P(L(1)) - P(L(i + 1)) - P(L(i))
    assert coind_minus_ind(T1, prefix_piece(1)) == -P(L(2))
    full = module_of(T1, [name("gamma")]).pieces[0]
    assert coind_minus_ind(T1, full) == k0({L(1): 1, Z: -2})
    assert coind_minus_ind(T1, ThinPiece(name("gamma"), UniformVector())) == K0PrimeElement()
    print("[PASS] coind - ind of submodules")


def test_case_11_module_to_arcs():
    gamma = name("gamma")
    assert module_to_arcs(T1, module_of(T1, [gamma])) == [gamma]
    assert module_to_arcs(T1, prefix_piece(3)) == [name("alpha3")]
    alpha2 = name("alpha2")
    assert module_to_arcs(T1, module_of(T1, [alpha2])) == [alpha2]
    print("[PASS] module_to_arcs round trip")


def test_case_12_approximation_triangles():
    gamma = name("gamma")
    tri = approximation_triangle(T1, gamma)
    assert tri.t0 == (gamma,) and tri.t1 == ()

    shifted = shift(gamma, 1)
    tri = approximation_triangle(T1, shifted)
    assert tri.t1 == (gamma,) and tri.t0 == () and tri.target == shifted

    eta = name("eta")
    tri = approximation_triangle(T1, eta)
    for a in tri.t0 + tri.t1:
        assert T1.vertex_of(a) is not None
    got = K0PrimeElement()
    for a in tri.t0:
        got = got + K0PrimeElement.basis(T1.vertex_of(a))
    for a in tri.t1:
        got = got - K0PrimeElement.basis(T1.vertex_of(a))
    assert got == index(T1, [eta])
    print("[PASS] approximation triangles")


def test_case_13_submodules_of_eta():
    eta = name("eta")
    families = enumerate_fp_submodules(T1, module_of(T1, [eta]))
    assert len(families) == 3
    by_kind = {f.cuts[0].kind if f.cuts else None: f for f in families.families}
    assert set(by_kind) == {None, HEAD, FAR}

    # right tail cut: positions >= n stay, n = 1 is the whole module
    far = by_kind[FAR]
    assert far.cuts[0].tail == (0, RIGHT) and far.cuts[0].lo == 1
    assert far.instantiate({(0, RIGHT): 1}) == phi_support(T1, eta)
    cut6 = far.instantiate({(0, RIGHT): 6})
    assert [cut6(Rt(n)) for n in range(1, 9)] == [0] * 5 + [1] * 3
    assert [cut6(L(n)) for n in range(1, 7)] == [0, 0, 0, 1, 1, 1]
    assert cut6(Z) == 1

    # z with the left tail, nothing on the right
    single = by_kind[None].instantiate()
    assert single == UniformVector.build({L(1): 0, L(2): 0, L(3): 0, Z: 1}, {(0, LEFT): 1})

    # left prefixes 4..n, n = 3 is the zero submodule
    head = by_kind[HEAD]
    assert head.cuts[0].tail == (0, LEFT) and head.cuts[0].lo == 3
    assert head.instantiate({(0, LEFT): 3}) == UniformVector()
    assert head.instantiate({(0, LEFT): 5}) == UniformVector.build({L(4): 1, L(5): 1})

    listed = [s for fam in families.families for _, s in fam.members(10)]
    assert len(listed) == len(set(listed))
    print("[PASS] submodules of Hom(-, eta)")


if __name__ == "__main__":
    print("\n[TEST] Thin modules\n")
    print("=" * 60)
    test_case_1_module_of_limit_arc()
    test_case_2_module_of_eta()
    test_case_3_module_of_sums_and_zero()
    test_case_4_submodules_of_limit_arc()
    test_case_5_submodules_of_zero_module()
    test_case_6_presentations()
    test_case_7_not_finitely_generated()
    test_case_8_index_coindex_table()
    test_case_9_index_of_shifted_and_sums()
    test_case_10_coind_minus_ind()
    test_case_11_module_to_arcs()
    test_case_12_approximation_triangles()
    test_case_13_submodules_of_eta()
    print("=" * 60)
    print("\n[SUCCESS] All module tests passed!\n")
