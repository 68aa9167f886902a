"""
测试 cluster character、级数文本格式、乘法公式与交换关系
"""
import pytest

from src.character.cluster import (
    arc_character,
    check_exchange,
    check_multiplication,
    check_shifted_characters,
    cluster_character,
)
from src.character.grammar import format_series, parse_series
from src.character.series import FormalSeries, LaurentPolynomial, Monomial, series_mul, window_expand
from src.errors import ArgumentError, ParseError
from src.formats.library import example1, example3, named_arc
from src.surface.model import shift
from src.tilting.spec import LEFT, limit_vertex, tail_vertex

T1 = example1()
T3 = example3()
Z = limit_vertex(0)

GAMMA_TEXT = "1*x(1)^-1*x(z) + 1*x(z)^-1 + 1*x(z)*sum{n in [1,inf)} x(f0L(n))^-1*x(f0L(n+1))^-1"


def L(n):
    return tail_vertex(0, LEFT, n)


def name(text, t=T1):
    return named_arc(t, text)


def mono(mapping):
    return Monomial.of(mapping)


def test_case_1_limit_arc_character():
    x = arc_character(T1, name("gamma"))
    assert format_series(T1, x) == GAMMA_TEXT
    print("[PASS] X(gamma) closed form")


def test_case_2_limit_arc_expansion():
    x = arc_character(T1, name("gamma"))
    window = [L(1), L(2), L(3), Z]
    got = window_expand(x, window)
    assert got == LaurentPolynomial.of({
        mono({L(1): -1, Z: 1}): 1,
        mono({Z: -1}): 1,
        mono({Z: 1, L(1): -1, L(2): -1}): 1,
        mono({Z: 1, L(2): -1, L(3): -1}): 1,
    })
    assert len(got) == 4
    print("[PASS] X(gamma) on a window")


def test_case_3_tail_arc_character():
    x = arc_character(T1, name("alpha2"))
    assert not x.has_slots
    assert window_expand(x, T1.window(5)) == LaurentPolynomial.of({
        mono({L(1): -1, L(3): 1}): 1,
        mono({L(1): -1, L(2): -1, L(3): 1}): 1,
        mono({L(2): -1}): 1,
    })
    print("[PASS] X(alpha2)")


def test_case_4_shifted_tilting_arcs():
    assert cluster_character(T1, [shift(name("gamma"), 1)]) == FormalSeries.monomial(Monomial.var(Z))
    assert check_shifted_characters(T1, T1.window(5)) == []
    assert check_shifted_characters(T3, T3.window(3)) == []
    print("[PASS] X(arc(v)[1]) = x_v")


def test_case_5_series_text_round_trip():
    x = arc_character(T1, name("gamma"))
    assert parse_series(T1, GAMMA_TEXT) == x
    assert parse_series(T1, "0") == FormalSeries.zero()
    assert format_series(T1, FormalSeries.one()) == "1*1"
    for bad in ("1*", "x(z)", "1*x(w)", "1*x(z)*sum{n in [3,1]} x(f0L(n))", "1*x(z)*sum{n in [1,inf)} x(f0L(m))"):
        with pytest.raises(ParseError):
            parse_series(T1, bad)
    print("[PASS] series text form")


def test_case_6_empty_sum_character():
    assert cluster_character(T1, []) == FormalSeries.one()
    print("[PASS] X(0) = 1")


def test_case_7_exchange_identity():
    for radius in (8, 16):
        report = check_exchange(T1, [name("eta")], [name("alpha3")], T1.window(radius))
        assert report.holds, report.first_difference
        assert not report.outside_hypotheses
        assert len(report.triangles) == 2
    print("[PASS] exchange identity for eta / alpha3")


def test_case_8_limit_arc_exchange_failure():
    gamma2 = name("gamma2", T3)
    x = arc_character(T3, gamma2)
    for radius in (2, 4, 6):
        window = T3.window(radius)
        square = window_expand(series_mul(x, x), window)
        assert square != LaurentPolynomial.constant(2)
        report = check_exchange(T3, [gamma2], [gamma2], window)
        assert not report.holds
        assert report.outside_hypotheses
        assert report.rhs == LaurentPolynomial.constant(2)
    print("[PASS] the double limit arc breaks the exchange formula")


def test_case_9_exchange_argument_checks():
    with pytest.raises(ArgumentError):
        check_exchange(T1, [name("eta"), name("zeta")], [name("alpha3")], T1.window(4))
    print("[PASS] exchange takes single arcs")


def test_case_10_multiplication():
    window = T1.window(6)
    assert check_multiplication(T1, [name("alpha2")], [name("gamma")], window)
    assert check_multiplication(T1, [name("eta")], [name("beta1")], window)
    assert check_multiplication(T1, [name("alpha3")], [shift(name("alpha1"), 1)], window)
    print("[PASS] X(M + N) = X(M) X(N)")


if __name__ == "__main__":
    print("\n[TEST] Cluster characters\n")
    print("=" * 60)
    test_case_1_limit_arc_character()
    test_case_2_limit_arc_expansion()
    test_case_3_tail_arc_character()
    test_case_4_shifted_tilting_arcs()
    test_case_5_series_text_round_trip()
    test_case_6_empty_sum_character()
    test_case_7_exchange_identity()
    test_case_8_limit_arc_exchange_failure()
    test_case_9_exchange_argument_checks()
    test_case_10_multiplication()
    print("=" * 60)
    print("\n[SUCCESS] All character tests passed!\n")
