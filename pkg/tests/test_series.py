import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracle as o
from oligogrowth.errors import (AllZeroTail, EmptyCoefficients, KindMismatch, NegativeCoefficient,
                                NonIntegerAverage, UnsupportedConversion)
from oligogrowth.series import (OrbitSeries, burnside_sequences, convolve, cover_recursion, delta,
                                euler_transform, growth_estimate, ones, pad,
                                partition_product_bound, stirling_convert)

N = 8
coeffs = st.lists(st.integers(0, 4), min_size=N, max_size=N)


def useries(tail):
    return OrbitSeries((1,) + tuple(tail))


def test_validation():
    with pytest.raises(EmptyCoefficients):
        OrbitSeries(())
    with pytest.raises(NegativeCoefficient):
        OrbitSeries((1, -1))
    with pytest.raises(ValueError):
        OrbitSeries((2, 1))
    with pytest.raises(KindMismatch):
        convolve(ones(3), ones(4))
    with pytest.raises(KindMismatch):
        euler_transform(OrbitSeries((1, 1), "l"))


def test_euler_of_ones_gives_partitions():
    assert list(euler_transform(ones(9))) == o.partitions(9)


def test_json_csv_round_trip():
    s = OrbitSeries((1, 2, 10**30))
    assert OrbitSeries.from_json(s.to_json()) == s
    assert s.to_csv().splitlines()[-1] == f"2,{10**30}"


def test_recursion_and_burnside():
    assert list(cover_recursion([1, 1], 6)) == [1, 1, 2, 3, 5, 8, 13]
    with pytest.raises(EmptyCoefficients):
        cover_recursion([], 3)
    with pytest.raises(NonIntegerAverage):
        burnside_sequences([[1, 1]], 2, 4)
    # identity and the swap on a 2-point fiber with trivial H
    assert list(burnside_sequences([[2, 1], [0, 1]], 2, 2)) == [1, 1, 3]


def test_stirling_conversion():
    ell = OrbitSeries((1, 1, 1, 1, 1), "l")
    assert list(stirling_convert(ell, "o")) == [o.bell(n) for n in range(5)]
    assert stirling_convert(stirling_convert(ell, "o"), "l") == ell
    with pytest.raises(UnsupportedConversion):
        stirling_convert(OrbitSeries((1, 1, 0), "o"), "l")


def test_growth_estimate():
    with pytest.raises(AllZeroTail):
        growth_estimate(OrbitSeries((1, 0, 0)))
    g = growth_estimate(cover_recursion([1, 1], 10))
    assert g.ratio_at(10) == pytest.approx(89 / 55)


@given(coeffs, coeffs, coeffs)
def test_convolution_laws(a, b, c):
    A, B, C = useries(a), useries(b), useries(c)
    assert convolve(A, B) == convolve(B, A)
    assert convolve(convolve(A, B), C) == convolve(A, convolve(B, C))
    assert convolve(A, delta(N)) == A


@given(coeffs)
def test_euler_matches_multiset_enumeration(a):
    A = useries(a)
    E = euler_transform(A)
    for n in range(6):
        assert E[n] == o.multiset_count(list(A), n)
    assert all(x <= y for x, y in zip(E, partition_product_bound(A)))


@given(st.lists(st.integers(0, 3), min_size=1, max_size=4))
def test_recursion_resubstitution(h):
    u = cover_recursion(h, N)
    for n in range(1, N + 1):
        assert u[n] == sum(h[i - 1] * u[n - i] for i in range(1, min(n, len(h)) + 1))


@given(st.lists(st.integers(0, 5), min_size=N, max_size=N))
def test_stirling_round_trip(tail):
    ell = OrbitSeries((1,) + tuple(tail), "l")
    assert stirling_convert(stirling_convert(ell, "o"), "l") == ell
