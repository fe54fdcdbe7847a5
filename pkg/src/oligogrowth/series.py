"""Exact integer orbit series and the operations that combine them."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (AllZeroTail, EmptyCoefficients, KindMismatch, NegativeCoefficient,
                     NonIntegerAverage, UnsupportedConversion)
from .permgrp import stirling2

DEFAULT_ORDER = 64
KINDS = ("u", "l", "o")


@dataclass(frozen=True)
class OrbitSeries:
    """Coefficients c_0..c_N of u_n, l_n or o_n."""

    coefficients: tuple[int, ...]
    kind: str = "u"

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coefficients)
        if not coeffs:
            raise EmptyCoefficients("series needs at least c_0")
        if self.kind not in KINDS:
            raise ValueError(f"unknown series kind {self.kind!r}")
        if any(c < 0 for c in coeffs):
            raise NegativeCoefficient(f"negative coefficient in {coeffs}")
        if self.kind == "u" and coeffs[0] != 1:
            raise ValueError("u-series must start with 1")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def N(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, n):
        return self.coefficients[n]

    def __len__(self) -> int:
        return len(self.coefficients)

    def __iter__(self):
        return iter(self.coefficients)

    def truncate(self, N: int) -> OrbitSeries:
        if N > self.N:
            raise ValueError(f"cannot extend a series of order {self.N} to {N}")
        return OrbitSeries(self.coefficients[:N + 1], self.kind)

    def to_json(self) -> dict:
        return {"kind": self.kind, "coefficients": [str(c) for c in self.coefficients]}

    @classmethod
    def from_json(cls, data: dict | str) -> OrbitSeries:
        if isinstance(data, str):
            data = json.loads(data)
        return cls(tuple(int(c) for c in data["coefficients"]), data.get("kind", "u"))

    def to_csv(self, name: str | None = None) -> str:
        name = name or self.kind
        lines = [f"n,{name}"] + [f"{i},{c}" for i, c in enumerate(self.coefficients)]
        return "\n".join(lines) + "\n"


def ones(N: int) -> OrbitSeries:
    return OrbitSeries((1,) * (N + 1))


def delta(N: int) -> OrbitSeries:
    """The convolution identity (1, 0, 0, ...)."""
    return OrbitSeries((1,) + (0,) * N)


def pad(coeffs: Sequence[int], N: int, kind: str = "u") -> OrbitSeries:
    c = list(coeffs[:N + 1]) + [0] * max(0, N + 1 - len(coeffs))
    return OrbitSeries(tuple(c), kind)


def _require_u(*series: OrbitSeries) -> None:
    for s in series:
        if s.kind != "u":
            raise KindMismatch(f"expected a u-series, got kind {s.kind!r}")


def convolve(a: OrbitSeries, b: OrbitSeries) -> OrbitSeries:
    """u-series of a direct product from those of its factors."""
    _require_u(a, b)
    if a.N != b.N:
        raise KindMismatch(f"truncation orders differ: {a.N} vs {b.N}")
    N = a.N
    out = [sum(a[k] * b[n - k] for k in range(n + 1)) for n in range(N + 1)]
    return OrbitSeries(tuple(out))


def euler_transform(a: OrbitSeries) -> OrbitSeries:
    """Coefficients of prod_k (1 - x^k)^(-a_k), i.e. multisets of labelled parts.

    Uses the standard identity n*b_n = sum_k c_k b_(n-k) with c_k = sum_{d|k} d*a_d.
    """
    _require_u(a)
    N = a.N
    c = [0] * (N + 1)
    for d in range(1, N + 1):
        if a[d]:
            for k in range(d, N + 1, d):
                c[k] += d * a[d]
    b = [1] + [0] * N
    for n in range(1, N + 1):
        total = sum(c[k] * b[n - k] for k in range(1, n + 1))
        b[n], rem = divmod(total, n)
        assert rem == 0
    return OrbitSeries(tuple(b))


def partition_product_bound(a: OrbitSeries) -> OrbitSeries:
    """Sum over partitions of n of the product of a over the parts.

    Equals prod_k 1/(1 - a_k x^k). It dominates the Euler transform termwise and
    overcounts once two distinct orbits share a size.
    """
    _require_u(a)
    N = a.N
    b = [1] + [0] * N
    for k in range(1, N + 1):
        if a[k]:
            for n in range(k, N + 1):
                b[n] += a[k] * b[n - k]
    return OrbitSeries(tuple(b))


def linear_recurrence(weights: Sequence[int], N: int) -> list[int]:
    """Expansion of 1/(1 - sum_i weights[i-1] x^i) to order N."""
    out = [1] + [0] * N
    for n in range(1, N + 1):
        out[n] = sum(w * out[n - i] for i, w in enumerate(weights, start=1) if i <= n)
    return out


def cover_recursion(h_counts: Sequence[int], N: int = DEFAULT_ORDER) -> OrbitSeries:
    """u-series of an order-based cover atom from the u_i of its fiber group."""
    if not h_counts:
        raise EmptyCoefficients("h_counts must be nonempty")
    if any(c < 0 for c in h_counts):
        raise NegativeCoefficient("h_counts must be nonnegative")
    return OrbitSeries(tuple(linear_recurrence(h_counts, N)))


def burnside_sequences(class_tables: Sequence[Sequence[int]], quotient_order: int,
                       N: int = DEFAULT_ORDER) -> OrbitSeries:
    """Average of fixed-sequence counts over the elements of L/H.

    ``class_tables[j][k-1]`` is the number of H-classes of k-subsets of the fiber
    fixed by the j-th element of L/H.
    """
    if quotient_order < 1:
        raise ValueError("quotient_order must be positive")
    if len(class_tables) != quotient_order:
        raise NonIntegerAverage(
            f"{len(class_tables)} class tables for a quotient of order {quotient_order}")
    totals = [0] * (N + 1)
    for table in class_tables:
        for n, v in enumerate(linear_recurrence(list(table), N)):
            totals[n] += v
    out = []
    for n, t in enumerate(totals):
        q, r = divmod(t, quotient_order)
        if r:
            raise NonIntegerAverage(f"sum {t} at n={n} is not divisible by {quotient_order}")
        out.append(q)
    return OrbitSeries(tuple(out))


def stirling_convert(series: OrbitSeries, target: str) -> OrbitSeries:
    """Convert between injective-tuple counts l and all-tuple counts o."""
    if series.kind == target:
        return series
    c = series.coefficients
    N = series.N
    if series.kind == "l" and target == "o":
        out = [1] + [sum(stirling2(n, k) * c[k] for k in range(1, n + 1)) for n in range(1, N + 1)]
        return OrbitSeries(tuple(out), "o")
    if series.kind == "o" and target == "l":
        ell = [1] + [0] * N
        for n in range(1, N + 1):
            rest = c[n] - sum(stirling2(n, k) * ell[k] for k in range(1, n))
            if rest < 0:
                raise UnsupportedConversion(f"o-series has no nonnegative l preimage at n={n}")
            ell[n] = rest
        return OrbitSeries(tuple(ell), "l")
    raise UnsupportedConversion(f"cannot convert kind {series.kind!r} to {target!r}")


def bound_violations(u: OrbitSeries, ell: OrbitSeries) -> list[int]:
    """Indices n where u_n <= l_n <= n! u_n fails."""
    if u.kind != "u" or ell.kind != "l":
        raise KindMismatch("expected a u-series and an l-series")
    N = min(u.N, ell.N)
    return [n for n in range(N + 1) if not (u[n] <= ell[n] <= math.factorial(n) * u[n])]


@dataclass(frozen=True)
class GrowthEstimate:
    ratio_tail: tuple[Fraction, ...]
    root_tail: tuple[float, ...]
    start: int

    def ratio_at(self, n: int) -> Fraction:
        """u_n / u_(n-1)."""
        return self.ratio_tail[n - self.start - 1]


def growth_estimate(series: OrbitSeries) -> GrowthEstimate:
    """Successive ratios u_(n+1)/u_n and roots u_n^(1/n) from the first nonzero index on."""
    c = series.coefficients
    start = next((i for i in range(len(c)) if c[i] > 0 and all(x > 0 for x in c[i:])), None)
    if start is None or c[-1] == 0:
        raise AllZeroTail("series has no positive tail")
    ratios = tuple(Fraction(c[n + 1], c[n]) for n in range(start, len(c) - 1))
    roots = tuple(math.exp(math.log(c[n]) / n) for n in range(max(start, 1), len(c)))
    return GrowthEstimate(ratios, roots, start)


def ratio(series: OrbitSeries, n: int) -> float:
    """Floating u_n / u_(n-1)."""
    return series[n] / series[n - 1]
