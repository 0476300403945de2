"""Characteristic classes: Chern data, power sums, Chern character, Todd
class and its square root, truncated series arithmetic, tangent classes.

Chern roots are never materialized.  Every root-symmetric expression is
evaluated through the Newton power sums of the total Chern class, and the
universal coefficient series (for the Todd class, logarithms, exponentials)
are computed at runtime by exact rational series arithmetic rather than
transcribed from tables.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidInputError, SingularSeriesError
from .ring import Cycle, Variety

# ---------------------------------------------------------------------------
# univariate truncated series over Q (coefficient lists, a[k] is the x^k term)
# ---------------------------------------------------------------------------


def _series_mul(a: list[Fraction], b: list[Fraction], order: int) -> list[Fraction]:
    out = [Fraction(0)] * (order + 1)
    for i, ai in enumerate(a[: order + 1]):
        if ai == 0:
            continue
        for j, bj in enumerate(b[: order + 1 - i]):
            out[i + j] += ai * bj
    return out


def _series_inv(a: list[Fraction], order: int) -> list[Fraction]:
    if a[0] == 0:
        raise SingularSeriesError("cannot invert a series with zero constant term")
    out = [Fraction(0)] * (order + 1)
    out[0] = 1 / a[0]
    for k in range(1, order + 1):
        s = Fraction(0)
        for i in range(1, k + 1):
            if i < len(a):
                s += a[i] * out[k - i]
        out[k] = -s / a[0]
    return out


def _series_log1p(u: list[Fraction], order: int) -> list[Fraction]:
    # log(1 + u) for u with zero constant term
    out = [Fraction(0)] * (order + 1)
    power = [Fraction(0)] * (order + 1)
    power[0] = Fraction(1)
    for m in range(1, order + 1):
        power = _series_mul(power, u, order)
        sign = Fraction(1 if m % 2 == 1 else -1, m)
        for k in range(order + 1):
            out[k] += sign * power[k]
    return out


@functools.cache
def todd_series_coefficients(order: int) -> tuple[Fraction, ...]:
    """Coefficients of log(x / (1 - e^{-x})) up to x^order, exact.

    Applying this series to the power sums of the Chern roots and
    exponentiating gives the Todd class; computing it here keeps printed
    tables out of the source and makes them test vectors instead.
    """
    if order < 0:
        raise InvalidInputError("series order must be nonnegative")
    # (1 - e^{-x}) / x  =  sum_j (-1)^j x^j / (j+1)!
    s = [Fraction(0)] * (order + 1)
    fact = 1
    for j in range(order + 1):
        fact *= j + 1
        s[j] = Fraction((-1) ** j, fact)
    t = _series_inv(s, order)  # x / (1 - e^{-x})
    u = list(t)
    u[0] = Fraction(0)
    return tuple(_series_log1p(u, order))


# ---------------------------------------------------------------------------
# series arithmetic in the intersection ring
# ---------------------------------------------------------------------------


def exp_nilpotent(u: Cycle) -> Cycle:
    """exp of a cycle with vanishing constant term (a finite sum here, since
    positive-codimension classes are nilpotent)."""
    if u.coefficient((0,) * u.variety.num_factors) != 0:
        raise InvalidInputError("exp requires a cycle with zero constant term")
    acc = Cycle.one(u.variety)
    term = Cycle.one(u.variety)
    for m in range(1, u.variety.dim + 1):
        term = (term * u).scale(Fraction(1, m))
        if term.is_zero:
            break
        acc = acc + term
    return acc


def log_unit(c: Cycle) -> Cycle:
    """log of a cycle with constant term exactly 1."""
    if c.coefficient((0,) * c.variety.num_factors) != 1:
        raise InvalidInputError("log requires a cycle with constant term 1")
    u = c - Cycle.one(c.variety)
    acc = Cycle.zero(c.variety)
    power = Cycle.one(c.variety)
    for m in range(1, c.variety.dim + 1):
        power = power * u
        if power.is_zero:
            break
        acc = acc + power.scale(Fraction((-1) ** (m + 1), m))
    return acc


def series_inverse(u: Cycle) -> Cycle:
    """The unique cycle v with u * v = 1, for u with nonzero constant term,
    computed by the truncated geometric series."""
    c0 = u.coefficient((0,) * u.variety.num_factors)
    if c0 == 0:
        raise SingularSeriesError("cycle has zero constant term, no inverse exists")
    w = u.scale(1 / c0) - Cycle.one(u.variety)
    acc = Cycle.one(u.variety)
    power = Cycle.one(u.variety)
    for _ in range(u.variety.dim):
        power = power * (-w)
        if power.is_zero:
            break
        acc = acc + power
    return acc.scale(1 / c0)


# ---------------------------------------------------------------------------
# bundle classes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BundleClass:
    """Rank plus total Chern class: the seed for every characteristic class.

    The constant term of `total_chern` must be 1.  For an honest bundle
    (nonnegative rank), components above the rank are rejected; a negative
    rank marks a virtual class, where only the dimension of the variety
    truncates the data.
    """

    variety: Variety
    rank: int
    total_chern: Cycle

    def __post_init__(self) -> None:
        if self.total_chern.variety != self.variety:
            raise InvalidInputError("total Chern class lives on the wrong variety")
        if self.total_chern.graded_component(0) != Cycle.one(self.variety):
            raise InvalidInputError("component 0 of a total Chern class must be 1")
        if self.rank >= 0:
            bad = [k for k in self.total_chern.codimensions() if k > self.rank]
            if bad:
                raise InvalidInputError(
                    f"rank-{self.rank} class has Chern components in codimension {bad}"
                )

    def chern(self, i: int) -> Cycle:
        return self.total_chern.graded_component(i)

    def direct_sum(self, other: "BundleClass") -> "BundleClass":
        """Whitney sum: ranks add and total Chern classes multiply."""
        if other.variety != self.variety:
            raise InvalidInputError("summands live on different varieties")
        return BundleClass(
            self.variety, self.rank + other.rank, self.total_chern * other.total_chern
        )

    def to_json(self) -> dict:
        return {
            "variety": self.variety.to_json(),
            "rank": self.rank,
            "total_chern": self.total_chern.to_json(),
        }

    @classmethod
    def from_json(cls, data: object) -> "BundleClass":
        if not isinstance(data, dict) or not {"variety", "rank", "total_chern"} <= set(data):
            raise InvalidInputError(
                f"bundle class must be an object with 'variety', 'rank', 'total_chern', got {data!r}"
            )
        rank = data["rank"]
        if not isinstance(rank, int) or isinstance(rank, bool):
            raise InvalidInputError(f"rank must be an integer, got {rank!r}")
        return cls(Variety.from_json(data["variety"]), rank, Cycle.from_json(data["total_chern"]))


@dataclass(frozen=True)
class PowerSumVector:
    """Newton power sums p_1 .. p_dim of the Chern roots of a bundle class;
    p_k is homogeneous of codimension k (or zero)."""

    variety: Variety
    sums: tuple[Cycle, ...]

    def p(self, k: int) -> Cycle:
        if not 1 <= k <= len(self.sums):
            raise InvalidInputError(f"power sum index {k} out of range")
        return self.sums[k - 1]


def power_sums(bundle: BundleClass) -> PowerSumVector:
    """Power sums of the Chern roots via Newton's identities, with the
    elementary symmetric functions read off the total Chern class:

        p_k = e_1 p_{k-1} - e_2 p_{k-2} + ... + (-1)^k e_{k-1} p_1
              + (-1)^{k-1} k e_k
    """
    x = bundle.variety
    d = x.dim
    e = [bundle.chern(i) for i in range(d + 1)]
    p: list[Cycle] = []
    for k in range(1, d + 1):
        acc = e[k].scale(Fraction((-1) ** (k - 1) * k))
        for i in range(1, k):
            acc = acc + (e[i] * p[k - i - 1]).scale(Fraction((-1) ** (i - 1)))
        p.append(acc)
    return PowerSumVector(x, tuple(p))


def chern_character(bundle: BundleClass) -> Cycle:
    """rank + sum_k p_k / k!, exact."""
    x = bundle.variety
    acc = Cycle.one(x).scale(Fraction(bundle.rank))
    fact = 1
    for k, pk in enumerate(power_sums(bundle).sums, start=1):
        fact *= k
        acc = acc + pk.scale(Fraction(1, fact))
    return acc


def todd_class(bundle: BundleClass) -> Cycle:
    """Todd class, evaluated as exp of the universal log-Todd series applied
    to the power sums of the Chern roots."""
    x = bundle.variety
    lam = todd_series_coefficients(x.dim)
    arg = Cycle.zero(x)
    for k, pk in enumerate(power_sums(bundle).sums, start=1):
        arg = arg + pk.scale(lam[k])
    return exp_nilpotent(arg)


def tangent_class(variety: Variety) -> BundleClass:
    """Tangent bundle class of a product of projective spaces: rank dim X and
    total Chern class prod_i (1 + h_i)^{n_i + 1} (Euler sequence, factorwise)."""
    total = Cycle.one(variety)
    for i, n in enumerate(variety.factors):
        linear = Cycle.one(variety) + Cycle.hyperplane(variety, i)
        for _ in range(n + 1):
            total = total * linear
    return BundleClass(variety, variety.dim, total)


def variety_todd(variety: Variety) -> Cycle:
    """Todd class of the tangent bundle of the variety."""
    return todd_class(tangent_class(variety))


def sqrt_todd(variety: Variety) -> Cycle:
    """exp(1/2 log td); its square is the Todd class of the variety exactly."""
    return exp_nilpotent(log_unit(variety_todd(variety)).scale(Fraction(1, 2)))


def line_bundle(variety: Variety, degrees: list[int] | tuple[int, ...]) -> BundleClass:
    """Rank-one class with first Chern class sum_i d_i h_i (one degree per
    factor)."""
    degrees = tuple(degrees)
    if len(degrees) != variety.num_factors:
        raise InvalidInputError(
            f"{variety} has {variety.num_factors} factors but {len(degrees)} degrees were given"
        )
    c1 = Cycle.zero(variety)
    for i, d in enumerate(degrees):
        if not isinstance(d, int) or isinstance(d, bool):
            raise InvalidInputError(f"degrees must be integers, got {d!r}")
        c1 = c1 + Cycle.hyperplane(variety, i).scale(d)
    return BundleClass(variety, 1, Cycle.one(variety) + c1)
