"""Exact removal counts and fragility values for complete, CEB and GB graphs.

Everything here is integer or :class:`fractions.Fraction` arithmetic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Union

FAMILIES = ("complete", "ceb", "gb")

DeltaLike = Union[Fraction, int, float, str]


def as_fraction(value: DeltaLike) -> Fraction:
    """Convert to an exact rational; floats go through their shortest repr."""
    if isinstance(value, Rational):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    return Fraction(str(value).strip())


def complete_edges(n: int) -> int:
    return n * (n - 1) // 2


def ceb_edges(n: int) -> int:
    """Edge count of CEB_n; zero for n in {0, 1}."""
    return (n // 2) * ((n + 1) // 2)


def gb_edges(n: int) -> int:
    h = n // 2
    return h * (h - 1) + n


def _check_family_n(family: str, n: int) -> None:
    if family not in FAMILIES:
        raise ValueError(f"unknown closed-form family {family!r}")
    if n < 2:
        raise ValueError(f"closed forms need n >= 2, got {n}")
    if family == "gb" and (n % 2 or n < 4):
        raise ValueError(f"GB graphs need even n >= 4, got {n}")


def edge_count(family: str, n: int) -> int:
    _check_family_n(family, n)
    return {"complete": complete_edges, "ceb": ceb_edges, "gb": gb_edges}[family](n)


@dataclass(frozen=True)
class FragilityQuery:
    """A target component fraction resolved against a node count."""

    delta: Fraction
    c: int
    b: int
    n: int

    @classmethod
    def resolve(cls, n: int, delta: DeltaLike) -> "FragilityQuery":
        d = as_fraction(delta)
        if not 0 < d <= 1:
            raise ValueError(f"delta must lie in (0, 1], got {d}")
        c = math.floor(d * n)
        if c < 1:
            raise ValueError(f"delta={d} gives c = floor(delta*n) = {c} < 1 for n={n}")
        if c >= n:
            raise ValueError(f"delta={d} gives c = {c} >= n = {n}; nothing to remove")
        return cls(Fraction(c, n), c, n % c, n)


def _check_c(n: int, c: int) -> None:
    if not 1 <= c < n:
        raise ValueError(f"need 1 <= c < n, got n={n}, c={c}")


def r_star_complete(n: int, c: int) -> int:
    """Minimum removals leaving no component larger than ``c`` in K_n."""
    _check_c(n, c)
    return complete_edges(n) - ((n // c) * complete_edges(c) + complete_edges(n % c))


def r_star_ceb(n: int, c: int) -> int:
    _check_c(n, c)
    return ceb_edges(n) - ((n // c) * ceb_edges(c) + ceb_edges(n % c))


def f_comp(n: int, c: int) -> Fraction:
    """Critical edge fraction of the complete graph."""
    return Fraction(r_star_complete(n, c), complete_edges(n))


def fragility_from_count(r: int, m: int, n: int, c: int) -> Fraction:
    """``1 - (r/m) / f_comp(n, c)``; not clamped, so weak attacks go negative."""
    return 1 - Fraction(r, m) / f_comp(n, c)


def fragility_exact(family: str, n: int, delta: DeltaLike) -> Fraction:
    _check_family_n(family, n)
    q = FragilityQuery.resolve(n, delta)
    if family == "complete":
        r, m = r_star_complete(n, q.c), complete_edges(n)
    elif family == "ceb":
        r, m = r_star_ceb(n, q.c), ceb_edges(n)
    else:
        if 2 * q.c != n:
            raise ValueError("GB closed form is only available for delta = 1/2")
        # The half split cuts exactly the n bridges.
        r, m = n, gb_edges(n)
    return fragility_from_count(r, m, n, q.c)


def _square_half(x: int) -> Fraction:
    """(x/2)^2 for even x, (x^2-1)/4 for odd x."""
    if x % 2 == 0:
        return Fraction(x, 2) ** 2
    return Fraction(x * x - 1, 4)


def ceb_fragility_parity(n: int, k: int) -> Fraction:
    """Fragility of CEB_n at c = n - k via the parity-case expressions.

    The four branches follow the parities of ``n`` and ``c``. Each branch
    assumes the parity of the remainder ``b`` that holds when ``k < n/2``
    (then ``b = k``); for larger ``k`` the remainder term falls back to the
    parity of ``b`` itself.
    """
    if not 1 <= k < n:
        raise ValueError(f"need 1 <= k < n, got n={n}, k={k}")
    c = n - k
    q, b = n // c, n % c
    kn = Fraction(n * n - n, 2)
    kc = Fraction(c * c - c, 2)
    kb = Fraction(b * b - b, 2)
    if n % 2 == 0 and c % 2 == 0:
        cn, cc, cb = Fraction(n, 2) ** 2, Fraction(c, 2) ** 2, Fraction(b, 2) ** 2
    elif n % 2 == 0:
        cn, cc = Fraction(n, 2) ** 2, Fraction(c * c - 1, 4)
        cb = Fraction(b * b - 1, 4) if b % 2 else _square_half(b)
    elif c % 2 == 0:
        cn, cc, cb = Fraction(n * n - 1, 4), Fraction(c, 2) ** 2, Fraction(b * b - 1, 4)
    else:
        cn, cc = Fraction(n * n - 1, 4), Fraction(c * c - 1, 4)
        cb = Fraction(b, 2) ** 2 if b % 2 == 0 else _square_half(b)
    return 1 - (kn * (cn - (q * cc + cb))) / (cn * (kn - (q * kc + kb)))


def ceb_fragility_n_minus_k(n: int, k: int) -> Fraction:
    """Even-n, ``k < n/2`` family written directly in ``n`` and ``k``.

    The odd-k denominator uses ``(n/2)^2``, the CEB_n edge count.
    """
    if n % 2 or not 1 <= k or 2 * k >= n:
        raise ValueError(f"need even n and 1 <= k < n/2, got n={n}, k={k}")
    kn = Fraction(n * n - n, 2)
    cut_k = kn - (Fraction((n - k) ** 2 - (n - k), 2) + Fraction(k * k - k, 2))
    if k % 2 == 0:
        kept = Fraction(n - k, 2) ** 2 + Fraction(k, 2) ** 2
    else:
        kept = Fraction((n - k) ** 2 - 1, 4) + Fraction(k * k - 1, 4)
    cn = Fraction(n, 2) ** 2
    return 1 - kn * (cn - kept) / (cn * cut_k)


@dataclass(frozen=True)
class ClosedFormFamily:
    family: str
    n: int

    def __post_init__(self):
        _check_family_n(self.family, self.n)

    @property
    def m(self) -> int:
        return edge_count(self.family, self.n)

    def r_star(self, c: int) -> int:
        if self.family == "complete":
            return r_star_complete(self.n, c)
        if self.family == "ceb":
            return r_star_ceb(self.n, c)
        if 2 * c != self.n:
            raise ValueError("GB removal count is only known in closed form for c = n/2")
        return self.n

    def fragility(self, delta: DeltaLike) -> Fraction:
        return fragility_exact(self.family, self.n, delta)


@dataclass(frozen=True)
class RobustnessThreshold:
    epsilon: float

    def __post_init__(self):
        if not 0 < self.epsilon < 0.5:
            raise ValueError(f"epsilon must lie in (0, 0.5), got {self.epsilon}")


def is_robust(fragility, threshold: Union[RobustnessThreshold, float]) -> bool:
    if not isinstance(threshold, RobustnessThreshold):
        threshold = RobustnessThreshold(threshold)
    return fragility < as_fraction(threshold.epsilon)
