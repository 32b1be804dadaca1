"""Constructors for the named curve families: Hermitian, Hurwitz, Fermat, line.

Parameter validation is eager and fatal; the standing hypotheses (d | q+1 for
Hurwitz parameters, characteristic not dividing the degree, characteristic
outside {2, 3} for the cubic model) become constructor errors because every
downstream identity assumes them.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ffield import prime_power
from .plane import PlaneCurve, curve_from_terms


class FamilyError(Exception):
    """Base class for family parameter errors."""


class DivisibilityViolated(FamilyError):
    """d = n^2 - n + 1 does not divide q + 1."""


class BadCharacteristic(FamilyError):
    """The field characteristic degenerates the requested curve."""


@dataclass(frozen=True)
class HurwitzParams:
    """Admissible parameters (n, q) for the degree n+1 Hurwitz curve."""

    n: int
    q: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("n must be at least 2")
        p, _m = prime_power(self.q)
        d = self.d
        if d % p == 0:
            raise BadCharacteristic(f"characteristic {p} divides d={d}")
        if (self.q + 1) % d:
            raise DivisibilityViolated(f"d={d} does not divide q+1={self.q + 1}")

    @property
    def d(self) -> int:
        return self.n * self.n - self.n + 1

    @property
    def p(self) -> int:
        return prime_power(self.q)[0]

    @property
    def e(self) -> int:
        """The shared residue exponent (q+1)/d."""
        return (self.q + 1) // self.d

    @property
    def degree(self) -> int:
        return self.n + 1

    @property
    def genus(self) -> int:
        return self.n * (self.n - 1) // 2


def hermitian(q: int) -> PlaneCurve:
    """X^{q+1} + Y^{q+1} + Z^{q+1} = 0, the maximal curve of top genus q(q-1)/2."""
    prime_power(q)
    e = q + 1
    return curve_from_terms(
        {(e, 0, 0): 1, (0, e, 0): 1, (0, 0, e): 1},
        genus=q * (q - 1) // 2,
        label=f"hermitian_q{q}",
        smooth=True,
    )


def hurwitz(params: HurwitzParams) -> PlaneCurve:
    """U^n V + V^n W + W^n U = 0 of degree n+1; its genus satisfies 2g-2 = d-3."""
    n = params.n
    return curve_from_terms(
        {(n, 1, 0): 1, (0, n, 1): 1, (1, 0, n): 1},
        genus=params.genus,
        label=f"hurwitz_n{n}",
        smooth=True,
    )


def fermat(d: int, q: int) -> PlaneCurve:
    """X^d + Y^d + Z^d = 0; requires the characteristic not to divide d."""
    if d < 1:
        raise ValueError("degree d must be positive")
    p, _m = prime_power(q)
    if d % p == 0:
        raise BadCharacteristic(f"characteristic {p} divides d={d}")
    return curve_from_terms(
        {(d, 0, 0): 1, (0, d, 0): 1, (0, 0, d): 1},
        genus=(d - 1) * (d - 2) // 2,
        label=f"fermat_d{d}",
        smooth=True,
    )


def weierstrass_model(q: int) -> PlaneCurve:
    """The cubic Y^2 Z = Z^3 - 4 X^3, genus 1; needs characteristic outside {2, 3}."""
    p, _m = prime_power(q)
    if p in (2, 3):
        raise BadCharacteristic(f"the cubic model degenerates in characteristic {p}")
    return curve_from_terms(
        {(0, 2, 1): 1, (0, 0, 3): -1, (3, 0, 0): 4},
        genus=1,
        label="weierstrass_4x3",
        smooth=True,
    )


def line_L() -> PlaneCurve:
    """The rational line X + Y + Z = 0."""
    return curve_from_terms(
        {(1, 0, 0): 1, (0, 1, 0): 1, (0, 0, 1): 1},
        genus=0,
        label="line",
        smooth=True,
    )
