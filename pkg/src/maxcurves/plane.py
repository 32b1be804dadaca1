"""Projective plane points, plane curves, and exhaustive rational-point counts.

Curves are homogeneous trivariate polynomials with plain integer coefficients,
so one definition serves every field of the same characteristic.  Enumeration
walks the three canonical charts in a fixed order (affine z=1 row-major in
(x, y), then the line at infinity y=1 z=0 by x, then (1:0:0)) and is the
counting oracle everything else is checked against.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Optional, Union

from .ffield import FieldCtx, FieldElement, FieldMismatch


class PlaneError(Exception):
    """Base class for plane-geometry errors."""


class GenusUnknown(PlaneError):
    """A maximality certificate was requested for a curve without genus metadata."""


class PointNotOnCurve(PlaneError):
    """A pointwise operation was applied off the curve."""


class ProjectivePoint:
    """A point of P^2 over F_{q^2}, normalised so the last nonzero coordinate is 1."""

    __slots__ = ("x", "y", "z")

    def __init__(self, x: FieldElement, y: FieldElement, z: FieldElement):
        ctx = x.ctx
        if y.ctx._key != ctx._key or z.ctx._key != ctx._key:
            raise FieldMismatch("coordinates come from different fields")
        xv, yv, zv = x.val, y.val, z.val
        if zv:
            s = ctx.inv_raw(zv)
        elif yv:
            s = ctx.inv_raw(yv)
        elif xv:
            s = ctx.inv_raw(xv)
        else:
            raise ValueError("(0:0:0) is not a projective point")
        if s == 1:
            self.x, self.y, self.z = x, y, z
        else:
            mul = ctx.mul_raw
            self.x = FieldElement(ctx, mul(xv, s))
            self.y = FieldElement(ctx, mul(yv, s))
            self.z = FieldElement(ctx, mul(zv, s))

    @property
    def ctx(self) -> FieldCtx:
        return self.x.ctx

    @property
    def is_affine(self) -> bool:
        return self.z.val == 1

    def raw(self) -> tuple[int, int, int]:
        return (self.x.val, self.y.val, self.z.val)

    def sort_key(self) -> tuple[int, int, int]:
        """Total order matching the canonical enumeration: affine chart first."""
        if self.z.val:
            return (0, self.x.val, self.y.val)
        if self.y.val:
            return (1, self.x.val, 0)
        return (2, 0, 0)

    def coeff_vectors(self) -> list[list[int]]:
        return [list(self.x.coeffs), list(self.y.coeffs), list(self.z.coeffs)]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ProjectivePoint)
            and other.ctx._key == self.ctx._key
            and other.raw() == self.raw()
        )

    def __hash__(self) -> int:
        return hash((self.raw(), self.ctx._key))

    def __repr__(self) -> str:
        return f"({self.x} : {self.y} : {self.z})"


def point(ctx: FieldCtx, x, y, z) -> ProjectivePoint:
    """Build a normalised point from ints, coefficient vectors, or elements."""
    return ProjectivePoint(ctx.element(x), ctx.element(y), ctx.element(z))


TermMap = Mapping[tuple[int, int, int], int]


@dataclass(frozen=True)
class PlaneCurve:
    """A homogeneous trivariate polynomial plus degree/genus metadata.

    `smooth` records that the family is known nonsingular for its admissible
    parameters; the pointwise gradient check is :func:`is_smooth_at`.
    """

    terms: tuple[tuple[tuple[int, int, int], int], ...]
    degree: int
    genus: Optional[int]
    label: str
    smooth: bool = False


def curve_from_terms(
    terms: Union[TermMap, Iterable[tuple[tuple[int, int, int], int]]],
    *,
    genus: Optional[int] = None,
    label: str = "curve",
    smooth: bool = False,
) -> PlaneCurve:
    """Assemble a curve, merging duplicate monomials and checking homogeneity."""
    if isinstance(terms, Mapping):
        items = terms.items()
    else:
        items = terms
    merged: dict[tuple[int, int, int], int] = {}
    for exps, c in items:
        exps = tuple(int(e) for e in exps)
        if len(exps) != 3 or any(e < 0 for e in exps):
            raise ValueError(f"bad exponent triple {exps}")
        merged[exps] = merged.get(exps, 0) + int(c)
    merged = {e: c for e, c in merged.items() if c}
    if not merged:
        raise ValueError("the zero polynomial does not define a curve")
    degrees = {sum(e) for e in merged}
    if len(degrees) != 1:
        raise ValueError(f"polynomial is not homogeneous: degrees {sorted(degrees)}")
    return PlaneCurve(
        terms=tuple(sorted(merged.items())),
        degree=degrees.pop(),
        genus=genus,
        label=label,
        smooth=smooth,
    )


def evaluate(curve: PlaneCurve, pt: ProjectivePoint) -> FieldElement:
    """Value of the defining polynomial at pt (single-point path, no tables)."""
    return _eval_terms(curve.terms, pt)


def _eval_terms(terms, pt: ProjectivePoint) -> FieldElement:
    ctx = pt.ctx
    xv, yv, zv = pt.raw()
    acc = 0
    for (ex, ey, ez), c in terms:
        cr = c % ctx.p
        if not cr:
            continue
        t = ctx.mul_raw(cr, ctx.pow_raw(xv, ex))
        t = ctx.mul_raw(t, ctx.pow_raw(yv, ey))
        t = ctx.mul_raw(t, ctx.pow_raw(zv, ez))
        acc = ctx.add_raw(acc, t)
    return FieldElement(ctx, acc)


def contains(curve: PlaneCurve, pt: ProjectivePoint) -> bool:
    return _eval_terms(curve.terms, pt).val == 0


def _partial(terms, var: int):
    out: dict[tuple[int, int, int], int] = {}
    for exps, c in terms:
        k = exps[var]
        if k:
            ne = list(exps)
            ne[var] = k - 1
            key = tuple(ne)
            out[key] = out.get(key, 0) + c * k
    return tuple(sorted(out.items()))


def is_smooth_at(curve: PlaneCurve, pt: ProjectivePoint) -> bool:
    """Whether the gradient of the defining polynomial is nonzero at pt."""
    if not contains(curve, pt):
        raise PointNotOnCurve(f"{pt} does not lie on {curve.label}")
    return any(_eval_terms(_partial(curve.terms, v), pt).val for v in range(3))


def _univariate_roots(ctx: FieldCtx, coeffs: dict[int, int]) -> list[int]:
    """Roots in F_{q^2} of sum_j c_j y^j, packed coefficients, ascending."""
    items = sorted((j, c) for j, c in coeffs.items() if c)
    if not items:
        return list(range(ctx.size))
    if len(items) == 1:
        return [0] if items[0][0] > 0 else []
    if len(items) == 2:
        (ja, ca), (jb, cb) = items
        roots = [0] if ja > 0 else []
        target = ctx.mul_raw(ctx.neg_raw(ca), ctx.inv_raw(cb))
        roots.extend(ctx.power_buckets(jb - ja).get(target, ()))
        roots.sort()
        return roots
    const = coeffs.get(0, 0)
    tabs = [(c, ctx.pow_table(j)) for j, c in items if j > 0]
    add = ctx.add_raw
    mul = ctx.mul_raw
    roots = []
    for yv in range(ctx.size):
        acc = const
        for c, tab in tabs:
            t = tab[yv]
            if t:
                acc = add(acc, mul(c, t))
        if acc == 0:
            roots.append(yv)
    return roots


def _scan_points(curve: PlaneCurve, ctx: FieldCtx) -> tuple[ProjectivePoint, ...]:
    p = ctx.p
    size = ctx.size
    one = FieldElement(ctx, 1)
    zero = FieldElement(ctx, 0)
    out: list[ProjectivePoint] = []

    # affine chart z = 1, grouped by y-exponent
    by_ey: dict[int, list[tuple[int, int]]] = {}
    for (ex, ey, _ez), c in curve.terms:
        cr = c % p
        if cr:
            by_ey.setdefault(ey, []).append((ex, cr))
    xtabs = {ex: ctx.pow_table(ex) for lst in by_ey.values() for ex, _ in lst}
    add = ctx.add_raw
    mul = ctx.mul_raw
    for xv in range(size):
        coeffs: dict[int, int] = {}
        for ey, lst in by_ey.items():
            acc = 0
            for ex, cr in lst:
                t = xtabs[ex][xv]
                if t:
                    acc = add(acc, mul(cr, t))
            if acc:
                coeffs[ey] = acc
        ys = _univariate_roots(ctx, coeffs)
        if ys:
            xe = FieldElement(ctx, xv)
            for yv in ys:
                out.append(ProjectivePoint(xe, FieldElement(ctx, yv), one))

    # chart (x : 1 : 0)
    coeffs2: dict[int, int] = {}
    for (ex, _ey, ez), c in curve.terms:
        if ez == 0:
            cr = c % p
            if cr:
                coeffs2[ex] = add(coeffs2.get(ex, 0), cr)
    for xv in _univariate_roots(ctx, {e: v for e, v in coeffs2.items() if v}):
        out.append(ProjectivePoint(FieldElement(ctx, xv), one, zero))

    # the point (1 : 0 : 0)
    acc = 0
    for (_ex, ey, ez), c in curve.terms:
        if ey == 0 and ez == 0:
            acc = add(acc, c % p)
    if acc == 0:
        out.append(ProjectivePoint(one, zero, zero))
    return tuple(out)


@lru_cache(maxsize=None)
def _enumerate_cached(curve: PlaneCurve, ctx: FieldCtx) -> tuple[ProjectivePoint, ...]:
    return _scan_points(curve, ctx)


def enumerate_points(
    curve: PlaneCurve, ctx: FieldCtx, cached: bool = True
) -> tuple[ProjectivePoint, ...]:
    """All F_{q^2}-rational points of the curve, each once, in canonical scan order."""
    if cached:
        return _enumerate_cached(curve, ctx)
    return _scan_points(curve, ctx)


def clear_enumeration_cache() -> None:
    _enumerate_cached.cache_clear()


def count_points(curve: PlaneCurve, ctx: FieldCtx) -> int:
    return len(enumerate_points(curve, ctx))


def weil_upper_bound(q: int, g: int) -> int:
    """(q+1)^2 + q(2g-2), the ceiling for #X(F_{q^2}) at genus g."""
    if q < 2:
        raise ValueError("q must be at least 2")
    if g < 0:
        raise ValueError("genus must be nonnegative")
    return (q + 1) ** 2 + q * (2 * g - 2)


@dataclass(frozen=True)
class CountReport:
    """Point count of a curve against its Weil upper bound over F_{q^2}."""

    curve: PlaneCurve
    q: int
    count: int
    weil_upper: int
    maximal: bool

    def as_dict(self) -> dict:
        return {
            "curve": self.curve.label,
            "degree": self.curve.degree,
            "genus": self.curve.genus,
            "q": self.q,
            "count": self.count,
            "weil_upper": self.weil_upper,
            "maximal": self.maximal,
        }


def is_maximal(curve: PlaneCurve, ctx: FieldCtx) -> CountReport:
    """Certify maximality by exhaustive count against the Weil upper bound."""
    if curve.genus is None:
        raise GenusUnknown(f"{curve.label} carries no genus metadata")
    count = count_points(curve, ctx)
    upper = weil_upper_bound(ctx.q, curve.genus)
    return CountReport(curve, ctx.q, count, upper, count == upper)


def lemma_threshold(q: int) -> int:
    """floor((q^2 - q + 4)/6): above this genus, a maximal curve is Hermitian-covered."""
    if q < 2:
        raise ValueError("q must be at least 2")
    return (q * q - q + 4) // 6


def corollary_threshold(q: int, d_s: int) -> Fraction:
    """1 + (lemma_threshold(q) - 1)/d_s, the genus bound refined by the index d_s."""
    if d_s < 1:
        raise ValueError("d_s must be a positive integer")
    return 1 + Fraction(lemma_threshold(q) - 1, d_s)


def voloch_bound_trivial(ell: int, g_tilde: int) -> bool:
    """Whether ell >= (8*g_tilde - 2)^2, which forces a trivial index for full point sets."""
    if ell < 2:
        raise ValueError("ell must be at least 2")
    if g_tilde < 0:
        raise ValueError("genus must be nonnegative")
    return ell >= (8 * g_tilde - 2) ** 2
