"""The distinguished split set S on a Hurwitz curve and its projection to the line.

S consists of the three fundamental points together with the affine points
(u : v : 1), uv != 0, whose residues (u^{n-1} v)^{(q+1)/d} and
(u^{-1} v^n)^{(q+1)/d} both land in the subfield F_q.  The degree-d projection
pi sends (u : v : 1) to (u^{n-1} v : u^{-1} v^n : 1) on the line X + Y + Z = 0
and is totally ramified exactly at the fundamental points.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .families import HurwitzParams, hurwitz
from .ffield import FieldCtx, FieldElement
from .plane import ProjectivePoint, enumerate_points, point


class UndefinedAtPoint(Exception):
    """The projection was applied at a point where the defining ratios degenerate."""


class BasisDependentCheck(Exception):
    """A coefficient-level check was requested in a basis it is not stated for."""


def fundamental_points(ctx: FieldCtx) -> tuple[ProjectivePoint, ProjectivePoint, ProjectivePoint]:
    """P1 = (1:0:0), P2 = (0:1:0), P3 = (0:0:1)."""
    return (point(ctx, 1, 0, 0), point(ctx, 0, 1, 0), point(ctx, 0, 0, 1))


def _check_ctx(params: HurwitzParams, ctx: FieldCtx) -> None:
    if ctx.q != params.q:
        raise ValueError(f"field context has q={ctx.q}, parameters have q={params.q}")


@dataclass(frozen=True)
class SplitSet:
    """The set S with its covering bookkeeping.

    `points` is sorted in canonical point order, so set identity is decidable
    by sequence comparison.  `affine_count` is #S - 3 and always equals d * t
    for sets produced by :func:`build_S`.
    """

    points: tuple[ProjectivePoint, ...]
    n: int
    d: int
    q: int
    affine_count: int
    t: int

    @property
    def size(self) -> int:
        return len(self.points)

    def affine_points(self) -> tuple[ProjectivePoint, ...]:
        return tuple(
            pt for pt in self.points
            if pt.z.val == 1 and pt.x.val and pt.y.val
        )

    @classmethod
    def assemble(cls, points: Iterable[ProjectivePoint], params: HurwitzParams) -> "SplitSet":
        """Raw constructor for hand-picked point lists (negative controls, tests)."""
        pts = tuple(sorted(set(points), key=ProjectivePoint.sort_key))
        affine = sum(1 for pt in pts if pt.z.val == 1 and pt.x.val and pt.y.val)
        return cls(pts, params.n, params.d, params.q, affine, affine // params.d)

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "q": self.q,
            "size": self.size,
            "affine_count": self.affine_count,
            "t": self.t,
            "points": [pt.coeff_vectors() for pt in self.points],
        }


def build_S(params: HurwitzParams, ctx: FieldCtx) -> SplitSet:
    """Construct S by exhaustive scan of the Hurwitz curve's rational points."""
    _check_ctx(params, ctx)
    n = params.n
    e = params.e
    mul = ctx.mul_raw
    powr = ctx.pow_raw
    inv = ctx.inv_raw
    in_base = ctx.in_base_raw
    chosen = []
    for pt in enumerate_points(hurwitz(params), ctx):
        if pt.z.val != 1:
            continue
        u, v = pt.x.val, pt.y.val
        if u == 0 or v == 0:
            continue
        a = mul(powr(u, n - 1), v)
        b = mul(inv(u), powr(v, n))
        if in_base(powr(a, e)) and in_base(powr(b, e)):
            chosen.append(pt)
    t = count_t(params, ctx)
    if len(chosen) != params.d * t:
        raise RuntimeError(
            f"split-set scan found {len(chosen)} affine points, "
            f"but the line-level count gives d*t = {params.d * t}")
    pts = sorted(
        [*fundamental_points(ctx), *chosen], key=ProjectivePoint.sort_key)
    return SplitSet(tuple(pts), n, params.d, params.q, len(chosen), t)


def count_t(params: HurwitzParams, ctx: FieldCtx) -> int:
    """#{(x, y) in F*_{q^2} x F*_{q^2} : x + y + 1 = 0, x^e and y^e in F_q}."""
    _check_ctx(params, ctx)
    e = params.e
    neg_one = ctx.neg_raw(1)
    powr = ctx.pow_raw
    in_base = ctx.in_base_raw
    sub = ctx.sub_raw
    t = 0
    for xv in range(1, ctx.size):
        if xv == neg_one:
            continue
        if in_base(powr(xv, e)) and in_base(powr(sub(neg_one, xv), e)):
            t += 1
    return t


def pi_project(pt: ProjectivePoint, params: HurwitzParams) -> ProjectivePoint:
    """The degree-d projection to the line; fundamental points map to fixed images."""
    ctx = pt.ctx
    n = params.n
    p1, p2, p3 = fundamental_points(ctx)
    if pt == p1:
        return point(ctx, -1, 0, 1)
    if pt == p2:
        return point(ctx, -1, 1, 0)
    if pt == p3:
        return point(ctx, 0, -1, 1)
    if pt.z.val != 1 or pt.x.val == 0 or pt.y.val == 0:
        raise UndefinedAtPoint(f"projection undefined at {pt}")
    u, v = pt.x, pt.y
    return ProjectivePoint(u ** (n - 1) * v, v**n / u, ctx.one)


def pi_fiber(
    image: ProjectivePoint, params: HurwitzParams, ctx: FieldCtx
) -> tuple[ProjectivePoint, ...]:
    """All rational Hurwitz points projecting to `image`, by exhaustive scan."""
    _check_ctx(params, ctx)
    fiber = [
        pt for pt in enumerate_points(hurwitz(params), ctx)
        if pi_project(pt, params) == image
    ]
    return tuple(sorted(fiber, key=ProjectivePoint.sort_key))


@dataclass(frozen=True)
class Claim1Report:
    """Brute-force counts of #S and t against their closed forms."""

    n: int
    d: int
    q: int
    s_count: int
    t_count: int
    s_expected: int
    t_expected: int
    s_ok: bool
    t_ok: bool
    ratio_ok: bool
    ok: bool

    def as_dict(self) -> dict:
        return {
            "n": self.n, "d": self.d, "q": self.q,
            "s_count": self.s_count, "s_expected": self.s_expected, "s_ok": self.s_ok,
            "t_count": self.t_count, "t_expected": self.t_expected, "t_ok": self.t_ok,
            "ratio_ok": self.ratio_ok, "ok": self.ok,
        }


def expected_s_count(params: HurwitzParams) -> int:
    """(q+1)^2/d + q(2g-2) with 2g-2 = d-3."""
    q, d = params.q, params.d
    return (q + 1) ** 2 // d + q * (d - 3)


def expected_t_count(params: HurwitzParams) -> int:
    """q + (q+1)^2/d^2 - 3(q+1)/d; reduces to (q+1)^2/d^2 - 1 exactly when d = 3."""
    q, d = params.q, params.d
    return q + (q + 1) ** 2 // (d * d) - 3 * (q + 1) // d


def verify_claim1(params: HurwitzParams, ctx: FieldCtx) -> Claim1Report:
    """Check #S and t from exhaustive scans against their closed forms."""
    split = build_S(params, ctx)
    s_expected = expected_s_count(params)
    t_expected = expected_t_count(params)
    s_ok = split.size == s_expected
    t_ok = split.t == t_expected
    ratio_ok = split.affine_count == params.d * split.t
    return Claim1Report(
        n=params.n, d=params.d, q=params.q,
        s_count=split.size, t_count=split.t,
        s_expected=s_expected, t_expected=t_expected,
        s_ok=s_ok, t_ok=t_ok, ratio_ok=ratio_ok,
        ok=s_ok and t_ok and ratio_ok,
    )


# Solution triples (a, c, b) mod 11, b != 0, of the two quartic-residue
# conditions at q=11 in the basis alpha^2 = -alpha - 1; the excluded pair are
# the candidate combinations that fail the conditions.
Q11_VALID_TRIPLES = frozenset({
    (1, 9, 4), (9, 1, 7), (2, 8, 4), (8, 2, 7), (4, 6, 9), (6, 4, 2),
})
Q11_EXCLUDED_TRIPLES = frozenset({(3, 7, 3), (7, 3, 8)})


def q11_triples(ctx: FieldCtx) -> frozenset[tuple[int, int, int]]:
    """(a, c, b) with b != 0 for the q=11 case, where x = a + b*alpha, y = c - b*alpha.

    Basis-dependent: requires q = 11 with modulus x^2 + x + 1 so that the
    coefficient pairs mean what the case analysis assumes.
    """
    if ctx.q != 11 or ctx.m != 1 or ctx.modulus != (1, 1, 1):
        raise BasisDependentCheck(
            "triple listing requires q=11 in the basis alpha^2 = -alpha - 1")
    params = HurwitzParams(2, 11)
    e = params.e
    neg_one = ctx.neg_raw(1)
    out = set()
    for xv in range(1, ctx.size):
        if xv == neg_one:
            continue
        yv = ctx.sub_raw(neg_one, xv)
        a, b = xv % 11, xv // 11
        if b == 0:
            continue
        if ctx.in_base_raw(ctx.pow_raw(xv, e)) and ctx.in_base_raw(ctx.pow_raw(yv, e)):
            out.add((a, yv % 11, b))
    return frozenset(out)
