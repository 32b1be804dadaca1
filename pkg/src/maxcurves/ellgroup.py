"""Group law on the cubic Y^2 Z = Z^3 - 4 X^3 with neutral element (0:1:0).

The isomorphism phi carries the degree-3 Hurwitz curve onto this cubic, where
the chord-tangent formulas make subgroup closures and index computations a
matter of table arithmetic.  Everything here assumes characteristic outside
{2, 3}; the formulas divide by 2, 4 and 6.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .families import BadCharacteristic, HurwitzParams, hurwitz, weierstrass_model
from .ffield import FieldCtx, FieldElement
from .plane import (
    PointNotOnCurve,
    ProjectivePoint,
    contains,
    enumerate_points,
    point,
)


class NotDivisible(Exception):
    """The subgroup order fails to divide the group order (implementation fault)."""


def _require_char(ctx: FieldCtx) -> None:
    if ctx.p in (2, 3):
        raise BadCharacteristic(
            f"group-law formulas need characteristic > 3, got {ctx.p}")


def neutral(ctx: FieldCtx) -> ProjectivePoint:
    """The neutral element (0 : 1 : 0)."""
    return point(ctx, 0, 1, 0)


def phi(pt: ProjectivePoint) -> ProjectivePoint:
    """(U:V:W) -> (UW : 2VW + U^2 : U^2), an isomorphism onto the cubic.

    The two points with U = 0 are the base locus of the defining triple; their
    images are pinned by continuity: (0:1:0) -> (0:-1:1) and (0:0:1) -> (0:1:0).
    """
    ctx = pt.ctx
    _require_char(ctx)
    h2 = hurwitz(HurwitzParams(2, ctx.q))
    if not contains(h2, pt):
        raise PointNotOnCurve(f"{pt} is not on the degree-3 Hurwitz curve")
    u, v, w = pt.raw()
    if u:
        mul = ctx.mul_raw
        add = ctx.add_raw
        usq = mul(u, u)
        x = mul(u, w)
        y = add(mul(2 % ctx.p, mul(v, w)), usq)
        return ProjectivePoint(
            FieldElement(ctx, x), FieldElement(ctx, y), FieldElement(ctx, usq))
    if pt.raw() == (0, 1, 0):
        return point(ctx, 0, -1, 1)
    return point(ctx, 0, 1, 0)


def phi_set(points: Iterable[ProjectivePoint]) -> tuple[ProjectivePoint, ...]:
    """Image of a point collection under phi, sorted, duplicates dropped."""
    return tuple(sorted({phi(pt) for pt in points}, key=ProjectivePoint.sort_key))


def add(P: ProjectivePoint, Q: ProjectivePoint) -> ProjectivePoint:
    """P + Q by the chord-tangent formulas with neutral (0:1:0).

    Doubling a point with y = 0 returns the neutral element (the tangent is
    vertical), keeping the operation total.
    """
    ctx = P.ctx
    if Q.ctx._key != ctx._key:
        raise ValueError("points on curves over different fields")
    _require_char(ctx)
    if P.z.val == 0:
        return Q
    if Q.z.val == 0:
        return P
    x1, y1 = P.x.val, P.y.val
    x2, y2 = Q.x.val, Q.y.val
    mul = ctx.mul_raw
    addr = ctx.add_raw
    sub = ctx.sub_raw
    neg = ctx.neg_raw
    inv = ctx.inv_raw
    if x1 == x2:
        if y2 == neg(y1):
            return neutral(ctx)
        if y1 != y2:
            raise PointNotOnCurve("inputs do not lie on a common cubic")
        # tangent slope -6 x1^2 / y1
        lam = mul(neg(mul(6 % ctx.p, mul(x1, x1))), inv(y1))
    else:
        lam = mul(sub(y2, y1), inv(sub(x2, x1)))
    # x3 = -lam^2/4 - x1 - x2;  y3 = -(lam (x3 - x1) + y1)
    x3 = neg(addr(addr(mul(mul(lam, lam), inv(4 % ctx.p)), x1), x2))
    y3 = neg(addr(mul(lam, sub(x3, x1)), y1))
    return point(ctx, ctx.from_val(x3), ctx.from_val(y3), 1)


def negate(P: ProjectivePoint) -> ProjectivePoint:
    """The inverse for the group law: (x : -y : z)."""
    return ProjectivePoint(P.x, -P.y, P.z)


def scalar_mul(k: int, P: ProjectivePoint) -> ProjectivePoint:
    """k-fold sum of P (binary ladder); negative k through the inverse."""
    ctx = P.ctx
    if k < 0:
        return scalar_mul(-k, negate(P))
    acc = neutral(ctx)
    step = P
    while k:
        if k & 1:
            acc = add(acc, step)
        k >>= 1
        if k:
            step = add(step, step)
    return acc


@dataclass(frozen=True)
class Subgroup:
    """A subgroup given by its full element list (sorted), order, and generators."""

    elements: tuple[ProjectivePoint, ...]
    order: int
    generators: tuple[ProjectivePoint, ...]

    def as_dict(self) -> dict:
        return {
            "order": self.order,
            "generators": [g.coeff_vectors() for g in self.generators],
            "elements": [e.coeff_vectors() for e in self.elements],
        }


def subgroup_closure(gens: Iterable[ProjectivePoint], ctx: FieldCtx) -> Subgroup:
    """Smallest subset containing the generators and the neutral element that is
    closed under addition and negation, computed as a worklist fixpoint."""
    _require_char(ctx)
    gens = tuple(gens)
    curve = weierstrass_model(ctx.q)
    for g in gens:
        if not contains(curve, g):
            raise PointNotOnCurve(f"generator {g} is not on the cubic")
    bound = (ctx.q + 1) ** 2
    elems = {neutral(ctx)}
    frontier = set()
    for g in gens:
        frontier.add(g)
        frontier.add(negate(g))
    frontier -= elems
    while frontier:
        elems |= frontier
        if len(elems) > bound:
            raise RuntimeError("closure exceeded the group-order bound")
        new = set()
        for a in frontier:
            for b in elems:
                s = add(a, b)
                if s not in elems:
                    new.add(s)
        frontier = new - elems
    ordered = tuple(sorted(elems, key=ProjectivePoint.sort_key))
    gen_sorted = tuple(sorted(set(gens), key=ProjectivePoint.sort_key))
    return Subgroup(ordered, len(ordered), gen_sorted)


def index_dS(gens: Iterable[ProjectivePoint], ctx: FieldCtx) -> int:
    """Index of the subgroup generated by `gens` in the full rational point group."""
    full = enumerate_points(weierstrass_model(ctx.q), ctx)
    sub = subgroup_closure(gens, ctx)
    n, r = divmod(len(full), sub.order)
    if r:
        raise NotDivisible(
            f"subgroup order {sub.order} does not divide group order {len(full)}")
    return n


@dataclass(frozen=True)
class TorsionReport:
    """Whether every rational point is killed by q+1 and the count is (q+1)^2."""

    ok: bool
    order: int
    expected_order: int
    all_annihilated: bool

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "order": self.order,
            "expected_order": self.expected_order,
            "all_annihilated": self.all_annihilated,
        }


def check_torsion(ctx: FieldCtx) -> TorsionReport:
    """Verify the (q+1)-torsion structure of the cubic's rational points."""
    _require_char(ctx)
    pts = enumerate_points(weierstrass_model(ctx.q), ctx)
    k = ctx.q + 1
    zero = neutral(ctx)
    annihilated = all(scalar_mul(k, P) == zero for P in pts)
    order_ok = len(pts) == k * k
    return TorsionReport(
        ok=annihilated and order_ok,
        order=len(pts),
        expected_order=k * k,
        all_annihilated=annihilated,
    )


def split_image_set(ctx: FieldCtx) -> tuple[ProjectivePoint, ...]:
    """phi(S) reconstructed directly on the cubic: affine points with
    (y - 1)^{(q+1)/3} in F_q, together with the neutral element."""
    _require_char(ctx)
    if (ctx.q + 1) % 3:
        raise ValueError("requires 3 | q+1")
    e = (ctx.q + 1) // 3
    out = [neutral(ctx)]
    for pt in enumerate_points(weierstrass_model(ctx.q), ctx):
        if pt.z.val != 1:
            continue
        if ctx.in_base_raw(ctx.pow_raw(ctx.sub_raw(pt.y.val, 1), e)):
            out.append(pt)
    return tuple(sorted(out, key=ProjectivePoint.sort_key))
