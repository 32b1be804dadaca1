import random
from itertools import combinations

import pytest

from maxcurves.families import BadCharacteristic, HurwitzParams, hurwitz, weierstrass_model
from maxcurves.ffield import make_field
from maxcurves.plane import PointNotOnCurve, contains, enumerate_points, point
from maxcurves.special_set import build_S, fundamental_points
from maxcurves.ellgroup import (
    NotDivisible,
    add,
    check_torsion,
    index_dS,
    negate,
    neutral,
    phi,
    phi_set,
    scalar_mul,
    split_image_set,
    subgroup_closure,
)

PARAMS5 = HurwitzParams(2, 5)
PARAMS11 = HurwitzParams(2, 11)


def x_points(ctx):
    return enumerate_points(weierstrass_model(ctx.q), ctx)


# -- the isomorphism phi ---------------------------------------------------------

def test_phi_fundamental_images(ctx5):
    p1, p2, p3 = fundamental_points(ctx5)
    assert phi(p1) == point(ctx5, 0, 1, 1)
    assert phi(p2) == point(ctx5, 0, -1, 1)
    assert phi(p3) == point(ctx5, 0, 1, 0)


@pytest.mark.parametrize("q", [5, 11])
def test_phi_is_bijective_onto_the_cubic(q):
    ctx = make_field(q, 1, (1, 1, 1))
    image = phi_set(enumerate_points(hurwitz(HurwitzParams(2, q)), ctx))
    target = enumerate_points(weierstrass_model(q), ctx)
    assert set(image) == set(target)
    assert len(image) == len(target)


def test_phi_matches_affine_coordinate_change(ctx5):
    # phi((u:v:1)) has x = 1/u and y - 1 = 2 v x^2
    for pt in enumerate_points(hurwitz(PARAMS5), ctx5):
        if pt.z.val != 1 or not pt.x.val:
            continue
        u, v = pt.x, pt.y
        img = phi(pt)
        assert img.x == u.inverse()
        assert img.y - 1 == 2 * v * img.x**2


def test_phi_rejects_points_off_the_curve(ctx5):
    with pytest.raises(PointNotOnCurve):
        phi(point(ctx5, 1, 1, 1))


def test_phi_rejects_small_characteristic():
    ctx = make_field(3, 1)
    with pytest.raises(BadCharacteristic):
        phi(point(ctx, 1, 0, 0))


# -- the group law ----------------------------------------------------------------

def test_neutral_element_laws(ctx5):
    zero = neutral(ctx5)
    for p in x_points(ctx5):
        assert add(p, zero) == p
        assert add(zero, p) == p


def test_inverse_pair(ctx5):
    assert add(point(ctx5, 0, 1, 1), point(ctx5, 0, -1, 1)) == neutral(ctx5)


def test_negation(ctx5):
    zero = neutral(ctx5)
    assert negate(zero) == zero
    assert negate(point(ctx5, 0, 1, 1)) == point(ctx5, 0, -1, 1)
    for p in x_points(ctx5):
        assert add(p, negate(p)) == zero


def test_two_torsion_points_double_to_neutral(ctx5):
    pts = [p for p in x_points(ctx5) if p.z.val == 1 and p.y.val == 0]
    assert pts, "the cubic over F_25 has a point with y = 0"
    for p in pts:
        assert add(p, p) == neutral(ctx5)


def test_commutativity_full_scan(ctx5):
    pts = x_points(ctx5)
    for a, b in combinations(pts, 2):
        assert add(a, b) == add(b, a)


def test_associativity_random_triples_q11(ctx11):
    pts = x_points(ctx11)
    rng = random.Random(20260810)
    for _ in range(400):
        a, b, c = (rng.choice(pts) for _ in range(3))
        assert add(add(a, b), c) == add(a, add(b, c))


def test_scalar_mul_basics(ctx5):
    zero = neutral(ctx5)
    for p in x_points(ctx5)[:8]:
        assert scalar_mul(0, p) == zero
        assert scalar_mul(1, p) == p
        assert scalar_mul(-1, p) == negate(p)
        assert scalar_mul(5, p) == add(p, scalar_mul(4, p))


# -- algebraic identities of the addition formulas ---------------------------------

def test_chord_identity_all_pairs(ctx5):
    pts = [p for p in x_points(ctx5) if p.z.val == 1]
    checked = 0
    for P, Q in combinations(pts, 2):
        x1, y1, x2, y2 = P.x, P.y, Q.x, Q.y
        if x1 == x2:
            continue
        checked += 1
        y3 = add(P, Q).y
        lhs = 4 * (y3 - 1) * (x2 - x1) ** 3
        rhs = (
            (y2 - y1) * (y1 + y2 - y1 * y2 + 3)
            + 12 * x1 * x2**2 * (y1 + 1)
            - 12 * x1**2 * x2 * (y2 + 1)
        )
        assert lhs == rhs
    assert checked == 579


@pytest.mark.parametrize("q", [5, 11])
def test_doubling_identity_with_tangent_denominator(q):
    # doubling (x1, y1) with y1 != 0 satisfies 8 y1^3 (y3 - 1) = (y1+1)(y1-3)^3;
    # the cube of the tangent-slope denominator cannot be dropped (at the flex
    # (0, 1), doubling gives (0, -1), so 4(y3 - 1) = -8 while (y1+1)(y1-3)^3 = -16)
    ctx = make_field(q, 1, (1, 1, 1))
    for P in x_points(ctx):
        if P.z.val != 1 or P.y.val == 0:
            continue
        y1 = P.y
        y3 = add(P, P).y
        assert 8 * y1**3 * (y3 - 1) == (y1 + 1) * (y1 - 3) ** 3


@pytest.mark.parametrize("q", [5, 11])
def test_substitution_identity_on_split_set_pairs(q):
    # on pairs from the split-set image with x1 != x2, in the coordinates
    # x_i = 1/u_i, y_i - 1 = 2 v_i x_i^2, a_i = u_i v_i, b_i = v_i^2/u_i:
    #   (y2-y1)(y1+y2-y1y2+3) = 8 (a1 b2 - a2 b1)(a1 a2 - b1 b2) / (a1 a2)^2
    #   4 (y3-1)(x2-x1)^3 = -8 (v1-v2)^3 / (a1 a2)^2
    ctx = make_field(q, 1, (1, 1, 1))
    s = build_S(HurwitzParams(2, q), ctx)
    checked = 0
    for A, B in combinations(s.affine_points(), 2):
        P, Q = phi(A), phi(B)
        x1, y1, x2, y2 = P.x, P.y, Q.x, Q.y
        if x1 == x2:
            continue
        checked += 1
        u1, v1, u2, v2 = A.x, A.y, B.x, B.y
        a1, a2 = u1 * v1, u2 * v2
        b1, b2 = v1**2 / u1, v2**2 / u2
        assert a1 * b1 == v1**3 and a1 + b1 + 1 == 0
        lhs_cross = (y2 - y1) * (y1 + y2 - y1 * y2 + 3)
        assert lhs_cross == 8 * (a1 * b2 - a2 * b1) * (a1 * a2 - b1 * b2) / (a1 * a2) ** 2
        aux = 12 * (y1 + 1) * x1 * x2**2 - 12 * (y2 + 1) * x1**2 * x2
        assert aux == -24 * (v1 * v2**2 - v1**2 * v2) / (a1**2 * a2**2)
        y3 = add(P, Q).y
        assert 4 * (y3 - 1) * (x2 - x1) ** 3 == -8 * (v1 - v2) ** 3 / (a1**2 * a2**2)
    assert checked > 0


def test_sum_of_split_points_stays_in_image(ctx5):
    # closure criterion: (y3 - 1)^((q+1)/3) lies in F_q for split-image sums
    from maxcurves.ffield import in_subfield
    image = phi_set(build_S(PARAMS5, ctx5).points)
    e = (ctx5.q + 1) // 3
    for P, Q in combinations(image, 2):
        R = add(P, Q)
        if R.z.val == 1:
            assert in_subfield((R.y - 1) ** e)


# -- subgroup machinery -------------------------------------------------------------

def test_closure_of_neutral(ctx5):
    sub = subgroup_closure([neutral(ctx5)], ctx5)
    assert sub.order == 1


def test_closure_of_empty_generators(ctx5):
    assert subgroup_closure([], ctx5).order == 1


@pytest.mark.parametrize("q,expected", [(5, 12), (11, 48)])
def test_split_image_is_closed(q, expected):
    ctx = make_field(q, 1, (1, 1, 1))
    image = phi_set(build_S(HurwitzParams(2, q), ctx).points)
    sub = subgroup_closure(image, ctx)
    assert sub.order == expected
    assert set(sub.elements) == set(image)


def test_closure_rejects_off_curve_generators(ctx5):
    with pytest.raises(PointNotOnCurve):
        subgroup_closure([point(ctx5, 1, 1, 1)], ctx5)


def test_closure_subgroups_satisfy_lagrange(ctx5):
    pts = x_points(ctx5)
    rng = random.Random(99)
    for _ in range(12):
        gens = rng.sample(pts, rng.randint(1, 3))
        sub = subgroup_closure(gens, ctx5)
        assert len(pts) % sub.order == 0
        zero = neutral(ctx5)
        assert zero in sub.elements
        for g in sub.elements:
            assert negate(g) in sub.elements


@pytest.mark.parametrize("q", [5, 11])
def test_index_of_split_image(q):
    ctx = make_field(q, 1, (1, 1, 1))
    image = phi_set(build_S(HurwitzParams(2, q), ctx).points)
    idx = index_dS(image, ctx)
    assert idx == 3
    assert (q + 1) ** 2 % idx == 0


def test_index_of_full_group_is_one(ctx5):
    assert index_dS(x_points(ctx5), ctx5) == 1


@pytest.mark.parametrize("q,order", [(5, 36), (11, 144)])
def test_torsion(q, order):
    ctx = make_field(q, 1, (1, 1, 1))
    rep = check_torsion(ctx)
    assert rep.ok
    assert rep.order == order == (q + 1) ** 2


def test_every_point_killed_by_q_plus_one(ctx5):
    zero = neutral(ctx5)
    for p in x_points(ctx5):
        assert scalar_mul(6, p) == zero


@pytest.mark.parametrize("q", [5, 11])
def test_split_image_set_matches_phi_of_s(q):
    ctx = make_field(q, 1, (1, 1, 1))
    direct = split_image_set(ctx)
    via_s = phi_set(build_S(HurwitzParams(2, q), ctx).points)
    assert direct == via_s
