import pytest

from maxcurves.ffield import make_field
from maxcurves.plane import ProjectivePoint, point

PAPER_BASIS = (1, 1, 1)  # x^2 + x + 1, so alpha^2 = -alpha - 1


@pytest.fixture(scope="session")
def ctx5():
    return make_field(5, 1, PAPER_BASIS)


@pytest.fixture(scope="session")
def ctx11():
    return make_field(11, 1, PAPER_BASIS)


@pytest.fixture(scope="session")
def ctx13():
    return make_field(13, 1)


@pytest.fixture(scope="session")
def ctx27():
    return make_field(3, 3)


def eval_with_elements(curve, pt):
    """Term-by-term evaluation through element arithmetic only (oracle path)."""
    ctx = pt.ctx
    acc = ctx.zero
    for (ex, ey, ez), c in curve.terms:
        acc = acc + ctx.element(c) * pt.x**ex * pt.y**ey * pt.z**ez
    return acc


def naive_chart_points(curve, ctx):
    """Independent point enumeration over one representative per class."""
    pts = []
    one = ctx.one
    zero = ctx.zero
    for xv in range(ctx.size):
        for yv in range(ctx.size):
            p = ProjectivePoint(ctx.from_val(xv), ctx.from_val(yv), one)
            if not eval_with_elements(curve, p):
                pts.append(p)
    for xv in range(ctx.size):
        p = ProjectivePoint(ctx.from_val(xv), one, zero)
        if not eval_with_elements(curve, p):
            pts.append(p)
    p = ProjectivePoint(one, zero, zero)
    if not eval_with_elements(curve, p):
        pts.append(p)
    return pts


def naive_all_triples_points(curve, ctx):
    """Fully independent oracle: walk every nonzero coordinate triple and
    deduplicate through projective normalisation."""
    seen = set()
    for a in range(ctx.size):
        for b in range(ctx.size):
            for c in range(ctx.size):
                if a == 0 and b == 0 and c == 0:
                    continue
                p = ProjectivePoint(ctx.from_val(a), ctx.from_val(b), ctx.from_val(c))
                if p in seen:
                    continue
                if not eval_with_elements(curve, p):
                    seen.add(p)
    return seen
