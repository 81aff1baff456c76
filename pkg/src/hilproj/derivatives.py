"""Analytic one-sided directional derivatives of the metric projection.

Each operation returns a :class:`DerivativeResult` holding the derivative
value, a short case tag naming the closed-form clause that produced it, and
a covered flag. Case tags (e.g. "Thm4.1(ii)(a)") are stable wire-format
identifiers consumed by the CLI and tests; uncovered inputs get the tag
"NotCoveredByPaper" and no value, and callers may fall back to the
finite-difference oracle for an empirical estimate.

Covered cases:

* closed ball — interior: v; exterior: (r/d^3)(d^2 v - <x-c,v>(x-c)) with
  d = ||x-c||, reducing to theta when v points along x-c; sphere: the Up
  directions get v - (1/r^2)<x-c,v>(x-c), outward radial directions get
  theta, Down directions get v;
* positive cone — x and v both in the cone: v; x and v both in the dual
  cone: theta; x with all coordinates strictly positive: v for every v;
* constants subspace — the projection is affine, so the derivative is the
  constant function at E(h) for every f;
* Bochner unit ball — the ball cases under the flattening isometry, with
  tags renamed to the vector-valued clause letters;
* generic facts valid for any closed convex set — see
  :func:`generic_facts_derivative`.

Direction classification at a sphere point is decided in closed form:
expanding ||(x-c)+tv||^2 = r^2 + 2t<x-c,v> + t^2||v||^2 shows the point
leaves the ball for all small t > 0 exactly when <x-c,v> >= 0 (class Up)
and enters it exactly when <x-c,v> < 0 (class Down).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import bochner as bo
from .core import DEFAULT_TOL, HilbertPoint, inner, norm, zeros_like
from .errors import (
    DimensionMismatch,
    NotCovered,
    NotOnSphere,
    SpaceMismatch,
    ZeroDirection,
)
from .projection import project
from .sets import (
    BochnerConstantSubspace,
    BochnerPointwiseCone,
    ClosedBall,
    PositiveCone,
    SubspaceSpan,
    as_function,
    contains,
    is_bochner_set,
)

NOT_COVERED_TAG = "NotCoveredByPaper"

_PARALLEL_TOL = 1e-9


class DirectionClass(enum.Enum):
    UP = "Up"
    DOWN = "Down"


@dataclass(frozen=True)
class DerivativeResult:
    """Derivative value plus the case tag of the clause that produced it."""

    covered: bool
    case_tag: str
    value: object = None

    def __post_init__(self):
        if not self.covered and self.value is not None:
            raise ValueError("uncovered results carry no value")
        if self.covered and self.value is None:
            raise ValueError("covered results need a value")


def _not_covered() -> DerivativeResult:
    return DerivativeResult(covered=False, case_tag=NOT_COVERED_TAG)


def _require_direction(v):
    n = bo.bochner_norm(v) if isinstance(v, bo.BochnerFunction) else norm(v)
    if n == 0.0:
        raise ZeroDirection("direction must be nonzero")


def classify_direction(ball: ClosedBall, x: HilbertPoint, v: HilbertPoint,
                       tol: float = DEFAULT_TOL) -> DirectionClass:
    """Up or Down class of a nonzero direction at a sphere point."""
    _require_direction(v)
    d = x - ball.center
    if abs(norm(d) - ball.radius) > tol:
        raise NotOnSphere("direction classes are defined at sphere points only")
    return DirectionClass.UP if inner(d, v) >= 0.0 else DirectionClass.DOWN


def _positive_parallel(v: HilbertPoint, d: HilbertPoint, g: float) -> bool:
    """Whether v = lambda * d with lambda > 0; g = <d, v> precomputed."""
    if g <= 0.0:
        return False
    lam = g / inner(d, d)
    return norm(v - lam * d) <= _PARALLEL_TOL * max(1.0, norm(v))


def ball_derivative(ball: ClosedBall, x: HilbertPoint, v: HilbertPoint,
                    tol: float = DEFAULT_TOL) -> DerivativeResult:
    """Directional derivative of the ball projection; covered everywhere."""
    _require_direction(v)
    d = x - ball.center
    r = ball.radius
    dist = norm(d)
    g = inner(d, v)
    if abs(dist - r) <= tol:
        if g < 0.0:
            return DerivativeResult(True, "Thm4.1(iii)(c)", v)
        if _positive_parallel(v, d, g):
            return DerivativeResult(True, "Thm4.1(iii)(b)", zeros_like(v))
        return DerivativeResult(True, "Thm4.1(iii)(a)", v - (g / (r * r)) * d)
    if dist < r:
        return DerivativeResult(True, "Thm4.1(i)(a)", v)
    if _positive_parallel(v, d, g):
        return DerivativeResult(True, "Thm4.1(ii)(b)", zeros_like(v))
    value = (r / dist**3) * (dist * dist * v - g * d)
    return DerivativeResult(True, "Thm4.1(ii)(a)", value)


def cone_derivative(cone: PositiveCone, x: HilbertPoint, v: HilbertPoint,
                    tol: float = DEFAULT_TOL) -> DerivativeResult:
    """Cone cases; boundary points with outward directions are uncovered."""
    _require_direction(v)
    return _cone_cases(cone.dim, x, v, tol)


def _cone_cases(dim: int, x: HilbertPoint, v: HilbertPoint, tol: float) -> DerivativeResult:
    if x.dim != dim or v.dim != dim:
        raise DimensionMismatch(f"cone of dimension {dim} got {x.dim}/{v.dim}")
    xc, vc = x.coeffs, v.coeffs
    x_in_k = bool(np.all(xc >= -tol))
    v_in_k = bool(np.all(vc >= -tol))
    if x_in_k and v_in_k:
        return DerivativeResult(True, "Thm5.1(i)", v)
    x_in_dual = bool(np.all(xc <= tol))
    v_in_dual = bool(np.all(vc <= tol))
    if x_in_dual and v_in_dual:
        return DerivativeResult(True, "Thm5.1(ii)", zeros_like(v))
    if bool(np.all(xc > tol)):
        return DerivativeResult(True, "Thm5.1(iii)", v)
    return _not_covered()


def constants_subspace_derivative(space: bo.DiscreteProbabilitySpace,
                                  f: bo.BochnerFunction,
                                  h: bo.BochnerFunction) -> DerivativeResult:
    """Derivative of the expectation projection: the map is affine in f."""
    if not (f.space.same_space(space) and h.space.same_space(space)):
        raise SpaceMismatch("f and h must live over the given probability space")
    if f.point_dim != h.point_dim:
        raise SpaceMismatch(f"per-atom dimensions {f.point_dim} and {h.point_dim} differ")
    _require_direction(h)
    value = bo.constant_function(space, bo.expectation(h))
    return DerivativeResult(True, "Thm7.2", value)


_BOCHNER_BALL_TAGS = {
    "Thm4.1(i)(a)": "Prop7.1(i)(a)",
    "Thm4.1(ii)(b)": "Prop7.1(ii)(c)",
    "Thm4.1(iii)(b)": "Prop7.1(iii)(a)",
    "Thm4.1(iii)(c)": "Prop7.1(iii)(c)",
}


def bochner_ball_derivative(f: bo.BochnerFunction, h: bo.BochnerFunction,
                            tol: float = DEFAULT_TOL) -> DerivativeResult:
    """Unit-ball derivative in L2(S; H) via the flattening isometry.

    Tags follow the vector-valued clause letters: the orthogonal sub-cases
    ((ii)(b) off the ball, (iii)(b) on the sphere) refine the generic
    formula tags when <f, h> vanishes.
    """
    bo.check_same(f, h)
    _require_direction(h)
    fp, hp = bo.flatten(f), bo.flatten(h)
    ball = ClosedBall(HilbertPoint(np.zeros(fp.dim), fp.weights), 1.0)
    base = ball_derivative(ball, fp, hp, tol)
    tag = base.case_tag
    g = bo.bochner_inner(f, h)
    orthogonal = abs(g) <= tol * max(1.0, bo.bochner_norm(h))
    if tag == "Thm4.1(ii)(a)":
        tag = "Prop7.1(ii)(b)" if orthogonal else "Prop7.1(ii)(a)"
    elif tag == "Thm4.1(iii)(a)":
        tag = "Prop7.1(iii)(b)" if orthogonal else "Prop7.1(iii)(a)"
    else:
        tag = _BOCHNER_BALL_TAGS[tag]
    return DerivativeResult(True, tag, bo.unflatten(f.space, base.value))


def _interior_point(s, x, tol: float) -> bool:
    """Membership in the set's interior; empty-interior variants return False."""
    if isinstance(s, ClosedBall):
        return norm(x - s.center) < s.radius - tol
    if isinstance(s, PositiveCone):
        return bool(np.all(x.coeffs > tol))
    if isinstance(s, SubspaceSpan):
        return s.is_full
    if isinstance(s, BochnerPointwiseCone):
        f = as_function(s, x)
        return all(bool(np.all(w.coeffs > tol)) for w in f.values)
    if isinstance(s, BochnerConstantSubspace):
        return s.space.n_atoms == 1
    raise TypeError(f"unsupported set {type(s).__name__}")


def _inverse_image_interior(s, x, u, tol: float) -> bool:
    """Whether x lies in the interior of the inverse image of u = P(x), x not in C.

    Ball inverse images are rays, with nonempty interior only in dimension
    one, where the residual-parallel case has already matched; so only the
    cone variants can reach this test positively.
    """
    if isinstance(s, PositiveCone):
        return bool(np.all(x.coeffs < -tol))
    if isinstance(s, BochnerPointwiseCone):
        f = as_function(s, x)
        return all(bool(np.all(w.coeffs < -tol)) for w in f.values)
    return False


def generic_facts_derivative(s, x, v, tol: float = DEFAULT_TOL) -> DerivativeResult:
    """Derivatives implied by facts valid for every closed convex set.

    In coverage order: a singleton set has a constant projection (tag
    Lem3.2, derivative theta); interior points move freely (Prop3.3, v);
    points that can travel both ways along v inside the set sit on a
    segment of fixed points (Lem3.1, v, decided by a two-sided containment
    probe at two small steps); outside the set, directions parallel to the
    projection residual leave the projection stationary (Prop3.1, theta);
    and an exterior point interior to an inverse image is locally mapped
    to one value (Prop3.2, theta). Anything else is reported uncovered.
    """
    _require_direction(v)
    flat = is_bochner_set(s)
    xp = bo.flatten(as_function(s, x)) if flat else x
    vp = bo.flatten(as_function(s, v)) if flat else v

    def _wrap(p):
        return bo.unflatten(s.space, p) if flat and isinstance(x, bo.BochnerFunction) else p

    if isinstance(s, SubspaceSpan) and s.is_singleton:
        return DerivativeResult(True, "Lem3.2", _wrap(zeros_like(vp)))
    in_set = contains(s, xp, tol)
    if in_set and _interior_point(s, xp, tol):
        return DerivativeResult(True, "Prop3.3", _wrap(vp))
    if in_set:
        step = 1e-6 * max(1.0, norm(xp)) / max(1.0, norm(vp))
        two_sided = all(
            contains(s, xp + delta * vp, tol) and contains(s, xp - delta * vp, tol)
            for delta in (step, step / 128.0)
        )
        if two_sided:
            return DerivativeResult(True, "Lem3.1", _wrap(vp))
        return _not_covered()
    u = project(s, xp)
    w = xp - u
    lam = inner(vp, w) / inner(w, w)
    if abs(lam) > 0.0 and norm(vp - lam * w) <= _PARALLEL_TOL * max(1.0, norm(vp)):
        return DerivativeResult(True, "Prop3.1", _wrap(zeros_like(vp)))
    if _inverse_image_interior(s, xp, u, tol):
        return DerivativeResult(True, "Prop3.2", _wrap(zeros_like(vp)))
    return _not_covered()


def derivative(s, x, v, tol: float = DEFAULT_TOL) -> DerivativeResult:
    """Best covered derivative: specialized formula first, generic facts second."""
    if isinstance(s, ClosedBall):
        return ball_derivative(s, x, v, tol)
    if isinstance(s, PositiveCone):
        result = cone_derivative(s, x, v, tol)
    elif isinstance(s, BochnerPointwiseCone):
        _require_direction(v)
        fx, fv = as_function(s, x), as_function(s, v)
        if fx.point_dim != fv.point_dim:
            raise SpaceMismatch(
                f"per-atom dimensions {fx.point_dim} and {fv.point_dim} differ"
            )
        flat_result = _cone_cases(
            s.space.n_atoms * fx.point_dim, bo.flatten(fx), bo.flatten(fv), tol
        )
        if flat_result.covered and isinstance(x, bo.BochnerFunction):
            value = bo.unflatten(s.space, flat_result.value)
            result = DerivativeResult(True, flat_result.case_tag, value)
        else:
            result = flat_result
    elif isinstance(s, BochnerConstantSubspace):
        fx, fv = as_function(s, x), as_function(s, v)
        result = constants_subspace_derivative(s.space, fx, fv)
        if not isinstance(x, bo.BochnerFunction):
            result = DerivativeResult(True, result.case_tag, bo.flatten(result.value))
        return result
    elif isinstance(s, SubspaceSpan):
        result = _not_covered()
    else:
        raise TypeError(f"unsupported set {type(s).__name__}")
    if result.covered:
        return result
    return generic_facts_derivative(s, x, v, tol)


def homogeneity_check(derive, x, v, lam: float) -> bool:
    """Whether P'(x)(lam v) = lam P'(x)(v) within 1e-9 relative."""
    if lam <= 0.0:
        raise ValueError("homogeneity scale must be positive")
    base = derive(x, v)
    scaled = derive(x, lam * v if not isinstance(v, bo.BochnerFunction)
                    else bo.BochnerFunction(v.space, tuple(lam * w for w in v.values)))
    if not (base.covered and scaled.covered):
        raise NotCovered("homogeneity needs both derivative calls covered")
    b = bo.flatten(base.value) if isinstance(base.value, bo.BochnerFunction) else base.value
    sc = bo.flatten(scaled.value) if isinstance(scaled.value, bo.BochnerFunction) else scaled.value
    return norm(sc - lam * b) <= 1e-9 * max(1.0, lam * norm(b))
