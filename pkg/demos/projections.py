"""Project points onto balls, cones, and subspaces and check the geometry.

Every projection u = P(x) is certified by the variational inequality
<x - u, u - z> >= 0 against sampled members z, the defining property of
the nearest point in a closed convex set.
"""

import numpy as np

from hilproj import (
    ClosedBall,
    HilbertPoint,
    PositiveCone,
    SubspaceSpan,
    distance,
    project,
    variational_certificate,
)


def pt(*coeffs):
    return HilbertPoint(np.array(coeffs, dtype=float))


def show(name, s, x):
    u = project(s, x)
    d = distance(s, x)
    cert = variational_certificate(s, x, u, samples=2000)
    print(f"{name}:")
    print(f"  x          = {x.coeffs}")
    print(f"  P(x)       = {u.coeffs}")
    print(f"  d(x, C)    = {d:.12g}")
    print(f"  VI minimum = {cert['min_inner']:.3e}  (pass: {cert['pass']})")
    print()


def main():
    unit_ball = ClosedBall(pt(0.0, 0.0), 1.0)
    show("unit ball, exterior point", unit_ball, pt(3.0, 4.0))
    show("unit ball, interior point is fixed", unit_ball, pt(0.3, -0.4))

    shifted = ClosedBall(pt(1.0, 1.0), 2.0)
    show("shifted ball of radius 2", shifted, pt(5.0, 1.0))

    cone = PositiveCone(4)
    show("positive cone clips negatives", cone, pt(1.0, -2.0, 0.5, -0.1))

    line = SubspaceSpan((pt(1.0, 0.0, 0.0),))
    show("span of e1 keeps the first coordinate", line, pt(5.0, 3.0, -2.0))

    print("nonexpansiveness on one random pair:")
    rng = np.random.default_rng(0)
    x, y = pt(*rng.uniform(-2, 2, 4)), pt(*rng.uniform(-2, 2, 4))
    px, py = project(cone, x), project(cone, y)
    lhs = np.linalg.norm(px.coeffs - py.coeffs)
    rhs = np.linalg.norm(x.coeffs - y.coeffs)
    print(f"  ||P(x) - P(y)|| = {lhs:.6f} <= ||x - y|| = {rhs:.6f}")


if __name__ == "__main__":
    main()
