"""Compare closed-form directional derivatives with difference quotients.

The projection map is directionally differentiable everywhere on balls and
in the covered cone cases; each closed form carries the case label that
produced it. The finite-difference oracle knows none of the formulas and
still lands on the same limits. Cone boundary points moving out of the cone
have no covered closed form: the result says so instead of guessing, and
the oracle supplies an empirical limit.
"""

import numpy as np

from hilproj import (
    ClosedBall,
    HilbertPoint,
    PositiveCone,
    classify_direction,
    derivative,
    fd_derivative,
)


def pt(*coeffs):
    return HilbertPoint(np.array(coeffs, dtype=float))


def compare(name, s, x, v):
    res = derivative(s, x, v)
    est = fd_derivative(s, x, v)
    print(f"{name}:")
    print(f"  x = {x.coeffs}, v = {v.coeffs}")
    if res.covered:
        gap = float(np.max(np.abs(res.value.coeffs - est.value.coeffs)))
        print(f"  closed form [{res.case_tag}] = {res.value.coeffs}")
        print(f"  fd oracle                   = {est.value.coeffs}")
        print(f"  max gap = {gap:.2e}")
    else:
        print(f"  not covered by a closed form [{res.case_tag}]")
        print(f"  empirical fd limit = {est.value.coeffs}")
    print()


def main():
    ball = ClosedBall(pt(0.0, 0.0), 1.0)
    compare("interior point: identity map", ball, pt(0.3, -0.2), pt(1.0, 2.0))
    compare("exterior point", ball, pt(2.0, 0.0), pt(0.0, 1.0))

    x = pt(1.0, 0.0)
    for v in (pt(0.5, 1.0), pt(-0.5, 1.0)):
        klass = classify_direction(ball, x, v)
        compare(f"sphere point, direction class {klass.value}", ball, x, v)

    cone = PositiveCone(3)
    compare("cone, both in the cone", cone, pt(1.0, 0.0, 2.0), pt(0.5, 1.0, 0.0))
    compare("cone, both in the dual", cone, pt(-1.0, -2.0, 0.0), pt(-1.0, 0.0, -0.5))
    compare("cone interior, any direction", cone, pt(1.0, 2.0, 3.0), pt(-1.0, 4.0, -2.0))
    compare("cone boundary, leaving the cone", cone, pt(1.0, 0.0, 1.0), pt(0.0, -1.0, 0.0))


if __name__ == "__main__":
    main()
