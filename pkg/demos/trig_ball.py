"""Project a trigonometric polynomial onto the unit ball of L2(-pi, pi).

Functions are carried as coefficient vectors against the orthonormal
trigonometric system {1/sqrt(2 pi), cos(mt)/sqrt(pi), sin(mt)/sqrt(pi)}.
Projection onto the unit ball of the function space is then the ball
projection of the coefficient vector, and the projected coefficients
evaluate back to the normalized function.
"""

import math

import numpy as np

from hilproj import (
    ClosedBall,
    HilbertPoint,
    ball_derivative,
    evaluate,
    project,
    trig_coefficients,
)


def main():
    f = lambda t: 0.5 + math.cos(t) + math.sin(2.0 * t)
    coeffs = trig_coefficients(f, 7)
    nrm = float(np.linalg.norm(coeffs.coeffs))
    print("f(t) = 0.5 + cos t + sin 2t, seven coefficients:")
    print(" ", np.round(coeffs.coeffs, 12))
    print(f"  ||f|| = {nrm:.12f} (exact: sqrt(2.5 pi) = {math.sqrt(2.5 * math.pi):.12f})")
    print()

    ball = ClosedBall(HilbertPoint(np.zeros(7)), 1.0)
    proj = project(ball, coeffs)
    print("projected onto the unit ball (coefficients shrink by 1/||f||):")
    print(" ", np.round(proj.coeffs, 12))
    ts = np.linspace(-math.pi, math.pi, 5)
    vals = evaluate(proj, ts)
    print("  pointwise check that P(f) = f / ||f||:")
    for t, val in zip(ts, vals):
        print(f"    t = {t:+.3f}: P(f)(t) = {val:+.9f}, f(t)/||f|| = {f(t) / nrm:+.9f}")
    print()

    g = trig_coefficients(lambda t: math.sin(t), 7)
    res = ball_derivative(ball, coeffs, g)
    print(f"directional derivative of the projection along sin t [{res.case_tag}]:")
    print(" ", np.round(res.value.coeffs, 12))
    t = 1e-7
    quotient = (project(ball, coeffs + t * g) - proj).coeffs / t
    print("  difference quotient at t = 1e-7 agrees to "
          f"{float(np.max(np.abs(quotient - res.value.coeffs))):.2e}")


if __name__ == "__main__":
    main()
