"""Walk the inverse image P^-1(y) of a projection and the point classes.

A set member y is internal when only y itself projects onto it, and a
cuticle point when the inverse image is strictly larger. For a ball the
cuticle points are exactly the sphere, and the inverse image of a sphere
point is the outward ray; for the positive cone the inverse images are
translates by the dual cone restricted to the zero coordinates.
"""

import numpy as np

from hilproj import (
    ClosedBall,
    HilbertPoint,
    PositiveCone,
    ball_inverse_ray,
    classify_point,
    dual_cone_contains,
    in_inverse_image,
    orthogonal_cone,
    project,
    SubspaceSpan,
)


def pt(*coeffs):
    return HilbertPoint(np.array(coeffs, dtype=float))


def main():
    ball = ClosedBall(pt(0.0, 0.0), 1.0)
    for x in (pt(0.0, 0.0), pt(0.5, 0.5), pt(1.0, 0.0), pt(0.6, -0.8)):
        print(f"ball point {x.coeffs}: {classify_point(ball, x).value}")
    print()

    y = pt(1.0, 0.0)
    print(f"outward ray through sphere point {y.coeffs}:")
    for t in (0.0, 1.0, 3.0):
        r = ball_inverse_ray(ball, y, t)
        member = in_inverse_image(ball, y, r)
        print(f"  t = {t}: {r.coeffs} projects back to y: {member}")
        assert np.allclose(project(ball, r).coeffs, y.coeffs)
    print(f"  off the ray: {in_inverse_image(ball, y, pt(1.0, 1.0))}")
    print()

    cone = PositiveCone(2)
    vertex = pt(0.0, 0.0)
    print("everything in the dual cone projects onto the cone vertex:")
    for x in (pt(-1.0, -2.0), pt(-0.3, 0.0), pt(0.5, -1.0)):
        in_dual = dual_cone_contains(cone, x)
        onto_vertex = in_inverse_image(cone, vertex, x)
        print(f"  x = {x.coeffs}: dual member {in_dual}, projects to vertex {onto_vertex}")
    print()

    plane = SubspaceSpan((pt(1.0, 0.0, 0.0), pt(0.0, 1.0, 0.0)))
    comp = orthogonal_cone(plane, 3)
    print("orthogonal complement of span{e1, e2} in R^3:")
    for g in comp.generators:
        print(f"  generator {g.coeffs}")


if __name__ == "__main__":
    main()
