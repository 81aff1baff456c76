"""Vector-valued functions on a finite probability space, and a warning.

A function f: S -> H over finitely many weighted atoms is a point of a
larger Hilbert space. Projecting onto the constant functions is taking the
expectation; projecting onto the pointwise positive cone clips atom by
atom. The last section reproduces the classical trap: tensoring a basis of
H with the constant 1 gives an orthonormal system of the function space
that is NOT a basis as soon as the space has an event of measure strictly
between 0 and 1. A concrete unit-norm-ish function orthogonal to the whole
system certifies the gap.
"""

import numpy as np

from hilproj import (
    BochnerFunction,
    DiscreteProbabilitySpace,
    HilbertPoint,
    bochner_norm,
    expectation,
    orthonormal_system_report,
    project_constants,
    project_pointwise_cone,
)


def pt(*coeffs):
    return HilbertPoint(np.array(coeffs, dtype=float))


def main():
    space = DiscreteProbabilitySpace(("rain", "sun"), np.array([0.25, 0.75]))
    f = BochnerFunction(space, (pt(1.0, -2.0), pt(-3.0, 4.0)))
    print("f over atoms (rain: 0.25, sun: 0.75):")
    for atom, value in zip(space.atom_ids, f.values):
        print(f"  f({atom}) = {value.coeffs}")
    print(f"  E(f) = {expectation(f).coeffs}")
    print()

    const = project_constants(f)
    print("projection onto constant functions = expectation at every atom:")
    for atom, value in zip(space.atom_ids, const.values):
        print(f"  P(f)({atom}) = {value.coeffs}")
    print()

    clipped = project_pointwise_cone(f)
    print("projection onto the pointwise positive cone clips per atom:")
    for atom, value in zip(space.atom_ids, clipped.values):
        print(f"  P(f)({atom}) = {value.coeffs}")
    print()

    half = DiscreteProbabilitySpace(("a", "b"), np.array([0.5, 0.5]))
    report = orthonormal_system_report(half, 8)
    print("orthonormal system 1 x e_n over two equal atoms, 8 terms:")
    print(f"  gram deviation from identity: {report.orthonormality_deviation:.2e}")
    print(f"  half-measure subset used:     {report.subset_ids}")
    g = report.counterexample
    print("  counterexample g (indicator-modulated geometric series):")
    for atom, value in zip(half.atom_ids, g.values):
        print(f"    g({atom}) = {np.round(value.coeffs, 6)}")
    print(f"  ||g||^2 = {report.counterexample_norm_sq:.12f} > 0, yet")
    print(f"  max |<g, 1 x e_n>| = {report.max_abs_inner:.2e}")
    print(f"  ||g|| = {bochner_norm(g):.6f}: a nonzero function invisible to the system,")
    print("  so the system spans a strictly smaller closed subspace.")


if __name__ == "__main__":
    main()
