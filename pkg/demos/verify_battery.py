"""Run the seeded property battery over every set variant and print a table.

Each property is an inequality every metric projection must satisfy; the
battery samples random points per trial and records the worst residual.
A clean run prints zero failures everywhere.
"""

import numpy as np

from hilproj import (
    BochnerConstantSubspace,
    BochnerPointwiseCone,
    ClosedBall,
    DiscreteProbabilitySpace,
    HilbertPoint,
    PositiveCone,
    SubspaceSpan,
    property_battery,
)

TRIALS = 500
SEED = 2024


def main():
    space = DiscreteProbabilitySpace(("a", "b"), np.array([0.25, 0.75]))
    variants = [
        ("ball", ClosedBall(HilbertPoint(np.array([0.5, -1.0, 2.0])), 1.5)),
        ("positive cone", PositiveCone(6)),
        ("subspace", SubspaceSpan((HilbertPoint(np.array([1.0, 0.0, 0.0])),
                                   HilbertPoint(np.array([0.0, 1.0, 0.0]))))),
        ("pointwise cone", BochnerPointwiseCone(space)),
        ("constants", BochnerConstantSubspace(space)),
    ]
    total_failures = 0
    for name, s in variants:
        print(f"{name} ({TRIALS} trials, seed {SEED}):")
        for row in property_battery(s, TRIALS, SEED):
            print(f"  {row['property']:<26} failures {row['failures']:>3}   "
                  f"worst residual {row['worst_residual']:.3e}")
            total_failures += row["failures"]
        print()
    print(f"total failures: {total_failures}")
    raise SystemExit(0 if total_failures == 0 else 1)


if __name__ == "__main__":
    main()
