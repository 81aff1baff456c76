"""Closed-form metric projections and the distance function.

Every supported set variant admits an exact projection formula:

* closed ball: identity inside, radial pull-back c + (r/||x-c||)(x-c) outside;
* positive cone: coordinate-wise clipping at zero;
* subspace span: sum of <x, u_i> u_i over the orthonormal generators;
* Bochner pointwise cone: clipping per atom and per coordinate;
* Bochner constants: the constant function at the expectation.

Points with ||x-c|| in (r, r+1e-12] are projected by the identity: the radial
formula is continuous at the sphere, both branches agree to 1e-12 there, and
skipping the division avoids amplifying a near-zero denominator direction.
"""

from __future__ import annotations

import numpy as np

from . import bochner as bo
from .core import norm, zeros_like
from .errors import DimensionMismatch, HilprojError
from .sets import (
    BochnerConstantSubspace,
    BochnerPointwiseCone,
    ClosedBall,
    PositiveCone,
    SubspaceSpan,
    as_function,
    span_component,
)

_SPHERE_BAND = 1e-12


def clip_nonnegative(coeffs: np.ndarray) -> np.ndarray:
    """Coordinates at or below zero map to zero."""
    return np.where(coeffs > 0.0, coeffs, 0.0)


def project(s, x):
    """Nearest point of the set. Bochner results mirror the input form."""
    if isinstance(s, ClosedBall):
        d = norm(x - s.center)
        if d <= s.radius + _SPHERE_BAND:
            return x
        return s.center + (s.radius / d) * (x - s.center)
    if isinstance(s, PositiveCone):
        if x.dim != s.dim:
            raise DimensionMismatch(f"point has dimension {x.dim}, cone needs {s.dim}")
        return x.replace_coeffs(clip_nonnegative(x.coeffs))
    if isinstance(s, SubspaceSpan):
        if x.dim != s.dim:
            raise DimensionMismatch(f"point has dimension {x.dim}, span needs {s.dim}")
        if s.is_singleton:
            return zeros_like(x)
        return span_component(s, x)
    if isinstance(s, BochnerPointwiseCone):
        f = as_function(s, x)
        g = bo.project_pointwise_cone(f)
        return g if isinstance(x, bo.BochnerFunction) else bo.flatten(g)
    if isinstance(s, BochnerConstantSubspace):
        f = as_function(s, x)
        g = bo.project_constants(f)
        return g if isinstance(x, bo.BochnerFunction) else bo.flatten(g)
    raise TypeError(f"unsupported set {type(s).__name__}")


def distance(s, x) -> float:
    """d(x, C) = ||x - P_C(x)||."""
    u = project(s, x)
    if isinstance(x, bo.BochnerFunction):
        return bo.bochner_distance(x, u)
    return norm(x - u)


def project_sequence(s, xs) -> list:
    """Element-wise projection; failures carry the offending index."""
    out = []
    for i, x in enumerate(xs):
        try:
            out.append(project(s, x))
        except HilprojError as e:
            raise type(e)(f"element {i}: {e}") from e
    return out
