"""The digit mask, the measure transform, and its functional equation.

The transform of the invariant measure obeys

    transform(E^T t) = mask(E^T t) * transform(t),

which unrolls to the truncated product  prod_k mask((E^T)^{-k} t)  --
the product backend.  The quadrature backend integrates the exponential
against a depth-n refinement instead; the two paths share no code, which
is what makes their agreement a meaningful check.

At rational frequencies the mask's phases are rational, so its zeros
(which carry all orthogonality statements downstream) are decided
exactly and propagate as literal zeros through the product.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from . import exact
from .cyclotomic import exp_sum_is_zero
from .errors import BudgetExceeded
from .lattice import SimpleFactor
from .measure import DiscreteMeasure, build_ifs, integrate_exponential, refine_measure

MAX_PRODUCT_DEPTH = 200

# Structural mask zeros reduce to tiny conductors (half-integer phases for
# the built-in systems), so the exact test on the product hot path stops
# early for the huge conductors that show up along deep pull-back orbits.
MASK_CONDUCTOR_LIMIT = 64


@dataclass(frozen=True)
class TransformSettings:
    """Truncation depths and backend choice for transform evaluation."""

    product_depth: int = 30
    quadrature_depth: int = 12
    backend: str = "product"

    def __post_init__(self):
        if self.backend not in ("product", "quadrature", "both"):
            raise ValueError(f"unknown backend {self.backend!r}")
        if not 1 <= self.product_depth <= MAX_PRODUCT_DEPTH:
            raise BudgetExceeded(
                f"product depth {self.product_depth} outside [1, {MAX_PRODUCT_DEPTH}]"
            )
        if self.quadrature_depth < 0:
            raise ValueError("quadrature depth must be nonnegative")


DEFAULT_SETTINGS = TransformSettings()


class BothResult(NamedTuple):
    """Product value together with the cross-backend discrepancy."""

    value: complex
    product: complex
    quadrature: complex
    discrepancy: float


def _normalize_frequency(system: SimpleFactor, t):
    if isinstance(t, (int, float, Fraction)):
        t = (t,)
    if len(t) != system.dim:
        raise ValueError(f"expected a frequency of length {system.dim}")
    try:
        return tuple(exact.as_rational(v) for v in t), True
    except TypeError:
        return tuple(float(v) for v in t), False


def mask(system: SimpleFactor, t) -> complex:
    """The digit mask (1/N) sum_b e^{i 2 pi b.t}.

    mask(0) = 1.  At rational ``t`` the value is pinned exactly when it
    is a structural 1 (all phases integral) or a structural 0 (the root
    of unity sum vanishes in its cyclotomic field).
    """
    freq, is_exact = _normalize_frequency(system, t)
    n = system.N
    if is_exact:
        phases = [exact.dot(b, freq) for b in system.digits]
        if all(p.denominator == 1 for p in phases):
            return complex(1.0)
        terms = [(Fraction(1, n), p) for p in phases]
        if exp_sum_is_zero(terms, MASK_CONDUCTOR_LIMIT) is True:
            return 0j
        return sum(
            cmath.exp(2j * math.pi * float(p)) for p in phases
        ) / n
    return sum(
        cmath.exp(2j * math.pi * sum(float(bc) * tc for bc, tc in zip(b, freq)))
        for b in system.digits
    ) / n


def _pull_back(system: SimpleFactor, freq, is_exact: bool):
    """One application of (E^T)^{-1} on the frequency side."""
    m = system.E_transpose_inverse
    if is_exact:
        return exact.mat_vec(m, freq)
    mf = exact.matrix_to_floats(m)
    return tuple(
        sum(mf[i][j] * freq[j] for j in range(system.dim))
        for i in range(system.dim)
    )


@lru_cache(maxsize=8)
def _cached_measure(system: SimpleFactor, depth: int) -> DiscreteMeasure:
    return refine_measure(build_ifs(system), depth)


def _mu_hat_product(system: SimpleFactor, t, depth: int) -> complex:
    freq, is_exact = _normalize_frequency(system, t)
    value = complex(1.0)
    for _ in range(depth):
        factor = mask(system, freq)
        if factor == 0:
            return 0j
        value *= factor
        freq = _pull_back(system, freq, is_exact)
    return value


def _mu_hat_quadrature(system: SimpleFactor, t, depth: int) -> complex:
    freq, _ = _normalize_frequency(system, t)
    return integrate_exponential(_cached_measure(system, depth), freq)


def mu_hat(system: SimpleFactor, t, settings: TransformSettings = DEFAULT_SETTINGS):
    """The transform of the invariant measure at frequency ``t``.

    Backend "product" returns the truncated mask product, "quadrature"
    integrates against the cached refinement, and "both" returns a
    BothResult whose value is the product value plus the cross-backend
    discrepancy.
    """
    if settings.backend == "product":
        return _mu_hat_product(system, t, settings.product_depth)
    if settings.backend == "quadrature":
        return _mu_hat_quadrature(system, t, settings.quadrature_depth)
    product = _mu_hat_product(system, t, settings.product_depth)
    quadrature = _mu_hat_quadrature(system, t, settings.quadrature_depth)
    return BothResult(
        value=product,
        product=product,
        quadrature=quadrature,
        discrepancy=abs(product - quadrature),
    )


def mu_hat_value(
    system: SimpleFactor, t, settings: TransformSettings = DEFAULT_SETTINGS
) -> complex:
    """Like mu_hat but always a plain complex (product value under "both")."""
    result = mu_hat(system, t, settings)
    return result.value if isinstance(result, BothResult) else result


def functional_equation_residual(
    system: SimpleFactor, t, settings: TransformSettings | None = None
) -> float:
    """| transform(E^T t) - mask(E^T t) transform(t) | for the chosen backend.

    Defaults to the quadrature backend, where the residual measures real
    refinement error; the product backend satisfies the identity by
    construction up to its truncation tail.
    """
    if settings is None:
        settings = TransformSettings(backend="quadrature")
    freq, is_exact = _normalize_frequency(system, t)
    et = system.E_transpose if is_exact else exact.matrix_to_floats(system.E_transpose)
    pushed = tuple(
        sum(et[i][j] * freq[j] for j in range(system.dim))
        for i in range(system.dim)
    )
    left = mu_hat_value(system, pushed, settings)
    right = mask(system, pushed) * mu_hat_value(system, freq, settings)
    return abs(left - right)
