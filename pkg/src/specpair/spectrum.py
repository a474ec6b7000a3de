"""Enumeration of the orthogonal frequency set and completeness sums.

Depth-n frequencies are the affine digit sums

    xi(w) = sum_{k=1..n} (E^T)^{k-1} l_{w_k},  w a word over the digits,

computed exactly and collision-checked (a collision means the datum is
broken, not that two words share a frequency).  The element at index i
encodes its word in base N, most significant letter first, so the
depth-(n-1) enumeration sits at the indices divisible by N -- the
completeness sums inherit their monotonicity from that nesting.

The completeness sum over a truncation is a Bessel partial sum: it is
reported per depth and never asserted against its limit, because a
finite truncation cannot tell "strictly below one" from "equal to one".
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from . import exact
from .errors import BudgetExceeded, CollisionDetected, MemberOfSpectrum
from .exact import Vector
from .lattice import SimpleFactor
from .measure import ATOM_BUDGET
from .transform import DEFAULT_SETTINGS, TransformSettings, mu_hat_value

WITNESS_THRESHOLD = 1e-6


@dataclass(frozen=True, eq=False)
class SpectrumEnumeration:
    """All depth-n frequencies in word-rank order."""

    depth: int
    base: int
    elements: tuple[Vector, ...]

    @cached_property
    def floats(self) -> np.ndarray:
        arr = np.array([exact.to_floats(e) for e in self.elements])
        arr.setflags(write=False)
        return arr

    @cached_property
    def _index(self) -> dict[Vector, int]:
        return {e: i for i, e in enumerate(self.elements)}

    def __len__(self) -> int:
        return len(self.elements)

    def word(self, index: int) -> tuple[int, ...]:
        if not 0 <= index < len(self.elements):
            raise IndexError(index)
        letters = []
        for _ in range(self.depth):
            letters.append(index % self.base)
            index //= self.base
        return tuple(reversed(letters))

    def index_of(self, xi) -> int | None:
        try:
            return self._index.get(exact.as_vector(xi, len(self.elements[0])))
        except TypeError:
            return None

    def depth_slice(self, depth: int) -> range:
        """Indices of the sub-enumeration at a smaller depth."""
        if not 0 <= depth <= self.depth:
            raise ValueError(f"depth {depth} outside [0, {self.depth}]")
        step = self.base ** (self.depth - depth)
        return range(0, len(self.elements), step)


def enumerate_spectrum(system: SimpleFactor, depth: int) -> SpectrumEnumeration:
    """All digit sums of length ``depth``, exact and collision-checked."""
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    if system.N**depth > ATOM_BUDGET:
        raise BudgetExceeded(f"{system.N}^{depth} frequencies exceed the budget")
    elements: list[Vector] = [exact.zero_vector(system.dim)]
    power = exact.identity(system.dim)
    for level in range(1, depth + 1):
        if level > 1:
            power = exact.mat_mul(system.E_transpose, power)
        contributions = [exact.mat_vec(power, l) for l in system.freq_digits]
        elements = [
            exact.vec_add(base, c) for base in elements for c in contributions
        ]
    seen: dict[Vector, int] = {}
    for rank, xi in enumerate(elements):
        other = seen.setdefault(xi, rank)
        if other != rank:
            enum = SpectrumEnumeration(depth=depth, base=system.N,
                                       elements=tuple(elements))
            raise CollisionDetected(
                f"words {enum.word(other)} and {enum.word(rank)} both map to {xi}"
            )
    return SpectrumEnumeration(depth=depth, base=system.N, elements=tuple(elements))


def _term_values(
    system: SimpleFactor,
    s,
    enum: SpectrumEnumeration,
    settings: TransformSettings,
) -> list[float]:
    if isinstance(s, (int, float, Fraction)):
        s = (s,)
    values = []
    for xi in enum.elements:
        shifted = tuple(sv - xv for sv, xv in zip(s, xi))
        values.append(abs(mu_hat_value(system, shifted, settings)) ** 2)
    return values


def _compensated(values: list[float], norms: list[float]) -> float:
    # accumulate far-out (tiny) terms first; fsum is exact regardless,
    # the ordering keeps partial results reproducible
    ordered = sorted(zip(norms, values), key=lambda p: (-p[0], p[1]))
    return math.fsum(v for _, v in ordered)


def completeness_partial_sum(
    system: SimpleFactor,
    s,
    enum_depth: int,
    settings: TransformSettings = DEFAULT_SETTINGS,
) -> float:
    """sum |transform(s - xi)|^2 over the depth-n enumeration.

    A Bessel partial sum: nonnegative terms, monotone in depth, at most
    one (plus rounding) for every s.
    """
    enum = enumerate_spectrum(system, enum_depth)
    values = _term_values(system, s, enum, settings)
    norms = [float(np.linalg.norm(f)) for f in enum.floats]
    return _compensated(values, norms)


@dataclass(frozen=True)
class CompletenessRow:
    depth: int
    sigma: float
    increment: float


def completeness_table(
    system: SimpleFactor,
    s,
    depths,
    settings: TransformSettings = DEFAULT_SETTINGS,
) -> list[CompletenessRow]:
    """Per-depth partial sums, sharing one evaluation per frequency."""
    depths = sorted(set(int(d) for d in depths))
    if not depths or depths[0] < 0:
        raise ValueError("depths must be nonnegative")
    deepest = enumerate_spectrum(system, depths[-1])
    values = _term_values(system, s, deepest, settings)
    norms = [float(np.linalg.norm(f)) for f in deepest.floats]
    rows = []
    previous = 0.0
    for depth in depths:
        indices = deepest.depth_slice(depth)
        sigma = _compensated([values[i] for i in indices],
                             [norms[i] for i in indices])
        rows.append(CompletenessRow(depth=depth, sigma=sigma,
                                    increment=sigma - previous))
        previous = sigma
    return rows


@dataclass(frozen=True)
class Witness:
    """A frequency in the enumeration that pairs non-orthogonally with s."""

    xi: Vector
    value: complex


@dataclass(frozen=True)
class AllOrthogonal:
    """No witness found at this depth; inconclusive, not a proof."""

    enum_depth: int
    threshold: float


def maximality_probe(
    system: SimpleFactor,
    s,
    enum_depth: int,
    settings: TransformSettings = DEFAULT_SETTINGS,
    threshold: float = WITNESS_THRESHOLD,
):
    """Search for a frequency the probe point is *not* orthogonal to.

    A Witness supports maximality (s cannot be adjoined to the orthogonal
    family); AllOrthogonal only reports that this truncation found none.
    Raises MemberOfSpectrum when s is already enumerated.
    """
    if isinstance(s, (int, float, Fraction)):
        s = (s,)
    enum = enumerate_spectrum(system, enum_depth)
    try:
        exact_s: tuple | None = tuple(exact.as_rational(v) for v in s)
    except TypeError:
        exact_s = None
    if exact_s is not None and enum.index_of(exact_s) is not None:
        raise MemberOfSpectrum(f"{s!r} is in the depth-{enum_depth} enumeration")
    if exact_s is None:
        floats = tuple(float(v) for v in s)
        if any(tuple(row) == floats for row in enum.floats):
            raise MemberOfSpectrum(f"{s!r} is in the depth-{enum_depth} enumeration")
    order = sorted(
        range(len(enum)),
        key=lambda i: (float(np.linalg.norm(enum.floats[i])), i),
    )
    for i in order:
        xi = enum.elements[i]
        shifted = tuple(sv - xv for sv, xv in zip(s, xi))
        value = mu_hat_value(system, shifted, settings)
        if abs(value) > threshold:
            return Witness(xi=xi, value=value)
    return AllOrthogonal(enum_depth=enum_depth, threshold=threshold)
