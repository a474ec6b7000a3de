"""The isometry family T_l on exponentials and its relation checks.

Each frequency digit l induces an isometry acting on exponentials by
T_l e_s = e_{E^T s + l}.  The family satisfies the Cuntz relations: the
ranges of distinct generators are orthogonal and the range projections
sum to the identity.  Rather than materializing truncated operator
matrices (the exponentials are not an orthogonal family, so truncation
would inject projection error), the relations are verified at the level
of transform values, where they are exact consequences of the digit-mask
zeros:

  isometry        max |transform(E^T u) - transform(u)|,     u in dual(K)
  range overlap   max |transform(E^T u + l' - l)|,           l != l'
  completeness    max |sum_l mask(s - l) - 1|,               s in dual(K)

The adjoint on an exponential is derived plumbing,
T_l* (c e_t) = c mask(t - l) e_{(E^T)^{-1}(t - l)}; on frequencies of the
form E^T s + l' with s in dual(K) the mask collapses to a Kronecker
delta, which the property tests pin down.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import exact
from .exact import Vector
from .lattice import (
    CheckResult,
    Lattice,
    SimpleFactor,
    inclusion_matrix,
    is_expansive,
    same_lattice,
)
from .measure import DiscreteMeasure, integrate_exponential
from .transform import (
    DEFAULT_SETTINGS,
    TransformSettings,
    _cached_measure,
    mask,
    mu_hat_value,
)


@dataclass(frozen=True)
class ExponentialVector:
    """A scalar multiple of a pure exponential, coeff * e_freq.

    coeff == 0 encodes the zero vector; its frequency is canonicalized
    to 0 so equality behaves.
    """

    coeff: complex
    freq: tuple

    def __post_init__(self):
        coeff = complex(self.coeff)
        freq = tuple(self.freq)
        if coeff == 0:
            freq = (Fraction(0),) * len(freq)
        object.__setattr__(self, "coeff", coeff)
        object.__setattr__(self, "freq", freq)

    @property
    def is_zero(self) -> bool:
        return self.coeff == 0

    @classmethod
    def basis(cls, freq) -> "ExponentialVector":
        if isinstance(freq, (int, float, Fraction)):
            freq = (freq,)
        return cls(coeff=1.0, freq=tuple(freq))


@dataclass(frozen=True)
class Word:
    """A finite word over the frequency digits (possibly empty)."""

    letters: tuple[Vector, ...]

    def __len__(self) -> int:
        return len(self.letters)


def as_word(system: SimpleFactor, letters) -> Word:
    """Normalize a sequence of digits into a validated Word."""
    if isinstance(letters, Word):
        return letters
    return Word(letters=tuple(system.freq_digit(l) for l in letters))


def apply_generator(
    system: SimpleFactor, ell, v: ExponentialVector
) -> ExponentialVector:
    """T_l: coeff unchanged, frequency mapped through s -> E^T s + l."""
    digit = system.freq_digit(ell)
    if v.is_zero:
        return v
    et = system.E_transpose
    freq = tuple(
        sum(et[i][j] * v.freq[j] for j in range(system.dim)) + digit[i]
        for i in range(system.dim)
    )
    return ExponentialVector(coeff=v.coeff, freq=freq)


def apply_adjoint(
    system: SimpleFactor, ell, v: ExponentialVector
) -> ExponentialVector:
    """T_l*: scale by mask(freq - l), pull the frequency back through E^T."""
    digit = system.freq_digit(ell)
    if v.is_zero:
        return v
    shifted = tuple(f - d for f, d in zip(v.freq, digit))
    factor = mask(system, shifted)
    if factor == 0:
        return ExponentialVector(coeff=0j, freq=v.freq)
    inv = system.E_transpose_inverse
    freq = tuple(
        sum(inv[i][j] * shifted[j] for j in range(system.dim))
        for i in range(system.dim)
    )
    return ExponentialVector(coeff=v.coeff * factor, freq=freq)


def word_frequency(system: SimpleFactor, word) -> Vector:
    """The exact frequency sum  sum_k (E^T)^{k-1} l_k  of a word."""
    word = as_word(system, word)
    freq = exact.zero_vector(system.dim)
    for letter in reversed(word.letters):
        freq = exact.vec_add(exact.mat_vec(system.E_transpose, freq), letter)
    return freq


def apply_word(system: SimpleFactor, word, v: ExponentialVector) -> ExponentialVector:
    """T_{l_1} ... T_{l_n} applied to v (innermost letter first)."""
    word = as_word(system, word)
    for letter in reversed(word.letters):
        v = apply_generator(system, letter, v)
    return v


def apply_word_adjoint(
    system: SimpleFactor, word, v: ExponentialVector
) -> ExponentialVector:
    """(T_{l_1} ... T_{l_n})* applied to v (outermost adjoint first)."""
    word = as_word(system, word)
    for letter in word.letters:
        v = apply_adjoint(system, letter, v)
        if v.is_zero:
            return v
    return v


def state_eval(
    system: SimpleFactor,
    alpha,
    beta,
    settings: TransformSettings = DEFAULT_SETTINGS,
) -> complex:
    """The vacuum state  <e_0, T_alpha T_beta* e_0>.

    Digit arithmetic on frequencies is exact; the final pairing goes
    through the transform with the chosen settings.
    """
    v = apply_word_adjoint(system, beta, ExponentialVector.basis(exact.zero_vector(system.dim)))
    v = apply_word(system, alpha, v)
    if v.is_zero:
        return 0j
    return v.coeff * mu_hat_value(system, v.freq, settings)


def _dual_box(lat_dual: Lattice, radius: int) -> list[Vector]:
    basis = lat_dual.basis
    inv = lat_dual.inverse
    bound = max(int(sum(abs(c) for c in row) * radius) + 1 for row in inv)
    points = []
    for z in itertools.product(range(-bound, bound + 1), repeat=lat_dual.dim):
        s = exact.mat_vec(basis, tuple(Fraction(c) for c in z))
        if all(abs(c) <= radius for c in s):
            points.append(s)
    points.sort(key=lambda s: (sum(c * c for c in s), s))
    return points


@dataclass(frozen=True)
class RelationReport:
    """Worst-case residuals of the three relation checks over a sample box."""

    isometry: float
    range_orthogonality: float
    completeness: float
    box_radius: int
    sample_count: int
    degenerate: bool

    @property
    def max_residual(self) -> float:
        return max(self.isometry, self.range_orthogonality, self.completeness)

    def failures(self, tolerance: float = 1e-6) -> tuple[str, ...]:
        out = []
        if self.isometry > tolerance:
            out.append(f"isometry residual {self.isometry:.3e}")
        if self.range_orthogonality > tolerance:
            out.append(
                f"range orthogonality residual {self.range_orthogonality:.3e}"
            )
        if self.completeness > tolerance:
            out.append(f"completeness residual {self.completeness:.3e}")
        return tuple(out)

    def as_dict(self) -> dict:
        return {
            "isometry": self.isometry,
            "range_orthogonality": self.range_orthogonality,
            "completeness": self.completeness,
            "box_radius": self.box_radius,
            "sample_count": self.sample_count,
            "degenerate": self.degenerate,
        }


def relation_residuals(
    system: SimpleFactor,
    box_radius: int = 32,
    settings: TransformSettings = DEFAULT_SETTINGS,
) -> RelationReport:
    """Residuals of the isometry relations over dual points in a box.

    Transform values come from the product backend in ``settings``; the
    range-overlap terms are exact zeros whenever the leading mask factor
    vanishes exactly, so on a valid system that residual is literally 0.
    """
    samples = _dual_box(system.K_dual, box_radius)
    et = system.E_transpose
    isometry = 0.0
    range_orth = 0.0
    completeness = 0.0
    digit_pairs = [
        (la, lb)
        for la in system.freq_digits
        for lb in system.freq_digits
        if la != lb
    ]
    for u in samples:
        pushed = exact.mat_vec(et, u)
        isometry = max(
            isometry,
            abs(mu_hat_value(system, pushed, settings)
                - mu_hat_value(system, u, settings)),
        )
        for la, lb in digit_pairs:
            arg = exact.vec_add(pushed, exact.vec_sub(lb, la))
            range_orth = max(range_orth, abs(mu_hat_value(system, arg, settings)))
        total = sum(
            mask(system, exact.vec_sub(u, l)) for l in system.freq_digits
        )
        completeness = max(completeness, abs(total - 1))
    return RelationReport(
        isometry=isometry,
        range_orthogonality=range_orth,
        completeness=completeness,
        box_radius=box_radius,
        sample_count=len(samples),
        degenerate=same_lattice(system.K, system.A),
    )


@dataclass(frozen=True)
class ConsistencyReport:
    """Verdict on whether a measure fits a lattice-and-digits datum."""

    consistent: bool
    structure: tuple[CheckResult, ...]
    isometry: float
    range_orthogonality: float
    completeness: float | None
    tolerance: float

    def failures(self) -> tuple[str, ...]:
        out = [f"structure: {c.name} ({c.detail})" for c in self.structure
               if not c.passed]
        if self.isometry > self.tolerance:
            out.append(f"isometry residual {self.isometry:.3e}")
        if self.range_orthogonality > self.tolerance:
            out.append(f"range orthogonality residual {self.range_orthogonality:.3e}")
        if self.completeness is not None and self.completeness > self.tolerance:
            out.append(f"completeness residual {self.completeness:.3e}")
        return tuple(out)

    def as_dict(self) -> dict:
        return {
            "consistent": self.consistent,
            "structure": [
                {"name": c.name, "passed": c.passed, "detail": c.detail}
                for c in self.structure
            ],
            "isometry": self.isometry,
            "range_orthogonality": self.range_orthogonality,
            "completeness": self.completeness,
            "tolerance": self.tolerance,
            "failures": list(self.failures()),
        }


def classify_measure(
    measure_source,
    K: Lattice,
    gamma: Lattice,
    freq_digits,
    settings: TransformSettings | None = None,
    digits=None,
    box_radius: int = 4,
    tolerance: float = 1e-6,
) -> ConsistencyReport:
    """Decide whether a measure is consistent with a lattice datum.

    ``measure_source`` is a SimpleFactor (its refinement and digit set are
    used) or a DiscreteMeasure (optionally with explicit ``digits`` for the
    completeness check; without them that check is skipped).  The isometry
    and range-overlap residuals are evaluated against the *empirical*
    transform of the measure, with the expansion derived from K inside
    ``gamma`` -- nothing is taken from the measure's own provenance.
    Raises NotASublattice when K is not contained in ``gamma``.

    A depth-n empirical transform carries truncation error that grows
    linearly in the sampled frequency, roughly 2 pi |u| diam contraction^n,
    so the default box keeps that error under the tolerance at the default
    quadrature depth; enlarge the box and the depth together.
    """
    if settings is None:
        settings = DEFAULT_SETTINGS
    inclusion_matrix(K, gamma)  # raises NotASublattice

    if isinstance(measure_source, SimpleFactor):
        if digits is None:
            digits = measure_source.digits
        measure = _cached_measure(measure_source, settings.quadrature_depth)
    elif isinstance(measure_source, DiscreteMeasure):
        measure = measure_source
    else:
        raise TypeError("measure_source must be a SimpleFactor or DiscreteMeasure")
    if digits is not None:
        digits = tuple(exact.as_vector(b, K.dim) for b in digits)

    freq_digits = tuple(exact.as_vector(l, K.dim) for l in freq_digits)
    k_dual = Lattice(exact.transpose(K.inverse))
    gamma_dual = Lattice(exact.transpose(gamma.inverse))

    structure: list[CheckResult] = []
    zero = exact.zero_vector(K.dim)
    problems = []
    if zero not in freq_digits:
        problems.append("0 missing")
    for l in freq_digits:
        if not k_dual.contains(l):
            problems.append(f"{l} not in dual of K")
    for a, b in itertools.combinations(freq_digits, 2):
        if gamma_dual.contains(exact.vec_sub(a, b)):
            problems.append(f"{a} and {b} collide mod dual of gamma")
    structure.append(CheckResult("frequency_digits", not problems, "; ".join(problems)))

    e = exact.mat_mul(K.basis, gamma.inverse)
    expansive, smallest = is_expansive(e)
    structure.append(CheckResult(
        "expansive", expansive, f"smallest eigenvalue modulus {smallest:.6g}"
    ))

    et = exact.transpose(e)
    samples = _dual_box(k_dual, box_radius)
    isometry = 0.0
    range_orth = 0.0
    pairs = [(la, lb) for la in freq_digits for lb in freq_digits if la != lb]
    for u in samples:
        pushed = exact.mat_vec(et, u)
        isometry = max(
            isometry,
            abs(integrate_exponential(measure, exact.to_floats(pushed))
                - integrate_exponential(measure, exact.to_floats(u))),
        )
        for la, lb in pairs:
            arg = exact.vec_add(pushed, exact.vec_sub(lb, la))
            range_orth = max(
                range_orth,
                abs(integrate_exponential(measure, exact.to_floats(arg))),
            )

    completeness: float | None = None
    if digits is not None:
        n = len(digits)
        completeness = 0.0
        for s in samples:
            total = 0j
            for l in freq_digits:
                arg = exact.vec_sub(s, l)
                total += sum(
                    np.exp(2j * np.pi * float(exact.dot(b, arg))) for b in digits
                ) / n
            completeness = max(completeness, abs(total - 1))

    residuals_ok = isometry <= tolerance and range_orth <= tolerance and (
        completeness is None or completeness <= tolerance
    )
    consistent = residuals_ok and all(c.passed for c in structure)
    return ConsistencyReport(
        consistent=consistent,
        structure=tuple(structure),
        isometry=isometry,
        range_orthogonality=range_orth,
        completeness=completeness,
        tolerance=tolerance,
    )
