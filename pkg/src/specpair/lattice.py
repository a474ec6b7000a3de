"""Lattices, lattice inclusions, and the factor-system datum.

Conventions, fixed once for the whole package:

* Basis matrices hold generators as *columns*; all entries are exact
  rationals.
* The inclusion matrix R of a sublattice K inside an ambient lattice G
  follows the row convention u_i = sum_j R_ij v_j for generators u of K
  and v of G, i.e. U = V R^T in column-matrix form.
* The expansion map is E = U V^{-1}.  It carries G onto K on the state
  side; its transpose carries the dual of K onto the dual of G, so every
  frequency-side map in this package is an affine map s -> E^T s + digit.
  In one dimension E coincides with R.

Validation never raises for a mathematically broken datum: every check
lands in a report so that deliberately inconsistent systems (the negative
controls) can be constructed, probed and reported on.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .errors import BadSection, NotASublattice, UnknownDigit
from . import exact
from .exact import Matrix, Vector


@dataclass(frozen=True)
class Lattice:
    """A rank-d lattice given by a nonsingular rational basis matrix.

    Columns of ``basis`` are the generators.  Membership is decided
    exactly: x belongs to the lattice iff basis^{-1} x is integral.
    """

    basis: Matrix

    def __post_init__(self):
        object.__setattr__(self, "basis", exact.as_matrix(self.basis))
        if exact.det(self.basis) == 0:
            raise ValueError("lattice basis is singular")

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def inverse(self) -> Matrix:
        return exact.inverse(self.basis)

    @cached_property
    def det(self) -> Fraction:
        return exact.det(self.basis)

    @property
    def generators(self) -> tuple[Vector, ...]:
        return exact.transpose(self.basis)

    def coordinates(self, x) -> Vector:
        return exact.mat_vec(self.inverse, exact.as_vector(x, self.dim))

    def contains(self, x) -> bool:
        return exact.is_integral(self.coordinates(x))

    @classmethod
    def scaled_integers(cls, dim: int, scale=1) -> "Lattice":
        """The lattice scale * Z^dim."""
        c = exact.as_rational(scale)
        return cls(tuple(
            tuple(c if i == j else Fraction(0) for j in range(dim))
            for i in range(dim)
        ))


@dataclass(frozen=True)
class LatticeInclusion:
    """A verified inclusion sub <= sup with its integer inclusion matrix."""

    sub: Lattice
    sup: Lattice
    R: tuple[tuple[int, ...], ...]

    @property
    def index(self) -> int:
        """The subgroup index [sup : sub] = |det R|."""
        return abs(int(exact.det(exact.as_matrix(self.R))))


def dual_lattice(lat: Lattice) -> Lattice:
    """The dual lattice: all vectors with integral pairing against lat."""
    return Lattice(exact.transpose(lat.inverse))


def same_lattice(a: Lattice, b: Lattice) -> bool:
    """Whether two bases span the same lattice (mutual containment)."""
    return all(b.contains(g) for g in a.generators) and all(
        a.contains(g) for g in b.generators
    )


def inclusion_matrix(sub: Lattice, sup: Lattice) -> LatticeInclusion:
    """Express the generators of ``sub`` over those of ``sup``.

    Raises NotASublattice if any coordinate fails to be an integer.
    """
    if sub.dim != sup.dim:
        raise NotASublattice("dimension mismatch")
    rt = exact.mat_mul(sup.inverse, sub.basis)  # R^T, columns = sub coords
    r = exact.transpose(rt)
    for row in r:
        if not exact.is_integral(row):
            raise NotASublattice(
                "generator coordinates over the ambient lattice are not integral"
            )
    return LatticeInclusion(
        sub=sub, sup=sup, R=tuple(tuple(int(x) for x in row) for row in r)
    )


def coset_representatives(sub: Lattice, sup: Lattice, given=None) -> tuple[Vector, ...]:
    """Representatives of sup/sub, lexicographically canonical, 0 first.

    When ``given`` is supplied it is validated instead of enumerated:
    it must have exactly [sup : sub] members of sup, pairwise distinct
    mod sub (BadSection otherwise).
    """
    inclusion = inclusion_matrix(sub, sup)
    index = inclusion.index
    if given is not None:
        reps = tuple(exact.as_vector(v, sup.dim) for v in given)
        if len(reps) != index:
            raise BadSection(f"expected {index} representatives, got {len(reps)}")
        for rep in reps:
            if not sup.contains(rep):
                raise BadSection(f"{rep} is not in the ambient lattice")
        for a, b in itertools.combinations(reps, 2):
            if sub.contains(exact.vec_sub(a, b)):
                raise BadSection(f"{a} and {b} lie in the same coset")
        return reps

    # sup/sub is isomorphic to Z^d / R^T Z^d via z -> sup.basis z, and
    # index * Z^d <= R^T Z^d, so [0, index)^d always contains a full set.
    m = exact.as_matrix(inclusion.R)  # == (R^T)^T applied below via transpose
    mt_inv = exact.inverse(exact.transpose(m))
    seen: dict[tuple, Vector] = {}
    for z in itertools.product(range(index), repeat=sup.dim):
        coords = exact.mat_vec(mt_inv, tuple(Fraction(c) for c in z))
        key = tuple(c - (c.numerator // c.denominator) for c in coords)
        if key not in seen:
            seen[key] = exact.mat_vec(sup.basis, tuple(Fraction(c) for c in z))
            if len(seen) == index:
                break
    reps = tuple(seen.values())
    assert len(reps) == index
    return reps


@dataclass(frozen=True)
class SimpleFactor:
    """The full datum behind a lattice spectral pair.

    K <= A <= Gamma are the translation lattices; ``digits`` is a section
    of A/K containing 0 (the contraction offsets); ``freq_digits`` is the
    matching set of frequency digits inside the dual of K, distinct mod
    the dual of Gamma.  The expansion map E = (K basis)(Gamma basis)^{-1}
    is derived, never supplied.

    Construction only enforces what later computation needs (consistent
    shapes, equal digit counts); every mathematical requirement is checked
    by validate_simple_factor so that broken systems remain constructible
    as negative controls.
    """

    K: Lattice
    A: Lattice
    Gamma: Lattice
    digits: tuple[Vector, ...]
    freq_digits: tuple[Vector, ...]
    name: str = ""

    def __post_init__(self):
        d = self.K.dim
        if self.A.dim != d or self.Gamma.dim != d:
            raise ValueError("lattices have mismatched dimensions")
        object.__setattr__(
            self, "digits", tuple(exact.as_vector(b, d) for b in self.digits)
        )
        object.__setattr__(
            self, "freq_digits",
            tuple(exact.as_vector(l, d) for l in self.freq_digits),
        )
        if not self.digits or len(self.digits) != len(self.freq_digits):
            raise ValueError("digit sets must be nonempty and equinumerous")

    @property
    def dim(self) -> int:
        return self.K.dim

    @property
    def N(self) -> int:
        return len(self.digits)

    @cached_property
    def E(self) -> Matrix:
        return exact.mat_mul(self.K.basis, self.Gamma.inverse)

    @cached_property
    def E_transpose(self) -> Matrix:
        return exact.transpose(self.E)

    @cached_property
    def E_inverse(self) -> Matrix:
        return exact.inverse(self.E)

    @cached_property
    def E_transpose_inverse(self) -> Matrix:
        return exact.inverse(self.E_transpose)

    @cached_property
    def K_dual(self) -> Lattice:
        return dual_lattice(self.K)

    @cached_property
    def A_dual(self) -> Lattice:
        return dual_lattice(self.A)

    @cached_property
    def Gamma_dual(self) -> Lattice:
        return dual_lattice(self.Gamma)

    def freq_digit(self, ell) -> Vector:
        """Normalize ``ell`` to a member of freq_digits or raise UnknownDigit."""
        vec = exact.as_vector(ell, self.dim)
        if vec not in self.freq_digits:
            raise UnknownDigit(f"{ell!r} is not a frequency digit")
        return vec


def expansion_map(system: SimpleFactor) -> Matrix:
    """The expansion map E = U V^{-1}; E(Gamma) = K and E^T(K dual) = Gamma dual."""
    return system.E


def frequency_map(system: SimpleFactor, ell, s) -> tuple:
    """The affine frequency-side map s -> E^T s + ell for a digit ell.

    ``s`` may be any real vector (exact entries stay exact, floats stay
    floats); the digit must belong to freq_digits.
    """
    vec = system.freq_digit(ell)
    if isinstance(s, (int, float, Fraction)):
        s = (s,)
    if len(s) != system.dim:
        raise ValueError(f"expected a vector of length {system.dim}")
    et = system.E_transpose
    return tuple(
        sum(et[i][j] * s[j] for j in range(system.dim)) + vec[i]
        for i in range(system.dim)
    )


def is_expansive(e: Matrix) -> tuple[bool, float]:
    """Whether every eigenvalue of E has modulus > 1; returns the minimum."""
    eigenvalues = np.linalg.eigvals(np.array(exact.matrix_to_floats(e)))
    smallest = float(np.abs(eigenvalues).min())
    return smallest > 1.0, smallest


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[CheckResult, ...]
    degenerate: bool

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> tuple[CheckResult, ...]:
        return tuple(c for c in self.checks if not c.passed)

    def check(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "degenerate": self.degenerate,
            "checks": [
                {"name": c.name, "passed": c.passed, "detail": c.detail}
                for c in self.checks
            ],
        }


HADAMARD_TOLERANCE = 1e-12


def validate_simple_factor(system: SimpleFactor) -> ValidationReport:
    """Check every requirement on a factor system, reporting per check.

    Checks: the chain K <= A <= Gamma; the digit set is a section of A/K
    containing 0; the frequency digits contain 0, lie in the dual of K and
    are distinct mod the dual of Gamma; the cardinalities agree with the
    index [A : K]; the digit pairing separates frequency digits (exact);
    the normalized digit matrix N^{-1/2} e^{i 2 pi b.l} is unitary (kept
    as numeric defense in depth behind separation); E is expansive.
    The degenerate case K = A is flagged, not failed.
    """
    checks: list[CheckResult] = []
    d = system.dim
    zero = exact.zero_vector(d)

    index: int | None = None
    try:
        ka = inclusion_matrix(system.K, system.A)
        ka_ok = True
        index = ka.index
    except NotASublattice:
        ka_ok = False
    try:
        inclusion_matrix(system.A, system.Gamma)
        ag_ok = True
    except NotASublattice:
        ag_ok = False
    checks.append(CheckResult(
        "chain", ka_ok and ag_ok,
        "K <= A <= Gamma" if ka_ok and ag_ok else
        f"K <= A: {ka_ok}, A <= Gamma: {ag_ok}",
    ))

    section_problems = []
    if zero not in system.digits:
        section_problems.append("0 missing from digit set")
    for b in system.digits:
        if not system.A.contains(b):
            section_problems.append(f"digit {b} not in A")
    for a, b in itertools.combinations(system.digits, 2):
        if system.K.contains(exact.vec_sub(a, b)):
            section_problems.append(f"digits {a} and {b} collide mod K")
    if index is not None and len(system.digits) != index:
        section_problems.append(
            f"|digits| = {len(system.digits)} but [A : K] = {index}"
        )
    checks.append(CheckResult(
        "digit_section", not section_problems, "; ".join(section_problems)
    ))

    freq_problems = []
    if zero not in system.freq_digits:
        freq_problems.append("0 missing from frequency digits")
    for l in system.freq_digits:
        if not system.K_dual.contains(l):
            freq_problems.append(f"frequency digit {l} not in dual of K")
    for a, b in itertools.combinations(system.freq_digits, 2):
        if system.Gamma_dual.contains(exact.vec_sub(a, b)):
            freq_problems.append(
                f"frequency digits {a} and {b} collide mod dual of Gamma"
            )
    checks.append(CheckResult(
        "frequency_digits", not freq_problems, "; ".join(freq_problems)
    ))

    cardinality_ok = index is not None and system.N == index
    checks.append(CheckResult(
        "cardinality", cardinality_ok,
        f"N = {system.N}, [A : K] = {index if index is not None else 'undefined'}",
    ))

    # Separation: distinct frequency digits must be told apart by some
    # digit, i.e. (l - l').b is non-integral for some b.  Exact.
    unseparated = [
        (la, lb)
        for la, lb in itertools.combinations(system.freq_digits, 2)
        if all(
            (exact.dot(exact.vec_sub(la, lb), b)).denominator == 1
            for b in system.digits
        )
    ]
    checks.append(CheckResult(
        "separation", not unseparated,
        "" if not unseparated else f"indistinguishable digit pairs: {unseparated}",
    ))

    h = np.array([
        [complex(np.exp(2j * np.pi * float(exact.dot(b, l)))) for l in system.freq_digits]
        for b in system.digits
    ]) / np.sqrt(system.N)
    residual = float(np.abs(h.conj().T @ h - np.eye(system.N)).max())
    checks.append(CheckResult(
        "hadamard_unitarity", residual < HADAMARD_TOLERANCE,
        f"residual {residual:.3e}",
    ))

    expansive, smallest = is_expansive(system.E)
    checks.append(CheckResult(
        "expansive", expansive, f"smallest eigenvalue modulus {smallest:.6g}"
    ))

    return ValidationReport(
        checks=tuple(checks), degenerate=same_lattice(system.K, system.A)
    )
