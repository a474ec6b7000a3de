"""The affine contraction system and its depth-n invariant measure.

Refinement is the deterministic full tree: depth n holds one atom per
digit word of length n, uniformly weighted.  Atoms are floats (the digit
word is the exact representation and can be re-evaluated exactly);
refinement and quadrature are vectorized and deterministic, so measures
with a million atoms stay cheap.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

import numpy as np

from . import exact
from .errors import DepthTooLarge, IdenticalPoints, NotExpansive
from .exact import Matrix, Vector
from .lattice import SimpleFactor, is_expansive

ATOM_BUDGET = 1 << 24


@dataclass(frozen=True, eq=False)
class AffineIFS:
    """The maps x -> E^{-1} x + b indexed by the digit set."""

    e_inverse: Matrix
    digits: tuple[Vector, ...]

    @property
    def N(self) -> int:
        return len(self.digits)

    @property
    def dim(self) -> int:
        return len(self.e_inverse)

    @cached_property
    def e_inverse_float(self) -> np.ndarray:
        return np.array(exact.matrix_to_floats(self.e_inverse))

    @cached_property
    def digits_float(self) -> np.ndarray:
        return np.array([exact.to_floats(b) for b in self.digits])

    @cached_property
    def contraction_norm(self) -> float:
        """Operator 2-norm of the contraction, < 1 for expansive systems."""
        return float(np.linalg.norm(self.e_inverse_float, 2))

    @cached_property
    def attractor_radius(self) -> float:
        """A ball radius containing every atom: max |b| / (1 - norm)."""
        biggest = max(
            (float(np.linalg.norm(exact.to_floats(b))) for b in self.digits),
        )
        return biggest / (1.0 - self.contraction_norm)

    def exact_atom(self, word: tuple[int, ...]) -> Vector:
        """Exact re-evaluation of the atom for a digit-index word."""
        point = exact.zero_vector(self.dim)
        for index in reversed(word):
            point = exact.vec_add(
                exact.mat_vec(self.e_inverse, point), self.digits[index]
            )
        return point


def build_ifs(system: SimpleFactor) -> AffineIFS:
    """The contraction system of a factor datum; requires expansive E."""
    expansive, smallest = is_expansive(system.E)
    if not expansive:
        raise NotExpansive(
            f"eigenvalue modulus {smallest:.6g} <= 1; no invariant measure"
        )
    if exact.zero_vector(system.dim) not in system.digits:
        raise ValueError("digit set must contain 0")
    return AffineIFS(e_inverse=system.E_inverse, digits=system.digits)


@dataclass(frozen=True, eq=False)
class DiscreteMeasure:
    """The depth-n refinement: one atom per digit word, uniform weights.

    Atom index i encodes its word in base N, most significant letter
    first, so the depth-(n-1) atoms sit at the indices divisible by N.
    """

    depth: int
    base: int
    points: np.ndarray
    weight: float

    @property
    def count(self) -> int:
        return len(self.points)

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def word(self, index: int) -> tuple[int, ...]:
        """The digit-index word generating atom ``index``."""
        if not 0 <= index < self.count:
            raise IndexError(index)
        letters = []
        for _ in range(self.depth):
            letters.append(index % self.base)
            index //= self.base
        return tuple(reversed(letters))


def refine_measure(
    ifs: AffineIFS, depth: int, atom_budget: int = ATOM_BUDGET
) -> DiscreteMeasure:
    """The depth-n discrete approximation of the invariant measure.

    Depth 0 is the point mass at 0; each step replaces every atom x by
    its N images E^{-1} x + b.  Raises DepthTooLarge past the budget.
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    if ifs.N**depth > atom_budget:
        raise DepthTooLarge(
            f"{ifs.N}^{depth} atoms exceed the budget of {atom_budget}"
        )
    points = np.zeros((1, ifs.dim))
    e_inv_t = ifs.e_inverse_float.T
    for _ in range(depth):
        contracted = points @ e_inv_t
        points = (
            ifs.digits_float[:, None, :] + contracted[None, :, :]
        ).reshape(-1, ifs.dim)
    points.setflags(write=False)
    return DiscreteMeasure(
        depth=depth, base=ifs.N, points=points, weight=1.0 / len(points)
    )


def integrate_exponential(measure: DiscreteMeasure, t) -> complex:
    """The quadrature value of the transform: mean of e^{i 2 pi t.x}."""
    if isinstance(t, (int, float, Fraction)):
        t = (t,)
    tf = np.array([float(v) for v in t])
    if tf.shape != (measure.dim,):
        raise ValueError(f"expected a frequency of length {measure.dim}")
    phases = measure.points @ tf
    return complex(np.exp(2j * np.pi * phases).mean())


@dataclass(frozen=True)
class NoWitness:
    """The separation search exhausted its box without a witness."""

    search_radius: int


@lru_cache(maxsize=32)
def _dual_candidates(
    system: SimpleFactor, radius: int
) -> tuple[tuple[Vector, tuple[float, ...]], ...]:
    """Dual-lattice points with sup-norm <= radius, nearest and positive first."""
    basis = system.K_dual.basis
    inv = system.K_dual.inverse
    bound = max(int(sum(abs(c) for c in row) * radius) + 1 for row in inv)
    points = []
    for z in itertools.product(range(-bound, bound + 1), repeat=system.dim):
        s = exact.mat_vec(basis, tuple(Fraction(c) for c in z))
        if all(abs(c) <= radius for c in s):
            points.append(s)
    points.sort(key=lambda s: (sum(c * c for c in s), tuple(-c for c in s)))
    return tuple((s, exact.to_floats(s)) for s in points)


def separation_witness(
    system: SimpleFactor, x, y, search_radius: int = 8, tol: float = 1e-9
):
    """A dual-lattice frequency whose exponential separates x from y.

    Scans dual points in increasing norm; s is a witness when s.(x - y)
    is farther than ``tol`` from every integer.  Returns the witness
    vector, or NoWitness when the box is exhausted.  Raises
    IdenticalPoints when x == y.
    """
    if isinstance(x, (int, float, Fraction)):
        x = (x,)
    if isinstance(y, (int, float, Fraction)):
        y = (y,)
    diff = tuple(float(a) - float(b) for a, b in zip(x, y))
    if len(diff) != system.dim:
        raise ValueError(f"expected points of length {system.dim}")
    if tuple(float(a) for a in x) == tuple(float(b) for b in y):
        raise IdenticalPoints(f"{x!r} equals {y!r}")
    for s, s_float in _dual_candidates(system, search_radius):
        pairing = sum(c * d for c, d in zip(s_float, diff))
        distance = abs(pairing - round(pairing))
        if distance > tol:
            return s
    return NoWitness(search_radius=search_radius)
