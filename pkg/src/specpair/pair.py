"""Classical harmonic analysis of a spectral pair on box unions.

The closed-form transform of a box union factors per axis; at rational
frequencies the numerator is a rational combination of roots of unity,
so structural zeros (the orthogonality relations of the pair) are decided
exactly through the cyclotomic test and reported as literal zeros, never
as small numbers.

Tiling and translation questions are exact for rectangular lattices
(diagonal basis up to column order and sign), which covers every built-in
system; other lattices fall back to seeded sampling with the failure
bound stated on the report.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import exact
from .boxes import Box, BoxUnion, difference_measure, equal_almost_everywhere
from .cyclotomic import exp_sum_is_zero
from .errors import NotEmbeddable
from .exact import Vector
from .lattice import Lattice, SimpleFactor

MONTE_CARLO_SAMPLES = 100_000
MONTE_CARLO_DEFECT = 1e-3  # smallest relative defect the bound speaks about


def _axis_factor(t: float, lo: float, hi: float) -> complex:
    if t == 0.0:
        return complex(hi - lo)
    return (cmath.exp(2j * math.pi * t * hi) - cmath.exp(2j * math.pi * t * lo)) / (
        2j * math.pi * t
    )


def _exact_zero(omega: BoxUnion, t: tuple[Fraction, ...]) -> bool:
    """Exact vanishing of the transform at a rational frequency.

    With J = {j : t_j != 0}, the transform equals a common nonzero factor
    times  sum_boxes prod_{j not in J} (hi_j - lo_j)
                     prod_{j in J} (e^{i 2 pi t_j hi_j} - e^{i 2 pi t_j lo_j}),
    a rational combination of roots of unity.
    """
    live = [j for j, tj in enumerate(t) if tj != 0]
    terms: list[tuple[Fraction, Fraction]] = []
    for box in omega.boxes:
        base = Fraction(1)
        for j in range(omega.dim):
            if j not in live:
                base *= box.hi[j] - box.lo[j]
        for picks in itertools.product((1, 0), repeat=len(live)):
            coeff = base
            phase = Fraction(0)
            for j, hi_pick in zip(live, picks):
                corner = box.hi[j] if hi_pick else box.lo[j]
                phase += t[j] * corner
                if not hi_pick:
                    coeff = -coeff
            terms.append((coeff, phase))
    return exp_sum_is_zero(terms) is True


def indicator_transform(omega: BoxUnion, t) -> complex:
    """The transform integral of e^{i 2 pi t.x} over the box union.

    Evaluates the per-axis closed form; at exact rational ``t`` a vanishing
    value is detected exactly and returned as literal complex zero.
    """
    if isinstance(t, (int, float, Fraction)):
        t = (t,)
    if len(t) != omega.dim:
        raise ValueError(f"expected a frequency of length {omega.dim}")
    exact_t: tuple[Fraction, ...] | None
    try:
        exact_t = tuple(exact.as_rational(v) for v in t)
    except TypeError:
        exact_t = None
    if exact_t is not None:
        if all(v == 0 for v in exact_t):
            return complex(float(omega.measure))
        if _exact_zero(omega, exact_t):
            return 0j
        t = exact.to_floats(exact_t)
    total = 0j
    for box in omega.boxes:
        factor = 1 + 0j
        for tj, lo, hi in zip(t, box.lo, box.hi):
            factor *= _axis_factor(float(tj), float(lo), float(hi))
        total += factor
    return total


@dataclass(frozen=True)
class TruncatedSpectrum:
    """A finite truncation of the spectrum L + dual(Gamma), 0 included."""

    points: tuple[Vector, ...]

    def __post_init__(self):
        points = tuple(exact.as_vector(p) for p in self.points)
        object.__setattr__(self, "points", points)
        if len(set(points)) != len(points):
            raise ValueError("spectrum points must be pairwise distinct")
        if exact.zero_vector(len(points[0])) not in points:
            raise ValueError("a truncated spectrum must contain 0")

    def __len__(self) -> int:
        return len(self.points)


def truncate_spectrum(system: SimpleFactor, radius) -> TruncatedSpectrum:
    """All points of L + dual(Gamma) with sup-norm at most ``radius``."""
    radius = exact.as_rational(radius)
    basis = system.Gamma_dual.basis
    # Coefficient bound: z = (basis)^{-1} xi, so |z|_inf is controlled by
    # the row sums of the inverse times the sup-norm bound on xi.
    inv = system.Gamma_dual.inverse
    max_digit = max(
        (abs(c) for l in system.freq_digits for c in l), default=Fraction(0)
    )
    reach = radius + max_digit
    bound = max(
        int(sum(abs(c) for c in row) * reach) + 1 for row in inv
    )
    points: list[Vector] = []
    for z in itertools.product(range(-bound, bound + 1), repeat=system.dim):
        gamma_point = exact.mat_vec(basis, tuple(Fraction(c) for c in z))
        for l in system.freq_digits:
            p = exact.vec_add(gamma_point, l)
            if all(abs(c) <= radius for c in p):
                points.append(p)
    points = sorted(set(points), key=lambda p: (sum(c * c for c in p), p))
    return TruncatedSpectrum(tuple(points))


def orthogonality_matrix(omega: BoxUnion, spectrum: TruncatedSpectrum) -> np.ndarray:
    """Normalized pairings: entry (i, j) is transform(lambda_j - lambda_i) / measure."""
    measure = float(omega.measure)
    points = spectrum.points
    n = len(points)
    gram = np.empty((n, n), dtype=complex)
    for i in range(n):
        gram[i, i] = 1.0
        for j in range(i + 1, n):
            value = indicator_transform(omega, exact.vec_sub(points[j], points[i]))
            gram[i, j] = value / measure
            gram[j, i] = gram[i, j].conjugate()
    return gram


def rectangular_cell(lat: Lattice) -> Vector | None:
    """Cell side lengths when the lattice is a product of scaled axes.

    Returns None when the basis is not diagonal up to column order and
    sign, in which case callers fall back to sampling.
    """
    d = lat.dim
    sides: list[Fraction | None] = [None] * d
    for j in range(d):
        column = [lat.basis[i][j] for i in range(d)]
        support = [i for i, v in enumerate(column) if v != 0]
        if len(support) != 1:
            return None
        i = support[0]
        if sides[i] is not None:
            return None
        sides[i] = abs(column[i])
    assert all(s is not None for s in sides)
    return tuple(sides)  # type: ignore[arg-type]


def _reduce_box(box: Box, cell: Vector) -> list[Box]:
    """Split a box into pieces translated into the cell [0, cell)."""
    per_axis: list[list[tuple[Fraction, Fraction]]] = []
    for lo, hi, side in zip(box.lo, box.hi, cell):
        pieces = []
        k = lo // side  # Fraction floor division -> integer Fraction
        while k * side < hi:
            a = max(lo, k * side)
            b = min(hi, (k + 1) * side)
            pieces.append((a - k * side, b - k * side))
            k += 1
        per_axis.append(pieces)
    return [
        Box(tuple(p[0] for p in combo), tuple(p[1] for p in combo))
        for combo in itertools.product(*per_axis)
    ]


def reduce_mod_lattice(omega: BoxUnion, lat: Lattice) -> BoxUnion:
    """The reduction of the union into the fundamental cell of the lattice.

    Exact, for rectangular lattices; raises NotEmbeddable when reductions
    of the boxes overlap on positive measure (the torus embedding is not
    injective).
    """
    cell = rectangular_cell(lat)
    if cell is None:
        raise ValueError(
            "reduction is implemented for rectangular lattices only"
        )
    pieces = [p for box in omega.boxes for p in _reduce_box(box, cell)]
    for a, b in itertools.combinations(pieces, 2):
        if a.intersect(b) is not None:
            raise NotEmbeddable(
                f"reductions overlap on positive measure: {a} and {b}"
            )
    return BoxUnion(tuple(pieces))


class _LatticeCover:
    """Counts, for float points, how many lattice translates land in a union."""

    def __init__(self, omega: BoxUnion, lat: Lattice):
        self.inv = np.array(exact.matrix_to_floats(lat.inverse))
        self.basis = np.array(exact.matrix_to_floats(lat.basis))
        self.boxes = omega.boxes
        self.centers = [
            np.array([(float(a) + float(b)) / 2 for a, b in zip(box.lo, box.hi)])
            for box in omega.boxes
        ]
        self.deltas = [
            np.array(d) for d in itertools.product((-1, 0, 1), repeat=lat.dim)
        ]

    def count(self, point) -> int:
        x = np.asarray(point, dtype=float)
        hits = 0
        for box, center in zip(self.boxes, self.centers):
            z0 = np.round(self.inv @ (center - x))
            for delta in self.deltas:
                candidate = x + self.basis @ (z0 + delta)
                if box.contains_point(candidate):
                    hits += 1
        return hits


def _monte_carlo_failure_bound(samples: int) -> float:
    return float((1.0 - MONTE_CARLO_DEFECT) ** samples)


@dataclass(frozen=True)
class TilingReport:
    fundamental_domain: bool
    translates_disjoint: bool
    union_matches: bool | None
    method: str
    measure_domain: Fraction
    measure_cell: Fraction
    failure_probability: float = 0.0
    detail: str = ""

    @property
    def ok(self) -> bool:
        return (
            self.fundamental_domain
            and self.translates_disjoint
            and self.union_matches is not False
        )

    def as_dict(self) -> dict:
        return {
            "fundamental_domain": self.fundamental_domain,
            "translates_disjoint": self.translates_disjoint,
            "union_matches": self.union_matches,
            "method": self.method,
            "measure_domain": exact.format_rational(self.measure_domain),
            "measure_cell": exact.format_rational(self.measure_cell),
            "failure_probability": self.failure_probability,
            "detail": self.detail,
            "ok": self.ok,
        }


def tiling_check(
    d_prime: BoxUnion,
    gamma: Lattice,
    translates,
    omega_prime: BoxUnion | None = None,
    samples: int = MONTE_CARLO_SAMPLES,
    seed: int = 0,
) -> TilingReport:
    """Verify the tiling decomposition behind a factor system.

    (a) ``d_prime`` is a fundamental domain for ``gamma``: its measure is
    |det gamma| and its reduction covers the cell without overlap -- exact
    for rectangular lattices, seeded sampling otherwise; (b) the translated
    copies are pairwise disjoint and, when ``omega_prime`` is given, their
    union equals it up to measure zero (always exact).
    """
    translates = tuple(exact.as_vector(v, d_prime.dim) for v in translates)
    cell_measure = abs(gamma.det)
    measure_ok = d_prime.measure == cell_measure
    detail = []
    failure_probability = 0.0

    cell = rectangular_cell(gamma)
    if cell is not None:
        method = "exact"
        if measure_ok:
            try:
                reduce_mod_lattice(d_prime, gamma)
                fundamental = True
            except NotEmbeddable as exc:
                fundamental = False
                detail.append(str(exc))
        else:
            fundamental = False
            detail.append(
                f"measure {d_prime.measure} != |det gamma| = {cell_measure}"
            )
    else:
        method = "monte_carlo"
        fundamental = measure_ok
        if not measure_ok:
            detail.append(
                f"measure {d_prime.measure} != |det gamma| = {cell_measure}"
            )
        else:
            rng = np.random.default_rng(seed)
            basis = np.array(exact.matrix_to_floats(gamma.basis))
            cover = _LatticeCover(d_prime, gamma)
            bad = 0
            for _ in range(samples):
                if cover.count(basis @ rng.random(gamma.dim)) != 1:
                    bad += 1
            fundamental = bad == 0
            failure_probability = _monte_carlo_failure_bound(samples)
            if bad:
                detail.append(f"{bad}/{samples} sampled points not covered once")

    shifted = [d_prime.translate(a) for a in translates]
    disjoint = True
    for x, y in itertools.combinations(shifted, 2):
        for bx in x.boxes:
            for by in y.boxes:
                if bx.intersect(by) is not None:
                    disjoint = False
                    detail.append(f"translates overlap: {bx} and {by}")
                    break
            if not disjoint:
                break
        if not disjoint:
            break

    union_matches: bool | None = None
    if omega_prime is not None:
        all_boxes = [b for u in shifted for b in u.boxes]
        union_matches = (
            difference_measure(all_boxes, omega_prime.boxes) == 0
            and difference_measure(omega_prime.boxes, all_boxes) == 0
        )
        if not union_matches:
            detail.append("union of translates differs from the reduced domain")

    return TilingReport(
        fundamental_domain=fundamental,
        translates_disjoint=disjoint,
        union_matches=union_matches,
        method=method,
        measure_domain=d_prime.measure,
        measure_cell=cell_measure,
        failure_probability=failure_probability,
        detail="; ".join(detail),
    )


def translation_membership(
    omega: BoxUnion,
    lat: Lattice,
    a,
    samples: int = MONTE_CARLO_SAMPLES,
    seed: int = 0,
) -> bool:
    """Whether translating by ``a`` permutes the union modulo the lattice.

    Exact for rectangular lattices (compare reductions up to measure
    zero).  Otherwise decides by seeded sampling: every sampled point of
    the union must land back in the union modulo the lattice.
    """
    a = exact.as_vector(a, omega.dim)
    if all(v == 0 for v in a) or lat.contains(a):
        return True
    if rectangular_cell(lat) is not None:
        reduced = reduce_mod_lattice(omega, lat)
        shifted = reduce_mod_lattice(omega.translate(a), lat)
        return equal_almost_everywhere(reduced, shifted)
    rng = np.random.default_rng(seed)
    weights = [float(b.measure) for b in omega.boxes]
    weights = np.array(weights) / sum(weights)
    shift = np.array(exact.to_floats(a))
    cover = _LatticeCover(omega, lat)
    for _ in range(samples):
        box = omega.boxes[rng.choice(len(omega.boxes), p=weights)]
        point = np.array([
            float(lo) + rng.random() * (float(hi) - float(lo))
            for lo, hi in zip(box.lo, box.hi)
        ])
        if cover.count(point + shift) == 0:
            return False
    return True
