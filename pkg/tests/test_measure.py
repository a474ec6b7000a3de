import math
from fractions import Fraction as F

import numpy as np
import pytest

import specpair as sp
from specpair import exact
from specpair.measure import _dual_candidates


def _degenerate_expansive():
    # K = A (flagged degenerate) but the expansion is still scale 4
    return sp.SimpleFactor(
        K=sp.Lattice([[1]]), A=sp.Lattice([[1]]), Gamma=sp.Lattice([["1/4"]]),
        digits=[(0,)], freq_digits=[(0,)],
    )


def test_build_ifs_scale4(scale4):
    ifs = sp.build_ifs(scale4.system)
    assert ifs.e_inverse == ((F(1, 4),),)
    assert ifs.digits == ((F(0),), (F(1, 2),))
    assert ifs.N == 2


def test_build_ifs_degenerate_single_map():
    ifs = sp.build_ifs(_degenerate_expansive())
    assert ifs.N == 1
    assert ifs.e_inverse == ((F(1, 4),),)
    assert ifs.exact_atom((0, 0, 0)) == (F(0),)  # fixed point at the origin


def test_build_ifs_2d(scale4x2):
    ifs = sp.build_ifs(scale4x2.system)
    assert ifs.N == 4
    assert set(ifs.digits) == {
        (F(0), F(0)), (F(1, 2), F(0)), (F(0), F(1, 2)), (F(1, 2), F(1, 2)),
    }


def test_build_ifs_rejects_non_expansive():
    flat = sp.SimpleFactor(
        K=sp.Lattice([[1]]), A=sp.Lattice([[1]]), Gamma=sp.Lattice([[1]]),
        digits=[(0,)], freq_digits=[(0,)],
    )
    with pytest.raises(sp.NotExpansive):
        sp.build_ifs(flat)


def test_refine_measure_atoms(scale4):
    ifs = sp.build_ifs(scale4.system)
    zero = sp.refine_measure(ifs, 0)
    assert zero.count == 1 and zero.points[0, 0] == 0.0 and zero.weight == 1.0
    one = sp.refine_measure(ifs, 1)
    assert sorted(one.points[:, 0]) == [0.0, 0.5]
    two = sp.refine_measure(ifs, 2)
    assert sorted(two.points[:, 0]) == [0.0, 0.125, 0.5, 0.625]
    assert two.weight == 0.25


def test_refine_measure_budget(scale4):
    ifs = sp.build_ifs(scale4.system)
    with pytest.raises(sp.DepthTooLarge):
        sp.refine_measure(ifs, 5, atom_budget=16)
    sp.refine_measure(ifs, 4, atom_budget=16)  # exactly at budget is fine


def test_atom_nesting_is_exact(scale4):
    ifs = sp.build_ifs(scale4.system)
    coarse = sp.refine_measure(ifs, 5)
    fine = sp.refine_measure(ifs, 6)
    assert np.array_equal(fine.points[:: ifs.N], coarse.points)


def test_word_decoding_matches_exact_atom(scale4x2):
    ifs = sp.build_ifs(scale4x2.system)
    measure = sp.refine_measure(ifs, 3)
    for index in (0, 1, 17, 63):
        word = measure.word(index)
        assert len(word) == 3
        exact_point = ifs.exact_atom(word)
        assert np.allclose(measure.points[index], exact.to_floats(exact_point))


def test_atoms_within_attractor_radius(scale4, scale4x2):
    for loaded in (scale4, scale4x2):
        ifs = sp.build_ifs(loaded.system)
        measure = sp.refine_measure(ifs, 6)
        radii = np.linalg.norm(measure.points, axis=1)
        assert radii.max() <= ifs.attractor_radius + 1e-12


def test_integrate_exponential_values(scale4):
    ifs = sp.build_ifs(scale4.system)
    assert sp.integrate_exponential(sp.refine_measure(ifs, 7), 0) == 1.0
    two = sp.refine_measure(ifs, 2)
    assert abs(sp.integrate_exponential(two, 1)) < 1e-15
    one = sp.refine_measure(ifs, 1)
    assert abs(sp.integrate_exponential(one, 2) - 1.0) < 1e-15


def test_self_similarity_identity_small(scale4):
    system = scale4.system
    ifs = sp.build_ifs(system)
    previous = sp.refine_measure(ifs, 3)
    current = sp.refine_measure(ifs, 4)
    for t in (0.3, 1.7, -2.2):
        lhs = sp.integrate_exponential(current, t)
        rhs = sp.mask(system, t) * sp.integrate_exponential(previous, t / 4.0)
        assert abs(lhs - rhs) < 1e-14


def test_quadrature_convergence_bound(scale4):
    system = scale4.system
    ifs = sp.build_ifs(system)
    diameter = 2.0 / 3.0
    rho = ifs.contraction_norm
    for t in (1.3, 3.7, 7.1):
        for depth in (2, 4, 6):
            a = sp.integrate_exponential(sp.refine_measure(ifs, depth), t)
            b = sp.integrate_exponential(sp.refine_measure(ifs, depth + 1), t)
            assert abs(a - b) <= 2 * math.pi * abs(t) * diameter * rho**depth


def test_separation_witness_examples(scale4):
    system = scale4.system
    assert sp.separation_witness(system, 0.0, 0.5) == (F(1),)
    with pytest.raises(sp.IdenticalPoints):
        sp.separation_witness(system, 0.25, 0.25)


def test_separation_witness_exhaustion():
    # integer lattice dual = integers; points differing by an integer are
    # never separated, so the search must report exhaustion
    system = sp.parse_spec("scale4").system
    result = sp.separation_witness(system, 0.0, 1.0, search_radius=3)
    assert isinstance(result, sp.NoWitness)
    assert result.search_radius == 3


def test_dual_candidates_order(scale4):
    candidates = [s for s, _ in _dual_candidates(scale4.system, 3)]
    assert candidates[0] == (F(0),)
    assert candidates[1] == (F(1),)  # positive side probed before negative
    assert candidates[2] == (F(-1),)


def test_depth10_atom_gap(scale4):
    # smallest gap between depth-10 atoms stays far above the witness
    # tolerance, so the acceptance sweep is numerically meaningful
    measure = sp.refine_measure(sp.build_ifs(scale4.system), 10)
    atoms = np.sort(measure.points[:, 0])
    gap = np.diff(atoms).min()
    assert gap > 1e-6
