import random
from fractions import Fraction as F

import pytest

import specpair as sp
from specpair import exact
from specpair.lattice import is_expansive


def test_dual_of_integers_is_integers():
    z2 = sp.Lattice.scaled_integers(2)
    assert sp.dual_lattice(z2).basis == z2.basis


def test_dual_scaling():
    two_z = sp.Lattice([[2]])
    assert sp.dual_lattice(two_z).basis == ((F(1, 2),),)


def test_dual_sheared_basis():
    lat = sp.Lattice([[2, 1], [0, 1]])
    assert sp.dual_lattice(lat).basis == ((F(1, 2), F(0)), (F(-1, 2), F(1)))


def test_dual_involution_spans_same_lattice():
    for rows in ([[2, 1], [0, 1]], [["1/3", "1/7"], ["2/5", "1"]], [[5]]):
        lat = sp.Lattice(rows)
        assert sp.dual_lattice(sp.dual_lattice(lat)).basis == lat.basis


def test_singular_basis_rejected():
    with pytest.raises(ValueError):
        sp.Lattice([[1, 2], [2, 4]])


def test_inclusion_matrix_examples():
    inc = sp.inclusion_matrix(sp.Lattice([[1]]), sp.Lattice([["1/4"]]))
    assert inc.R == ((4,),)
    assert inc.index == 4
    identity = sp.inclusion_matrix(sp.Lattice([[1]]), sp.Lattice([[1]]))
    assert identity.R == ((1,),)
    with pytest.raises(sp.NotASublattice):
        sp.inclusion_matrix(sp.Lattice([[1]]), sp.Lattice([["2/3"]]))


def test_inclusion_membership_consistency_random():
    rng = random.Random(7)
    sub = sp.Lattice([[1, 0], [0, 1]])
    sup = sp.Lattice([["1/4", 0], [0, "1/6"]])
    sp.inclusion_matrix(sub, sup)
    for _ in range(1000):
        z = (F(rng.randrange(-50, 51)), F(rng.randrange(-50, 51)))
        member = exact.mat_vec(sub.basis, z)
        assert sup.contains(member)
        assert exact.is_integral(sup.coordinates(member))


def test_coset_representatives_examples():
    reps = sp.coset_representatives(sp.Lattice([[1]]), sp.Lattice([["1/2"]]))
    assert reps == ((F(0),), (F(1, 2),))
    assert sp.coset_representatives(sp.Lattice([[1]]), sp.Lattice([[1]])) == ((F(0),),)
    with pytest.raises(sp.BadSection):
        sp.coset_representatives(
            sp.Lattice([[1]]), sp.Lattice([["1/2"]]), given=[(0,), (1,)]
        )


def test_coset_representatives_validates_given():
    good = sp.coset_representatives(
        sp.Lattice([[1]]), sp.Lattice([["1/2"]]), given=[(0,), ("1/2",)]
    )
    assert good == ((F(0),), (F(1, 2),))
    with pytest.raises(sp.BadSection):  # wrong cardinality
        sp.coset_representatives(sp.Lattice([[1]]), sp.Lattice([["1/2"]]), given=[(0,)])
    with pytest.raises(sp.BadSection):  # not in the ambient lattice
        sp.coset_representatives(
            sp.Lattice([[1]]), sp.Lattice([["1/2"]]), given=[(0,), ("1/3",)]
        )


def test_coset_representatives_2d_count():
    reps = sp.coset_representatives(
        sp.Lattice.scaled_integers(2), sp.Lattice.scaled_integers(2, "1/2")
    )
    assert len(reps) == 4
    for a in reps:
        for b in reps:
            if a != b:
                assert not sp.Lattice.scaled_integers(2).contains(
                    exact.vec_sub(a, b)
                )


def test_expansion_map_examples(scale4, scale4x2):
    assert sp.expansion_map(scale4.system) == ((F(4),),)
    same = sp.SimpleFactor(
        K=sp.Lattice([[1]]), A=sp.Lattice([[1]]), Gamma=sp.Lattice([[1]]),
        digits=[(0,)], freq_digits=[(0,)],
    )
    assert sp.expansion_map(same) == exact.identity(1)
    assert sp.expansion_map(scale4x2.system) == ((F(4), F(0)), (F(0), F(4)))


def test_expansion_carries_lattices(scale4x2):
    system = scale4x2.system
    for g in system.Gamma.generators:
        assert system.K.contains(exact.mat_vec(system.E, g))
    for g in system.K_dual.generators:
        assert system.Gamma_dual.contains(exact.mat_vec(system.E_transpose, g))


def test_frequency_map_examples(scale4, scale4x2):
    assert sp.frequency_map(scale4.system, 0, (F(0),)) == (F(0),)
    assert sp.frequency_map(scale4.system, 1, (F(1),)) == (F(5),)
    assert sp.frequency_map(scale4x2.system, (1, 1), (F(1), F(0))) == (F(5), F(1))
    with pytest.raises(sp.UnknownDigit):
        sp.frequency_map(scale4.system, 2, (F(0),))


def test_frequency_map_accepts_floats(scale4):
    out = sp.frequency_map(scale4.system, 1, (0.25,))
    assert out == (2.0,)


def test_dual_chain_reversal(scale4):
    system = scale4.system
    for g in system.Gamma_dual.generators:
        assert system.A_dual.contains(g)
    for g in system.A_dual.generators:
        assert system.K_dual.contains(g)


def test_dual_inclusion_matrix_is_transpose(scale4x2):
    system = scale4x2.system
    forward = sp.inclusion_matrix(system.K, system.Gamma)
    backward = sp.inclusion_matrix(system.Gamma_dual, system.K_dual)
    assert backward.R == tuple(zip(*forward.R))
    assert backward.index == forward.index


def test_frequency_zero_map_lands_in_gamma_dual(scale4):
    system = scale4.system
    index = sp.inclusion_matrix(system.K, system.Gamma).index
    dual_index = sp.inclusion_matrix(system.Gamma_dual, system.K_dual).index
    assert dual_index == index
    for g in system.K_dual.generators:
        image = exact.mat_vec(system.E_transpose, g)
        assert system.Gamma_dual.contains(image)


def test_validate_scale4(scale4):
    report = scale4.report
    assert report.ok
    assert not report.degenerate
    assert report.check("separation").passed
    assert report.check("hadamard_unitarity").passed


def test_validate_middlethird_variants():
    for ell in (1, 2, 3):
        system = sp.SimpleFactor(
            K=sp.Lattice([[1]]), A=sp.Lattice([["1/3"]]),
            Gamma=sp.Lattice([["1/3"]]),
            digits=[(0,), ("2/3",)], freq_digits=[(0,), (ell,)],
        )
        report = sp.validate_simple_factor(system)
        assert not report.ok
        assert not report.check("hadamard_unitarity").passed
        if ell == 3:
            assert not report.check("separation").passed


def test_validate_degenerate_flag():
    degenerate = sp.SimpleFactor(
        K=sp.Lattice([[1]]), A=sp.Lattice([[1]]), Gamma=sp.Lattice([[1]]),
        digits=[(0,)], freq_digits=[(0,)],
    )
    report = sp.validate_simple_factor(degenerate)
    assert report.degenerate
    for name in ("chain", "digit_section", "frequency_digits", "cardinality",
                 "separation", "hadamard_unitarity"):
        assert report.check(name).passed
    assert not report.check("expansive").passed  # identity expansion


def test_unitarity_implies_separation_on_builtins(scale4, scale4x2, middlethird):
    for loaded in (scale4, scale4x2, middlethird):
        report = loaded.report
        if report.check("hadamard_unitarity").passed:
            assert report.check("separation").passed


def test_is_expansive():
    assert is_expansive(exact.as_matrix([[4]]))[0]
    assert not is_expansive(exact.identity(2))[0]
    assert not is_expansive(exact.as_matrix([[2, 0], [0, "1/2"]]))[0]


def test_simple_factor_shape_errors():
    with pytest.raises(ValueError):
        sp.SimpleFactor(
            K=sp.Lattice([[1]]), A=sp.Lattice([["1/2"]]),
            Gamma=sp.Lattice([["1/4"]]),
            digits=[(0,), ("1/2",)], freq_digits=[(0,)],
        )
    with pytest.raises(ValueError):
        sp.SimpleFactor(
            K=sp.Lattice([[1]]), A=sp.Lattice([["1/2", 0], [0, "1/2"]]),
            Gamma=sp.Lattice([["1/4"]]),
            digits=[(0,)], freq_digits=[(0,)],
        )
