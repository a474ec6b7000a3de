import itertools
from fractions import Fraction as F

import pytest

import specpair as sp
from specpair.operators import ExponentialVector, apply_word, apply_word_adjoint
from specpair.transform import TransformSettings

E0 = ExponentialVector.basis((F(0),))


def test_generator_examples(scale4):
    system = scale4.system
    assert sp.apply_generator(system, 0, E0) == E0
    assert sp.apply_generator(system, 1, E0).freq == (F(1),)
    e1 = ExponentialVector.basis((F(1),))
    assert sp.apply_generator(system, 1, e1).freq == (F(5),)
    with pytest.raises(sp.UnknownDigit):
        sp.apply_generator(system, 3, E0)


def test_adjoint_examples(scale4):
    system = scale4.system
    assert sp.apply_adjoint(system, 0, E0) == E0
    killed = sp.apply_adjoint(system, 1, E0)
    assert killed.is_zero
    e1 = ExponentialVector.basis((F(1),))
    assert sp.apply_adjoint(system, 1, e1) == E0


def test_adjoint_generator_identities(scale4):
    system = scale4.system
    for freq in ((F(0),), (F(1),), (F(-3),), (F(8),)):
        v = ExponentialVector.basis(freq)
        for ell in (0, 1):
            lifted = sp.apply_generator(system, ell, v)
            assert sp.apply_adjoint(system, ell, lifted) == v  # T* T = I
            other = 1 - ell
            assert sp.apply_adjoint(system, other, lifted).is_zero  # ranges orthogonal


def test_zero_vector_is_absorbing(scale4):
    zero = ExponentialVector(coeff=0, freq=(F(7),))
    assert zero.freq == (F(0),)  # canonical form
    assert sp.apply_generator(scale4.system, 1, zero).is_zero
    assert sp.apply_adjoint(scale4.system, 1, zero).is_zero


def test_word_frequency_examples(scale4):
    system = scale4.system
    assert sp.word_frequency(system, ()) == (F(0),)
    assert sp.word_frequency(system, ((1,), (1,))) == (F(5),)
    assert sp.word_frequency(system, ((1,), (0,), (1,))) == (F(17),)


def test_word_frequency_matches_folded_generators(scale4x2):
    system = scale4x2.system
    for letters in itertools.product(system.freq_digits, repeat=3):
        folded = apply_word(system, letters, ExponentialVector.basis((F(0), F(0))))
        assert folded.freq == sp.word_frequency(system, letters)


def test_word_validation(scale4):
    with pytest.raises(sp.UnknownDigit):
        sp.as_word(scale4.system, ((2,),))
    word = sp.as_word(scale4.system, (1, 0))
    assert word.letters == ((F(1),), (F(0),))


def test_state_values(scale4):
    system = scale4.system
    assert sp.state_eval(system, (), ()) == 1.0
    assert abs(sp.state_eval(system, (0,), ()) - 1) < 1e-12
    assert abs(sp.state_eval(system, (0,), (0,)) - 1) < 1e-12
    assert abs(sp.state_eval(system, (1,), ())) < 1e-12


def test_state_positivity_short_words(scale4):
    system = scale4.system
    for length in range(1, 4):
        for alpha in itertools.product((0, 1), repeat=length):
            value = sp.state_eval(system, alpha, alpha)
            assert abs(value.imag) < 1e-12
            assert -1e-12 <= value.real <= 1 + 1e-9


def test_adjoint_word_annihilates_vacuum_unless_zeros(scale4):
    system = scale4.system
    v = apply_word_adjoint(system, (0, 0, 0), E0)
    assert v == E0
    assert apply_word_adjoint(system, (0, 1), E0).is_zero


def test_relation_residuals_scale4(scale4):
    report = sp.relation_residuals(
        scale4.system, box_radius=32, settings=TransformSettings(product_depth=40)
    )
    assert report.isometry < 1e-10
    assert report.range_orthogonality == 0.0
    assert report.completeness < 1e-12
    assert not report.degenerate
    assert report.failures() == ()
    assert report.sample_count == 65


def test_relation_residuals_middlethird(middlethird):
    report = sp.relation_residuals(middlethird.system, box_radius=8)
    assert report.completeness > 0.4
    assert report.failures(1e-6)


def test_relation_residuals_degenerate():
    system = sp.SimpleFactor(
        K=sp.Lattice([[1]]), A=sp.Lattice([[1]]), Gamma=sp.Lattice([["1/4"]]),
        digits=[(0,)], freq_digits=[(0,)],
    )
    report = sp.relation_residuals(system, box_radius=8)
    assert report.degenerate
    assert report.isometry == 0.0
    assert report.range_orthogonality == 0.0
    assert report.completeness == 0.0


def test_gram_of_short_words_is_identity(scale4):
    system = scale4.system
    settings = TransformSettings(product_depth=30)
    enum = sp.enumerate_spectrum(system, 4)
    for i, xi in enumerate(enum.elements):
        for j, xj in enumerate(enum.elements):
            value = sp.mu_hat_value(
                system, tuple(a - b for a, b in zip(xj, xi)), settings
            )
            assert abs(value - (1.0 if i == j else 0.0)) < 1e-8


def test_classify_self_consistent(scale4):
    system = scale4.system
    report = sp.classify_measure(system, system.K, system.Gamma, system.freq_digits)
    assert report.consistent
    assert report.completeness is not None
    assert report.failures() == ()


def test_classify_middlethird_inconsistent(middlethird):
    system = middlethird.system
    report = sp.classify_measure(system, system.K, system.Gamma, system.freq_digits)
    assert not report.consistent
    assert report.completeness > 0.4
    assert report.range_orthogonality > 0.1


def test_classify_mismatched_expansion(scale4):
    system = scale4.system
    measure = sp.refine_measure(sp.build_ifs(system), 12)
    gamma5 = sp.Lattice([["1/5"]])
    report = sp.classify_measure(measure, system.K, gamma5, [(0,), (1,)])
    assert not report.consistent
    assert report.isometry > 0.1
    assert report.completeness is None  # no digit set supplied


def test_classify_external_measure_with_digits(scale4):
    system = scale4.system
    measure = sp.refine_measure(sp.build_ifs(system), 12)
    report = sp.classify_measure(
        measure, system.K, system.Gamma, system.freq_digits, digits=system.digits
    )
    assert report.consistent
    assert report.completeness is not None


def test_classify_requires_sublattice(scale4):
    system = scale4.system
    with pytest.raises(sp.NotASublattice):
        sp.classify_measure(system, system.K, sp.Lattice([["2/3"]]),
                            system.freq_digits)
