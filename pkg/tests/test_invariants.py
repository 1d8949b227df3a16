import warnings

import mpmath
import pytest

from ringclass.galois import class_number_order
from ringclass.invariants import (
    HypothesisWarning,
    RECOGNITION_TOLERANCE,
    RecognitionError,
    conjugates,
    default_bits,
    factor_discriminant,
    format_factorization,
    min_poly,
    min_poly_j,
    norm_orbit,
    recognize,
    ring_class_invariant,
    siegel_ramachandra_principal,
    unit_norm_residual,
    verify_degree_and_irreducibility,
    verify_norm_identity,
)
from ringclass.modular import EtaQuotientSpec, PrecisionCtx, build_eta_quotient
from ringclass.polynomial import IntPoly, discriminant
from ringclass.quadratic import make_order

from conftest import EXAMPLES, J_POLY_DK4_N13, QUARTIC_DK7_N6, SEXTIC_DK24_N3, SEXTIC_DK4_N13

CTX = PrecisionCtx(256)


@pytest.fixture(scope="module")
def computed():
    out = {}
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", HypothesisWarning)
        for key in EXAMPLES:
            out[key] = min_poly(make_order(*key))
    return out


@pytest.mark.parametrize("key", list(EXAMPLES))
def test_min_poly_examples(computed, key):
    poly, report = computed[key]
    assert poly == EXAMPLES[key]
    assert report.max_rounding_residual < float(RECOGNITION_TOLERANCE)
    assert report.confirmed_at == 2 * report.precision_used


def test_hand_spec_for_conductor_6():
    spec = EtaQuotientSpec(6, {6: 12, 3: -12, 2: -12, 1: 12})
    with pytest.warns(HypothesisWarning):
        ring_class_invariant(make_order(-7, 6), CTX, spec)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", HypothesisWarning)
        poly, _ = min_poly(make_order(-7, 6), spec=spec)
    assert poly == QUARTIC_DK7_N6


@pytest.mark.parametrize("key", list(EXAMPLES))
def test_precision_stability(computed, key):
    poly, report = computed[key]
    order = make_order(*key)
    for factor in (2, 4):
        again, _ = min_poly(order, PrecisionCtx(report.precision_used * factor))
        assert again == poly


@pytest.mark.parametrize("key", list(EXAMPLES))
def test_conjugates_are_roots(computed, key):
    poly, _ = computed[key]
    vals = conjugates(make_order(*key), CTX)
    tol = mpmath.mpf(2) ** (-CTX.bits // 2)
    with mpmath.workprec(CTX.working_bits):
        for v in vals:
            assert abs(poly(v)) < tol * (1 + abs(v)) ** poly.degree


@pytest.mark.parametrize("key", list(EXAMPLES))
def test_separable_and_degree(computed, key):
    poly, _ = computed[key]
    assert discriminant(poly) != 0
    rep = verify_degree_and_irreducibility(poly, make_order(*key))
    assert rep.degree_ok and rep.separable


def test_degree_matrix():
    for d in (-4, -7, -24):
        for N in (3, 7, 13):
            order = make_order(d, N)
            from ringclass.quadratic import hypothesis_holds
            if not hypothesis_holds(order).holds:
                continue
            poly, _ = min_poly(order)
            assert poly.degree == class_number_order(order.field, N), (d, N)
            assert discriminant(poly) != 0


def test_invariant_real():
    for key in [(-4, 13), (-24, 3)]:
        v = ring_class_invariant(make_order(*key), CTX)
        assert abs(v.imag) < mpmath.mpf(2) ** (-CTX.bits // 2) * abs(v)
        assert abs(EXAMPLES[key](v.real)) < 1e-40


def test_conjugate_multiset_independent_of_representatives():
    for key in [(-4, 13), (-7, 7), (-24, 3), (-23, 3)]:
        a = sorted(conjugates(make_order(*key), CTX), key=lambda z: (float(z.real), float(z.imag)))
        b = sorted(conjugates(make_order(*key), CTX, reverse=True),
                   key=lambda z: (float(z.real), float(z.imag)))
        assert all(abs(x - y) < 1e-60 * (1 + abs(x)) for x, y in zip(a, b))


def test_symmetric_functions_example_sextic():
    vals = conjugates(make_order(-4, 13), CTX)
    with mpmath.workprec(CTX.working_bits):
        e1 = sum(vals)
        prod = mpmath.fprod(vals)
    assert abs(e1 + 10) < 1e-60          # -e1 is the X^5 coefficient
    assert abs(prod - (-1)) < 1e-60      # (-1)^6 e6 is the constant term


def test_j_polynomial():
    poly, _ = min_poly_j(make_order(-4, 13))
    assert poly == J_POLY_DK4_N13
    assert poly.degree == class_number_order(make_order(-4, 13).field, 13)
    assert SEXTIC_DK4_N13.max_coeff() < poly.max_coeff()
    assert poly == IntPoly.from_roots([1728] * 6)


def test_scaled_j_gives_class_polynomial_of_order():
    # j(13 i) generates the ring class field too; its polynomial has the
    # right degree and is separable
    poly, _ = min_poly_j(make_order(-4, 13), scaled=True)
    assert poly.degree == 6 and discriminant(poly) != 0
    assert poly != J_POLY_DK4_N13


def test_discriminant_factorizations():
    assert factor_discriminant(discriminant(SEXTIC_DK4_N13)) == (1, {2: 10, 3: 6, 13: 5}, 1)
    sign, facs, rest = factor_discriminant(discriminant(SEXTIC_DK24_N3))
    assert (sign, facs, rest) == (1, {2: 69, 3: 36, 13: 4, 17: 2, 19: 4, 23: 2}, 1)
    assert format_factorization(1, {2: 10, 3: 6, 13: 5}) == "2^10 * 3^6 * 13^5"


def test_irreducibility_reports():
    order = make_order(-7, 6)
    rep = verify_degree_and_irreducibility(QUARTIC_DK7_N6, order)
    assert rep.degree == 4 == rep.expected_degree and rep.status == "irreducible"
    rep = verify_degree_and_irreducibility(IntPoly((1, 0, 1)), make_order(-4, 13))
    assert rep.status == "irreducible" and rep.certificate_prime == 3 and not rep.degree_ok
    rep = verify_degree_and_irreducibility(IntPoly.from_roots([1, 2]), make_order(-4, 13))
    assert rep.status == "reducible" and not rep.degree_ok


def test_recognition_failure_raises():
    with pytest.raises(RecognitionError) as exc:
        recognize(lambda ctx: [mpmath.mpf(1) / 3], 64, max_doublings=1)
    assert len(exc.value.residuals) == 2


def test_default_bits_heuristic():
    order = make_order(-4, 13)
    assert default_bits(order) == int(128 + 16 * 6 + 4 * 13 * 2)


@pytest.mark.parametrize("key", [(-4, 13), (-7, 7), (-24, 3)])
def test_norm_identity(key):
    rep = verify_norm_identity(make_order(*key), CTX)
    tol = 2.0 ** (-CTX.bits / 2)
    assert rep.residual < tol
    assert rep.rhs_imag_residual < tol
    assert rep.eta_form_residual < tol


def test_norm_identity_composite():
    for key in [(-7, 6), (-4, 10), (-3, 12)]:
        rep = verify_norm_identity(make_order(*key), CTX)
        assert rep.residual < 2.0 ** (-CTX.bits / 2), key


def test_norm_orbit_sizes():
    assert norm_orbit(make_order(-4, 13)) == [1, 2, 3, 4, 5, 6]
    # the scalars -1 and i I (mod 13 i = 5) collapse the 12 units into 6 classes
    assert len(norm_orbit(make_order(-24, 3))) == 1


def test_siegel_ramachandra_nonzero():
    for key in [(-4, 13), (-7, 6), (-24, 3), (-3, 10)]:
        v = siegel_ramachandra_principal(make_order(*key), CTX)
        assert abs(v) > 0


def test_unit_absolute_norm_composite_conductor():
    # for N with two prime factors the invariant is a unit
    assert unit_norm_residual(make_order(-7, 6), CTX) < 1e-60
    assert unit_norm_residual(make_order(-23, 6), CTX) < 1e-60
