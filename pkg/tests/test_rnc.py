import random
from fractions import Fraction

import pytest

from veronese.errors import (
    BadTangentError,
    CurveNotInChartError,
    DomainError,
    HypothesisNotMetError,
    InsufficientOrderError,
)
from veronese.germ import CurveJet, line_curve, make_family_germ, random_directions
from veronese.jets import MJet, UJet
from veronese.linalg import exact_rank
from veronese.rnc import (
    RncPoly,
    affine_jets,
    fit_rnc,
    normalize_param,
    poly_coeff,
    poly_divmod,
    poly_gcd,
    poly_gcd_all,
    poly_mul,
    rigidity_check,
)

from conftest import rand_q, random_family_R

F = Fraction


def disguised_moment(q, seed):
    """Moment curve under t -> a t / (1 + c t) and a projective rescaling."""
    rng = random.Random(f"moment:{q}:{seed}")
    a = rand_q(rng) or F(1)
    c = rand_q(rng) if seed % 4 else F(0)
    lam = rand_q(rng) or F(2)
    return RncPoly.moment(q).mobius(c).substituted(a).scaled(lam)


def test_poly_helpers():
    assert poly_mul((1, 1), (1, -1)) == (1, 0, -1)
    assert poly_divmod((1, 0, -1), (1, 1)) == ((1, -1), ())
    assert poly_gcd((1, 0, -1), (1, 1)) == (1, 1)
    assert poly_gcd_all([(0, 1), (0, 0, 1)]) == (0, 1)


def test_rncpoly_invariants():
    with pytest.raises(DomainError):
        RncPoly(2, ((1,), (0, 0, 0, 1)))
    with pytest.raises(DomainError):
        RncPoly(2, ((), (0, 1)))


def test_normalize_param_examples():
    # independently derived: rescale by 1/2, then the slope is already 1
    out = normalize_param(RncPoly(2, ((2,), (0, 2, 1), (0, 0, 2))))
    assert out == RncPoly(2, ((1,), (0, 1, F(1, 2)), (0, 0, 1)))
    assert normalize_param(RncPoly.moment(2)) == RncPoly.moment(2)
    with pytest.raises(CurveNotInChartError):
        normalize_param(RncPoly(3, ((0, 1), (0, 0, 1), (0, 0, 0, 1))))
    with pytest.raises(BadTangentError):
        normalize_param(RncPoly(2, ((1,), (0, 0, 1), (0, 0, 1))))


def test_normalize_param_postconditions_sampled():
    for q in (2, 3, 4):
        for seed in range(10):
            out = normalize_param(disguised_moment(q, seed))
            assert poly_coeff(out.X[0], 0) == 1
            assert poly_coeff(out.X[1], 0) == 0 and poly_coeff(out.X[1], 1) == 1


def test_affine_jets_examples():
    assert affine_jets(RncPoly.moment(2), 5).components == (UJet(5, [0, 1]), UJet(5, [0, 0, 1]))
    # geometric-series division, checked against an independent series expansion
    got = affine_jets(RncPoly(2, ((1, 1), (0, 1), (0, 0, 1))), 3).components
    assert got == (UJet(3, [0, 1, -1, 1]), UJet(3, [0, 0, 1, -1]))
    assert affine_jets(RncPoly(2, ((2,), (0, 2), (0, 0, 2))), 4).components == (UJet(4, [0, 1]), UJet(4, [0, 0, 1]))
    with pytest.raises(CurveNotInChartError):
        affine_jets(RncPoly(2, ((0, 1), (0, 0, 1))), 4)


def test_rigidity_examples():
    cert = rigidity_check(RncPoly.moment(2))
    assert cert.rigid and all(not any(r.a) for r in cert.rounds) and len(cert.rounds) == 2
    cert = rigidity_check(normalize_param(disguised_moment(3, 5)))
    assert cert.rigid and cert.final == RncPoly.moment(3)
    with pytest.raises(HypothesisNotMetError):
        rigidity_check(RncPoly(2, ((1,), (0, 1), (0, F(1, 3), 1))))


def test_rigidity_needs_normalized_input():
    with pytest.raises(DomainError):
        rigidity_check(RncPoly(2, ((2,), (0, 2), (0, 0, 2))))


def test_mobius_pin_is_needed():
    # t -> t/(1 + t) keeps the normalization and the graph, but moves the t^2 coefficient of X_1
    c = RncPoly.moment(2).mobius(1)
    assert normalize_param(c) == c
    cert = rigidity_check(c)
    assert cert.mobius_shift == -1 and cert.rigid


def test_rigidity_equation_groups_recorded():
    cert = rigidity_check(RncPoly.moment(3))
    r1 = cert.rounds[0]
    assert {(e.group, e.j) for e in r1.equations} >= {(1, 3), (2, 2), (2, 3)}
    assert all(e.holds for r in cert.rounds for e in r.equations)


def test_fit_rnc_examples():
    T = 7
    assert fit_rnc(CurveJet(T, (UJet(T, [0, 1]), UJet(T, [0, 0, 1]))), 2) == RncPoly.moment(2)
    alt = [(-1) ** k for k in range(8)]
    x1 = UJet(T, [0] + alt[:7])
    x2 = UJet(T, [0, 0] + alt[:6])
    assert fit_rnc(CurveJet(T, (x1, x2)), 2) == RncPoly(2, ((1, 1), (0, 1), (0, 0, 1)))
    bad = CurveJet(T, (UJet(T, [0, 1]), UJet(T, [0, 0, 1, 0, 0, 0, 0, 1])))
    assert fit_rnc(bad, 2) is None
    with pytest.raises(InsufficientOrderError):
        fit_rnc(CurveJet(5, (UJet(5, [0, 1]), UJet(5, [0, 0, 1]))), 2)


def test_fit_rnc_rejects_degenerate_span():
    # a conic inside a line: x_2 = 2 x_1 spans only a P^1
    T = 7
    c = CurveJet(T, (UJet(T, [0, 1, 1]), UJet(T, [0, 2, 2])))
    assert fit_rnc(c, 2) is None


def random_rnc(q, seed):
    rng = random.Random(f"rnc:{q}:{seed}")
    while True:
        X0 = (F(1),) + tuple(rand_q(rng) for _ in range(q))
        Xs = [(F(0), rand_q(rng) or F(1)) + tuple(rand_q(rng) for _ in range(q - 1))]
        Xs += [(F(0),) + tuple(rand_q(rng) for _ in range(q)) for _ in range(q - 1)]
        allX = [X0] + Xs
        if exact_rank([[poly_coeff(p, k) for k in range(q + 1)] for p in allX]) != q + 1:
            continue
        if len(poly_gcd_all(allX)) != 1:
            continue
        return RncPoly(q, tuple(allX))


@pytest.mark.parametrize("q", [1, 2, 3])
def test_fit_rnc_recovers_random_curves(q):
    for seed in range(8):
        c = random_rnc(q, seed)
        assert fit_rnc(affine_jets(c, 2 * q + 2), q) == c


@pytest.mark.parametrize("n,q,T", [(2, 2, 7), (2, 3, 9)])
def test_fit_rnc_fails_on_family_lines(n, q, T):
    for seed in range(3):
        g = make_family_germ(n, q, T, random_family_R(n, q, T, seed))
        for sigma in random_directions(n, 4, seed):
            c = line_curve(g, sigma)
            residual = any(
                x.coeffs[q + 3:] != tuple(F(0) for _ in x.coeffs[q + 3:]) for x in c.components
            )
            if residual:
                assert fit_rnc(c, q) is None
