from fractions import Fraction

import pytest

from veronese.errors import DomainError
from veronese.germ import reparametrize, veronese
from veronese.jets import HomogeneousPoly, MJet, canonical_index, coordinate_indices
from veronese.linalg import identity, mat_mul
from veronese.projective import (
    Homography,
    apply_homography,
    homography_compose,
    homography_inverse,
    random_homography,
    weight_slice_homography,
)


def scalar(N, c):
    return Homography([[Fraction(c) * x for x in row] for row in identity(N)])


def unit(N, i):
    return [Fraction(int(k == i)) for k in range(N)]


def test_compose_examples():
    h = random_homography(2, 2, seed=3)
    I = Homography.identity(5)
    assert homography_compose(I, h) == h and homography_compose(h, I) == h
    b = [Fraction(1, 2), -1, 0, 3, Fraction(2, 3)]
    assert homography_compose(Homography.denominator(b), Homography.denominator([-x for x in b])) == I
    assert homography_compose(scalar(5, 2), scalar(5, 3)) == scalar(5, 6)


def test_compose_matches_block_matrices():
    h1, h2 = random_homography(2, 2, 1), random_homography(2, 2, 2)
    prod = mat_mul(h2.matrix(), h1.matrix())
    assert homography_compose(h2, h1) == Homography.from_matrix(prod)


def test_inverse_examples():
    I = Homography.identity(5)
    assert homography_inverse(I) == I
    b = unit(5, 2)
    assert homography_inverse(Homography.denominator(b)) == Homography.denominator([-x for x in b])
    assert homography_inverse(scalar(5, 2)) == scalar(5, Fraction(1, 2))


def test_group_laws_sampled():
    hs = [random_homography(2, 2, s) for s in range(4)]
    for a, b, c in [(hs[0], hs[1], hs[2]), (hs[3], hs[2], hs[1])]:
        assert homography_compose(a, homography_compose(b, c)) == homography_compose(homography_compose(a, b), c)
    for h in hs:
        I = Homography.identity(h.dim)
        assert homography_compose(h, homography_inverse(h)) == I
        assert homography_compose(homography_inverse(h), h) == I


def test_singular_rejected():
    with pytest.raises(DomainError):
        Homography([[1, 2], [2, 4]])


def test_point_action():
    h = Homography([[2, 0], [0, 1]], [1, 0])
    assert h([1, 1]) == [1, Fraction(1, 2)]
    with pytest.raises(DomainError):
        h([-1, 0])


def test_apply_identity():
    g = veronese(2, 2, 6)
    assert apply_homography(Homography.identity(5), g) == g


def test_apply_denominator_example():
    # x_(2,0) = s1^2 / (1 + s1), expanded through T = 7 by an independent oracle
    g = apply_homography(Homography.denominator(unit(5, 0)), veronese(2, 2, 7))
    assert g[(2, 0)] == MJet(2, 7, {(k, 0): (-1) ** k for k in range(2, 8)})


def test_apply_swap_symmetry():
    alphas = coordinate_indices(2, 2)
    N = len(alphas)
    P = [[Fraction(int(alphas[j] == tuple(reversed(alphas[i])))) for j in range(N)] for i in range(N)]
    g = apply_homography(Homography(P), veronese(2, 2, 6))
    swap = [MJet.var(2, 6, 1), MJet.var(2, 6, 0)]
    assert g == reparametrize(veronese(2, 2, 6), swap)


def test_apply_functorial():
    g = veronese(2, 2, 6)
    h1, h2 = random_homography(2, 2, 11), random_homography(2, 2, 12)
    assert apply_homography(h2, apply_homography(h1, g)) == apply_homography(homography_compose(h2, h1), g)
    assert all(not x.constant_term() for x in apply_homography(h1, g).components)


def test_random_homography_conventions():
    assert random_homography(2, 2, 9) == random_homography(2, 2, 9)
    assert random_homography(2, 2, 9) != random_homography(2, 2, 10)
    assert random_homography(3, 2, 1, magnitude=0).is_identity()


def test_weight_slice_multiplies_by_one_plus_G():
    # on veronese, b = -G on the weight-r slice makes the denominator 1 - sum_b G_b s^b
    G = HomogeneousPoly(2, 1, {(1, 0): 2, (0, 1): -1})
    h = weight_slice_homography(2, 2, G)
    assert h.b[canonical_index((1, 0), 2, 2)] == -2
    g = apply_homography(h, veronese(2, 2, 6))
    lead = (g[(2, 0)] - MJet.monomial(2, 6, (2, 0))).homogeneous_part(3)
    assert lead == HomogeneousPoly.monomial((2, 0)) * G
