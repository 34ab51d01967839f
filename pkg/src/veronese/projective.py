"""Homographies of P^N fixing the origin, written in the affine chart.

A homography is stored as a pair ``(A, b)`` and acts by ``x -> A x / (1 + b.x)``.
In homogeneous coordinates ``(x0, x)`` it is the block matrix ``[[1, b], [0, A]]``,
so composition and inversion are block-matrix operations.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .errors import DomainError
from .jets import MJet, ambient_dimension, coordinate_indices, to_rational, weight
from .linalg import determinant, identity, mat_inverse, mat_mul, vec_mat


class Homography:
    __slots__ = ("A", "b")

    def __init__(self, A: Sequence[Sequence], b: Sequence | None = None):
        A = tuple(tuple(to_rational(x) for x in row) for row in A)
        N = len(A)
        if any(len(row) != N for row in A):
            raise DomainError("linear part must be square")
        if b is None:
            b = (Fraction(0),) * N
        b = tuple(to_rational(x) for x in b)
        if len(b) != N:
            raise DomainError(f"translation part needs {N} entries")
        if determinant(A) == 0:
            raise DomainError("linear part is singular")
        self.A = A
        self.b = b

    @property
    def dim(self) -> int:
        return len(self.A)

    @classmethod
    def identity(cls, N: int) -> "Homography":
        return cls(identity(N))

    @classmethod
    def linear(cls, A) -> "Homography":
        return cls(A)

    @classmethod
    def denominator(cls, b) -> "Homography":
        """The map ``x -> x / (1 + b.x)``."""
        return cls(identity(len(b)), b)

    def __eq__(self, other):
        if not isinstance(other, Homography):
            return NotImplemented
        return self.A == other.A and self.b == other.b

    def __hash__(self):
        return hash((self.A, self.b))

    def __repr__(self):
        return f"Homography(N={self.dim}, A={[[str(x) for x in r] for r in self.A]}, b={[str(x) for x in self.b]})"

    def is_identity(self) -> bool:
        return self == Homography.identity(self.dim)

    def matrix(self) -> list:
        """The (N+1)x(N+1) block matrix ``[[1, b], [0, A]]``."""
        N = self.dim
        top = [Fraction(1)] + list(self.b)
        return [top] + [[Fraction(0)] + list(self.A[i]) for i in range(N)]

    @classmethod
    def from_matrix(cls, M) -> "Homography":
        N = len(M) - 1
        if M[0][0] == 0 or any(M[i][0] for i in range(1, N + 1)):
            raise DomainError("matrix does not fix the origin of the chart")
        s = 1 / Fraction(M[0][0])
        return cls([[x * s for x in row[1:]] for row in M[1:]], [x * s for x in M[0][1:]])

    def __call__(self, x: Sequence):
        """Action on a point of the affine chart."""
        x = [to_rational(v) for v in x]
        den = 1 + sum((bi * xi for bi, xi in zip(self.b, x)), Fraction(0))
        if den == 0:
            raise DomainError("point is sent to infinity")
        return [sum((a * xi for a, xi in zip(row, x)), Fraction(0)) / den for row in self.A]


def homography_compose(h2: Homography, h1: Homography) -> Homography:
    """``h2`` after ``h1``."""
    if h2.dim != h1.dim:
        raise DomainError("homographies act on spaces of different dimension")
    A = mat_mul(h2.A, h1.A)
    b = [x + y for x, y in zip(h1.b, vec_mat(list(h2.b), [list(r) for r in h1.A]))]
    return Homography(A, b)


def homography_inverse(h: Homography) -> Homography:
    Ainv = mat_inverse(h.A)
    b = [-x for x in vec_mat(list(h.b), Ainv)]
    return Homography(Ainv, b)


def apply_homography(h: Homography, g):
    """Apply ``h`` to every point of a germ (``Germ`` or ``RawGerm``)."""
    xs = list(g.components)
    if len(xs) != h.dim:
        raise DomainError(f"homography of P^{h.dim} applied to a germ with {len(xs)} coordinates")
    return g.with_components(act_on_jets(h, xs))


def act_on_jets(h: Homography, xs: Sequence[MJet]) -> list:
    for x in xs:
        if x.constant_term():
            raise DomainError("germ components must vanish at the origin")
    n, T = xs[0].n, xs[0].trunc
    num = []
    for row in h.A:
        acc = {}
        for a, x in zip(row, xs):
            if a:
                for e, c in x.terms.items():
                    acc[e] = acc.get(e, 0) + a * c
        num.append(MJet(n, T, acc))
    if not any(h.b):
        return num
    den = MJet.one(n, T)
    for bi, x in zip(h.b, xs):
        if bi:
            den = den + x.scale(bi)
    inv = den.inverse()
    return [y * inv for y in num]


def _rand_q(rng: random.Random, magnitude: int) -> Fraction:
    return Fraction(rng.randint(-magnitude, magnitude), rng.randint(1, magnitude))


def random_homography(n: int, q: int, seed, magnitude: int = 2) -> Homography:
    """Seeded random homography of P^N, N = C(n+q, n) - 1; magnitude 0 is the identity."""
    N = ambient_dimension(n, q)
    if magnitude <= 0:
        return Homography.identity(N)
    rng = random.Random(f"homography:{n}:{q}:{seed}:{magnitude}")
    while True:
        A = [[_rand_q(rng, magnitude) for _ in range(N)] for _ in range(N)]
        if determinant(A) != 0:
            break
    b = [_rand_q(rng, magnitude) for _ in range(N)]
    return Homography(A, b)


def weight_slice_homography(n: int, q: int, G) -> Homography:
    """The denominator map whose linear form is supported on weight-r coordinates,
    chosen so that ``x_alpha -> x_alpha (1 + G(s)) + ...`` on a reduced germ.

    ``G`` is a HomogeneousPoly of degree r; coordinate ``x_beta`` with |beta| = r
    gets coefficient ``-G[beta]``.
    """
    alphas = coordinate_indices(n, q)
    b = [-G.coeff(a) if weight(a) == G.degree else Fraction(0) for a in alphas]
    return Homography.denominator(b)
