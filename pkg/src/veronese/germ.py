"""Parametrized germs of n-dimensional varieties at the origin of the affine chart.

A :class:`Germ` carries one jet per coordinate ``x_alpha``, ``1 <= |alpha| <= q``,
stored in canonical coordinate order.  A :class:`RawGerm` is an arbitrary list of
component jets (any number of coordinates, no indexing convention).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Mapping, Sequence

from .errors import DomainError, InsufficientOrderError
from .jets import (
    MJet,
    UJet,
    ambient_dimension,
    canonical_index,
    compose_many,
    coordinate_indices,
    exponents_between,
    exponents_of_degree,
    linear_part_matrix,
    substitute_line,
    to_rational,
    unit_index,
    weight,
)
from .linalg import determinant, exact_rank
from .projective import Homography, apply_homography, random_homography


def default_trunc(q: int) -> int:
    return max(q + 4, 2 * q + 2)


def _check_components(components, n, T):
    for x in components:
        if not isinstance(x, MJet):
            raise DomainError("germ components must be jets")
        if x.n != n or x.trunc != T:
            raise DomainError(f"component of shape (n={x.n}, T={x.trunc}) in a germ of shape (n={n}, T={T})")
        if x.constant_term():
            raise DomainError("germ components must vanish at the origin")


class RawGerm:
    """A parametrization ``s -> (x_1(s), ..., x_M(s))`` with no index convention."""

    __slots__ = ("n", "T", "components", "labels")

    def __init__(self, n: int, T: int, components: Sequence[MJet], labels: Sequence | None = None):
        components = tuple(components)
        _check_components(components, n, T)
        if labels is not None:
            labels = tuple(tuple(a) for a in labels)
            if len(labels) != len(components):
                raise DomainError("one label per component")
        self.n = n
        self.T = T
        self.components = components
        self.labels = labels

    def __len__(self):
        return len(self.components)

    def __eq__(self, other):
        if not isinstance(other, RawGerm):
            return NotImplemented
        return (self.n, self.T, self.components) == (other.n, other.T, other.components)

    def __hash__(self):
        return hash((self.n, self.T, self.components))

    def __repr__(self):
        return f"RawGerm(n={self.n}, T={self.T}, M={len(self)})"

    def with_components(self, components) -> "RawGerm":
        return RawGerm(self.n, self.T, components, self.labels)


class Germ:
    """Germ in P^N, N = C(n+q, n) - 1, with coordinates indexed by multi-indices."""

    __slots__ = ("n", "q", "T", "components")

    def __init__(self, n: int, q: int, T: int, components):
        if n < 1 or q < 1:
            raise DomainError("need n >= 1 and q >= 1")
        if T < q + 3:
            raise DomainError(f"truncation T={T} is below q+3={q + 3}")
        alphas = coordinate_indices(n, q)
        if isinstance(components, Mapping):
            missing = [a for a in alphas if a not in components]
            extra = [a for a in components if tuple(a) not in set(alphas)]
            if missing or extra:
                raise DomainError(f"component index set mismatch (missing {missing}, unexpected {extra})")
            components = [components[a] for a in alphas]
        components = tuple(components)
        if len(components) != len(alphas):
            raise DomainError(f"expected {len(alphas)} components, got {len(components)}")
        _check_components(components, n, T)
        self.n, self.q, self.T = n, q, T
        self.components = components

    @property
    def N(self) -> int:
        return len(self.components)

    @property
    def alphas(self) -> tuple:
        return coordinate_indices(self.n, self.q)

    def __getitem__(self, alpha) -> MJet:
        return self.components[canonical_index(alpha, self.n, self.q)]

    def items(self):
        return zip(self.alphas, self.components)

    def residual(self, alpha) -> MJet:
        """``x_alpha - s^alpha``."""
        return self[alpha] - MJet.monomial(self.n, self.T, alpha)

    def residuals(self) -> dict:
        return {a: self.residual(a) for a in self.alphas}

    def __eq__(self, other):
        if not isinstance(other, Germ):
            return NotImplemented
        return (self.n, self.q, self.T, self.components) == (other.n, other.q, other.T, other.components)

    def __hash__(self):
        return hash((self.n, self.q, self.T, self.components))

    def __repr__(self):
        return f"Germ(n={self.n}, q={self.q}, T={self.T})"

    def with_components(self, components) -> "Germ":
        return Germ(self.n, self.q, self.T, components)

    def to_raw(self) -> RawGerm:
        return RawGerm(self.n, self.T, self.components, self.alphas)

    @classmethod
    def from_raw(cls, raw: RawGerm, q: int) -> "Germ":
        return cls(raw.n, q, raw.T, raw.components)


@dataclass(frozen=True)
class CurveJet:
    T: int
    components: tuple

    def __post_init__(self):
        for c in self.components:
            if c.trunc != self.T:
                raise DomainError("curve components must share the truncation")
            if c.coeffs[0]:
                raise DomainError("curve components must vanish at t = 0")

    def coefficient_vector(self, mu: int) -> list:
        return [c.coeffs[mu] for c in self.components]


# ---------------------------------------------------------------------------
# constructions


def veronese(n: int, q: int, T: int | None = None) -> Germ:
    """The standard Veronese germ ``x_alpha = s^alpha``."""
    T = default_trunc(q) if T is None else T
    if T < q + 3:
        raise DomainError(f"truncation T={T} is below q+3={q + 3}")
    return Germ(n, q, T, [MJet.monomial(n, T, a) for a in coordinate_indices(n, q)])


def moment_curve(q: int, T: int) -> Germ:
    return veronese(1, q, T)


def reparametrize(g, psi: Sequence[MJet]):
    """Substitute ``s := psi(s)`` in every component (same germ kind back)."""
    psi = list(psi)
    if len(psi) != g.n:
        raise DomainError(f"reparametrization needs {g.n} jets")
    for p in psi:
        if p.n != g.n or p.trunc != g.T:
            raise DomainError("reparametrization jets must match the germ shape")
    if determinant(linear_part_matrix(psi)) == 0:
        raise DomainError("reparametrization has a singular linear part")
    return g.with_components(compose_many(g.components, psi))


def coefficient_rows(g, k: int) -> list:
    """Rows indexed by monomials ``1 <= |beta| <= k``; entry = coeff of s^beta in each component."""
    return [[x.coeff(beta) for x in g.components] for beta in exponents_between(g.n, 1, k)]


def osculating_dimension(g, k: int) -> int:
    if not 1 <= k <= g.T:
        raise DomainError(f"order {k} outside 1..{g.T}")
    return exact_rank(coefficient_rows(g, k))


def osculating_dimensions(g, q: int) -> list:
    return [osculating_dimension(g, k) for k in range(1, q + 1)]


def is_q_regular(g, q: int) -> bool:
    if q > g.T:
        raise DomainError("regularity order exceeds the truncation")
    return osculating_dimension(g, q) == comb(g.n + q, q) - 1


def project_drop(g: Germ, alpha) -> RawGerm:
    """Project from the coordinate point of ``x_alpha`` (drop that coordinate)."""
    i = canonical_index(alpha, g.n, g.q)
    comps = g.components[:i] + g.components[i + 1 :]
    labels = g.alphas[:i] + g.alphas[i + 1 :]
    return RawGerm(g.n, g.T, comps, labels)


def line_curve(g, sigma: Sequence) -> CurveJet:
    sigma = [to_rational(x) for x in sigma]
    if len(sigma) != g.n:
        raise DomainError(f"direction needs {g.n} entries")
    if not any(sigma):
        raise DomainError("direction must be nonzero")
    return CurveJet(g.T, tuple(substitute_line(x, sigma) for x in g.components))


def curve_span_rank(c: CurveJet, mu_max: int) -> int:
    if mu_max > c.T:
        raise DomainError("order exceeds the curve truncation")
    return exact_rank([c.coefficient_vector(mu) for mu in range(1, mu_max + 1)])


def make_family_germ(n: int, q: int, T: int, R: Mapping[int, MJet]) -> Germ:
    """``x_alpha = s^alpha (1 + R_{|alpha|}(s))`` with ``R_1 = 0``.

    Each ``R_k`` must start in degree >= q+3-k so that ``s^alpha R_k = O(|s|^(q+3))``.
    """
    R = dict(R)
    for k, Rk in R.items():
        if not 1 <= k <= q:
            raise DomainError(f"R is indexed by weights 1..{q}, got {k}")
        if k == 1:
            if not Rk.is_zero():
                raise DomainError("R_1 must vanish")
            continue
        if Rk.n != n:
            raise DomainError(f"R_{k} is not a jet in {n} variables")
        low = Rk.order()
        if low is not None and low < q + 3 - k:
            raise DomainError(f"R_{k} has terms of degree {low} < q+3-k = {q + 3 - k}")
        if Rk.trunc < T - k:
            raise InsufficientOrderError(f"R_{k} known only to degree {Rk.trunc}, need {T - k}")
    comps = []
    for a in coordinate_indices(n, q):
        k = weight(a)
        terms = {a: Fraction(1)}
        Rk = R.get(k)
        if Rk is not None and k >= 2:
            for e, c in Rk.terms.items():
                if sum(e) + k <= T:
                    terms[tuple(x + y for x, y in zip(a, e))] = c
        comps.append(MJet(n, T, terms))
    return Germ(n, q, T, comps)


def family_pattern(g: Germ):
    """Return ``(R, None)`` when every residual of weight k is ``s^alpha R_k`` for
    a common ``R_k``, else ``(None, (k, alpha, reason))``."""
    n, T = g.n, g.T
    for i in range(n):
        e = unit_index(n, i)
        if g[e] != MJet.monomial(n, T, e):
            raise DomainError("weight-1 components must equal s_i exactly")
    R = {}
    for k in range(2, g.q + 1):
        common = None
        for a in exponents_of_degree(n, k):
            quotient = {}
            for e, c in g.residual(a).terms.items():
                d = tuple(x - y for x, y in zip(e, a))
                if any(v < 0 for v in d):
                    return None, (k, a, f"residual term s^{e} is not divisible by s^{a}")
                quotient[d] = c
            Ra = MJet(n, T - k, quotient)
            if common is None:
                common = Ra
            elif Ra != common:
                return None, (k, a, "residual factor differs from the other components of the same weight")
        R[k] = common
    return R, None


def check_family_pattern(g: Germ):
    """Recover ``{k: R_k}`` (k = 2..q, each known to degree T-k) or None."""
    R, _ = family_pattern(g)
    return R


# ---------------------------------------------------------------------------
# seeded generators


def _rand_q(rng, magnitude):
    return Fraction(rng.randint(-magnitude, magnitude), rng.randint(1, magnitude))


def random_reparametrization(n: int, T: int, seed, magnitude: int = 2, max_degree: int | None = None) -> list:
    """Seeded origin-preserving substitution with invertible linear part.

    Each component gets one random monomial in every degree 2..max_degree.
    """
    if magnitude <= 0:
        return [MJet.var(n, T, i) for i in range(n)]
    rng = random.Random(f"reparam:{n}:{T}:{seed}:{magnitude}")
    max_degree = T if max_degree is None else min(max_degree, T)
    while True:
        L = [[_rand_q(rng, magnitude) for _ in range(n)] for _ in range(n)]
        if determinant(L) != 0:
            break
    psi = []
    for i in range(n):
        terms = {unit_index(n, j): L[i][j] for j in range(n)}
        for d in range(2, max_degree + 1):
            e = rng.choice(exponents_of_degree(n, d))
            terms[e] = _rand_q(rng, magnitude)
        psi.append(MJet(n, T, terms))
    return psi


def disguise(g, seed, magnitude: int = 2):
    """Hide ``g`` behind a seeded homography and reparametrization.

    Returns ``(apply_homography(h, reparametrize(g, psi)), h, psi)``.
    """
    q = g.q if isinstance(g, Germ) else None
    if q is None:
        raise DomainError("disguise needs an indexed germ")
    h = random_homography(g.n, q, seed, magnitude)
    psi = random_reparametrization(g.n, g.T, seed, magnitude, max_degree=q + 3)
    return apply_homography(h, reparametrize(g, psi)), h, psi


def random_directions(n: int, count: int, seed, magnitude: int = 5) -> list:
    """Seeded nonzero rational directions in Q^n."""
    rng = random.Random(f"directions:{n}:{seed}:{magnitude}")
    out = []
    while len(out) < count:
        v = [Fraction(rng.randint(-magnitude, magnitude), rng.randint(1, magnitude)) for _ in range(n)]
        if any(v):
            out.append(v)
    return out


__all__ = [
    "RawGerm",
    "Germ",
    "CurveJet",
    "default_trunc",
    "veronese",
    "moment_curve",
    "reparametrize",
    "coefficient_rows",
    "osculating_dimension",
    "osculating_dimensions",
    "is_q_regular",
    "project_drop",
    "line_curve",
    "curve_span_rank",
    "make_family_germ",
    "family_pattern",
    "check_family_pattern",
    "random_reparametrization",
    "disguise",
    "random_directions",
    "ambient_dimension",
    "Homography",
]
