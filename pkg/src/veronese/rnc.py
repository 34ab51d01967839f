"""Rational normal curves: parameter normalization, affine jets, rigidity, fitting.

Polynomials in ``t`` are tuples of Fractions indexed by degree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import (
    BadTangentError,
    CurveNotInChartError,
    DomainError,
    HypothesisNotMetError,
    InsufficientOrderError,
)
from .germ import CurveJet
from .jets import UJet, to_rational, ujet_reverse
from .linalg import exact_rank, solve_linear


# ---------------------------------------------------------------------------
# univariate polynomial helpers


def poly_trim(p) -> tuple:
    p = [to_rational(c) for c in p]
    while p and not p[-1]:
        p.pop()
    return tuple(p)


def poly_degree(p) -> int:
    return len(poly_trim(p)) - 1


def poly_coeff(p, k) -> Fraction:
    return p[k] if 0 <= k < len(p) else Fraction(0)


def poly_mul(a, b) -> tuple:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return poly_trim(out)


def poly_divmod(a, b):
    a, b = list(poly_trim(a)), poly_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        f = a[-1] / b[-1]
        quot[k] = f
        for i, y in enumerate(b):
            a[i + k] -= f * y
        a = list(poly_trim(a))
    return poly_trim(quot), tuple(a)


def poly_gcd(a, b) -> tuple:
    """Monic gcd over Q."""
    a, b = poly_trim(a), poly_trim(b)
    while b:
        _, r = poly_divmod(a, b)
        a, b = b, r
    if not a:
        return ()
    return tuple(c / a[-1] for c in a)


def poly_gcd_all(polys) -> tuple:
    g = ()
    for p in polys:
        g = poly_gcd(g, p)
    return g


def poly_str(p, var="t") -> str:
    p = poly_trim(p)
    parts = []
    for k, c in enumerate(p):
        if not c:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append("-" + mono)
        else:
            parts.append(f"{c}*{mono}")
    return " + ".join(parts).replace("+ -", "- ") or "0"


# ---------------------------------------------------------------------------
# types


@dataclass(frozen=True)
class RncPoly:
    """A tuple ``(X_0, ..., X_d)`` of polynomials of degree <= q, ``x_j = X_j / X_0``."""

    q: int
    X: tuple

    def __post_init__(self):
        X = tuple(poly_trim(p) for p in self.X)
        object.__setattr__(self, "X", X)
        if len(X) < 2:
            raise DomainError("a curve needs X_0 and at least one coordinate")
        for j, p in enumerate(X):
            if len(p) - 1 > self.q:
                raise DomainError(f"X_{j} has degree {len(p) - 1} > q = {self.q}")
        if not X[0]:
            raise DomainError("X_0 must not vanish identically")

    @classmethod
    def moment(cls, q: int) -> "RncPoly":
        return cls(q, tuple(tuple([0] * j + [1]) for j in range(q + 1)))

    def __str__(self):
        return "(" + ", ".join(poly_str(p) for p in self.X) + ")"

    def scaled(self, lam) -> "RncPoly":
        lam = to_rational(lam)
        return RncPoly(self.q, tuple(tuple(lam * c for c in p) for p in self.X))

    def substituted(self, a) -> "RncPoly":
        """Parameter change ``t -> a t``."""
        a = to_rational(a)
        return RncPoly(self.q, tuple(tuple(c * a**k for k, c in enumerate(p)) for p in self.X))

    def mobius(self, c) -> "RncPoly":
        """Parameter change ``t -> t / (1 + c t)`` followed by clearing denominators:
        ``X_j(t) -> (1 + c t)^q X_j(t / (1 + c t))``."""
        c = to_rational(c)
        q = self.q
        out = []
        for p in self.X:
            acc = ()
            for k, a in enumerate(p):
                if a:
                    factor = (Fraction(1),)
                    for _ in range(q - k):
                        factor = poly_mul(factor, (Fraction(1), c))
                    term = poly_mul((Fraction(0),) * k + (a,), factor)
                    acc = _padd(acc, term)
            out.append(acc)
        return RncPoly(q, tuple(out))


def _padd(a, b):
    m = max(len(a), len(b))
    return poly_trim([poly_coeff(a, i) + poly_coeff(b, i) for i in range(m)])


@dataclass(frozen=True)
class Equation:
    group: int  # 1: a_j = 0 (degree bound); 2: a_j + (j-1) a_0 = j a_1
    j: int
    lhs: Fraction
    rhs: Fraction

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


@dataclass(frozen=True)
class RigidityRound:
    r: int
    a: tuple
    equations: tuple
    used: tuple  # the (group, j) pairs forcing a_0 = a_1 = 0

    @property
    def all_zero(self) -> bool:
        return not any(self.a)


@dataclass(frozen=True)
class RigidityCertificate:
    q: int
    mobius_shift: Fraction
    rounds: tuple
    final: RncPoly
    notes: tuple = field(default=())

    @property
    def rigid(self) -> bool:
        if self.notes or not all(r.all_zero for r in self.rounds):
            return False
        if self.q >= 2 and len(self.rounds) != self.q:
            return False
        return self.final == RncPoly.moment(self.q)


# ---------------------------------------------------------------------------
# operations


def normalize_param(c: RncPoly) -> RncPoly:
    """Rescale the tuple and substitute ``t -> a t`` so that
    ``X_0 = 1 + O(t)`` and ``X_1 = t + O(t^2)``."""
    x00 = poly_coeff(c.X[0], 0)
    if not x00:
        raise CurveNotInChartError("X_0(0) = 0: the curve leaves the affine chart at t = 0")
    c = c.scaled(1 / x00)
    if poly_coeff(c.X[1], 0):
        raise DomainError("X_1(0) != 0: the curve does not pass through the origin")
    slope = poly_coeff(c.X[1], 1)
    if not slope:
        raise BadTangentError("X_1'(0) = 0")
    return c.substituted(1 / slope)


def _is_normalized(c: RncPoly) -> bool:
    return (
        poly_coeff(c.X[0], 0) == 1
        and poly_coeff(c.X[1], 0) == 0
        and poly_coeff(c.X[1], 1) == 1
    )


def affine_jets(c: RncPoly, T: int) -> CurveJet:
    """Jets of ``x_j = X_j / X_0`` to order ``T``, j >= 1."""
    if not poly_coeff(c.X[0], 0):
        raise CurveNotInChartError("X_0(0) = 0")
    inv = UJet(T, c.X[0]).inverse()
    return CurveJet(T, tuple(UJet(T, p) * inv for p in c.X[1:]))


def graph_residuals(c: RncPoly, order: int) -> list:
    """Residuals ``x_j(tau) - tau^j`` (j = 2..d) with ``tau = x_1`` as parameter."""
    jets = affine_jets(c, order)
    g = ujet_reverse(jets.components[0])
    tau = UJet.t(order)
    return [jets.components[j - 1].compose(g) - tau**j for j in range(2, len(c.X))]


def rigidity_check(c: RncPoly) -> RigidityCertificate:
    """Run the order-by-order rigidity induction on a normalized curve in P^q
    whose affine chart is a graph ``x_j = x_1^j + O(x_1^(q+3))``.

    Before the induction, the residual parameter freedom ``t -> t / (1 + c t)``
    (which preserves the normalization) is pinned by requiring the ``t^2``
    coefficient of ``X_1`` to vanish; without this step the first round has no
    equation separating ``a_0`` from ``a_1``.
    """
    q = c.q
    if len(c.X) != q + 1:
        raise DomainError(f"rigidity is stated for curves in P^q: need {q + 1} polynomials")
    if not _is_normalized(c):
        raise DomainError("curve is not normalized (X_0 = 1 + O(t), X_1 = t + O(t^2))")
    for j, res in enumerate(graph_residuals(c, q + 2), start=2):
        low = res.order()
        if low is not None:
            raise HypothesisNotMetError(
                f"x_{j} - x_1^{j} has a term of order {low} < q+3 = {q + 3}"
            )
    if q >= 2:
        shift = -poly_coeff(c.X[1], 2) / (q - 1)
    else:
        shift = -poly_coeff(c.X[0], 1)
    work = c.mobius(shift)
    rounds = []
    notes = []
    for r in range(1, q + 1) if q >= 2 else ():
        for j, p in enumerate(work.X):
            expected = [Fraction(int(k == j)) for k in range(j + r)]
            if [poly_coeff(p, k) for k in range(j + r)] != expected:
                notes.append(f"induction hypothesis fails for X_{j} at round {r}")
        if notes:
            break
        a = tuple(poly_coeff(p, j + r) for j, p in enumerate(work.X))
        eqs = []
        for j in range(1, q + 1):
            if j + r >= q + 1:
                eqs.append(Equation(1, j, a[j], Fraction(0)))
        for j in range(2, q + 1):
            if j + r <= q + 2:
                eqs.append(Equation(2, j, a[j] + (j - 1) * a[0], j * a[1]))
        if r == 1:
            used = ((1, q), (2, q))  # with a_1 = 0 from the pinning
        elif r == q:
            used = ((1, 1), (1, 2), (2, 2))
        else:
            used = ((2, q + 1 - r), (2, q + 2 - r))
        rounds.append(RigidityRound(r, a, tuple(eqs), used))
        if any(a):
            break
    return RigidityCertificate(q, shift, tuple(rounds), work, tuple(notes))


def fit_rnc(c: CurveJet, q: int) -> RncPoly | None:
    """Find ``X_0`` (``X_0(0) = 1``) and ``X_j`` of degree <= q with
    ``x_j X_0 = X_j mod t^(T+1)``; keep it only if the tuple spans a (q+1)-dim
    space of polynomials and has no common factor."""
    T = c.T
    if T < 2 * q + 2:
        raise InsufficientOrderError(f"curve jets of order {T} < 2q+2 = {2 * q + 2}")
    if not any(x.coeffs[1] for x in c.components):
        raise DomainError("curve must be immersed at t = 0")
    rows, rhs = [], []
    for x in c.components:
        for d in range(q + 1, T + 1):
            rows.append([x.coeffs[d - i] for i in range(1, q + 1)])
            rhs.append(-x.coeffs[d])
    sol, nullity = solve_linear(rows, rhs)
    if sol is None or nullity:
        # inconsistent, or only a common-factor representation of lower degree
        return None
    X0 = (Fraction(1),) + tuple(sol)
    Xs = [X0]
    for x in c.components:
        prod = (UJet(T, X0) * x).coeffs
        Xs.append(poly_trim(prod[: q + 1]))
    span = exact_rank([[poly_coeff(p, k) for k in range(q + 1)] for p in Xs])
    if span != q + 1:
        return None
    if len(poly_gcd_all(Xs)) != 1:
        return None
    return RncPoly(q, tuple(Xs))
