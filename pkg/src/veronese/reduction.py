"""Order-by-order normal form of a q-regular germ and the Veronese decision.

A germ is *reduced at order r* when its residuals ``g_alpha = x_alpha - s^alpha``
vanish through degree ``q``, ``q+1`` or ``q+2`` according as ``|alpha| + r`` is
``<= q+1``, ``= q+2`` or ``>= q+3``.  Each stage r = 1..q

1. extracts the homogeneous leading residuals ``P_alpha`` of the two weights
   ``|alpha| = q+1-r`` (degree q+1) and ``|alpha| = q+2-r`` (degree q+2),
2. normalizes them with a denominator homography, a parameter change
   ``s_j -> s_j + H_j(s)`` and a linear clean-up of the low weights,
3. tries to solve the distinguished-curve equations for those ``P_alpha``,
4. advances to order r+1 iff every ``P_alpha`` vanishes; otherwise it returns a
   certificate naming a violated polynomial identity.

Pivot multi-indices use ``s1``: ``(k) = (k, 0, ..., 0)`` and
``(k-1; j) = (k-1, 0, .., 1, .., 0)`` with the 1 in slot j.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

from .errors import DomainError, InconsistencyError, InsufficientOrderError, NotQRegularError
from .germ import (
    Germ,
    RawGerm,
    coefficient_rows,
    curve_span_rank,
    family_pattern,
    is_q_regular,
    line_curve,
    osculating_dimensions,
    random_directions,
    reparametrize,
    veronese,
)
from .jets import (
    HomogeneousPoly,
    MJet,
    ambient_dimension,
    compose_many,
    coordinate_indices,
    exponents_of_degree,
    identity_substitution,
    mjet_reverse,
    monomial_derivative,
    s1_divide,
    unit_index,
)
from .linalg import exact_rank, mat_inverse
from .projective import (
    Homography,
    apply_homography,
    homography_compose,
    weight_slice_homography,
)
from .rnc import fit_rnc


# ---------------------------------------------------------------------------
# pivots and profiles


def pivot(n: int, k: int) -> tuple:
    """The multi-index ``(k) = (k, 0, ..., 0)``."""
    return unit_index(n, 0, k)


def pivot_j(n: int, k: int, j: int) -> tuple:
    """The multi-index ``(k-1; j)``; ``j`` is 1-based and >= 2."""
    e = [0] * n
    e[0] = k - 1
    e[j - 1] += 1
    return tuple(e)


def profile_bound(w: int, r: int, q: int) -> int:
    """Residuals of weight ``w`` at order ``r`` vanish in degrees <= this bound."""
    s = w + r
    if s <= q + 1:
        return q
    if s == q + 2:
        return q + 1
    return q + 2


def profile_violations(g: Germ, r: int) -> list:
    """``[(alpha, exponent, coeff), ...]`` for residual terms breaking the order-r profile."""
    out = []
    for a in g.alphas:
        bound = profile_bound(sum(a), r, g.q)
        for e, c in g.residual(a).terms.items():
            if sum(e) <= bound:
                out.append((a, e, c))
    return out


def satisfies_profile(g: Germ, r: int) -> bool:
    return not profile_violations(g, r)


@dataclass(frozen=True)
class ReducedGerm:
    germ: Germ
    r: int

    def __post_init__(self):
        q = self.germ.q
        if not 1 <= self.r <= q + 1:
            raise DomainError(f"reduction order {self.r} outside 1..{q + 1}")
        bad = profile_violations(self.germ, self.r)
        if bad:
            a, e, c = bad[0]
            raise InconsistencyError(
                f"germ is not reduced at order {self.r}: x_{a} has residual term {c}*s^{e}"
            )


def group_weights(r: int, q: int):
    """Weights of the degree-(q+1) and degree-(q+2) groups at order r (None when absent)."""
    w1 = q + 1 - r if r <= q else None
    w2 = q + 2 - r if r >= 2 else None
    return w1, w2


@dataclass(frozen=True)
class PGroups:
    n: int
    q: int
    r: int
    q1: dict  # weight q+1-r components -> degree q+1 leading residual
    q2: dict  # weight q+2-r components -> degree q+2 leading residual

    @property
    def w1(self):
        return group_weights(self.r, self.q)[0]

    @property
    def w2(self):
        return group_weights(self.r, self.q)[1]

    def get(self, alpha) -> HomogeneousPoly:
        alpha = tuple(alpha)
        if alpha in self.q1:
            return self.q1[alpha]
        return self.q2[alpha]

    def groups(self):
        """``[(weight, degree, polys), ...]`` for the groups present."""
        out = []
        if self.w1 is not None:
            out.append((self.w1, self.q + 1, self.q1))
        if self.w2 is not None:
            out.append((self.w2, self.q + 2, self.q2))
        return out

    def all_polys(self):
        return list(self.q1.items()) + list(self.q2.items())

    def nonzero(self) -> list:
        return [(a, p) for a, p in self.all_polys() if not p.is_zero()]

    def is_zero(self) -> bool:
        return not self.nonzero()


def extract_P(g: ReducedGerm) -> PGroups:
    germ, r, q, n = g.germ, g.r, g.germ.q, g.germ.n
    if q + 2 > germ.T:
        raise InsufficientOrderError("need jets through degree q+2")
    w1, w2 = group_weights(r, q)
    q1, q2 = {}, {}
    if w1 is not None:
        for a in exponents_of_degree(n, w1):
            q1[a] = germ.residual(a).homogeneous_part(q + 1)
    if w2 is not None:
        for a in exponents_of_degree(n, w2):
            q2[a] = germ.residual(a).homogeneous_part(q + 2)
    return PGroups(n, q, r, q1, q2)


# ---------------------------------------------------------------------------
# normalization


def first_order_change(P: HomogeneousPoly, alpha, G: HomogeneousPoly, H: Sequence) -> HomogeneousPoly:
    """``P + s^alpha G + sum_j alpha_j s^alpha / s_j H_j``: the leading residual after a
    weight-r denominator homography and the parameter change ``s -> s + H(s)``."""
    out = P + G.times_monomial(alpha)
    for j, Hj in enumerate(H):
        md = monomial_derivative(alpha, j)
        if md is not None and not Hj.is_zero():
            k, e = md
            out = out + Hj.times_monomial(e, k)
    return out


def lemma32_violations(P: PGroups) -> list:
    """Pivot polynomials whose s1-degree exceeds the normalization bound."""
    n = P.n
    out = []
    if P.w1 is not None:
        k = P.w1
        targets = [pivot(n, k)] + [pivot_j(n, k, j) for j in range(2, n + 1)]
        for a in targets:
            if P.q1[a].s1_degree() > k - 2:
                out.append((a, k - 2, P.q1[a]))
    if P.w2 is not None:
        k = P.w2
        a = pivot(n, k)
        if P.q2[a].s1_degree() > k - 1:
            out.append((a, k - 1, P.q2[a]))
    return out


@dataclass(frozen=True)
class NormalizationData:
    r: int
    G: HomogeneousPoly
    H: tuple
    anodine: tuple  # matrix of the linear clean-up
    A: HomogeneousPoly  # H_1 = -s1 G / k + A
    B: HomogeneousPoly | None  # pivot of the q+2 group = P - s1^k G/(k-1) + B
    g_unique: bool | None  # None when r = 1 (G is fixed to 0)
    predicted: dict  # alpha -> predicted leading residual after normalization

    def reparametrization(self, n: int, T: int) -> list:
        return [MJet.var(n, T, j) + h.to_mjet(T) for j, h in enumerate(self.H)]


def _solve_G_H(P: PGroups):
    n, q, r = P.n, P.q, P.r
    k1 = q + 1 - r
    s1 = HomogeneousPoly.monomial(unit_index(n, 0))
    P1 = P.q1[pivot(n, k1)]
    _, high = P1.split_s1(k1 - 2)
    U = s1_divide(high, k1 - 1)
    U = HomogeneousPoly(n, r + 1, U.terms)
    A = U * Fraction(-1, k1)
    B = None

    def h1_of(G):
        return (s1 * G + U) * Fraction(-1, k1)

    if r == 1:
        G = HomogeneousPoly.zero(n, r)
        unique = None
    else:
        k2 = k1 + 1
        P2 = P.q2[pivot(n, k2)]
        B = U.times_monomial(pivot(n, k2 - 1), Fraction(-k2, k1))
        _, top = (P2 + B).split_s1(k2 - 1)
        G = s1_divide(top, k2) * k1
        G = HomogeneousPoly(n, r, G.terms)
        unique = _g_solve_unique(P, h1_of)
    H = [h1_of(G)]
    for j in range(2, n + 1):
        a = pivot_j(n, k1, j)
        W = P.q1[a] + G.times_monomial(a)
        md = monomial_derivative(a, 0)
        if md is not None:
            W = W + H[0].times_monomial(md[1], md[0])
        _, top = W.split_s1(k1 - 2)
        Hj = s1_divide(top, k1 - 1) * -1
        H.append(HomogeneousPoly(n, r + 1, Hj.terms))
    return G, H, A, B, unique


def _g_solve_unique(P: PGroups, h1_of) -> bool:
    """Independent uniqueness check of the degree-r solve: the linear map sending
    G to the s1-degree >= k coefficients of the q+2 pivot must be injective."""
    n, q, r = P.n, P.q, P.r
    k2 = q + 2 - r
    a = pivot(n, k2)
    zero_P = HomogeneousPoly.zero(n, q + 2)
    basis = exponents_of_degree(n, r)
    rows_idx = [e for e in exponents_of_degree(n, q + 2) if e[0] >= k2]

    def top_coeffs(G):
        H1 = h1_of(G) - h1_of(HomogeneousPoly.zero(n, r))
        out = first_order_change(zero_P, a, G, [H1] + [HomogeneousPoly.zero(n, r + 1)] * (n - 1))
        return [out.coeff(e) for e in rows_idx]

    cols = [top_coeffs(HomogeneousPoly.monomial(m)) for m in basis]
    return len(rows_idx) == len(basis) and exact_rank(cols) == len(basis)


def low_weight_cleanup(g: Germ) -> Homography:
    """Linear map sending the degree <= q part of every component to ``s^alpha``."""
    C = [list(col) for col in zip(*coefficient_rows(g, g.q))]  # component x monomial
    return Homography.linear(mat_inverse(C))


def normalize_order_r(g: ReducedGerm):
    """Normalize the stage-r pivots; returns ``(ReducedGerm, NormalizationData, Homography)``.

    The parameter change lives in ``NormalizationData.H``.
    """
    germ, r, q, n, T = g.germ, g.r, g.germ.q, g.germ.n, g.germ.T
    if not 1 <= r <= q:
        raise DomainError(f"normalization runs for 1 <= r <= q, got r = {r}")
    P = extract_P(g)
    G, H, A, B, unique = _solve_G_H(P)
    predicted = {}
    for _, _, polys in P.groups():
        for a, p in polys.items():
            predicted[a] = first_order_change(p, a, G, H)

    h1 = weight_slice_homography(n, q, G)
    work = apply_homography(h1, germ) if not G.is_zero() else germ
    data_psi = [MJet.var(n, T, j) + h.to_mjet(T) for j, h in enumerate(H)]
    if any(not h.is_zero() for h in H):
        work = reparametrize(work, data_psi)
    h3 = low_weight_cleanup(work)
    work = apply_homography(h3, work)
    out = ReducedGerm(work, r)
    P_after = extract_P(out)
    assert all(P_after.get(a) == predicted[a] for a in predicted), "first-order prediction failed"
    assert not lemma32_violations(P_after), "pivot bounds not met after normalization"
    assert unique in (None, True), "degree-r solve is not unique"
    data = NormalizationData(r, G, tuple(H), h3.A, A, B, unique, predicted)
    return out, data, homography_compose(h3, h1)


def reduce_to_order_1(raw, q: int):
    """Linear change of coordinates making ``x_alpha = s^alpha + O(|s|^(q+1))``."""
    if isinstance(raw, Germ):
        raw = raw.to_raw()
    n, T = raw.n, raw.T
    N = ambient_dimension(n, q)
    if not is_q_regular(raw, q):
        raise NotQRegularError(
            f"osculating dimension {osculating_dimensions(raw, q)[-1]} < {N}"
        )
    if len(raw) != N:
        raise DomainError(f"a q-regular germ in P^N needs exactly N = {N} coordinates, got {len(raw)}")
    C = [list(col) for col in zip(*coefficient_rows(raw, q))]
    h = Homography.linear(mat_inverse(C))
    germ = Germ(n, q, T, apply_homography(h, raw).components)
    return ReducedGerm(germ, 1), h


# ---------------------------------------------------------------------------
# distinguished curves and certificates


@dataclass(frozen=True)
class Certificate:
    """A polynomial identity that must hold for a germ with property (P) but fails.

    identity: ``"a-equation"`` for ``a_j s1^k = P_(k) s_j - P_(k-1;j) s1`` (divisibility
    by s1^k, or agreement with a_j from the other group); ``"alpha-equation"`` for
    ``c_k s^alpha = P_alpha + sum_i a_i d(s^alpha)/ds_i`` (at the pivot or another
    alpha); ``"span"`` and ``"family-pattern"`` for the final-form checks.
    """

    identity: str
    kind: str
    r: int
    kappa: int | None
    alpha: tuple | None = None
    j: int | None = None
    data: dict = field(default_factory=dict)
    statement: str = ""


@dataclass(frozen=True)
class DistinguishedSolution:
    a: tuple  # a_1 .. a_n, a_1 = 0
    c: dict  # weight -> c_k


@dataclass(frozen=True)
class SolveResult:
    solution: DistinguishedSolution | None
    certificate: Certificate | None
    diagnostics: dict


def alpha_equation_lhs(P_alpha: HomogeneousPoly, alpha, a: Sequence) -> HomogeneousPoly:
    out = P_alpha
    for i in range(1, len(alpha)):
        md = monomial_derivative(alpha, i)
        if md is not None and not a[i].is_zero():
            out = out + a[i].times_monomial(md[1], md[0])
    return out


def eliminated_sides(P: dict, n: int, k: int, alpha):
    """Both sides of ``P_alpha s1^k = (1 - sum_{i>=2} alpha_i) P_(k) s^alpha
    + sum_{i>=2} alpha_i P_(k-1;i) s1 s^alpha / s_i``."""
    lhs = P[alpha].times_monomial(pivot(n, k))
    rhs = P[pivot(n, k)].times_monomial(alpha, 1 - sum(alpha[1:]))
    for i in range(1, n):
        md = monomial_derivative(alpha, i)
        if md is not None:
            e = list(md[1])
            e[0] += 1
            rhs = rhs + P[pivot_j(n, k, i + 1)].times_monomial(tuple(e), md[0])
    return lhs, rhs


def _diagnostics(P: PGroups) -> dict:
    n = P.n
    out = {"eliminated": [], "divisibility-a": [], "divisibility-b": []}
    s1 = HomogeneousPoly.monomial(unit_index(n, 0))
    for k, _, polys in P.groups():
        for a in exponents_of_degree(n, k):
            lhs, rhs = eliminated_sides(polys, n, k, a)
            out["eliminated"].append((k, a, lhs == rhs))
        for j in range(2, n + 1):
            sj = HomogeneousPoly.monomial(unit_index(n, j - 1))
            Pk, Pkj = polys[pivot(n, k)], polys[pivot_j(n, k, j)]
            div_a = Pk * sj * (1 - k) + Pkj * s1 * k
            div_b = Pk * sj * s1 * (2 - k) + Pkj * s1 * s1 * (k - 1)
            out["divisibility-a"].append((k, j, s1_divide(div_a, k) is not None))
            out["divisibility-b"].append((k, j, s1_divide(div_b, k) is not None))
    return out


def solve_distinguished(P: PGroups) -> SolveResult:
    """Solve ``c_k s1^k = P_(k)`` and ``a_j s1^k = P_(k) s_j - P_(k-1;j) s1`` with
    polynomial ``a_j``, ``c_k`` shared across both groups, then check every
    ``sum_{i>=2} a_i alpha_i s^alpha / s_i + P_alpha = c_k s^alpha``."""
    n, r = P.n, P.r
    if lemma32_violations(P):
        raise DomainError("pivot polynomials are not normalized; normalize before solving")
    diagnostics = _diagnostics(P)
    s1 = HomogeneousPoly.monomial(unit_index(n, 0))
    a = None
    c = {}
    for k, _, polys in P.groups():
        Pk = polys[pivot(n, k)]
        rhs14 = []
        for j in range(2, n + 1):
            sj = HomogeneousPoly.monomial(unit_index(n, j - 1))
            rhs14.append(Pk * sj - polys[pivot_j(n, k, j)] * s1)
        if a is None:
            a = [HomogeneousPoly.zero(n, r + 1)]
            for j, rhs in enumerate(rhs14, start=2):
                aj = s1_divide(rhs, k)
                if aj is None:
                    return SolveResult(None, Certificate(
                        "a-equation", "divisibility", r, k, pivot_j(n, k, j), j,
                        {"P_k": Pk, "P_kj": polys[pivot_j(n, k, j)], "power": k},
                        f"s1^{k} does not divide P_({k}) s{j} - P_({k - 1};{j}) s1 = {rhs}",
                    ), diagnostics)
                a.append(HomogeneousPoly(n, r + 1, aj.terms))
        else:
            for j, rhs in enumerate(rhs14, start=2):
                lhs = a[j - 1].times_monomial(pivot(n, k))
                if lhs != rhs:
                    return SolveResult(None, Certificate(
                        "a-equation", "equation", r, k, pivot_j(n, k, j), j,
                        {"P_k": Pk, "P_kj": polys[pivot_j(n, k, j)], "a_j": a[j - 1], "power": k},
                        f"a_{j} s1^{k} = {lhs} differs from P_({k}) s{j} - P_({k - 1};{j}) s1 = {rhs}",
                    ), diagnostics)
        ck = s1_divide(Pk, k)
        if ck is None:
            return SolveResult(None, Certificate(
                "alpha-equation", "pivot", r, k, pivot(n, k), None,
                {"P_k": Pk, "power": k},
                f"c_{k} s1^{k} = P_({k}) = {Pk} has no polynomial solution",
            ), diagnostics)
        c[k] = ck
        for alpha in exponents_of_degree(n, k):
            lhs = alpha_equation_lhs(polys[alpha], alpha, a)
            rhs = ck.times_monomial(alpha)
            if lhs != rhs:
                return SolveResult(None, Certificate(
                    "alpha-equation", "equation", r, k, alpha, None,
                    {"P_alpha": polys[alpha], "a": tuple(a), "c_k": ck},
                    f"sum a_i alpha_i s^alpha/s_i + P_{alpha} = {lhs} differs from c_{k} s^alpha = {rhs}",
                ), diagnostics)
    return SolveResult(DistinguishedSolution(tuple(a), c), None, diagnostics)


# brute-force re-verification, written against raw term dicts


def _tmul(t1: dict, t2: dict) -> dict:
    out = {}
    for e1, c1 in t1.items():
        for e2, c2 in t2.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return {e: v for e, v in out.items() if v}


def _tadd(*ts) -> dict:
    out = {}
    for t in ts:
        for e, c in t.items():
            out[e] = out.get(e, 0) + c
    return {e: v for e, v in out.items() if v}


def _tscale(t: dict, c) -> dict:
    return {e: v * c for e, v in t.items() if v * c}


def _mono(n, i, k=1):
    e = [0] * n
    e[i] = k
    return {tuple(e): Fraction(1)}


def verify_certificate(cert: Certificate, n: int) -> bool:
    """True when the certificate's identity is genuinely violated by its data.

    A certificate missing the data its identity needs proves nothing: False.
    """
    try:
        return _verify_certificate(cert, n)
    except (KeyError, AttributeError, TypeError):
        return False


def _verify_certificate(cert: Certificate, n: int) -> bool:
    d = cert.data
    k = cert.kappa
    if cert.identity == "a-equation":
        j = cert.j
        rhs = _tadd(_tmul(d["P_k"].terms, _mono(n, j - 1)), _tscale(_tmul(d["P_kj"].terms, _mono(n, 0)), -1))
        if cert.kind == "divisibility":
            return any(e[0] < k for e in rhs)
        lhs = _tmul(d["a_j"].terms, _mono(n, 0, k))
        return lhs != rhs
    if cert.identity == "alpha-equation":
        if cert.kind == "pivot":
            return any(e[0] < k for e in d["P_k"].terms)
        alpha = cert.alpha
        lhs = dict(d["P_alpha"].terms)
        for i in range(1, n):
            if alpha[i]:
                e = list(alpha)
                e[i] -= 1
                lhs = _tadd(lhs, _tscale(_tmul(d["a"][i].terms, {tuple(e): Fraction(1)}), alpha[i]))
        rhs = _tmul(d["c_k"].terms, {tuple(alpha): Fraction(1)})
        return lhs != rhs
    if cert.identity == "span":
        germ, sigma = d["germ"], d["sigma"]
        return curve_span_rank(line_curve(germ, sigma), germ.T) > germ.q
    if cert.identity == "family-pattern":
        R, _ = family_pattern(d["germ"])
        return R is None
    raise DomainError(f"unknown identity {cert.identity!r}")


# ---------------------------------------------------------------------------
# stages


@dataclass(frozen=True)
class StageResult:
    r: int
    verdict: str  # "advance" | "fail"
    P_before: PGroups
    normalization: NormalizationData | None
    P_after: PGroups
    solve: SolveResult
    nonzero: tuple
    next_germ: ReducedGerm | None


def check_vanishing(g: ReducedGerm, P_before: PGroups | None = None, normalization=None) -> StageResult:
    """Advance to order r+1 iff every normalized ``P_alpha`` vanishes."""
    P = extract_P(g)
    solve = solve_distinguished(P)
    nonzero = tuple(P.nonzero())
    if not nonzero:
        assert solve.solution is not None
        nxt = ReducedGerm(g.germ, g.r + 1)
        return StageResult(g.r, "advance", P_before or P, normalization, P, solve, (), nxt)
    if solve.certificate is None:
        raise AssertionError("nonzero normalized residuals admit distinguished curves")
    return StageResult(g.r, "fail", P_before or P, normalization, P, solve, nonzero, None)


def finalize(g: ReducedGerm):
    """Take the weight-1 coordinates as parameters; returns ``(germ, psi)`` with
    ``x_alpha = s^alpha`` for |alpha| = 1 and residuals ``O(|s|^(q+3))`` otherwise."""
    germ, q, n, T = g.germ, g.germ.q, g.germ.n, g.germ.T
    if g.r != q + 1:
        raise InconsistencyError(f"finalize needs order q+1 = {q + 1}, got {g.r}")
    phi = [germ[unit_index(n, i)] for i in range(n)]
    psi = mjet_reverse(phi)
    out = reparametrize(germ, psi)
    for i in range(n):
        e = unit_index(n, i)
        if out[e] != MJet.monomial(n, T, e):
            raise InconsistencyError("weight-1 coordinates are not the parameters after finalization")
    for a in out.alphas:
        o = out.residual(a).order()
        if o is not None and o < q + 3:
            raise InconsistencyError(f"residual of x_{a} starts in degree {o} < q+3")
    return out, psi


@dataclass
class ReductionTrace:
    n: int
    q: int
    T: int
    verdict: str  # "reduced" | "not-q-regular" | "not-property-P"
    stages: list = field(default_factory=list)
    homography: Homography | None = None
    reparametrization: list | None = None
    final: Germ | None = None
    certificate: Certificate | None = None
    message: str = ""

    @property
    def failed_stage(self):
        return next((s for s in self.stages if s.verdict == "fail"), None)


def replay_witness(raw, h: Homography, psi: Sequence[MJet]) -> list:
    """Components of ``h(raw o psi)``."""
    return list(apply_homography(h, reparametrize(raw, psi)).components)


def witness_holds(raw, h: Homography, psi: Sequence[MJet], final) -> bool:
    return replay_witness(raw, h, psi) == list(final.components)


def run_pipeline(raw, q: int, check_witness: bool = False) -> ReductionTrace:
    """Reduce to order 1, run stages r = 1..q, then finalize.

    With ``check_witness`` the accumulated homography and reparametrization are
    replayed against the input after every stage.
    """
    if isinstance(raw, Germ):
        raw = raw.to_raw()
    n, T = raw.n, raw.T
    trace = ReductionTrace(n, q, T, "reduced")
    try:
        g, h = reduce_to_order_1(raw, q)
    except NotQRegularError as exc:
        trace.verdict = "not-q-regular"
        trace.message = str(exc)
        return trace
    psi = identity_substitution(n, T)

    def check(current):
        if check_witness:
            assert witness_holds(raw, h, psi, current), "witness replay mismatch"

    check(g.germ)
    for r in range(1, q + 1):
        P_before = extract_P(g)
        g, data, h_r = normalize_order_r(g)
        h = homography_compose(h_r, h)
        if any(not x.is_zero() for x in data.H):
            psi = compose_many(psi, data.reparametrization(n, T))
        check(g.germ)
        stage = check_vanishing(g, P_before, data)
        trace.stages.append(stage)
        if stage.verdict == "fail":
            trace.verdict = "not-property-P"
            trace.certificate = stage.solve.certificate
            trace.homography, trace.reparametrization, trace.final = h, psi, g.germ
            trace.message = f"stage r={r}: {stage.solve.certificate.statement}"
            return trace
        g = stage.next_germ
    final, psi_f = finalize(g)
    psi = compose_many(psi, psi_f)
    check(final)
    trace.homography, trace.reparametrization, trace.final = h, psi, final
    return trace


# ---------------------------------------------------------------------------
# decision


VERONESE = "VERONESE"
NOT_Q_REGULAR = "NOT_Q_REGULAR"
NOT_PROPERTY_P = "NOT_PROPERTY_P"
PROPERTY_P_NOT_VERONESE = "PROPERTY_P_NOT_VERONESE"


@dataclass
class Verdict:
    kind: str
    trace: ReductionTrace | None = None
    certificate: Certificate | None = None
    family: dict | None = None
    failing_directions: list = field(default_factory=list)
    message: str = ""

    @property
    def witness(self):
        if self.trace is None or self.kind != VERONESE:
            return None
        return self.trace.homography, self.trace.reparametrization


def decide_veronese(raw, q: int, direction_samples: int = 10, seed=0) -> Verdict:
    if direction_samples < 1:
        raise DomainError("need at least one sampled direction")
    if isinstance(raw, Germ):
        raw = raw.to_raw()
    if not is_q_regular(raw, q):
        dims = osculating_dimensions(raw, q)
        msg = f"osculating dims {','.join(map(str, dims))}; expected {comb(raw.n + q, q) - 1} at order {q}"
        trace = ReductionTrace(raw.n, q, raw.T, "not-q-regular", message=msg)
        return Verdict(NOT_Q_REGULAR, trace, message=msg)
    trace = run_pipeline(raw, q)
    if trace.verdict == "not-q-regular":
        return Verdict(NOT_Q_REGULAR, trace, message=trace.message)
    if trace.verdict == "not-property-P":
        return Verdict(NOT_PROPERTY_P, trace, trace.certificate, message=trace.message)
    final = trace.final
    if final == veronese(final.n, q, final.T):
        return Verdict(VERONESE, trace, message="witness maps the input onto the standard Veronese germ")
    directions = random_directions(final.n, direction_samples, seed)
    R, mismatch = family_pattern(final)
    if R is None:
        for sigma in directions:
            rank = curve_span_rank(line_curve(final, sigma), final.T)
            if rank > q:
                cert = Certificate("span", "rank", q + 1, None, data={"germ": final, "sigma": sigma, "rank": rank},
                                   statement=f"line image along {[str(x) for x in sigma]} spans dimension {rank} > {q}")
                return Verdict(NOT_PROPERTY_P, trace, cert, message=cert.statement)
        k, alpha, reason = mismatch
        cert = Certificate("family-pattern", "residual", q + 1, k, alpha, data={"germ": final},
                           statement=f"weight {k}, x_{alpha}: {reason}")
        return Verdict(NOT_PROPERTY_P, trace, cert, message=cert.statement)
    failing = []
    if final.T >= 2 * q + 2:
        for sigma in directions:
            if fit_rnc(line_curve(final, sigma), q) is None:
                failing.append(sigma)
    nonzero = [a for a in final.alphas if not final.residual(a).is_zero()]
    return Verdict(
        PROPERTY_P_NOT_VERONESE, trace, family=R, failing_directions=failing,
        message=f"final residuals nonzero at {nonzero}; {len(failing)}/{len(directions)} sampled line curves are not rational normal curves",
    )
