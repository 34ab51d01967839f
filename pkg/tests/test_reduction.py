from fractions import Fraction

import pytest

from veronese.errors import DomainError, InconsistencyError, NotQRegularError
from veronese.germ import (
    Germ,
    RawGerm,
    check_family_pattern,
    disguise,
    make_family_germ,
    project_drop,
    veronese,
)
from veronese.jets import HomogeneousPoly, MJet, identity_substitution
from veronese.linalg import identity
from veronese.projective import Homography, apply_homography
from veronese.reduction import (
    NOT_PROPERTY_P,
    NOT_Q_REGULAR,
    PROPERTY_P_NOT_VERONESE,
    VERONESE,
    PGroups,
    ReducedGerm,
    check_vanishing,
    decide_veronese,
    eliminated_sides,
    extract_P,
    finalize,
    lemma32_violations,
    normalize_order_r,
    pivot,
    pivot_j,
    reduce_to_order_1,
    run_pipeline,
    satisfies_profile,
    solve_distinguished,
    verify_certificate,
    witness_holds,
)

from conftest import random_family_R, random_reduced_germ

HP = HomogeneousPoly


def hp(terms, deg, n=2):
    return HP(n, deg, terms)


def a_equation_germ(T=6):
    comps = dict(veronese(2, 2, T).items())
    comps[(2, 0)] = comps[(2, 0)] + MJet.monomial(2, T, (0, 3))
    comps[(1, 1)] = comps[(1, 1)] + MJet.monomial(2, T, (0, 3))
    return Germ(2, 2, T, comps)


def a_equation_groups():
    z = HP.zero(2, 3)
    return PGroups(2, 2, 1, {(2, 0): hp({(0, 3): 1}, 3), (1, 1): hp({(0, 3): 1}, 3), (0, 2): z}, {})


# -- profile -------------------------------------------------------------


def test_profile_of_veronese():
    g = veronese(2, 3, 9)
    assert all(satisfies_profile(g, r) for r in range(1, 5))


def test_reduced_germ_rejects_profile_violation():
    comps = dict(veronese(2, 2, 6).items())
    # weight 2, degree 3: allowed at order 1, not at order 2
    comps[(2, 0)] = comps[(2, 0)] + MJet.monomial(2, 6, (2, 1))
    g = Germ(2, 2, 6, comps)
    ReducedGerm(g, 1)
    with pytest.raises(InconsistencyError):
        ReducedGerm(g, 2)
    with pytest.raises(DomainError):
        ReducedGerm(veronese(2, 2, 6), 4)


# -- reduce_to_order_1 ----------------------------------------------------


def test_reduce_to_order_1_examples():
    g, h = reduce_to_order_1(veronese(2, 2, 6).to_raw(), 2)
    assert g.germ == veronese(2, 2, 6) and h.A == tuple(map(tuple, identity(5)))
    comps = list(veronese(2, 2, 6).components)
    comps[0] = comps[0] + MJet.var(2, 6, 1)
    g, h = reduce_to_order_1(RawGerm(2, 6, comps), 2)
    # inverse of the coefficient matrix, computed independently
    expected = [[1, -1, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, 1]]
    assert h.A == tuple(tuple(Fraction(x) for x in row) for row in expected)
    assert g.germ == veronese(2, 2, 6)
    with pytest.raises(NotQRegularError):
        reduce_to_order_1(project_drop(veronese(2, 2, 6), (1, 1)), 2)


def test_reduce_to_order_1_rejects_extra_coordinates():
    comps = list(veronese(2, 2, 6).components) + [MJet.monomial(2, 6, (3, 0))]
    with pytest.raises(DomainError):
        reduce_to_order_1(RawGerm(2, 6, comps), 2)


# -- extract_P -----------------------------------------------------------


def test_extract_P_examples():
    P = extract_P(ReducedGerm(veronese(2, 2, 6), 1))
    assert P.is_zero()
    comps = dict(veronese(2, 2, 6).items())
    comps[(2, 0)] = comps[(2, 0)] + MJet.monomial(2, 6, (0, 3))
    P = extract_P(ReducedGerm(Germ(2, 2, 6, comps), 1))
    assert P.q1[(2, 0)] == hp({(0, 3): 1}, 3) and P.q2 == {}
    P = extract_P(ReducedGerm(veronese(2, 2, 6), 3))
    assert P.q1 == {} and set(P.q2) == {(1, 0), (0, 1)}


# -- normalize_order_r ---------------------------------------------------


def test_normalize_trivial():
    g, data, h = normalize_order_r(ReducedGerm(veronese(2, 2, 6), 1))
    assert g.germ == veronese(2, 2, 6)
    assert data.G.is_zero() and all(x.is_zero() for x in data.H)


def test_normalize_denominator_example():
    # (I, b = unit at (1,0)) applied to veronese(2,2), brought to order 1
    b = [1, 0, 0, 0, 0]
    raw = apply_homography(Homography.denominator(b), veronese(2, 2, 6))
    g, _ = reduce_to_order_1(raw, 2)
    P = extract_P(g)
    assert P.q1[(2, 0)] == hp({(3, 0): -1}, 3)
    assert P.q1[(1, 1)] == hp({(2, 1): -1}, 3)
    out, data, h = normalize_order_r(g)
    assert data.G.is_zero()
    assert data.H == (hp({(2, 0): Fraction(1, 2)}, 2), hp({(1, 1): Fraction(1, 2)}, 2))
    assert extract_P(out).is_zero()
    assert satisfies_profile(out.germ, 1)


def test_normalize_rejects_r_out_of_range():
    with pytest.raises(DomainError):
        normalize_order_r(ReducedGerm(veronese(2, 2, 6), 3))


@pytest.mark.parametrize("n,q,T", [(2, 2, 6), (3, 2, 6), (2, 3, 8)])
def test_normalize_bounds_and_uniqueness(n, q, T):
    for seed in range(6):
        r = 1 + seed % q
        g = ReducedGerm(random_reduced_germ(n, q, T, r, seed), r)
        out, data, _ = normalize_order_r(g)
        P = extract_P(out)
        assert not lemma32_violations(P)
        assert {a: P.get(a) for a in data.predicted} == data.predicted
        assert data.g_unique is (None if r == 1 else True)


# -- solve_distinguished -------------------------------------------------


def test_solve_all_zero():
    P = extract_P(ReducedGerm(veronese(2, 2, 6), 2))
    res = solve_distinguished(P)
    assert res.certificate is None
    assert all(a.is_zero() for a in res.solution.a)
    assert all(c.is_zero() for c in res.solution.c.values())


def test_solve_a_equation_example():
    res = solve_distinguished(a_equation_groups())
    cert = res.certificate
    assert res.solution is None
    assert (cert.identity, cert.kind, cert.kappa, cert.j) == ("a-equation", "divisibility", 2, 2)
    assert cert.alpha == (1, 1)
    assert verify_certificate(cert, 2)


def test_solve_rejects_unnormalized():
    z = HP.zero(2, 3)
    P = PGroups(2, 2, 1, {(2, 0): hp({(2, 1): 1}, 3), (1, 1): z, (0, 2): z}, {})
    with pytest.raises(DomainError):
        solve_distinguished(P)


def test_solve_pivot_failure():
    # weight-(q+2) group at r = 2: the divisibility step gives a_2 = 0, then
    # c_2 s1^2 = s1 s2^3 has no polynomial solution
    z3, z4 = HP.zero(2, 3), HP.zero(2, 4)
    q2 = {(2, 0): hp({(1, 3): 1}, 4), (1, 1): hp({(0, 4): 1}, 4), (0, 2): z4}
    P = PGroups(2, 2, 2, {(1, 0): z3, (0, 1): z3}, q2)
    cert = solve_distinguished(P).certificate
    assert cert.identity == "alpha-equation" and cert.kind == "pivot" and verify_certificate(cert, 2)


def test_eliminated_sides_hold_for_solvable_data():
    # P built from a_2 = s2^2 (times s1^0) and c_2 = 0: P_alpha = -a_2 alpha_2 s^alpha/s2
    n, k = 2, 2
    a2 = hp({(0, 2): 1}, 2)
    polys = {
        (2, 0): HP.zero(2, 3),
        (1, 1): a2.times_monomial((1, 0), -1),
        (0, 2): a2.times_monomial((0, 1), -2),
    }
    for alpha in polys:
        lhs, rhs = eliminated_sides(polys, n, k, alpha)
        assert lhs == rhs


def test_verify_certificate_rejects_satisfied_identity():
    res = solve_distinguished(a_equation_groups())
    cert = res.certificate
    fake = type(cert)(cert.identity, cert.kind, cert.r, cert.kappa, cert.alpha, cert.j,
                      {"P_k": HP.zero(2, 3), "P_kj": HP.zero(2, 3), "power": 2}, "")
    assert not verify_certificate(fake, 2)


# -- check_vanishing / finalize -----------------------------------------


def test_check_vanishing_examples():
    for r in (1, 2):
        st = check_vanishing(ReducedGerm(veronese(2, 2, 6), r))
        assert st.verdict == "advance" and st.next_germ.r == r + 1
    st = check_vanishing(ReducedGerm(a_equation_germ(), 1))
    assert st.verdict == "fail"
    assert dict(st.nonzero)[(2, 0)] == hp({(0, 3): 1}, 3)


def test_finalize_examples():
    out, psi = finalize(ReducedGerm(veronese(2, 2, 6), 3))
    assert out == veronese(2, 2, 6) and psi == identity_substitution(2, 6)
    comps = dict(veronese(2, 2, 7).items())
    comps[(1, 0)] = comps[(1, 0)] + MJet.monomial(2, 7, (2, 2), 3)
    comps[(0, 1)] = comps[(0, 1)] + MJet.monomial(2, 7, (4, 0), -1)
    out, psi = finalize(ReducedGerm(Germ(2, 2, 7, comps), 3))
    assert out[(1, 0)] == MJet.var(2, 7, 0) and out[(0, 1)] == MJet.var(2, 7, 1)
    assert [x.compose(psi) for x in (comps[(1, 0)], comps[(0, 1)])] == identity_substitution(2, 7)
    fam = make_family_germ(2, 2, 7, {2: MJet.monomial(2, 5, (5, 0))})
    assert finalize(ReducedGerm(fam, 3))[0] == fam
    with pytest.raises(InconsistencyError):
        finalize(ReducedGerm(veronese(2, 2, 6), 2))


# -- pipeline and decision ---------------------------------------------


def test_pipeline_disguised_veronese():
    d = disguise(veronese(2, 2, 7), seed=3)[0]
    tr = run_pipeline(d, 2, check_witness=True)
    assert tr.verdict == "reduced" and [s.verdict for s in tr.stages] == ["advance", "advance"]
    assert tr.final == veronese(2, 2, 7)
    assert witness_holds(d, tr.homography, tr.reparametrization, tr.final)


def test_pipeline_family():
    fam = make_family_germ(2, 2, 7, {2: MJet.monomial(2, 5, (5, 0))})
    tr = run_pipeline(fam, 2)
    assert tr.verdict == "reduced" and tr.final == fam
    assert tr.final.residual((2, 0)) == MJet.monomial(2, 7, (7, 0))


def test_pipeline_a_equation_failure():
    tr = run_pipeline(a_equation_germ(), 2)
    assert tr.verdict == "not-property-P" and len(tr.stages) == 1
    assert tr.certificate.identity == "a-equation" and tr.certificate.r == 1


def test_pipeline_not_regular():
    tr = run_pipeline(project_drop(veronese(2, 2, 6), (1, 1)), 2)
    assert tr.verdict == "not-q-regular" and not tr.stages


def test_decide_examples():
    d = disguise(veronese(3, 2, 8), seed=2)[0]
    v = decide_veronese(d, 2)
    assert v.kind == VERONESE
    h, psi = v.witness
    assert witness_holds(d, h, psi, veronese(3, 2, 8))

    fam = make_family_germ(2, 2, 7, {2: MJet.monomial(2, 5, (5, 0))})
    v = decide_veronese(fam, 2)
    assert v.kind == PROPERTY_P_NOT_VERONESE and v.family == {2: MJet.monomial(2, 5, (5, 0))}
    assert v.failing_directions

    assert decide_veronese(project_drop(veronese(2, 2, 6), (1, 1)), 2).kind == NOT_Q_REGULAR
    v = decide_veronese(a_equation_germ(), 2)
    assert v.kind == NOT_PROPERTY_P and verify_certificate(v.certificate, 2)


def test_decide_identity_witness_on_veronese():
    v = decide_veronese(veronese(2, 3, 9), 3)
    h, psi = v.witness
    assert v.kind == VERONESE and h.is_identity() and psi == identity_substitution(2, 9)


def test_decide_pattern_failure_certificate():
    # final form, but the weight-2 residuals do not share a factor
    comps = dict(veronese(2, 2, 7).items())
    comps[(2, 0)] = comps[(2, 0)] + MJet.monomial(2, 7, (0, 7))
    v = decide_veronese(Germ(2, 2, 7, comps), 2)
    assert v.kind == NOT_PROPERTY_P
    assert v.certificate.identity in ("span", "family-pattern")
    assert verify_certificate(v.certificate, 2)


def test_decide_requires_samples():
    with pytest.raises(DomainError):
        decide_veronese(veronese(2, 2, 6), 2, direction_samples=0)


def test_disguised_family_advances_and_keeps_pattern():
    for seed in range(2):
        R = random_family_R(2, 2, 7, seed)
        d = disguise(make_family_germ(2, 2, 7, R), seed)[0]
        tr = run_pipeline(d, 2, check_witness=True)
        assert [s.verdict for s in tr.stages] == ["advance", "advance"]
        assert check_family_pattern(tr.final) is not None
        assert decide_veronese(d, 2).kind == PROPERTY_P_NOT_VERONESE


def test_pivot_helpers():
    assert pivot(3, 2) == (2, 0, 0)
    assert pivot_j(3, 2, 3) == (1, 0, 1)
