import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracle
from corpus import CORPUS, as_dicts, expected, make_ring
from gradecheck.errors import NotCohenMacaulayError, NotHSOPError, PreconditionError
from gradecheck.fields import QQ
from gradecheck.groebner import Ideal, frobenius_power, ideal_power, krull_dimension, reduced_gb
from gradecheck.hilbert import child_rng, hilbert_function
from gradecheck.invariants import (
    GradedRing,
    check_hsop_super_stretched,
    ci_classification,
    classify_h_vector,
    countable_type_obstruction,
    has_minimal_multiplicity,
    is_gorenstein,
    is_minimal_reduction,
    is_stretched,
    is_super_stretched,
    ring_report,
    verify_colon_power_identity,
    verify_delta_injectivity,
    verify_frobenius_product_identity,
    verify_frobenius_sop_threshold,
    verify_m3_reduction,
)
from gradecheck.polys import PolyRing, random_linear_form

P = 32003


def quartic():
    S = PolyRing("x,y")
    x, y = S.gens
    return GradedRing(Ideal(S, [x**3 * y - x * y**3])), x, y


def ring(names, *gens_fn, field=None):
    S = PolyRing(names, field)
    return GradedRing(Ideal(S, [g(*S.gens) for g in gens_fn]))


# -- minimal reductions ------------------------------------------------------


def test_minimal_reduction_examples():
    R, x, y = quartic()
    chk = is_minimal_reduction(R, [x + 2 * y])
    assert chk and chk.reduction_number == 3
    # independent confirmation of (x+2y) m^3 = m^4 in degree 4 (both sides are generated there)
    l = R.ring.from_dict({(1, 0): 1, (0, 1): 2})
    lhs = as_dicts(R.ideal) + [dict((l * R.ring.monomial(m)).terms) for m in R.ring.monomials_of_degree(3)]
    assert oracle.hilbert_function(lhs, 2, 4, P) == 0
    F = ring("x,y")
    chk = is_minimal_reduction(F, [F.ring.gens[0]])
    assert not chk and "system of parameters" in chk.reason
    K = ring("x")
    chk = is_minimal_reduction(K, [K.ring.gens[0]])
    assert chk and chk.reduction_number == 0


# -- stretched / super-stretched --------------------------------------------


def test_stretched_examples():
    R, _, _ = quartic()
    st_ = is_stretched(R)
    assert st_ and st_.witness and st_.method == "generic-sampled"
    assert not is_stretched(make_ring("m^3 cone"))
    assert is_stretched(ring("x", lambda x: x**4))


def test_hsop_check_examples():
    R, x, y = quartic()
    c1 = check_hsop_super_stretched(R, [x + 2 * y])
    assert c1.threshold == 2 and c1.verdict and c1.dims[2] == 1 and c1.dims[3] == 1
    assert all(v == 0 for i, v in c1.dims.items() if i >= 4)
    c2 = check_hsop_super_stretched(R, [(x + 2 * y) ** 2])
    assert c2.threshold == 3 and c2.dims[3] == 2 and not c2.verdict and c2.failing_degree == 3
    C = ring("x,y", lambda x, y: x**3)
    c3 = check_hsop_super_stretched(C, [C.ring.gens[1]])
    assert c3.threshold == 2 and c3.verdict
    with pytest.raises(NotHSOPError):
        check_hsop_super_stretched(R, [x, y])
    with pytest.raises(NotHSOPError):
        check_hsop_super_stretched(R, [x * y])


def test_super_stretched_examples():
    R, _, _ = quartic()
    ss = is_super_stretched(R)
    assert not ss and ss.stretched and ss.m3_holds is False
    assert is_super_stretched(ring("x,y", lambda x, y: x**3))
    assert is_super_stretched(ring("x,y,z", lambda x, y, z: x**2, lambda x, y, z: y**2))
    # dimension 0 falls back to the direct degree-2 criterion
    cone = make_ring("m^3 cone")
    assert not is_super_stretched(cone)
    assert is_super_stretched(ring("x", lambda x: x**4))


def test_non_cm_refused():
    R = ring("x,y", lambda x, y: x**2, lambda x, y: x * y)
    with pytest.raises(NotCohenMacaulayError):
        is_stretched(R)
    with pytest.raises(NotCohenMacaulayError):
        countable_type_obstruction(R)
    rep = ring_report(R)
    assert rep.cm is False and rep.stretched is None and rep.hvector is None


# -- multiplicity, h-vector, structure --------------------------------------


def test_minimal_multiplicity_examples():
    assert has_minimal_multiplicity(ring("x,y", lambda x, y: y**2))
    assert not has_minimal_multiplicity(ring("x,y", lambda x, y: x**3))
    assert has_minimal_multiplicity(ring("x,y,z"))


def test_classify_examples():
    assert classify_h_vector((1, 1, 1, 1)) == "other"
    assert classify_h_vector((1, 2, 1)) == "(1,n,1)"
    assert classify_h_vector((1,)) == "(1)"
    assert classify_h_vector((1, 5)) == "(1,n)"
    assert classify_h_vector((1, 2, 2)) == "other"


def test_ci_classification_examples():
    assert ci_classification(ring("x,y", lambda x, y: x**4)) == "hypersurface"
    assert ci_classification(ring("x,y,z", lambda x, y, z: x**2, lambda x, y, z: y**2)) == "two_quadrics"
    R = ring("x,y,z", lambda x, y, z: x**2, lambda x, y, z: y**3)
    assert R.hvector().entries == (1, 2, 2, 1)
    assert ci_classification(R) == "not_applicable"


def test_obstruction_examples():
    R, _, _ = quartic()
    v = countable_type_obstruction(R)
    assert v.obstructed and v.reason == "not super-stretched"
    assert countable_type_obstruction(ring("x,y", lambda x, y: x**2)).label() == "none_found"
    assert countable_type_obstruction(ring("x,y,z", lambda x, y, z: x**3)).label() == "none_found"
    with pytest.raises(PreconditionError):
        countable_type_obstruction(make_ring("m^3 cone"))


def test_rule_d_witness_certified_by_oracle():
    """k[x,y,z]/(x^2, y^2): one-dimensional, Gorenstein, two minimal relations.

    Each property is confirmed with the degree-wise oracle before the rule is
    trusted: Hilbert function eventually constant (dimension 1), both quadrics
    needed (not a hypersurface), and z regular with socle type 1 modulo z.
    """
    R = make_ring("x^2,y^2")
    gens = as_dicts(R.ideal)
    hf = [oracle.hilbert_function(gens, 3, i, P) for i in range(8)]
    assert hf[2:] == [4] * 6
    assert oracle.hilbert_function(gens[:1], 3, 2, P) != oracle.hilbert_function(gens, 3, 2, P)
    assert oracle.hilbert_function(gens[1:], 3, 2, P) != oracle.hilbert_function(gens, 3, 2, P)
    zgen = {(0, 0, 1): 1}
    mod_z = [oracle.hilbert_function(gens + [zgen], 3, i, P) for i in range(5)]
    assert sum(mod_z) == 4  # z is regular: e(R) = length of R/zR
    assert oracle.socle_dimension(gens + [zgen], 3, P, 4) == 1
    v = countable_type_obstruction(R)
    assert "d" in v.fired and v.obstructed
    assert is_gorenstein(R) and not R.is_hypersurface and R.dim == 1


# -- identities --------------------------------------------------------------


def test_identity_examples():
    S = PolyRing("x,y")
    x, y = S.gens
    assert verify_colon_power_identity([x, y], 2)
    assert verify_colon_power_identity([x, y], 1)
    T = PolyRing("x,y,z")
    assert verify_colon_power_identity(list(T.gens), 3)
    assert verify_frobenius_product_identity([x, y], 2)
    assert verify_frobenius_product_identity([x, y], 1)
    rng = random.Random(5)
    assert verify_frobenius_product_identity([T.random_form(2, rng) for _ in range(3)], 2)
    F = GradedRing(Ideal(S, []))
    d = verify_delta_injectivity(F, [x**2, y**2], [x, y])
    assert d and d.delta == x * y
    assert verify_delta_injectivity(F, [x, y], [x, y]).delta.is_constant()
    R, u, v = quartic()
    d = verify_delta_injectivity(R, [(u + 2 * v) ** 2], [u + 2 * v])
    assert d.colon_equal and d.inequality_holds
    assert d.dim_source <= d.dim_target


def test_m3_and_frobenius_threshold_examples():
    C = ring("x,y", lambda x, y: x**3)
    yv = C.ring.gens[1]
    assert verify_m3_reduction(C, [yv])
    R, x, y = quartic()
    assert not verify_m3_reduction(R, [x + 2 * y])
    K = ring("x")
    assert verify_m3_reduction(K, [K.ring.gens[0]])
    assert verify_frobenius_sop_threshold(C, [yv], 2)
    assert verify_frobenius_sop_threshold(C, [yv], 1)
    Q = make_ring("x^2,y^2")
    J = is_stretched(Q).witness
    assert verify_m3_reduction(Q, J)
    for t in range(1, 5):
        assert verify_frobenius_sop_threshold(Q, J, t)


# -- corpus-wide properties --------------------------------------------------


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_corpus_report(name):
    e = expected(name)
    r = ring_report(make_ring(name))
    got = (
        r.dim, r.embdim, r.mult, r.hvector, r.gorenstein, r.hypersurface, r.ci, r.min_mult,
        r.stretched, r.super_stretched, r.h_class,
        r.obstruction.label() if r.obstruction else "not_applicable",
    )
    assert got == tuple(e.__dict__.values())


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_corpus_implication_chain(name):
    r = ring_report(make_ring(name))
    assert not r.hypersurface or r.ci
    assert not r.ci or r.gorenstein
    assert r.min_mult == (r.h_class in ("(1)", "(1,n)"))


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_super_stretched_shape(name):
    R = make_ring(name)
    if R.dim > 0 and is_super_stretched(R):
        assert classify_h_vector(R.hvector()) != "other"


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_low_multiplicity_hypersurfaces(name):
    R = make_ring(name)
    if R.dim > 0 and R.is_hypersurface and R.multiplicity <= 3:
        assert is_super_stretched(R)


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_two_quadric_ci(name):
    R = make_ring(name)
    g = R.nonlinear_generators
    if R.dim >= 1 and R.is_complete_intersection and len(g) == 2 and all(f.degree() == 2 for f in g):
        assert bool(is_stretched(R)) == bool(is_super_stretched(R))


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_every_sampled_reduction_of_super_stretched_ring(name):
    R = make_ring(name)
    if R.dim == 0 or not is_super_stretched(R):
        return
    rng = child_rng(0, "m3-property")
    for _ in range(5):
        J = [random_linear_form(R.ring, rng) for _ in range(R.dim)]
        if is_minimal_reduction(R, J):
            assert verify_m3_reduction(R, J)


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_minimal_multiplicity_equivalences(name):
    R = make_ring(name)
    rng = child_rng(0, "equiv")
    J = [random_linear_form(R.ring, rng) for _ in range(R.dim)]
    squares = is_minimal_reduction(R, J)
    by_reduction = bool(squares) and squares.reduction_number <= 1
    if R.dim == 0:
        # J = 0: m^2 = 0 is the minimal multiplicity condition in dimension 0
        by_reduction = hilbert_function(R.ideal, 2) == 0
    assert has_minimal_multiplicity(R) == by_reduction == (classify_h_vector(R.hvector()) in ("(1)", "(1,n)"))


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_audit_agrees_with_criterion(name):
    R = make_ring(name)
    ss = is_super_stretched(R, audit=True)
    assert ss.audit_agrees
    if not ss:
        assert not ss.stretched or ss.m3_holds is False or R.dim == 0


def test_verdicts_over_rationals():
    R = make_ring("x^3y-xy^3", QQ)
    assert is_stretched(R) and not is_super_stretched(R)


def test_gorenstein_type_detection():
    assert not is_gorenstein(make_ring("xy,xz,yz"))
    assert is_gorenstein(make_ring("x^2,y^2"))


# -- randomized identity properties -----------------------------------------


@given(st.integers(0, 10**6), st.integers(1, 3), st.integers(1, 3))
def test_colon_identity_random(seed, n, t):
    rng = random.Random(seed)
    S = PolyRing("a,b,c")
    xs = [S.random_form(rng.randint(1, 2), rng) for _ in range(n)]
    assert verify_colon_power_identity(xs, t)


@given(st.integers(0, 10**6), st.integers(1, 3), st.integers(1, 3))
def test_frobenius_identity_random(seed, k, m):
    rng = random.Random(seed)
    S = PolyRing("a,b,c")
    elems = []
    for _ in range(k):
        f = S.random_form(rng.randint(1, 2), rng)
        if rng.random() < 0.5:
            f = f + S.random_form(rng.randint(1, 2), rng)  # not necessarily homogeneous
        elems.append(f)
    assert verify_frobenius_product_identity(elems, m)
    if all(e.is_homogeneous() for e in elems) and k * m <= 6:
        # second route: compare the reduced bases of both sides outright
        A = Ideal(S, elems)
        lhs = frobenius_power(A, m) * ideal_power(A, (k - 1) * (m - 1))
        rhs = ideal_power(A, (m - 1) * k + 1)
        assert [g.terms for g in reduced_gb(lhs)] == [g.terms for g in reduced_gb(rhs)]


@given(st.integers(0, 10**6))
def test_delta_injectivity_random(seed):
    rng = random.Random(seed)
    R = make_ring(rng.choice(["k[x,y]", "x^3", "x^2,y^2", "x^3y-xy^3", "xy,xz,yz"]))
    S = R.ring
    for _ in range(20):
        xs = [S.random_form(rng.randint(1, 2), rng) for _ in range(R.dim)]
        if krull_dimension(R.modulo(xs)) == 0:
            break
    assert krull_dimension(R.modulo(xs)) == 0
    top = max(x.degree() for x in xs)
    targets = [top + rng.randint(0, 1) for _ in xs]
    A = [[S.random_form(e - x.degree(), rng) for x in xs] for e in targets]
    ys = [sum((A[i][j] * xs[j] for j in range(len(xs))), S.zero) for i in range(len(xs))]
    if krull_dimension(R.modulo(ys)) != 0:
        return  # a singular random matrix; rare over GF(32003)
    d = verify_delta_injectivity(R, ys, xs)
    assert d.colon_equal and d.inequality_holds
