"""Decision procedures for standard graded rings S/I.

Stretched and super-stretched verdicts quantify over minimal reductions.
Existential statements are decided by sampling generic linear forms over
the coefficient field, so those verdicts are labelled "generic-sampled"
and carry the seed that produced them.  The universal statement in the
super-stretched definition is never brute-forced: it is reduced to the
finite test "stretched, and J m^2 = m^3 for the stretched witness J".
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .errors import (
    ConsistencyError,
    DegenerateWitnessError,
    NotCohenMacaulayError,
    NotHomogeneousError,
    NotHSOPError,
    PreconditionError,
)
from .groebner import (
    Ideal,
    colon,
    containment_witness,
    frobenius_power,
    ideal_equal,
    ideal_power,
    krull_dimension,
    maximal_ideal,
    minimal_generators,
)
from .hilbert import (
    CMCertificate,
    HilbertData,
    HVector,
    artinian_hilbert_function,
    artinian_reduction,
    child_rng,
    hilbert_function,
    hilbert_series,
    is_cohen_macaulay,
    socle,
)
from .polys import PolyRing, Polynomial, product, random_linear_form

STRETCHED_SAMPLES = 5
AUDIT_SAMPLES = 20
AUDIT_DEGREE_BOUND = 3
FROBENIUS_T_BOUND = 4


class GradedRing:
    """R = S/I for a homogeneous ideal I, every variable in degree 1."""

    def __init__(self, ideal: Ideal):
        if not ideal.is_homogeneous():
            raise NotHomogeneousError("a standard graded ring needs a homogeneous ideal")
        if ideal.is_unit():
            raise PreconditionError("S/I is the zero ring")
        self.ideal = ideal
        self.ring: PolyRing = ideal.ring
        self._cm: dict = {}
        self._artinian: dict = {}
        self._mpowers: dict[int, Ideal] = {}

    @classmethod
    def from_generators(cls, ring: PolyRing, gens=(), budget=None) -> GradedRing:
        return cls(Ideal(ring, gens, budget))

    def __repr__(self):
        gens = ", ".join(map(str, self.ideal.gens)) or "0"
        return f"{self.ring}/({gens})"

    def modulo(self, polys: Sequence[Polynomial]) -> Ideal:
        """Preimage in S of the ideal (polys) of R."""
        return self.ideal + list(polys)

    def m_power(self, k: int) -> Ideal:
        """m^k as an ideal of S (without I added)."""
        if k not in self._mpowers:
            self._mpowers[k] = ideal_power(maximal_ideal(self.ring, self.ideal.budget), k)
        return self._mpowers[k]

    @cached_property
    def hilbert(self) -> HilbertData:
        return hilbert_series(self.ideal)

    @cached_property
    def dim(self) -> int:
        return krull_dimension(self.ideal)

    @cached_property
    def embdim(self) -> int:
        return hilbert_function(self.ideal, 1)

    @cached_property
    def multiplicity(self) -> int:
        return self.hilbert.multiplicity()

    @cached_property
    def minimal_generators(self) -> list[Polynomial]:
        if self.ideal.is_zero():
            return []
        return minimal_generators(self.ideal)

    @cached_property
    def nonlinear_generators(self) -> list[Polynomial]:
        """Minimal generators of degree >= 2; linear ones only cut the embedding."""
        return [g for g in self.minimal_generators if g.degree() >= 2]

    @property
    def codim(self) -> int:
        return self.embdim - self.dim

    @property
    def is_hypersurface(self) -> bool:
        # a regular ring (no nonlinear relation) counts as a degenerate hypersurface
        return len(self.nonlinear_generators) <= 1

    @property
    def is_complete_intersection(self) -> bool:
        return len(self.nonlinear_generators) == self.codim

    def cm(self, seed=0) -> CMCertificate:
        if seed not in self._cm:
            self._cm[seed] = is_cohen_macaulay(self.ideal, seed)
        return self._cm[seed]

    def require_cm(self, seed=0) -> CMCertificate:
        cert = self.cm(seed)
        if not cert:
            raise NotCohenMacaulayError(f"{self} is not Cohen-Macaulay: {cert.detail}", cert)
        return cert

    def artinian(self, seed=0) -> tuple[Ideal, tuple[Polynomial, ...], HVector]:
        if seed not in self._artinian:
            self.require_cm(seed)
            self._artinian[seed] = artinian_reduction(self.ideal, seed)
        return self._artinian[seed]

    def hvector(self, seed=0) -> HVector:
        return self.artinian(seed)[2]

    def quotient_dims(self, polys: Sequence[Polynomial]) -> list[int]:
        """Hilbert function of the Artinian ring R/(polys)."""
        return artinian_hilbert_function(self.modulo(polys))


def _as_graded(R) -> GradedRing:
    return R if isinstance(R, GradedRing) else GradedRing(R)


def _validate_hsop(R: GradedRing, sop: Sequence[Polynomial], linear: bool = False) -> Ideal:
    sop = list(sop)
    if len(sop) != R.dim:
        raise NotHSOPError(f"need {R.dim} elements for a system of parameters, got {len(sop)}")
    for f in sop:
        if f.ring != R.ring:
            raise NotHSOPError(f"{f} is not in {R.ring}")
        if not f or not f.is_homogeneous() or f.degree() < 1:
            raise NotHSOPError(f"{f} is not a homogeneous element of positive degree")
        if linear and f.degree() != 1:
            raise NotHSOPError(f"{f} is not a linear form")
    Q = R.modulo(sop)
    if krull_dimension(Q) != 0:
        raise NotHSOPError("R modulo the sequence is not Artinian")
    return Q


# ---------------------------------------------------------------------------
# minimal reductions and stretchedness


@dataclass
class ReductionCheck:
    is_reduction: bool
    reduction_number: int | None
    reason: str = ""

    def __bool__(self):
        return self.is_reduction


def is_minimal_reduction(R, J: Sequence[Polynomial]) -> ReductionCheck:
    """Whether the linear forms J generate a minimal reduction of m.

    Searches N = 0, 1, ... for J m^N = m^(N+1) in R, up to one past the
    socle degree of R/J.  A sequence that is not a linear hsop is reported
    as not a reduction rather than raising.
    """
    R = _as_graded(R)
    J = list(J)
    try:
        Q = _validate_hsop(R, J, linear=True)
    except NotHSOPError as exc:
        return ReductionCheck(False, None, f"not a homogeneous system of parameters: {exc}")
    top = len(artinian_hilbert_function(Q)) - 1
    Jideal = Ideal(R.ring, J, R.ideal.budget)
    for N in range(top + 2):
        lhs = (Jideal * R.m_power(N)) + R.ideal
        rhs = R.m_power(N + 1) + R.ideal
        if ideal_equal(lhs, rhs):
            return ReductionCheck(True, N)
    return ReductionCheck(False, None, f"J m^N != m^(N+1) for all N <= {top + 1}")


@dataclass
class StretchedResult:
    verdict: bool
    witness: tuple[Polynomial, ...] | None
    tried: list[tuple[tuple[Polynomial, ...], list[int]]] = field(default_factory=list)
    seed: object = None
    method: str = "generic-sampled"

    def __bool__(self):
        return self.verdict


def _low_tail_ok(dims: Sequence[int], start: int) -> bool:
    return all(v <= 1 for v in dims[start:])


def is_stretched(R, seed=0, samples: int = STRETCHED_SAMPLES) -> StretchedResult:
    """Sally's stretched condition: some linear minimal reduction J has
    dim (R/J)_i <= 1 for all i >= 2.  Decided on ``samples`` generic J."""
    R = _as_graded(R)
    R.require_cm(seed)
    if R.dim == 0:
        dims = R.quotient_dims([])
        ok = _low_tail_ok(dims, 2)
        return StretchedResult(ok, () if ok else None, [((), dims)], seed, "direct")
    rng = child_rng(seed, "stretched")
    tried = []
    for _ in range(samples):
        J = tuple(random_linear_form(R.ring, rng) for _ in range(R.dim))
        if not is_minimal_reduction(R, J):
            tried.append((J, []))
            continue
        dims = R.quotient_dims(J)
        tried.append((J, dims))
        if _low_tail_ok(dims, 2):
            return StretchedResult(True, J, tried, seed)
    return StretchedResult(False, None, tried, seed)


# ---------------------------------------------------------------------------
# super-stretched


@dataclass
class HSopCheck:
    sop: tuple[Polynomial, ...]
    degrees: tuple[int, ...]
    threshold: int
    dims: dict[int, int]
    verdict: bool
    failing_degree: int | None = None

    def __bool__(self):
        return self.verdict


def check_hsop_super_stretched(R, sop: Sequence[Polynomial]) -> HSopCheck:
    """dim (R/(sop))_i <= 1 for every i >= sum(deg) - d + 2."""
    R = _as_graded(R)
    sop = tuple(sop)
    Q = _validate_hsop(R, sop)
    hf = artinian_hilbert_function(Q)
    degrees = tuple(f.degree() for f in sop)
    D = sum(degrees) - R.dim + 2
    dims = {i: (hf[i] if i < len(hf) else 0) for i in range(D, max(len(hf), D + 1))}
    failing = next((i for i, v in dims.items() if v > 1), None)
    return HSopCheck(sop, degrees, D, dims, failing is None, failing)


def verify_m3_reduction(R, J: Sequence[Polynomial]) -> bool:
    """J m^2 == m^3 in R."""
    R = _as_graded(R)
    Jideal = Ideal(R.ring, list(J), R.ideal.budget)
    return ideal_equal(Jideal * R.m_power(2) + R.ideal, R.m_power(3) + R.ideal)


def random_hsop(R: GradedRing, rng: random.Random, degree_bound: int, tries: int = 50):
    """Random homogeneous system of parameters with degrees in [1, degree_bound]."""
    for _ in range(tries):
        degs = [rng.randint(1, degree_bound) for _ in range(R.dim)]
        sop = tuple(R.ring.random_form(e, rng) for e in degs)
        if any(not f for f in sop):
            continue
        if krull_dimension(R.modulo(sop)) == 0:
            return sop
    raise ConsistencyError("could not sample a system of parameters")


@dataclass
class AuditReport:
    checks: list[HSopCheck]
    counterexamples: list[HSopCheck]

    @property
    def all_pass(self) -> bool:
        return not self.counterexamples


def audit_super_stretched(
    R, seed=0, samples: int = AUDIT_SAMPLES, degree_bound: int = AUDIT_DEGREE_BOUND
) -> AuditReport:
    """Evaluate the definition directly on randomly sampled hsops."""
    R = _as_graded(R)
    if R.dim == 0:
        checks = [check_hsop_super_stretched(R, ())]
    else:
        rng = child_rng(seed, "audit")
        checks = [check_hsop_super_stretched(R, random_hsop(R, rng, degree_bound)) for _ in range(samples)]
    return AuditReport(checks, [c for c in checks if not c.verdict])


@dataclass
class SuperStretchedResult:
    verdict: bool
    stretched: StretchedResult
    witness: tuple[Polynomial, ...] | None
    m3_holds: bool | None
    audit: AuditReport | None = None
    seed: object = None

    def __bool__(self):
        return self.verdict

    @property
    def audit_agrees(self) -> bool | None:
        if self.audit is None:
            return None
        return self.verdict == self.audit.all_pass


def is_super_stretched(
    R,
    seed=0,
    samples: int = STRETCHED_SAMPLES,
    audit: bool = False,
    audit_samples: int = AUDIT_SAMPLES,
    degree_bound: int = AUDIT_DEGREE_BOUND,
) -> SuperStretchedResult:
    """Super-stretched via the finite criterion: stretched and J m^2 = m^3
    for the stretched witness J.  In dimension 0 the empty hsop gives the
    threshold 2, so the notion coincides with stretched."""
    R = _as_graded(R)
    st = is_stretched(R, seed, samples)
    if R.dim == 0:
        verdict, m3, J = st.verdict, None, st.witness
    elif not st:
        verdict, m3, J = False, None, None
    else:
        J = st.witness
        m3 = verify_m3_reduction(R, J)
        verdict = m3
    rep = audit_super_stretched(R, seed, audit_samples, degree_bound) if audit else None
    return SuperStretchedResult(verdict, st, J, m3, rep, seed)


def verify_frobenius_sop_threshold(R, J: Sequence[Polynomial], t: int) -> bool:
    """(x_1^t, ..., x_d^t) satisfies the super-stretched inequality."""
    if t < 1:
        raise ValueError("t must be positive")
    return check_hsop_super_stretched(R, [x**t for x in J]).verdict


# ---------------------------------------------------------------------------
# multiplicity, h-vector shape, Gorenstein / CI structure


def classify_h_vector(h) -> str:
    e = tuple(h)
    if e == (1,):
        return "(1)"
    if len(e) == 2 and e[0] == 1 and e[1] >= 1:
        return "(1,n)"
    if len(e) == 3 and e[0] == 1 and e[1] >= 1 and e[2] == 1:
        return "(1,n,1)"
    return "other"


def has_minimal_multiplicity(R, seed=0) -> bool:
    """e(R) == embdim - dim + 1, cross-checked against the h-vector shape."""
    R = _as_graded(R)
    verdict = R.multiplicity == R.embdim - R.dim + 1
    shape = classify_h_vector(R.hvector(seed))
    if verdict != (shape in ("(1)", "(1,n)")):
        raise ConsistencyError(f"minimal multiplicity {verdict} but h-vector class {shape}")
    return verdict


def is_gorenstein(R, seed=0) -> bool:
    """Socle type 1 of the Artinian reduction (valid for CM rings)."""
    R = _as_graded(R)
    Q, _, _ = R.artinian(seed)
    return socle(Q).type == 1


def ci_classification(R, seed=0) -> str:
    """'hypersurface', 'two_quadrics', or 'not_applicable' (not a stretched CI)."""
    R = _as_graded(R)
    if not R.is_complete_intersection or not is_stretched(R, seed):
        return "not_applicable"
    gens = R.nonlinear_generators
    if len(gens) <= 1:
        return "hypersurface"
    if len(gens) == 2 and all(g.degree() == 2 for g in gens):
        return "two_quadrics"
    raise ConsistencyError(
        f"stretched complete intersection with relations of degrees {[g.degree() for g in gens]}"
    )


OBSTRUCTION_RULES = {
    "a": "not super-stretched",
    "b": "h-vector not of the form (1), (1,n), (1,n,1)",
    "c": "dimension 1, neither a hypersurface nor of minimal multiplicity",
    "d": "dimension 1 Gorenstein but not a hypersurface",
    "e": "dimension >= 3, not Gorenstein and not of minimal multiplicity",
}


@dataclass
class ObstructionVerdict:
    """Necessary conditions for graded countable CM type.

    ``obstructed`` False only means none of the checked conditions failed;
    it is not a proof of countable type.
    """

    obstructed: bool
    reason: str | None
    fired: list[str]

    def label(self) -> str:
        return self.reason if self.obstructed else "none_found"


def countable_type_obstruction(R, seed=0, ss: SuperStretchedResult | None = None) -> ObstructionVerdict:
    R = _as_graded(R)
    R.require_cm(seed)
    if R.dim == 0:
        raise PreconditionError("the obstruction rules need a ring of positive dimension")
    if ss is None:
        ss = is_super_stretched(R, seed)
    h_class = classify_h_vector(R.hvector(seed))
    minmult = has_minimal_multiplicity(R, seed)
    hyp = R.is_hypersurface
    gor = is_gorenstein(R, seed)
    d = R.dim
    checks = {
        "a": not ss.verdict,
        "b": h_class == "other",
        "c": d == 1 and not hyp and not minmult,
        "d": d == 1 and gor and not hyp,
        "e": d >= 3 and not gor and not minmult,
    }
    fired = [k for k, v in checks.items() if v]
    if fired:
        return ObstructionVerdict(True, OBSTRUCTION_RULES[fired[0]], fired)
    return ObstructionVerdict(False, None, [])


# ---------------------------------------------------------------------------
# identities


def verify_colon_power_identity(xs: Sequence[Polynomial], t: int, base: Ideal | None = None) -> bool:
    """(x_1^t, ..., x_n^t) : (x_1 ... x_n)^(t-1) == (x_1, ..., x_n) for a regular sequence."""
    if t < 1:
        raise ValueError("t must be positive")
    xs = list(xs)
    ring = xs[0].ring
    base = base if base is not None else Ideal(ring, [])
    X = Ideal(ring, xs, base.budget)
    lhs = colon(frobenius_power(X, t) + base, product(xs, ring) ** (t - 1))
    return ideal_equal(lhs, X + base)


def verify_frobenius_product_identity(elements: Sequence[Polynomial], m: int) -> bool:
    """(a_1^m, ..., a_k^m)(a)^((k-1)(m-1)) == (a)^((m-1)k + 1) for arbitrary a_i."""
    if m < 1:
        raise ValueError("m must be positive")
    elements = list(elements)
    k = len(elements)
    A = Ideal(elements[0].ring, elements)
    lhs = frobenius_power(A, m) * ideal_power(A, (k - 1) * (m - 1))
    rhs = ideal_power(A, (m - 1) * k + 1)
    return ideal_equal(lhs, rhs)


@dataclass
class DeltaCheck:
    delta: Polynomial
    matrix: tuple
    colon_equal: bool
    threshold: int
    dim_source: int
    dim_target: int

    @property
    def inequality_holds(self) -> bool:
        return self.dim_source <= self.dim_target

    @property
    def holds(self) -> bool:
        return self.colon_equal and self.inequality_holds

    def __bool__(self):
        return self.holds


def verify_delta_injectivity(R, ys: Sequence[Polynomial], xs: Sequence[Polynomial]) -> DeltaCheck:
    """Multiplication by det(A) from R/(xs) to R/(ys) is injective, where
    (ys) ⊆ (xs) via the matrix A; checked as (ys) : det(A) == (xs)."""
    R = _as_graded(R)
    ys, xs = list(ys), list(xs)
    Qy = _validate_hsop(R, ys)
    Qx = _validate_hsop(R, xs)
    d = R.dim
    if d == 0:
        return DeltaCheck(R.ring.one, (), True, 2, hilbert_function(Qx, 2), hilbert_function(Qy, 2))
    mod = R.ideal if not R.ideal.is_zero() else None
    w = containment_witness(ys, xs, mod)
    delta = w.delta
    if not delta or delta in R.ideal:
        raise DegenerateWitnessError("the containment matrix has zero determinant in R")
    eq = ideal_equal(colon(Qy, delta), Qx)
    c = sum(x.degree() for x in xs) - d + 2
    return DeltaCheck(
        delta, w.matrix, eq, c, hilbert_function(Qx, c), hilbert_function(Qy, c + delta.degree())
    )


# ---------------------------------------------------------------------------
# aggregate report


@dataclass
class RingReport:
    dim: int
    embdim: int
    mult: int
    cm: bool
    hvector: tuple[int, ...] | None = None
    gorenstein: bool | None = None
    hypersurface: bool | None = None
    ci: bool | None = None
    min_mult: bool | None = None
    stretched: bool | None = None
    super_stretched: bool | None = None
    h_class: str | None = None
    obstruction: ObstructionVerdict | None = None
    stretched_witness: tuple[Polynomial, ...] | None = None
    audit: AuditReport | None = None
    cm_certificate: CMCertificate | None = None
    seed_dependent_hf: list[int] | None = None


def ring_report(
    R,
    seed=0,
    samples: int = STRETCHED_SAMPLES,
    audit: bool = False,
    audit_samples: int = AUDIT_SAMPLES,
    degree_bound: int = AUDIT_DEGREE_BOUND,
) -> RingReport:
    R = _as_graded(R)
    cert = R.cm(seed)
    rep = RingReport(dim=R.dim, embdim=R.embdim, mult=R.multiplicity, cm=cert.is_cm, cm_certificate=cert)
    if not cert:
        # report what the sampled forms give, flagged as seed-dependent
        rep.seed_dependent_hf = R.quotient_dims(cert.forms) if R.dim - len(cert.forms) == 0 else None
        return rep
    h = R.hvector(seed)
    rep.hvector = h.entries
    if sum(h.entries) != R.multiplicity:
        raise ConsistencyError(f"h-vector {h.entries} does not sum to e(R) = {R.multiplicity}")
    rep.gorenstein = is_gorenstein(R, seed)
    rep.hypersurface = R.is_hypersurface
    rep.ci = R.is_complete_intersection
    if (rep.hypersurface and not rep.ci) or (rep.ci and not rep.gorenstein):
        raise ConsistencyError("hypersurface => complete intersection => Gorenstein violated")
    rep.min_mult = has_minimal_multiplicity(R, seed)
    ss = is_super_stretched(R, seed, samples, audit, audit_samples, degree_bound)
    rep.stretched = ss.stretched.verdict
    rep.super_stretched = ss.verdict
    rep.stretched_witness = ss.stretched.witness
    rep.audit = ss.audit
    rep.h_class = classify_h_vector(h)
    if R.dim > 0:
        rep.obstruction = countable_type_obstruction(R, seed, ss)
    return rep
