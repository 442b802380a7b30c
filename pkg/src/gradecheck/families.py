"""Finite, checkable shadows of uncountable families of ideals.

The non-countability arguments build, from a ring failing a dimension
bound, a family of ideals indexed by field elements (or by classes in one
graded component) and show that distinct parameters give distinct
objects.  Module-level statements (syzygies, Tor, indecomposability) are
out of reach here; what is checked is the ideal-level core:

* ``construct_family_ideal``: I_y = (x_1, ..., x_d, y) for a class y in
  degree c = sum(deg x_j) - d + 2 of R/(x);
* ``koszul_top_annihilation_check``: each x_j lies in I_y;
* ``sample_distinct_principal_ideals``: (x + a y) != (x + b y) for a != b;
* ``one_dim_family``: I_a = (x, u + a v) are pairwise distinct in a
  one-dimensional ring that is neither a hypersurface nor of minimal
  multiplicity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .errors import PreconditionError
from .groebner import Ideal, ideal_equal, krull_dimension
from .hilbert import child_rng, standard_monomials
from .invariants import GradedRing, _as_graded, _validate_hsop, has_minimal_multiplicity, is_minimal_reduction
from .polys import Polynomial, random_linear_form

DEFAULT_ALPHAS = (0, 1, 2, 3, 4)


@dataclass
class FamilySpec:
    ring: GradedRing
    hsop: tuple[Polynomial, ...]
    critical_degree: int
    basis: list[Polynomial]
    quotient: Ideal  # I + (hsop), defining R/(x)

    @property
    def width(self) -> int:
        return len(self.basis)


def family_spec(R, hsop: Sequence[Polynomial]) -> FamilySpec:
    """Validate that dim (R/(x))_c >= 2 at c = sum(deg) - d + 2."""
    R = _as_graded(R)
    hsop = tuple(hsop)
    Q = _validate_hsop(R, hsop)
    c = sum(f.degree() for f in hsop) - R.dim + 2
    basis = [R.ring.monomial(m) for m in standard_monomials(Q, c)]
    if len(basis) < 2:
        raise PreconditionError(
            f"(R/(x))_{c} has dimension {len(basis)}; a family needs at least 2"
        )
    return FamilySpec(R, hsop, c, basis, Q)


def lift(spec: FamilySpec, ybar: Polynomial) -> Polynomial:
    """Canonical representative: normal form modulo I + (x)."""
    return spec.quotient.reduce(ybar)


def construct_family_ideal(spec: FamilySpec, ybar: Polynomial) -> Ideal:
    if ybar and (not ybar.is_homogeneous() or ybar.degree() != spec.critical_degree):
        raise PreconditionError(f"class must be homogeneous of degree {spec.critical_degree}")
    y = lift(spec, ybar)
    J = spec.quotient + [y] if y else spec.quotient
    if J.is_unit() or krull_dimension(J) != 0:
        raise PreconditionError("family ideal does not define a nonzero Artinian quotient")
    return J


def koszul_top_annihilation_check(I_ybar: Ideal, xs: Sequence[Polynomial]) -> bool:
    """Every x_j lies in I_y, so the x_j annihilate R/I_y."""
    return all(x in I_ybar for x in xs)


@dataclass
class DistinctnessReport:
    """Pairwise comparison of a parametrised family of ideals.

    Pairs with different parameters must give different ideals; pairs with
    equal parameters must give equal ones.  Either failure is an anomaly.
    """

    alphas: tuple
    generators: tuple[Polynomial, ...] = ()
    pairs_checked: int = 0
    distinct_pairs: int = 0
    anomalies: list[tuple] = field(default_factory=list)
    vacuous: bool = False
    reason: str = ""

    @property
    def ok(self) -> bool:
        return not self.anomalies

    def __bool__(self):
        return self.ok


def _compare_family(ideals, alphas, report: DistinctnessReport) -> DistinctnessReport:
    for (i, a), (j, b) in combinations(enumerate(alphas), 2):
        same = ideal_equal(ideals[i], ideals[j])
        report.pairs_checked += 1
        if not same:
            report.distinct_pairs += 1
        if same != (a == b):
            report.anomalies.append((a, b))
    return report


def sample_distinct_principal_ideals(R, i: int, alphas: Sequence = DEFAULT_ALPHAS) -> DistinctnessReport:
    """(x + a y) for independent x, y in R_i, compared pairwise in R."""
    R = _as_graded(R)
    K = R.ring.field
    alphas = tuple(K(a) for a in alphas)
    mons = standard_monomials(R.ideal, i)
    if len(mons) < 2:
        raise PreconditionError(f"R_{i} has dimension {len(mons)} < 2")
    x, y = (R.ring.monomial(m) for m in mons[:2])
    ideals = [R.modulo([x + y * a]) for a in alphas]
    return _compare_family(ideals, alphas, DistinctnessReport(alphas, (x, y)))


def _pick_generators(R: GradedRing, x: Polynomial):
    """u, v independent modulo x with u^2 or uv outside x m."""
    Q = R.modulo([x])
    lin = [R.ring.monomial(m) for m in standard_monomials(Q, 1)]
    xm = R.modulo([x * g for g in R.ring.gens])
    for u, v in combinations(lin, 2):
        for a, b in ((u, v), (v, u)):
            if a * a not in xm or a * b not in xm:
                return a, b
    return None


def one_dim_family(R, alphas: Sequence = DEFAULT_ALPHAS, seed=0, tries: int = 8) -> DistinctnessReport:
    """I_a = (x, u + a v) in a one-dimensional CM ring that is neither a
    hypersurface nor of minimal multiplicity.  Other rings give a vacuous
    report stating which hypothesis fails."""
    R = _as_graded(R)
    K = R.ring.field
    alphas = tuple(K(a) for a in alphas)
    report = DistinctnessReport(alphas)

    def vacuous(reason):
        report.vacuous, report.reason = True, reason
        return report

    if R.dim != 1:
        return vacuous(f"ring has dimension {R.dim}, not 1")
    if not R.cm(seed):
        return vacuous("ring is not Cohen-Macaulay")
    if R.is_hypersurface:
        return vacuous("ring is a hypersurface")
    if has_minimal_multiplicity(R, seed):
        return vacuous("ring has minimal multiplicity")
    rng = child_rng(seed, "onedim")
    for _ in range(tries):
        x = random_linear_form(R.ring, rng)
        if is_minimal_reduction(R, [x]):
            break
    else:
        return vacuous("no linear minimal reduction found")
    pair = _pick_generators(R, x)
    if pair is None:
        # m^2 = x m would mean minimal multiplicity, contradicting the check above
        return vacuous("no generators u, v with u^2 or uv outside x m")
    u, v = pair
    report.generators = (x, u, v)
    ideals = [R.modulo([x, u + v * a]) for a in alphas]
    return _compare_family(ideals, alphas, report)


def principal_class_equal(spec: FamilySpec, y1: Polynomial, y2: Polynomial) -> bool:
    """Whether y1, y2 in degree c generate the same principal ideal of R/(x)."""
    a, b = lift(spec, y1), lift(spec, y2)
    if not a or not b:
        return not a and not b
    # same degree: equal principal ideals iff proportional
    m = a.leading_monomial()
    if m not in b.terms:
        return False
    K = spec.ring.ring.field
    lam = K.div(b.terms[m], a.terms[m])
    return not (b - a * lam)


__all__ = [
    "FamilySpec",
    "DistinctnessReport",
    "family_spec",
    "lift",
    "construct_family_ideal",
    "koszul_top_annihilation_check",
    "sample_distinct_principal_ideals",
    "one_dim_family",
    "principal_class_equal",
]
