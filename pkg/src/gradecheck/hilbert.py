"""Hilbert series, h-vectors, multiplicity and socles of standard graded quotients.

Functions here accept either an :class:`~gradecheck.groebner.Ideal` ``I``
(meaning the ring S/I) or any object with an ``ideal`` attribute, such as
:class:`~gradecheck.invariants.GradedRing`.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from math import comb

from .errors import ConsistencyError, NotCohenMacaulayError, NotHomogeneousError, PreconditionError
from .groebner import Ideal, colon, ideal_equal, krull_dimension
from .linalg import nullspace
from .polys import Polynomial, monomials_of_degree, random_linear_form

log = logging.getLogger(__name__)

CM_RETRIES = 8


def _ideal_of(R) -> Ideal:
    return R if isinstance(R, Ideal) else R.ideal


def child_rng(seed, label: str) -> random.Random:
    """Independent, reproducible stream for one named purpose."""
    return random.Random(f"{seed}:{label}")


# ---------------------------------------------------------------------------
# integer polynomials in t, as coefficient lists


def _tpoly_trim(a):
    a = list(a)
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _tpoly_add(a, b):
    n = max(len(a), len(b))
    return _tpoly_trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def _tpoly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _tpoly_trim(out)


def _tpoly_shift(a, k):
    return _tpoly_trim([0] * k + list(a))


def _divide_one_minus_t(a):
    """Exact quotient a(t) / (1 - t); caller guarantees a(1) == 0."""
    q, acc = [], 0
    for c in a[:-1]:
        acc += c
        q.append(acc)
    return _tpoly_trim(q) if q else [0]


def format_tpoly(a, var="t") -> str:
    parts = []
    for i, c in enumerate(a):
        if not c:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        mag = abs(c)
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    if not parts:
        return "0"
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s


# ---------------------------------------------------------------------------
# monomial ideals


def _minimalize(gens):
    gens = sorted(set(gens), key=sum)
    out = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return tuple(sorted(out))


def _monomial_numerator(gens, memo) -> list[int]:
    """Numerator N(t) with HS(S/I) = N(t)/(1-t)^n for a monomial ideal.

    Recursive pivot splitting: N(I) = N(I + p) + t^deg(p) N(I : p) with a
    pure-power pivot p on the most frequent variable.
    """
    gens = _minimalize(gens)
    if gens in memo:
        return memo[gens]
    if not gens:
        return [1]
    if any(sum(g) == 0 for g in gens):
        return [0]
    supports = [frozenset(i for i, e in enumerate(g) if e) for g in gens]
    seen: set = set()
    coprime = True
    for s in supports:
        if seen & s:
            coprime = False
            break
        seen |= s
    if coprime:
        out = [1]
        for g in gens:
            d = sum(g)
            out = _tpoly_mul(out, [1] + [0] * (d - 1) + [-1])
        memo[gens] = out
        return out
    n = len(gens[0])
    counts = [0] * n
    for g, s in zip(gens, supports):
        if len(s) > 1:
            for i in s:
                counts[i] += 1
    var = max(range(n), key=lambda i: counts[i])
    e = min(g[var] for g in gens if g[var] > 0 and len([x for x in g if x]) > 1)
    pivot = tuple(e if i == var else 0 for i in range(n))
    plus = gens + (pivot,)
    quotient = tuple(
        tuple(max(a - b, 0) for a, b in zip(g, pivot)) for g in gens
    )
    out = _tpoly_add(
        _monomial_numerator(plus, memo),
        _tpoly_shift(_monomial_numerator(quotient, memo), e),
    )
    memo[gens] = out
    return out


# ---------------------------------------------------------------------------
# Hilbert data


@dataclass(frozen=True)
class HilbertData:
    """HS(t) = numerator(t) / (1 - t)^dim in lowest terms."""

    numerator: tuple[int, ...]
    dim: int

    def multiplicity(self) -> int:
        return sum(self.numerator)

    def series(self, upto: int) -> list[int]:
        """Hilbert function values h(0), ..., h(upto)."""
        out = []
        for i in range(upto + 1):
            if self.dim == 0:
                out.append(self.numerator[i] if i < len(self.numerator) else 0)
            else:
                out.append(
                    sum(
                        c * comb(i - k + self.dim - 1, self.dim - 1)
                        for k, c in enumerate(self.numerator)
                        if k <= i
                    )
                )
        return out

    def __str__(self):
        num = format_tpoly(self.numerator)
        if self.dim == 0:
            return num
        den = "(1 - t)" if self.dim == 1 else f"(1 - t)^{self.dim}"
        return f"({num})/{den}"


def hilbert_series(R) -> HilbertData:
    """Hilbert series of S/I from the leading-term ideal of I."""
    I = _ideal_of(R)
    if not I.is_homogeneous():
        raise NotHomogeneousError("Hilbert series needs a homogeneous ideal")
    if I.is_unit():
        raise PreconditionError("the unit ideal has no Hilbert series")
    n = I.ring.ngens
    num = _monomial_numerator(tuple(I.leading_monomials()), {})
    d = n
    while d > 0 and sum(num) == 0:
        num = _divide_one_minus_t(num)
        d -= 1
    kd = krull_dimension(I)
    if kd != d:
        raise ConsistencyError(f"Hilbert series pole order {d} != Krull dimension {kd}")
    return HilbertData(tuple(num), d)


def standard_monomials(R, i: int) -> list[tuple]:
    """Degree-i monomials divisible by no leading monomial of I."""
    I = _ideal_of(R)
    lms = I.leading_monomials()
    return [
        m
        for m in monomials_of_degree(I.ring.ngens, i)
        if not any(all(a <= b for a, b in zip(g, m)) for g in lms)
    ]


def hilbert_function(R, i: int) -> int:
    """dim_k (S/I)_i by counting standard monomials."""
    if i < 0:
        return 0
    I = _ideal_of(R)
    if I.is_unit():
        return 0
    return len(standard_monomials(I, i))


def multiplicity(R) -> int:
    return hilbert_series(R).multiplicity()


# ---------------------------------------------------------------------------
# regular sequences, CM certificates, h-vectors


def is_regular_element(Q: Ideal, f: Polynomial) -> bool:
    """f is a nonzerodivisor on S/Q, i.e. Q : f == Q."""
    return ideal_equal(colon(Q, f), Q)


def is_regular_sequence(base: Ideal, fs) -> bool:
    Q = base
    for f in fs:
        if (Q + [f]).is_unit() or not is_regular_element(Q, f):
            return False
        Q = Q + [f]
    return True


@dataclass
class CMCertificate:
    is_cm: bool
    forms: tuple[Polynomial, ...]
    failing_step: int | None = None
    detail: str = ""
    seed: object = None

    def __bool__(self):
        return self.is_cm


def is_cohen_macaulay(R, seed=0, retries: int = CM_RETRIES) -> CMCertificate:
    """Decide CM-ness by building a regular sequence of dim R generic linear forms.

    Each accepted form passes the colon test and drops the Hilbert series by
    exactly a factor (1 - t).  A step that fails ``retries`` times makes the
    verdict False, with the failing step recorded.
    """
    I = _ideal_of(R)
    hs = hilbert_series(I)
    d = hs.dim
    rng = child_rng(seed, "cm")
    Q = I
    forms: list[Polynomial] = []
    for step in range(d):
        for attempt in range(retries):
            ell = random_linear_form(I.ring, rng)
            Q2 = Q + [ell]
            c = colon(Q, ell)
            if not ideal_equal(c, Q):
                log.info(
                    "step %d attempt %d: %s is a zerodivisor, witness colon %s",
                    step, attempt, ell, list(map(str, c.gb)),
                )
                continue
            hs2 = hilbert_series(Q2)
            if hs2.numerator != hs.numerator or hs2.dim != d - step - 1:
                log.info("step %d attempt %d: Hilbert series did not drop by (1-t)", step, attempt)
                continue
            forms.append(ell)
            Q = Q2
            break
        else:
            return CMCertificate(
                False,
                tuple(forms),
                failing_step=step,
                detail=f"no regular linear form found at step {step + 1} of {d} after {retries} tries",
                seed=seed,
            )
    return CMCertificate(True, tuple(forms), seed=seed)


@dataclass(frozen=True)
class HVector:
    entries: tuple[int, ...]
    reduction_used: tuple[Polynomial, ...] = field(default=(), compare=False)

    @property
    def socle_degree(self) -> int:
        return len(self.entries) - 1

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)


def artinian_hilbert_function(Q: Ideal) -> list[int]:
    """Full Hilbert function of an Artinian quotient S/Q, up to its last nonzero value."""
    out = []
    i = 0
    while True:
        h = hilbert_function(Q, i)
        if h == 0:
            return out
        out.append(h)
        i += 1


def artinian_reduction(R, seed=0) -> tuple[Ideal, tuple[Polynomial, ...], HVector]:
    """Quotient by a verified regular linear system of parameters, and its h-vector."""
    I = _ideal_of(R)
    cert = is_cohen_macaulay(R, seed)
    if not cert:
        raise NotCohenMacaulayError(cert.detail, cert)
    Q = I + list(cert.forms) if cert.forms else I
    h = artinian_hilbert_function(Q)
    num = list(hilbert_series(I).numerator)
    if h != num:
        raise NotCohenMacaulayError(
            f"h-vector {h} disagrees with Hilbert numerator {num}", cert
        )
    return Q, cert.forms, HVector(tuple(h), cert.forms)


# ---------------------------------------------------------------------------
# socle


@dataclass
class SocleData:
    basis: list[Polynomial]
    type: int
    socle_degree: int


def socle(A) -> SocleData:
    """(0 : m) of an Artinian quotient S/A, degree by degree."""
    Q = _ideal_of(A)
    if krull_dimension(Q) != 0:
        raise PreconditionError("socle needs an Artinian (dimension 0) quotient")
    ring = Q.ring
    K = ring.field
    levels = []
    i = 0
    while True:
        b = standard_monomials(Q, i)
        if not b:
            break
        levels.append(b)
        i += 1
    basis: list[Polynomial] = []
    for i, Bi in enumerate(levels):
        nxt = levels[i + 1] if i + 1 < len(levels) else []
        index = {m: k for k, m in enumerate(nxt)}
        cols = []
        for m in Bi:
            col = []
            for x in ring.gens:
                nf = Q.reduce(ring.monomial(m) * x)
                coords = [K.zero] * len(nxt)
                for mm, c in nf.terms.items():
                    coords[index[mm]] = c
                col.extend(coords)
            cols.append(col)
        nrows = len(cols[0]) if cols else 0
        rows = [[cols[c][r] for c in range(len(Bi))] for r in range(nrows)]
        for v in nullspace(rows, K, len(Bi)):
            basis.append(ring.from_dict({m: c for m, c in zip(Bi, v) if c}))
    for s in basis:
        if any(Q.reduce(s * x) for x in ring.gens):
            raise ConsistencyError(f"socle element {s} is not killed by the maximal ideal")
    top = max((s.degree() for s in basis), default=-1)
    return SocleData(basis, len(basis), top)
