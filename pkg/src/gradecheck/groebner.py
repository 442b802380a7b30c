"""Buchberger's algorithm and the ideal calculus built on reduced Groebner bases.

The engine works on raw ``{monomial: coefficient}`` dicts and only wraps
results back into :class:`~gradecheck.polys.Polynomial` at the boundary.
Every basis element is kept monic, so a reduction step is a single
``h -= c * x^q * g`` sweep.
"""

from __future__ import annotations

import threading
from operator import add, sub
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .errors import (
    ContainmentError,
    NotHomogeneousError,
    PreconditionError,
    ResourceLimitError,
    RingMismatchError,
)
from .polys import (
    PolyRing,
    Polynomial,
    elimination_order,
    exact_divide,
    product,
)

DEFAULT_PAIR_BUDGET = 100_000


# ---------------------------------------------------------------------------
# raw engine


def _divides(a, b):
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _make_monic(h: dict, lm, K) -> dict:
    c = h[lm]
    if c == K.one:
        return h
    inv = K.inv(c)
    norm = K.normalize
    return {m: norm(v * inv) for m, v in h.items()}


def _sub_multiple(h: dict, c, q, gterms, p: int):
    """h -= c * x^q * g in place; ``p`` is the characteristic (0 for QQ)."""
    get = h.get
    if p:
        for gm, gc in gterms:
            t = tuple(map(add, gm, q))
            v = (get(t, 0) - c * gc) % p
            if v:
                h[t] = v
            else:
                del h[t]
    else:
        for gm, gc in gterms:
            t = tuple(map(add, gm, q))
            v = get(t, 0) - c * gc
            if v:
                h[t] = v
            else:
                del h[t]


class _Reducer:
    """A fixed list of monic ``(lm, terms)`` reducers with a memo of which
    reducer (if any) divides a given monomial."""

    __slots__ = ("basis", "cache", "masks")

    def __init__(self, basis):
        self.basis = basis
        self.cache = {}
        self.masks = [sum(1 << i for i, e in enumerate(lm) if e) for lm, _ in basis]

    def find(self, m):
        try:
            return self.cache[m]
        except KeyError:
            pass
        mm = sum(1 << i for i, e in enumerate(m) if e)
        found = None
        for (glm, gterms), gmask in zip(self.basis, self.masks):
            if gmask & ~mm == 0 and _divides(glm, m):
                found = (glm, gterms)
                break
        self.cache[m] = found
        return found


def _reduce(h: dict, reducer: _Reducer, key, p: int, full: bool) -> dict:
    """Normal form of ``h`` against ``reducer``.

    With ``full=False`` only the leading term is reduced (top reduction).
    """
    h = dict(h)
    rem = {}
    find = reducer.find
    while h:
        m = max(h, key=key)
        hit = find(m)
        if hit is not None:
            glm, gterms = hit
            _sub_multiple(h, h[m], tuple(map(sub, m, glm)), gterms, p)
        elif not full:
            h.update(rem)
            return h
        else:
            rem[m] = h.pop(m)
    return rem


def _spoly(f, g, flm, glm, lcm, p):
    qf = tuple(map(sub, lcm, flm))
    qg = tuple(map(sub, lcm, glm))
    s = {tuple(map(add, m, qf)): c for m, c in f.items()}
    _sub_multiple(s, 1, qg, g.items(), p)
    return s


def buchberger(polys: Iterable[dict], ring: PolyRing, budget: int | None = None) -> list[dict]:
    """Reduced Groebner basis of raw polynomials under ``ring.order``.

    Gebauer-Moeller pair pruning with the sugar selection strategy (which is
    the normal strategy on homogeneous input).  Raises
    :class:`ResourceLimitError` once more than ``budget`` pairs have been
    generated.
    """
    budget = DEFAULT_PAIR_BUDGET if budget is None else budget
    K = ring.field
    char = K.characteristic
    key = ring.order.key

    F = [dict(p) for p in polys if p]
    if not F:
        return []
    for p in F:
        if any(not any(m) for m in p) and len(p) == 1:
            return [{ring.zero_monomial: K.one}]

    f: list[dict] = []  # every basis polynomial ever created, monic
    lms: list = []
    sugar: list[int] = []
    G: set[int] = set()
    B: dict[tuple[int, int], tuple] = {}
    generated = 0
    reducer = None

    def current_reducer():
        nonlocal reducer
        if reducer is None:
            reducer = _Reducer([(lms[i], list(f[i].items())) for i in G])
        return reducer

    def update(ih):
        nonlocal generated, reducer
        reducer = None
        mh = lms[ih]
        C = set(G)
        D = set()
        while C:
            ig = C.pop()
            mg = lms[ig]
            lcm_hg = _lcm(mh, mg)
            coprime = all(a == 0 or b == 0 for a, b in zip(mh, mg))

            def lcm_divides(ip):
                return _divides(_lcm(mh, lms[ip]), lcm_hg)

            if coprime or (
                not any(lcm_divides(ip) for ip in C) and not any(lcm_divides(p[1]) for p in D)
            ):
                D.add((ih, ig))
        E = set()
        for ih_, ig in D:
            mg = lms[ig]
            if not all(a == 0 or b == 0 for a, b in zip(mh, mg)):
                E.add((ih_, ig))
        # drop old pairs made redundant by h (chain criterion)
        for pair in list(B):
            ig1, ig2 = pair
            lcm12 = _lcm(lms[ig1], lms[ig2])
            if (
                _divides(mh, lcm12)
                and _lcm(lms[ig1], mh) != lcm12
                and _lcm(lms[ig2], mh) != lcm12
            ):
                del B[pair]
        for i, j in E:
            lcm = _lcm(lms[i], lms[j])
            dl = sum(lcm)
            s = max(sugar[i] + dl - sum(lms[i]), sugar[j] + dl - sum(lms[j]))
            B[(i, j)] = (s, key(lcm))
        generated += len(E)
        if generated > budget or len(B) > budget:
            raise ResourceLimitError(
                f"Groebner computation exceeded the pair budget of {budget}"
            )
        for ig in list(G):
            if _divides(mh, lms[ig]):
                G.discard(ig)
        G.add(ih)

    def add(h, sug):
        lm = max(h, key=key)
        h = _make_monic(h, lm, K)
        f.append(h)
        lms.append(lm)
        sugar.append(max(sug, sum(lm)))
        update(len(f) - 1)

    F.sort(key=lambda p: key(max(p, key=key)))
    for p in F:
        h = _reduce(p, current_reducer(), key, char, full=False)
        if h:
            add(h, max(map(sum, p)))

    while B:
        pair = min(B, key=B.__getitem__)
        sug = B.pop(pair)[0]
        i, j = pair
        lcm = _lcm(lms[i], lms[j])
        s = _spoly(f[i], f[j], lms[i], lms[j], lcm, char)
        h = _reduce(s, current_reducer(), key, char, full=False)
        if h:
            add(h, sug)

    # interreduce: G is already minimal, so only tails need reducing
    final = []
    Gl = sorted(G, key=lambda i: key(lms[i]), reverse=True)
    for i in Gl:
        others = _Reducer([(lms[j], list(f[j].items())) for j in Gl if j != i])
        lm = lms[i]
        tail = dict(f[i])
        del tail[lm]
        tail = _reduce(tail, others, key, char, full=True)
        tail[lm] = K.one
        final.append(tail)
    return final


def _gb_with_cofactors(polys: Sequence[dict], ring: PolyRing, budget: int | None = None):
    """A (non-reduced) Groebner basis where each element records how it is
    built from the inputs: ``g == sum(cof[k] * polys[k])``.
    """
    budget = DEFAULT_PAIR_BUDGET if budget is None else budget
    K = ring.field
    norm = K.normalize
    char = K.characteristic
    key = ring.order.key
    nin = len(polys)
    zero_m = ring.zero_monomial

    def unit(k):
        return [({zero_m: K.one} if j == k else {}) for j in range(nin)]

    def reduce_tracked(h, cof, basis):
        h = dict(h)
        cof = [dict(c) for c in cof]
        rem = {}
        while h:
            m = max(h, key=key)
            for glm, g, gcof in basis:
                if _divides(glm, m):
                    q = tuple(a - b for a, b in zip(m, glm))
                    c = h[m]
                    _sub_multiple(h, c, q, g.items(), char)
                    for k in range(nin):
                        _sub_multiple(cof[k], c, q, gcof[k].items(), char)
                    break
            else:
                rem[m] = h.pop(m)
        return rem, cof

    def monic(h, cof):
        lm = max(h, key=key)
        inv = K.inv(h[lm])
        return (
            lm,
            {m: norm(v * inv) for m, v in h.items()},
            [{m: norm(v * inv) for m, v in c.items()} for c in cof],
        )

    basis = []
    for k, p in enumerate(polys):
        if not p:
            continue
        h, cof = reduce_tracked(p, unit(k), basis)
        if h:
            basis.append(monic(h, cof))
    pairs = list(combinations(range(len(basis)), 2))
    seen = 0
    while pairs:
        seen += 1
        if seen > budget:
            raise ResourceLimitError(f"Groebner computation exceeded the pair budget of {budget}")
        i, j = pairs.pop(0)
        li, gi, ci = basis[i]
        lj, gj, cj = basis[j]
        if all(a == 0 or b == 0 for a, b in zip(li, lj)):
            continue
        lcm = _lcm(li, lj)
        qi = tuple(a - b for a, b in zip(lcm, li))
        qj = tuple(a - b for a, b in zip(lcm, lj))
        s = {}
        _sub_multiple(s, -1, qi, gi.items(), char)
        _sub_multiple(s, 1, qj, gj.items(), char)
        scof = []
        for k in range(nin):
            c = {}
            _sub_multiple(c, -1, qi, ci[k].items(), char)
            _sub_multiple(c, 1, qj, cj[k].items(), char)
            scof.append(c)
        h, hcof = reduce_tracked(s, scof, basis)
        if h:
            basis.append(monic(h, hcof))
            n = len(basis) - 1
            pairs.extend((a, n) for a in range(n))
    return basis


def _divide_with_quotients(h: dict, basis, ring: PolyRing):
    """Division of ``h`` by a cofactor basis; returns (quotients, remainder)."""
    K = ring.field
    norm = K.normalize
    char = K.characteristic
    key = ring.order.key
    h = dict(h)
    quos = [dict() for _ in basis]
    rem = {}
    while h:
        m = max(h, key=key)
        for idx, (glm, g, _) in enumerate(basis):
            if _divides(glm, m):
                q = tuple(a - b for a, b in zip(m, glm))
                c = h[m]
                _sub_multiple(h, c, q, g.items(), char)
                v = norm(quos[idx].get(q, 0) + c)
                if v:
                    quos[idx][q] = v
                else:
                    quos[idx].pop(q, None)
                break
        else:
            rem[m] = h.pop(m)
    return quos, rem


# ---------------------------------------------------------------------------
# ideals


class Ideal:
    """An ideal of a :class:`PolyRing` given by generators.

    The reduced Groebner basis is computed lazily, cached, and guarded by a
    lock so concurrent readers share one computation.
    """

    def __init__(self, ring: PolyRing, gens: Iterable = (), budget: int | None = None):
        self.ring = ring
        self.gens = tuple(g for g in (ring(g) for g in gens) if g)
        self.budget = budget
        self._gb: tuple[Polynomial, ...] | None = None
        self._red = None
        self._lock = threading.Lock()

    def __repr__(self):
        return f"Ideal({', '.join(map(str, self.gens))})"

    def _check(self, other: Ideal) -> Ideal:
        if other.ring != self.ring:
            raise RingMismatchError(f"ideals live in {self.ring} and {other.ring}")
        return other

    def _new(self, gens) -> Ideal:
        return Ideal(self.ring, gens, self.budget)

    def groebner_basis(self) -> tuple[Polynomial, ...]:
        with self._lock:
            if self._gb is None:
                raw = buchberger((g.terms for g in self.gens), self.ring, self.budget)
                self._gb = tuple(Polynomial(self.ring, p) for p in raw)
            return self._gb

    gb = property(groebner_basis)

    def _reducer(self) -> _Reducer:
        gb = self.gb
        if self._red is None:
            self._red = _Reducer([(g.leading_monomial(), list(g.terms.items())) for g in gb])
        return self._red

    def leading_monomials(self) -> list[tuple]:
        return [g.leading_monomial() for g in self.gb]

    def reduce(self, f: Polynomial) -> Polynomial:
        f = self.ring(f)
        rem = _reduce(f.terms, self._reducer(), self.ring.order.key, self.ring.field.characteristic, full=True)
        return Polynomial(self.ring, rem)

    def __contains__(self, f) -> bool:
        return not self.reduce(f)

    def _monic_gens(self) -> frozenset:
        return frozenset(frozenset(g.monic().terms.items()) for g in self.gens)

    def contains_ideal(self, other: Ideal) -> bool:
        self._check(other)
        # a generator that is a unit multiple of one of ours needs no reduction
        own = self._monic_gens()
        rest = [g for g in other.gens if frozenset(g.monic().terms.items()) not in own]
        return all(g in self for g in rest)

    __ge__ = contains_ideal

    def __le__(self, other: Ideal) -> bool:
        return other.contains_ideal(self)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return ideal_equal(self, other)

    __hash__ = None

    def __add__(self, other):
        if isinstance(other, Ideal):
            return ideal_sum(self, other)
        return self._new(self.gens + tuple(self.ring(g) for g in other))

    def __mul__(self, other):
        if isinstance(other, Ideal):
            return ideal_product(self, other)
        return self._new(g * other for g in self.gens)

    def __pow__(self, t: int):
        return ideal_power(self, t)

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return any(g.is_constant() for g in self.gb)

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.gens)

    def dimension(self) -> int:
        return krull_dimension(self)


def maximal_ideal(ring: PolyRing, budget=None) -> Ideal:
    return Ideal(ring, ring.gens, budget)


def reduced_gb(I: Ideal) -> list[Polynomial]:
    """The reduced Groebner basis of ``I`` (monic, auto-reduced, sorted by
    leading monomial, largest first)."""
    return list(I.groebner_basis())


def normal_form(f: Polynomial, I: Ideal) -> Polynomial:
    """Remainder of ``f`` on division by the reduced basis of ``I``."""
    if f.ring != I.ring:
        raise RingMismatchError(f"{f.ring} vs {I.ring}")
    return I.reduce(f)


def ideal_equal(I: Ideal, J: Ideal) -> bool:
    """Equality of ideals.

    When one generating set is contained (up to units) in the other, only the
    remaining generators are reduced, so just one Groebner basis is needed.
    Otherwise the reduced bases are compared termwise.
    """
    I._check(J)
    gi, gj = I._monic_gens(), J._monic_gens()
    if gi == gj:
        return True
    if gj <= gi:
        return J.contains_ideal(I)
    if gi <= gj:
        return I.contains_ideal(J)
    a, b = I.gb, J.gb
    return len(a) == len(b) and all(p.terms == q.terms for p, q in zip(a, b))


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    I._check(J)
    return I._new(I.gens + J.gens)


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    I._check(J)
    seen = {}
    for f in I.gens:
        for g in J.gens:
            p = f * g
            seen.setdefault(p, None)
    return I._new(seen)


def ideal_power(I: Ideal, t: int) -> Ideal:
    if t < 0:
        raise ValueError("negative ideal power")
    if t == 0:
        return I._new([I.ring.one])
    # products of t generators, taken as multisets
    gens = {}
    from itertools import combinations_with_replacement

    for combo in combinations_with_replacement(range(len(I.gens)), t):
        gens.setdefault(product((I.gens[i] for i in combo), I.ring), None)
    return I._new(gens)


def frobenius_power(I: Ideal, t: int) -> Ideal:
    """Bracket power: the ideal of t-th powers of the *current* generators."""
    if t < 1:
        raise ValueError("Frobenius power needs t >= 1")
    return I._new(g**t for g in I.gens)


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J by eliminating an auxiliary variable from tI + (1-t)J."""
    I._check(J)
    ring = I.ring
    if I.is_zero() or J.is_zero():
        return I._new([])
    if I.is_unit():
        return J
    if J.is_unit():
        return I
    T = PolyRing(("_t",) + ring.names, ring.field, elimination_order(1))
    tmono = (1,) + (0,) * ring.ngens

    def lift(p):
        return {(0,) + m: c for m, c in p.terms.items()}

    one = {T.zero_monomial: ring.field.one}
    t = {tmono: ring.field.one}
    tp = Polynomial(T, t)
    one_minus_t = Polynomial(T, one) - tp
    gens = [(tp * Polynomial(T, lift(f))).terms for f in I.gens]
    gens += [(one_minus_t * Polynomial(T, lift(g))).terms for g in J.gens]
    G = buchberger(gens, T, I.budget)
    out = []
    for g in G:
        if all(m[0] == 0 for m in g):
            out.append(Polynomial(ring, {m[1:]: c for m, c in g.items()}))
    return I._new(out)


def colon(I: Ideal, f: Polynomial) -> Ideal:
    """I : f = {g : g f ∈ I}, via (I ∩ (f)) / f."""
    f = I.ring(f)
    if not f:
        raise PreconditionError("colon by the zero polynomial")
    if f.is_constant():
        return I
    inter = intersect(I, I._new([f]))
    return I._new(exact_divide(g, f) for g in inter.gens)


def colon_ideal(I: Ideal, J: Ideal) -> Ideal:
    I._check(J)
    if J.is_zero():
        return I._new([I.ring.one])
    result = None
    for g in J.gens:
        c = colon(I, g)
        result = c if result is None else intersect(result, c)
    return result


def krull_dimension(I: Ideal) -> int:
    """dim S/I from the leading-term ideal; -1 for the unit ideal.

    The dimension is the largest set of variables containing the support of
    no leading monomial.
    """
    n = I.ring.ngens
    lms = I.leading_monomials()
    if any(not any(m) for m in lms):
        return -1
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in lms]
    for size in range(n, -1, -1):
        for U in combinations(range(n), size):
            Us = set(U)
            if not any(s <= Us for s in supports):
                return size
    return 0


def minimal_generators(I: Ideal) -> list[Polynomial]:
    """A homogeneous minimal generating set extracted from ``I.gens``.

    Generators are scanned by degree; one is kept unless it already lies in
    the ideal of the generators kept so far (which in its degree is exactly
    the lower-degree part plus the span of same-degree kept generators).
    """
    if not I.is_homogeneous():
        raise NotHomogeneousError("minimal generators need a homogeneous ideal")
    if I.is_unit():
        raise PreconditionError("the unit ideal has no homogeneous minimal generators")
    kept: list[Polynomial] = []
    for g in sorted(I.gens, key=lambda p: (p.degree(), p.ring.order.key(p.leading_monomial()))):
        if not kept or g not in I._new(kept):
            kept.append(g)
    return kept


@dataclass(frozen=True)
class ContainmentWitness:
    """y_i = sum_j A[i][j] x_j (modulo ``modulus`` when one is given)."""

    ys: tuple[Polynomial, ...]
    xs: tuple[Polynomial, ...]
    matrix: tuple[tuple[Polynomial, ...], ...]
    delta: Polynomial | None

    def reexpand(self) -> list[Polynomial]:
        ring = self.ys[0].ring
        out = []
        for row in self.matrix:
            s = ring.zero
            for a, x in zip(row, self.xs):
                s = s + a * x
            out.append(s)
        return out


def determinant(M: Sequence[Sequence[Polynomial]], ring: PolyRing) -> Polynomial:
    """Determinant by fraction-free (Bareiss) elimination with exact division."""
    n = len(M)
    if n == 0:
        return ring.one
    A = [list(row) for row in M]
    if any(len(row) != n for row in A):
        raise ValueError("determinant of a non-square matrix")
    sign = 1
    prev = ring.one
    for k in range(n - 1):
        if not A[k][k]:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return ring.zero
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = exact_divide(A[i][j] * A[k][k] - A[i][k] * A[k][j], prev)
        prev = A[k][k]
    det = A[n - 1][n - 1]
    return det if sign == 1 else -det


def containment_witness(
    ys: Sequence[Polynomial], xs: Sequence[Polynomial], modulus: Ideal | None = None
) -> ContainmentWitness:
    """Express each y_i over the x_j with homogeneous coefficients.

    Division with quotients runs against a Groebner basis of ``(xs)`` (plus
    ``modulus``) whose elements remember their cofactors over the original
    generators; composing the two gives the matrix.  Entries are then cut
    down to their degree ``deg y_i - deg x_j`` component, which keeps the
    identity intact because all inputs are homogeneous.
    """
    ys = tuple(ys)
    xs = tuple(xs)
    if not ys or not xs:
        raise PreconditionError("containment witness needs nonempty sequences")
    ring = ys[0].ring
    for p in ys + xs:
        if p.ring != ring:
            raise RingMismatchError("mixed rings in containment witness")
        if not p or not p.is_homogeneous():
            raise NotHomogeneousError(f"{p} is not a nonzero homogeneous polynomial")
    extra = modulus.gens if modulus is not None else ()
    gens = [p.terms for p in xs + extra]
    budget = modulus.budget if modulus is not None else None
    basis = _gb_with_cofactors(gens, ring, budget)
    rows = []
    for y in ys:
        quos, rem = _divide_with_quotients(y.terms, basis, ring)
        if rem:
            raise ContainmentError(f"{y} is not in the ideal generated by the targets")
        row = []
        for j, x in enumerate(xs):
            a = ring.zero
            for q, (_, _, cof) in zip(quos, basis):
                if q and cof[j]:
                    a = a + Polynomial(ring, q) * Polynomial(ring, cof[j])
            row.append(a.homogeneous_component(y.degree() - x.degree()))
        rows.append(tuple(row))
    delta = determinant(rows, ring) if len(ys) == len(xs) else None
    w = ContainmentWitness(ys, xs, tuple(rows), delta)
    check = Ideal(ring, extra) if extra else None
    for y, z in zip(ys, w.reexpand()):
        diff = y - z
        if diff and (check is None or diff not in check):
            raise ContainmentError("witness matrix does not reproduce the source generators")
    return w


def degree_sum(polys: Iterable[Polynomial]) -> int:
    return sum(p.degree() for p in polys)
