"""Monomials, monomial orders and sparse multivariate polynomials.

Monomials are exponent tuples.  A polynomial is an immutable mapping from
monomials to nonzero coefficients, tied to exactly one :class:`PolyRing`.
"""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterable, Sequence

from .errors import RingMismatchError
from .fields import DEFAULT_PRIME, Field, PrimeField

Monomial = tuple

MAX_VARIABLES = 16


def monomial_degree(m: Monomial) -> int:
    return sum(m)


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def monomial_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    """True if ``a`` divides ``b``."""
    return all(x <= y for x, y in zip(a, b))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def monomials_of_degree(n: int, d: int) -> list[Monomial]:
    """All exponent vectors of length ``n`` and total degree ``d``."""
    if d < 0:
        return []
    out = []
    for combo in combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def _grevlex_key(m):
    return (sum(m), tuple(-e for e in reversed(m)))


class MonomialOrder:
    """A monomial order given by a sort key; larger key means larger monomial."""

    def __init__(self, name: str, key):
        self.name = name
        self.key = lru_cache(maxsize=1 << 18)(key)

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and other.name == self.name

    def __hash__(self):
        return hash(self.name)


grevlex = MonomialOrder("grevlex", _grevlex_key)
lex = MonomialOrder("lex", lambda m: m)
grlex = MonomialOrder("grlex", lambda m: (sum(m), m))

_ORDERS = {"grevlex": grevlex, "lex": lex, "grlex": grlex}
_block_orders: dict[int, MonomialOrder] = {}


def elimination_order(k: int) -> MonomialOrder:
    """Block order eliminating the first ``k`` variables (grevlex inside blocks)."""
    if k not in _block_orders:
        _block_orders[k] = MonomialOrder(
            f"block({k})", lambda m: (_grevlex_key(m[:k]), _grevlex_key(m[k:]))
        )
    return _block_orders[k]


def get_order(order) -> MonomialOrder:
    if isinstance(order, MonomialOrder):
        return order
    try:
        return _ORDERS[order]
    except KeyError:
        raise ValueError(f"unknown monomial order {order!r}") from None


class PolyRing:
    """k[x_1, ..., x_n] with a fixed coefficient field and monomial order."""

    def __init__(self, names: Sequence[str] | str, field: Field | None = None, order="grevlex"):
        if isinstance(names, str):
            names = [s.strip() for s in names.split(",") if s.strip()]
        names = tuple(names)
        if not names:
            raise ValueError("a polynomial ring needs at least one variable")
        if len(set(names)) != len(names):
            raise ValueError(f"variable names must be distinct: {names}")
        if len(names) > MAX_VARIABLES:
            raise ValueError(f"at most {MAX_VARIABLES} variables are supported")
        self.names = names
        self.ngens = len(names)
        self.field = field if field is not None else PrimeField(DEFAULT_PRIME)
        self.order = get_order(order)
        self.zero_monomial = (0,) * self.ngens
        self.zero = Polynomial(self, {})
        self.one = Polynomial(self, {self.zero_monomial: self.field.one})
        self.gens = tuple(
            Polynomial(self, {tuple(int(i == j) for j in range(self.ngens)): self.field.one})
            for i in range(self.ngens)
        )

    def __repr__(self):
        return f"{self.field}[{','.join(self.names)}]"

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.names == other.names
            and self.field == other.field
            and self.order == other.order
        )

    def __hash__(self):
        return hash((self.names, self.field, self.order))

    def gen(self, name: str) -> Polynomial:
        return self.gens[self.names.index(name)]

    def __call__(self, value) -> Polynomial:
        if isinstance(value, Polynomial):
            if value.ring != self:
                raise RingMismatchError(f"{value.ring} vs {self}")
            return value
        return self.from_dict({self.zero_monomial: value})

    def from_dict(self, terms: dict) -> Polynomial:
        """Build a polynomial from raw coefficients, normalizing and pruning zeros."""
        conv = self.field.convert
        out = {}
        for m, c in terms.items():
            m = tuple(m)
            if len(m) != self.ngens:
                raise ValueError(f"monomial {m} has wrong length for {self}")
            c = conv(c)
            if c:
                out[m] = c
        return Polynomial(self, out)

    def monomial(self, exps) -> Polynomial:
        return Polynomial(self, {tuple(exps): self.field.one})

    def monomials_of_degree(self, d: int) -> list[Monomial]:
        return monomials_of_degree(self.ngens, d)

    def random_form(self, degree: int, rng: random.Random) -> Polynomial:
        """Dense homogeneous form of the given degree with random coefficients."""
        K = self.field
        terms = {}
        for m in self.monomials_of_degree(degree):
            c = K.random_element(rng)
            if c:
                terms[m] = c
        return Polynomial(self, terms)

    def with_order(self, order) -> PolyRing:
        return PolyRing(self.names, self.field, order)


def as_rng(seed) -> random.Random:
    if isinstance(seed, random.Random):
        return seed
    return random.Random(seed)


def random_linear_form(ring: PolyRing, seed) -> Polynomial:
    """A nonzero degree-1 form with coefficients drawn uniformly from the field.

    ``seed`` may be an int/str seed or a ``random.Random`` instance; draws are
    deterministic given the seed.  All-zero draws are rejected.
    """
    rng = as_rng(seed)
    while True:
        f = ring.random_form(1, rng)
        if f:
            return f


class Polynomial:
    """An immutable polynomial over ``ring``."""

    __slots__ = ("ring", "terms", "_lm", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        # trusted constructor: coefficients already normalized and nonzero
        self.ring = ring
        self.terms = terms
        self._lm = None
        self._hash = None

    def _check(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.ring is not self.ring and other.ring != self.ring:
                raise RingMismatchError(f"cannot combine elements of {self.ring} and {other.ring}")
            return other
        return self.ring(other)

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        try:
            return self.terms == self.ring(other).terms
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __add__(self, other):
        other = self._check(other)
        norm = self.ring.field.normalize
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = norm(out.get(m, 0) + c)
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        norm = self.ring.field.normalize
        return Polynomial(self.ring, {m: norm(-c) for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = self.ring.field.convert(other)
            if not c:
                return self.ring.zero
            norm = self.ring.field.normalize
            return Polynomial(self.ring, {m: norm(a * c) for m, a in self.terms.items()})
        other = self._check(other)
        norm = self.ring.field.normalize
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial(self.ring, {m: v for m, c in out.items() if (v := norm(c))})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result, base = self.ring.one, self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def mul_term(self, mono: Monomial, coeff) -> Polynomial:
        norm = self.ring.field.normalize
        out = {}
        for m, c in self.terms.items():
            v = norm(c * coeff)
            if v:
                out[tuple(x + y for x, y in zip(m, mono))] = v
        return Polynomial(self.ring, out)

    # -- structure -------------------------------------------------------

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def homogeneous_component(self, i: int) -> Polynomial:
        return Polynomial(self.ring, {m: c for m, c in self.terms.items() if sum(m) == i})

    def homogeneous_components(self) -> dict[int, Polynomial]:
        out: dict[int, dict] = {}
        for m, c in self.terms.items():
            out.setdefault(sum(m), {})[m] = c
        return {d: Polynomial(self.ring, t) for d, t in sorted(out.items())}

    def leading_monomial(self) -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        if self._lm is None:
            self._lm = max(self.terms, key=self.ring.order.key)
        return self._lm

    def leading_coefficient(self):
        return self.terms[self.leading_monomial()]

    def leading_term(self) -> Polynomial:
        m = self.leading_monomial()
        return Polynomial(self.ring, {m: self.terms[m]})

    def sorted_terms(self) -> list[tuple[Monomial, object]]:
        key = self.ring.order.key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def monic(self) -> Polynomial:
        if not self.terms:
            return self
        inv = self.ring.field.inv(self.leading_coefficient())
        return self * inv

    def coefficient(self, mono: Monomial):
        return self.terms.get(tuple(mono), self.ring.field.zero)

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        K = self.ring.field
        parts = []
        for m, c in self.sorted_terms():
            s = K.to_str(c)
            neg = s.startswith("-")
            if neg:
                s = s[1:]
            mono = "*".join(
                name if e == 1 else f"{name}^{e}" for name, e in zip(self.ring.names, m) if e
            )
            if mono:
                body = mono if s == "1" else f"{s}*{mono}"
            else:
                body = s
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts)


def exact_divide(f: Polynomial, g: Polynomial) -> Polynomial:
    """Return q with f == q*g, raising ValueError if g does not divide f."""
    g = f._check(g)
    if not g:
        raise ZeroDivisionError("division by zero polynomial")
    ring = f.ring
    K = ring.field
    key = ring.order.key
    glm = g.leading_monomial()
    ginv = K.inv(g.terms[glm])
    gterms = list(g.terms.items())
    norm = K.normalize
    rem = dict(f.terms)
    quo = {}
    while rem:
        m = max(rem, key=key)
        if not monomial_divides(glm, m):
            raise ValueError(f"{g} does not divide {f}")
        qm = monomial_div(m, glm)
        qc = norm(rem[m] * ginv)
        quo[qm] = qc
        for gm, gc in gterms:
            t = monomial_mul(gm, qm)
            v = norm(rem.get(t, 0) - qc * gc)
            if v:
                rem[t] = v
            else:
                rem.pop(t, None)
    return Polynomial(ring, quo)


def product(polys: Iterable[Polynomial], ring: PolyRing) -> Polynomial:
    out = ring.one
    for p in polys:
        out = out * p
    return out
