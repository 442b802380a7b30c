"""The fixed twelve-ring test corpus with hand-derived invariants."""

from dataclasses import dataclass

from gradecheck.fields import GF, QQ
from gradecheck.groebner import Ideal
from gradecheck.invariants import GradedRing
from gradecheck.polys import PolyRing


@dataclass(frozen=True)
class Expected:
    dim: int
    embdim: int
    mult: int
    hvector: tuple
    gorenstein: bool
    hypersurface: bool
    ci: bool
    min_mult: bool
    stretched: bool
    super_stretched: bool
    h_class: str
    obstruction: str


NONE = "none_found"
NOT_SS = "not super-stretched"
RULE_C = "dimension 1, neither a hypersurface nor of minimal multiplicity"
NA = "not_applicable"

# name -> (variables, generators as a string, expected invariants)
CORPUS = {
    "k[x]": ("x", "", Expected(1, 1, 1, (1,), True, True, True, True, True, True, "(1)", NONE)),
    "k[x,y]": ("x,y", "", Expected(2, 2, 1, (1,), True, True, True, True, True, True, "(1)", NONE)),
    "k[x,y,z]": ("x,y,z", "", Expected(3, 3, 1, (1,), True, True, True, True, True, True, "(1)", NONE)),
    "x^2": ("x,y", "x^2", Expected(1, 2, 2, (1, 1), True, True, True, True, True, True, "(1,n)", NONE)),
    "xy-z^2": ("x,y,z", "x*y - z^2", Expected(2, 3, 2, (1, 1), True, True, True, True, True, True, "(1,n)", NONE)),
    "x^3": ("x,y", "x^3", Expected(1, 2, 3, (1, 1, 1), True, True, True, False, True, True, "(1,n,1)", NONE)),
    "x^3 in 3 vars": ("x,y,z", "x^3", Expected(2, 3, 3, (1, 1, 1), True, True, True, False, True, True, "(1,n,1)", NONE)),
    "x^4": ("x,y", "x^4", Expected(1, 2, 4, (1, 1, 1, 1), True, True, True, False, True, False, "other", NOT_SS)),
    "x^2,y^2": ("x,y,z", "x^2, y^2", Expected(1, 3, 4, (1, 2, 1), True, False, True, False, True, True, "(1,n,1)", RULE_C)),
    "m^3 cone": (
        "x,y,z",
        "x^3, y^3, z^3, x^2*y, x^2*z, x*y^2, y^2*z, x*z^2, y*z^2, x*y*z",
        Expected(0, 3, 10, (1, 3, 6), False, False, False, False, False, False, "other", NA),
    ),
    "x^3y-xy^3": ("x,y", "x^3*y - x*y^3", Expected(1, 2, 4, (1, 1, 1, 1), True, True, True, False, True, False, "other", NOT_SS)),
    "xy,xz,yz": ("x,y,z", "x*y, x*z, y*z", Expected(1, 3, 3, (1, 2), False, False, False, True, True, True, "(1,n)", NONE)),
}


def make_ring(name, field=None) -> GradedRing:
    from gradecheck.dsl import parse_polys

    names, gens, _ = CORPUS[name]
    S = PolyRing(names, field or GF())
    return GradedRing(Ideal(S, parse_polys(gens, S) if gens else []))


def expected(name) -> Expected:
    return CORPUS[name][2]


def ring_text(name, field="GF(32003)") -> str:
    names, gens, _ = CORPUS[name]
    out = f"ring {field}[{names}]\n"
    if gens:
        out += f"ideal {gens}\n"
    return out


def as_dicts(ideal: Ideal):
    return [dict(g.terms) for g in ideal.gens]


__all__ = ["CORPUS", "make_ring", "expected", "ring_text", "as_dicts", "GF", "QQ"]
