"""Command line front end: ``gradecheck <command> [file]``.

Reads a ring description (see :mod:`gradecheck.dsl`) from a file or stdin
and prints a text or JSON report.  Exit codes: 0 computed, 2 precondition
or input failure (parse error, not CM, not an hsop, ...), 1 internal error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from . import families, invariants
from .dsl import Session, parse_field, parse_input, parse_polys
from .errors import GradecheckError, ParseError, PreconditionError, ResourceLimitError
from .groebner import DEFAULT_PAIR_BUDGET
from .hilbert import hilbert_series
from .invariants import (
    AUDIT_DEGREE_BOUND,
    AUDIT_SAMPLES,
    STRETCHED_SAMPLES,
    GradedRing,
    classify_h_vector,
)

SEED_ENV = "GRADECHECK_SEED"

# traceability labels printed next to each verdict in the text report
CRITERIA = {
    "min_mult": "e = embdim - dim + 1",
    "stretched": "dims of R/J at degrees >= 2 are <= 1 for a generic linear reduction J",
    "super_stretched": "stretched and J m^2 = m^3",
    "h_class": "super-stretched forces (1), (1,n) or (1,n,1)",
    "gorenstein": "socle of the Artinian reduction has dimension 1",
    "obstruction": "necessary conditions for countable graded CM type",
}


def _strs(polys):
    return [str(p) for p in polys]


def _seed(args) -> object:
    raw = os.environ.get(SEED_ENV)
    if raw is None or raw == "":
        return args.seed
    try:
        return int(raw)
    except ValueError:
        raise ParseError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def _options(args, session: Session) -> dict:
    return {
        "field": str(session.ring.field),
        "order": session.ring.order.name,
        "audit": bool(args.audit),
        "samples": args.samples,
        "audit_samples": args.audit_samples,
        "degree_bound": args.degree_bound,
        "budget": args.budget,
    }


def _load(args) -> Session:
    if args.file in (None, "-"):
        text = sys.stdin.read()
    else:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
    K = parse_field(args.field) if args.field else None
    session = parse_input(text, order=args.order, field=K, budget=args.budget)
    session.command = args.command
    session.seed = _seed(args)
    session.options = _options(args, session)
    return session


# ---------------------------------------------------------------------------
# commands; each returns (payload dict, text lines, exit code)


def report_payload(session: Session):
    """Fixed-schema report of a ring, exit code and the underlying RingReport.

    Deterministic given (input, seed, options)."""
    opts = session.options
    R = GradedRing(session.ideal)
    rep = invariants.ring_report(
        R,
        session.seed,
        samples=opts.get("samples", STRETCHED_SAMPLES),
        audit=opts.get("audit", False),
        audit_samples=opts.get("audit_samples", AUDIT_SAMPLES),
        degree_bound=opts.get("degree_bound", AUDIT_DEGREE_BOUND),
    )
    if rep.obstruction is not None:
        obstruction = rep.obstruction.label()
    elif rep.cm:
        obstruction = "not_applicable"
    else:
        obstruction = None
    payload = {
        "dim": rep.dim,
        "embdim": rep.embdim,
        "mult": rep.mult,
        "hvector": list(rep.hvector) if rep.hvector is not None else None,
        "cm": rep.cm,
        "gorenstein": rep.gorenstein,
        "hypersurface": rep.hypersurface,
        "ci": rep.ci,
        "min_mult": rep.min_mult,
        "stretched": rep.stretched,
        "super_stretched": rep.super_stretched,
        "h_class": rep.h_class,
        "obstruction": obstruction,
        "seed": session.seed,
        "options": dict(opts),
    }
    return payload, (0 if rep.cm else 2), rep


def _cmd_report(session, args):
    payload, code, rep = report_payload(session)
    lines = [f"ring: {session.ring} / ({', '.join(_strs(session.ideal.gens)) or '0'})"]
    for key in ("dim", "embdim", "mult", "hvector", "cm"):
        lines.append(f"{key}: {_fmt(payload[key])}")
    if not rep.cm:
        cert = rep.cm_certificate
        lines.append(f"not Cohen-Macaulay: {cert.detail}")
        if rep.seed_dependent_hf is not None:
            lines.append(f"seed-dependent Hilbert function modulo sampled forms: {rep.seed_dependent_hf}")
        lines.append("structural verdicts refused for a non-CM ring")
    else:
        for key in ("gorenstein", "hypersurface", "ci", "min_mult", "stretched", "super_stretched", "h_class"):
            label = f"  [{CRITERIA[key]}]" if key in CRITERIA else ""
            tag = "  (generic-sampled)" if key in ("stretched", "super_stretched") else ""
            lines.append(f"{key}: {_fmt(payload[key])}{tag}{label}")
        if rep.stretched_witness:
            lines.append(f"stretched witness J: {', '.join(_strs(rep.stretched_witness))}")
        if rep.audit is not None:
            lines.append(
                f"audit: {len(rep.audit.checks)} sampled hsops, "
                f"{len(rep.audit.counterexamples)} violate the degree bound"
            )
        lines.append(f"obstruction: {payload['obstruction']}  [{CRITERIA['obstruction']}]")
        if rep.obstruction is not None and rep.obstruction.fired:
            lines.append(f"rules fired: {', '.join(rep.obstruction.fired)}")
        elif rep.obstruction is not None:
            lines.append("none_found is not a proof of countable type")
    lines.append(f"seed: {session.seed}")
    return payload, lines, code


def _fmt(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, list):
        return "(" + ",".join(map(str, v)) + ")"
    return "null" if v is None else str(v)


def _cmd_hilbert(session, args):
    hs = hilbert_series(session.ideal)
    payload = {
        "numerator": list(hs.numerator),
        "dim": hs.dim,
        "mult": hs.multiplicity(),
        "series": str(hs),
        "values": hs.series(args.upto),
    }
    lines = [f"HS(t) = {hs}", f"dim = {hs.dim}", f"e = {hs.multiplicity()}", f"H(0..{args.upto}) = {payload['values']}"]
    return payload, lines, 0


def _cmd_hvector(session, args):
    R = GradedRing(session.ideal)
    h = R.hvector(session.seed)
    cls = classify_h_vector(h)
    payload = {"hvector": list(h.entries), "h_class": cls, "reduction": _strs(h.reduction_used)}
    return payload, [f"h-vector: {_fmt(list(h.entries))}", f"h_class: {cls}"], 0


def _cmd_stretched(session, args):
    R = GradedRing(session.ideal)
    st = invariants.is_stretched(R, session.seed, args.samples)
    payload = {
        "stretched": st.verdict,
        "method": st.method,
        "witness": _strs(st.witness) if st.witness is not None else None,
        "tried": [{"reduction": _strs(J), "dims": dims} for J, dims in st.tried],
    }
    lines = [f"stretched: {_fmt(st.verdict)}  ({st.method})  [{CRITERIA['stretched']}]"]
    if st.witness:
        lines.append(f"witness J: {', '.join(_strs(st.witness))}")
    for J, dims in st.tried:
        lines.append(f"  J = {', '.join(_strs(J)) or '()'}: dims {dims}")
    return payload, lines, 0


def _audit_payload(audit):
    if audit is None:
        return None
    return {
        "samples": len(audit.checks),
        "counterexamples": [_hsop_payload(c) for c in audit.counterexamples],
    }


def _cmd_ss(session, args):
    R = GradedRing(session.ideal)
    ss = invariants.is_super_stretched(
        R, session.seed, args.samples, args.audit, args.audit_samples, args.degree_bound
    )
    payload = {
        "super_stretched": ss.verdict,
        "stretched": ss.stretched.verdict,
        "method": ss.stretched.method,
        "witness": _strs(ss.witness) if ss.witness is not None else None,
        "m3": ss.m3_holds,
        "audit": _audit_payload(ss.audit),
        "audit_agrees": ss.audit_agrees,
    }
    lines = [
        f"super_stretched: {_fmt(ss.verdict)}  [{CRITERIA['super_stretched']}]",
        f"stretched: {_fmt(ss.stretched.verdict)}",
        f"J m^2 = m^3: {_fmt(ss.m3_holds)}",
    ]
    if ss.audit is not None:
        lines.append(f"audit agrees: {_fmt(ss.audit_agrees)} ({len(ss.audit.checks)} hsops)")
    return payload, lines, 0


def _hsop_payload(chk):
    return {
        "sop": _strs(chk.sop),
        "degrees": list(chk.degrees),
        "threshold": chk.threshold,
        "dims": {str(i): v for i, v in chk.dims.items()},
        "verdict": chk.verdict,
        "failing_degree": chk.failing_degree,
    }


def _need(args, name):
    value = getattr(args, name)
    if value is None:
        raise PreconditionError(f"--{name.replace('_', '-')} is required for this command")
    return value


def _cmd_ss_sop(session, args):
    sop = parse_polys(_need(args, "sop"), session.ring)
    chk = invariants.check_hsop_super_stretched(GradedRing(session.ideal), sop)
    payload = _hsop_payload(chk)
    lines = [
        f"hsop: {', '.join(payload['sop'])}  degrees {chk.degrees}",
        f"threshold D = {chk.threshold}",
        "dims: " + ", ".join(f"{i}:{v}" for i, v in chk.dims.items()),
        f"verdict: {_fmt(chk.verdict)}" + (f" (fails at degree {chk.failing_degree})" if not chk.verdict else ""),
    ]
    return payload, lines, 0


def _cmd_reduction(session, args):
    J = parse_polys(_need(args, "j"), session.ring)
    chk = invariants.is_minimal_reduction(GradedRing(session.ideal), J)
    payload = {"is_reduction": chk.is_reduction, "reduction_number": chk.reduction_number, "reason": chk.reason}
    lines = [f"minimal reduction: {_fmt(chk.is_reduction)}"]
    lines.append(f"reduction number: {chk.reduction_number}" if chk.is_reduction else f"reason: {chk.reason}")
    return payload, lines, 0


def _default_sequence(session, R: GradedRing):
    """Variables for a polynomial ring, else the verified regular linear forms."""
    if session.ideal.is_zero():
        return list(session.ring.gens)
    return list(R.require_cm(session.seed).forms)


def _cmd_identities(session, args):
    R = GradedRing(session.ideal)
    which = args.which
    gens = parse_polys(args.gens, session.ring) if args.gens else None
    if which == "colon":
        xs = gens or _default_sequence(session, R)
        base = session.ideal
        if not xs:
            raise PreconditionError("the colon identity needs a nonempty regular sequence")
        from .hilbert import is_regular_sequence

        if not is_regular_sequence(base, xs):
            raise PreconditionError("the given elements are not a regular sequence")
        ok = invariants.verify_colon_power_identity(xs, args.t, base)
        payload = {"identity": "colon", "t": args.t, "gens": _strs(xs), "holds": ok}
    elif which == "frobenius":
        xs = gens or list(session.ring.gens)
        ok = invariants.verify_frobenius_product_identity(xs, args.m)
        payload = {"identity": "frobenius", "m": args.m, "gens": _strs(xs), "holds": ok}
    else:
        xs = gens or _default_sequence(session, R)
        ys = parse_polys(args.ys, session.ring) if args.ys else [x**2 for x in xs]
        chk = invariants.verify_delta_injectivity(R, ys, xs)
        ok = chk.holds
        payload = {
            "identity": "delta",
            "ys": _strs(ys),
            "xs": _strs(xs),
            "delta": str(chk.delta),
            "colon_equal": chk.colon_equal,
            "threshold": chk.threshold,
            "dims": [chk.dim_source, chk.dim_target],
            "holds": ok,
        }
    return payload, [f"{which} identity: {_fmt(ok)}"], 0


def _family_payload(rep: families.DistinctnessReport):
    return {
        "alphas": [str(a) for a in rep.alphas],
        "generators": _strs(rep.generators),
        "pairs_checked": rep.pairs_checked,
        "distinct_pairs": rep.distinct_pairs,
        "anomalies": [[str(a), str(b)] for a, b in rep.anomalies],
        "vacuous": rep.vacuous,
        "reason": rep.reason,
        "ok": rep.ok,
    }


def _cmd_family(session, args):
    R = GradedRing(session.ideal)
    K = session.ring.field
    alphas = [K(int(a)) for a in args.alphas.split(",")] if args.alphas else list(families.DEFAULT_ALPHAS)
    if args.kind == "principal":
        rep = families.sample_distinct_principal_ideals(R, args.degree, alphas)
    elif args.kind == "onedim":
        rep = families.one_dim_family(R, alphas, session.seed)
    else:
        sop = parse_polys(_need(args, "sop"), session.ring)
        spec = families.family_spec(R, sop)
        ys = parse_polys(args.y, session.ring) if args.y else [spec.basis[0]]
        if len(ys) != 1:
            raise PreconditionError("--y takes exactly one element")
        J = families.construct_family_ideal(spec, ys[0])
        payload = {
            "critical_degree": spec.critical_degree,
            "basis": _strs(spec.basis),
            "lift": str(families.lift(spec, ys[0])),
            "generators": _strs(J.groebner_basis()),
            "annihilation": families.koszul_top_annihilation_check(J, spec.hsop),
        }
        lines = [
            f"critical degree c = {spec.critical_degree}, basis of (R/(x))_c: {', '.join(payload['basis'])}",
            f"family ideal: ({', '.join(payload['generators'])})",
            f"x_j in family ideal: {_fmt(payload['annihilation'])}",
        ]
        return payload, lines, 0
    payload = _family_payload(rep)
    if rep.vacuous:
        lines = [f"vacuous family: {rep.reason}"]
    else:
        lines = [
            f"generators: {', '.join(payload['generators'])}",
            f"{rep.distinct_pairs}/{rep.pairs_checked} pairs distinct, anomalies: {payload['anomalies'] or 'none'}",
        ]
    return payload, lines, (0 if rep.ok else 1)


COMMANDS = {
    "report": _cmd_report,
    "hilbert": _cmd_hilbert,
    "hvector": _cmd_hvector,
    "stretched": _cmd_stretched,
    "ss": _cmd_ss,
    "ss-sop": _cmd_ss_sop,
    "reduction": _cmd_reduction,
    "identities": _cmd_identities,
    "family": _cmd_family,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help=f"random seed ({SEED_ENV} overrides)")
    common.add_argument("--json", action="store_true", help="print JSON instead of text")
    common.add_argument("--audit", action="store_true", help="cross-check on randomly sampled hsops")
    common.add_argument("--budget", type=int, default=DEFAULT_PAIR_BUDGET, help="Groebner basis pair budget")
    common.add_argument("--samples", type=int, default=STRETCHED_SAMPLES, help="generic reductions sampled")
    common.add_argument("--audit-samples", type=int, default=AUDIT_SAMPLES)
    common.add_argument("--degree-bound", type=int, default=AUDIT_DEGREE_BOUND, help="max hsop degree in audits")
    common.add_argument("--order", default="grevlex", choices=["grevlex", "grlex", "lex"])
    common.add_argument("--field", default=None, help="field when no ring line is given: QQ or GF(p)")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="gradecheck", description="Invariants of standard graded rings.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    add("report", help="full ring report")
    h = add("hilbert", help="Hilbert series")
    h.add_argument("--upto", type=int, default=8)
    add("hvector", help="h-vector via an Artinian reduction")
    add("stretched")
    add("ss", help="super-stretched verdict")
    s = add("ss-sop", help="degree bound on a given hsop")
    s.add_argument("--sop", required=True)
    r = add("reduction", help="is J a minimal reduction")
    r.add_argument("--j", required=True)
    i = add("identities")
    i.add_argument("--which", choices=["colon", "frobenius", "delta"], required=True)
    i.add_argument("--t", type=int, default=2)
    i.add_argument("--m", type=int, default=2)
    i.add_argument("--gens", default=None, help="comma-separated elements (xs for delta)")
    i.add_argument("--ys", default=None, help="smaller hsop for delta (default: squares of xs)")
    f = add("family")
    f.add_argument("kind", choices=["principal", "onedim", "ideal"])
    f.add_argument("--degree", type=int, default=1)
    f.add_argument("--alphas", default=None, help="comma-separated integers")
    f.add_argument("--sop", default=None)
    f.add_argument("--y", default=None)
    for sp in sub.choices.values():
        sp.add_argument("file", nargs="?", help="ring description (default: stdin)")
    return p


def render(payload: dict) -> str:
    return json.dumps(payload, indent=2)


def main(argv=None) -> int:
    parser = build_parser()
    args, extra = parser.parse_known_args(argv)
    # argparse does not reattach a trailing positional after options (family ideal --sop .. FILE)
    if len(extra) == 1 and args.file is None and not extra[0].startswith("-"):
        args.file = extra[0]
    elif extra:
        parser.error(f"unrecognized arguments: {' '.join(extra)}")
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        session = _load(args)
        for w in session.warnings:
            print(f"warning: {w}", file=sys.stderr)
        payload, lines, code = COMMANDS[args.command](session, args)
        if args.command != "report":
            payload = {**payload, "seed": session.seed, "options": session.options}
    except (PreconditionError, ParseError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (GradecheckError, Exception) as exc:
        kind = "resource limit" if isinstance(exc, ResourceLimitError) else "internal error"
        print(f"{kind}: {exc}", file=sys.stderr)
        return 1
    if args.json:
        print(render(payload))
    else:
        print("\n".join(lines))
    if code == 2 and args.command == "report":
        print("error: ring is not Cohen-Macaulay; structural verdicts refused", file=sys.stderr)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
