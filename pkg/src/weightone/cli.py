"""Command-line front end.

Every command prints one record with the keys ``command``, ``inputs``,
``results``, ``assumptions`` and (with --verify) ``verification``, in that
order.  Exit codes: 0 success, 2 usage, 3 precision, 4 resource budget,
5 verification mismatch.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import Any, Callable

from . import bounds, classfield, dihedral, iwasawa, oracles, padic, quadfield
from .arith import CyclotomicInt, FiniteAbelianGroup
from .errors import PrecisionError, UsageError, VerificationError, WeightOneError

PRECISION_ENV = "WEIGHTONE_PREC"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _default_precision() -> int:
    raw = os.environ.get(PRECISION_ENV)
    if raw is None:
        return padic.DEFAULT_PRECISION
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{PRECISION_ENV} must be an integer, got {raw!r}") from None


# --------------------------------------------------------------------------
# JSON-ready views of library objects


def _group(G: FiniteAbelianGroup) -> dict:
    return {"structure": str(G), "invariants": list(G.invariants), "free_rank": G.free_rank,
            "order": G.order if G.is_finite else None}


def _cyc(c: CyclotomicInt) -> Any:
    return int(c) if c.is_integer() else list(c.coeffs)


def _field(args) -> quadfield.QuadField:
    return quadfield.QuadField(args.disc)


class _Record:
    """Collects verification checks; a failed check raises after output is written."""

    def __init__(self, verify: bool):
        self.verify = verify
        self.checks: list[dict] = []

    def check(self, name: str, main: Any, oracle: Callable[[], Any]) -> None:
        if not self.verify:
            return
        value = oracle()
        self.checks.append({"check": name, "main": main, "oracle": value, "ok": main == value})

    @property
    def ok(self) -> bool:
        return all(c["ok"] for c in self.checks)

    def summary(self) -> dict:
        return {"status": "pass" if self.ok else "fail", "checks": self.checks}


# --------------------------------------------------------------------------
# commands: each returns (inputs, results, assumptions)


def cmd_classgroup(args, rec: _Record):
    K = _field(args)
    cg = quadfield.class_group(K)
    results = {
        "h": cg.h,
        "h_plus": cg.h_plus,
        "class_group": _group(cg.group),
        "narrow_class_group": _group(cg.narrow),
        "reduced_forms": [
            {"form": list(f), "narrow_class": list(cg.narrow_class(f)), "class": list(cg.form_class(f))}
            for f in cg.forms
        ],
    }
    if K.D < 0:
        rec.check("reduced form count", cg.h, lambda: len(oracles.brute_force_reduced_forms(K.D)))
    if abs(K.D) <= oracles.DEFAULT_BUDGET.max_disc:
        rec.check("narrow class group from ideals", str(cg.narrow), lambda: str(oracles.oracle_ray_class(K.D)))
    return {"disc": K.D}, results, []


def cmd_unit(args, rec: _Record):
    K = _field(args)
    if not K.is_real:
        raise UsageError("Q(sqrt D) with D < 0 has finite unit group; fundamental unit needs D > 0")
    eps = quadfield.fundamental_unit(K)
    results = {"half_coordinates": {"x": eps.x, "y": eps.y}, "unit": f"({eps.x} + {eps.y}*sqrt({K.D}))/2",
               "norm": eps.norm, "value": eps.value}
    rec.check("Pell search", [eps.x, eps.y], lambda: list(oracles.brute_force_fundamental_unit(K.D)))
    return {"disc": K.D}, results, []


def cmd_splitting(args, rec: _Record):
    K = _field(args)
    st = quadfield.classify_prime(K, args.prime)
    results = {"kronecker": quadfield.kronecker_symbol(K.D, args.prime), "type": st.kind.value,
               "primes": [{"label": lab, "form": list(P.form())} for lab, P in zip(st.labels, st.primes)]}
    rec.check("Kronecker symbol", results["kronecker"], lambda: oracles.brute_force_kronecker(K.D, args.prime))
    return {"disc": K.D, "prime": args.prime}, results, []


def cmd_unit_index(args, rec: _Record):
    K = _field(args)
    res = padic.unit_index(K, args.p, args.prec)
    results = {"v": res.v, "index_exponent": res.index_exponent, "index": res.index,
               "residue_order": res.residue_order, "branch": res.branch, "precision_ok": res.precision_ok}
    rec.check("finite-quotient index", res.index, lambda: oracles.oracle_unit_index(K.D, args.p, args.prec))
    if not res.precision_ok:
        args._exit = PrecisionError.exit_code
    return {"disc": K.D, "p": args.p, "prec": args.prec}, results, []


def cmd_rayclass(args, rec: _Record):
    K = _field(args)
    m = classfield.Modulus(args.n0, args.qpow, args.p)
    rc = classfield.ray_class_group(K, m)
    results = {"ray_class_group": _group(rc.group), "h": rc.h, "local_order": rc.local_order,
               "unit_image_order": rc.unit_image_order, "modulus_norm": m.norm(K)}
    rec.check(
        "ideal-side presentation",
        list(rc.group.invariants),
        lambda: list(oracles.oracle_ray_class(K.D, args.n0, args.qpow, args.p).invariants),
    )
    assumptions = ["narrow: both real places are included in the modulus"] if K.is_real else []
    if args.qpow:
        assumptions.append("Q is the prime labelled P above p (smaller B in [0, 2p))")
    return {"disc": K.D, "n0": args.n0, "qpow": args.qpow, "p": args.p}, results, assumptions


def cmd_finiteness(args, rec: _Record):
    K = _field(args)
    if K.is_real:
        st = quadfield.classify_prime(K, args.p)
        if st.kind is not quadfield.Splitting.SPLIT:
            raise UsageError(f"p must split in K: {args.p} is {st.kind.value} in Q(sqrt {K.D})")
    res = classfield.finiteness_test(K, args.p, args.prec)
    results = {"status": res.status.value, "reason": res.reason, "v": res.v}
    if res.status is classfield.Finiteness.FINITE:
        rec.check("unit index", padic.unit_index(K, args.p, args.prec).index,
                  lambda: oracles.oracle_unit_index(K.D, args.p, args.prec))
    if res.status is classfield.Finiteness.UNDETERMINED:
        args._exit = PrecisionError.exit_code
    return {"disc": K.D, "p": args.p, "prec": args.prec}, results, []


def _report(report: bounds.BoundReport) -> dict:
    return report.as_dict()


def cmd_bound_dihedral(args, rec: _Record):
    K = _field(args)
    report = bounds.dihedral_bound_exact(K, args.p, args.n0, args.prec)
    results = _report(report)
    if rec.verify:
        inv = bounds.extract_invariants(K, args.p, args.n0, args.prec)
        rec.check("invariant-assembly mode", report.M, lambda: bounds.dihedral_bound_from_invariants(inv, args.p).M)
        rec.check("unit index", report.factors[1][1], lambda: oracles.oracle_unit_index(K.D, args.p, args.prec))
        for st in classfield.tame_primes(K, args.n0):
            rec.check(f"local quotient at {st.l}", classfield.local_quotient(K, st.l, args.p).order,
                      lambda l=st.l: oracles.oracle_local_quotient(K.D, l))
    return {"disc": K.D, "p": args.p, "n0": args.n0, "prec": args.prec}, results, list(report.assumptions)


def cmd_bound_invariants(args, rec: _Record):
    inv, p = bounds.GeneralFieldInvariants.read(args.file)
    p = args.p if args.p is not None else p
    if p is None:
        raise UsageError("the invariants file has no p line; pass --p")
    report = bounds.dihedral_bound_from_invariants(inv, p)
    inputs = {"file": args.file, "p": p, **{k: list(v) if isinstance(v, tuple) else v
                                            for k, v in vars(inv).items()}}
    return inputs, _report(report), list(report.assumptions)


def cmd_bound_exceptional(args, rec: _Record):
    res = bounds.exceptional_bound(args.p, args.type, args.hF, args.t)
    results = {"a": res.a, "b": res.b, "bound": res.bound}
    rec.check("a from the order-5 trace congruence", res.a,
              lambda: 2 if args.type == "A5" and bounds.a5_root_congruence(args.p) else 1)
    return {"p": args.p, "type": args.type, "hF": args.hF, "t": args.t}, results, []


def cmd_bound_lambda(args, rec: _Record):
    T = iwasawa.IwasawaSeries.read(args.series)
    lb = bounds.lambda_bound(T)
    results = {"mu": lb.mu, "lambda": lb.lam, "bound": lb.bound, "label": lb.label}
    if rec.verify:
        count = iwasawa.weight_one_zero_count(T)
        rec.check("bound >= weight-one zeros at orders 1, p, p^2", True, lambda: count <= lb.bound)
    return {"series": args.series, "p": T.p, "N": T.N, "M": T.M}, results, [lb.convention]


def cmd_form_dihedral(args, rec: _Record):
    phi = dihedral.character_by_index(args.disc, args.char_order, args.char_index)
    f = dihedral.induce_coefficients(phi, args.terms)
    results = {
        "level": f.level,
        "conductor": dihedral.conductor_of_induction(phi),
        "character_exponents": list(phi.exponents),
        "class_group": _group(phi.group),
        "zeta_order": f.order,
        "coefficients": [[m, _cyc(c)] for m, c in enumerate(f.coeffs, 1)],
    }
    rec.check("sum over ideals of each norm", [_cyc(c) for c in f.coeffs],
              lambda: [_cyc(c) for c in dihedral.induce_coefficients(phi, args.terms, "ideals").coeffs])
    if args.disc == -23 and f.order == 3:
        rec.check("eta product q prod (1-q^n)(1-q^23n)", f.integers(),
                  lambda: oracles.eta_product_coefficients(args.terms))
    inputs = {"disc": args.disc, "char_order": args.char_order, "char_index": args.char_index, "terms": args.terms}
    return inputs, results, ["coefficients are integers or vectors in the power basis of zeta_n, n = zeta_order"]


def _trace_from_roots_of_unity(order: int):
    """zeta + 2 + zeta^-1 for a primitive root of unity of the given order."""
    t = CyclotomicInt.zeta(order, 1) + 2 + CyclotomicInt.zeta(order, -1)
    if t.is_integer():
        return int(t)
    # otherwise t and its conjugate t' are the roots of X^2 - (t + t')X + t t'
    t2 = CyclotomicInt.zeta(order, 2) + 2 + CyclotomicInt.zeta(order, -2)
    return str(bounds.QuadraticRoots(-int(t + t2), int(t * t2)))


def cmd_table1(args, rec: _Record):
    val = bounds.projective_trace(args.order)
    results = {"order": args.order, "projective_trace": val if isinstance(val, int) else str(val)}
    if not isinstance(val, int):
        results["a5_traces_congruent_mod_p"] = "only for p = 5"
    rec.check("zeta + 2 + 1/zeta", results["projective_trace"], lambda: _trace_from_roots_of_unity(args.order))
    return {"order": args.order}, results, []


# --------------------------------------------------------------------------
# argument parsing and output


def _global_flags(defaults: bool) -> argparse.ArgumentParser:
    g = argparse.ArgumentParser(add_help=False)
    kw = {} if defaults else {"default": argparse.SUPPRESS}
    g.add_argument("--format", choices=("json", "csv"), **({"default": "json"} if defaults else kw))
    g.add_argument("--verify", action="store_true", **({"default": False} if defaults else kw))
    g.add_argument("--prec", type=int, **({"default": None} if defaults else kw))
    return g


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags(defaults=False)
    parser = _Parser(prog="weightone", description=__doc__.splitlines()[0], parents=[_global_flags(True)])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_, target=sub):
        sp = target.add_parser(name, help=help_, parents=[common])
        sp.set_defaults(func=func)
        return sp

    sp = add("classgroup", cmd_classgroup, "class group and narrow class group")
    sp.add_argument("--disc", type=int, required=True)
    sp = add("unit", cmd_unit, "fundamental unit of a real quadratic field")
    sp.add_argument("--disc", type=int, required=True)
    sp = add("splitting", cmd_splitting, "splitting type of a rational prime")
    sp.add_argument("--disc", type=int, required=True)
    sp.add_argument("--prime", type=int, required=True)
    sp = add("unit-index", cmd_unit_index, "p-adic unit index p^(v-1)")
    sp.add_argument("--disc", type=int, required=True)
    sp.add_argument("--p", type=int, required=True)
    sp = add("rayclass", cmd_rayclass, "narrow ray class group of modulus n0 Q^r")
    sp.add_argument("--disc", type=int, required=True)
    sp.add_argument("--n0", type=int, default=1)
    sp.add_argument("--qpow", type=int, default=0)
    sp.add_argument("--p", type=int, default=None, help="split prime under Q (needed when --qpow > 0)")
    sp = add("finiteness", cmd_finiteness, "is Cl_K(n0 Q^inf) finite?")
    sp.add_argument("--disc", type=int, required=True)
    sp.add_argument("--p", type=int, required=True)

    bp = sub.add_parser("bound", help="dihedral, exceptional and lambda bounds")
    bsub = bp.add_subparsers(dest="kind", required=True, parser_class=_Parser)
    sp = add("dihedral", cmd_bound_dihedral, "M(F, K, f) for F = Q", bsub)
    sp.add_argument("--disc", type=int, required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--n0", type=int, default=1)
    sp = add("dihedral-invariants", cmd_bound_invariants, "M' from a key = value invariants file", bsub)
    sp.add_argument("--file", required=True)
    sp.add_argument("--p", type=int, default=None)
    sp = add("exceptional", cmd_bound_exceptional, "a * b for A4, S4, A5 residual images", bsub)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--type", choices=[t.value for t in bounds.ExceptionalType], required=True)
    sp.add_argument("--hF", type=int, required=True)
    sp.add_argument("--t", type=int, required=True)
    sp = add("lambda", cmd_bound_lambda, "lambda-invariant bound for a series file", bsub)
    sp.add_argument("--series", required=True)

    fp = sub.add_parser("form", help="dihedral weight-one forms")
    fsub = fp.add_subparsers(dest="kind", required=True, parser_class=_Parser)
    sp = add("dihedral", cmd_form_dihedral, "coefficients of the form induced from a class character", fsub)
    sp.add_argument("--disc", type=int, required=True)
    sp.add_argument("--char-order", type=int, required=True)
    sp.add_argument("--char-index", type=int, default=1, help="1-based, lexicographic in the exponents")
    sp.add_argument("--terms", type=int, default=20)

    sp = add("table1", cmd_table1, "projective trace of an element of order 1..5")
    sp.add_argument("--order", type=int, required=True)
    return parser


def _flatten(prefix: str, value: Any, out: list[tuple[str, str]]) -> None:
    if isinstance(value, dict):
        for k, v in value.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, out)
    elif isinstance(value, list):
        if all(not isinstance(v, (dict, list)) for v in value):
            out.append((prefix, " ".join(map(str, value))))
        else:
            for i, v in enumerate(value):
                _flatten(f"{prefix}.{i}", v, out)
    else:
        out.append((prefix, "" if value is None else str(value)))


def render(record: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(record, indent=2) + "\n"
    rows: list[tuple[str, str]] = []
    _flatten("", record, rows)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("key", "value"))
    w.writerows(rows)
    return buf.getvalue()


def _command_name(args) -> str:
    return " ".join(x for x in (args.command, getattr(args, "kind", None)) if x)


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.prec is None:
            args.prec = _default_precision()
        if args.prec < 1:
            raise UsageError("precision must be positive")
        args._exit = 0
        rec = _Record(args.verify)
        inputs, results, assumptions = args.func(args, rec)
        record = {"command": _command_name(args), "inputs": inputs, "results": results, "assumptions": assumptions}
        if args.verify:
            record["verification"] = rec.summary()
        stdout.write(render(record, args.format))
        if not rec.ok:
            raise VerificationError("main path and oracle disagree; see the verification block")
        return args._exit
    except WeightOneError as exc:
        print(f"error: {exc}", file=stderr)
        return exc.exit_code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
