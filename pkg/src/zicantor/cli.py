"""Command-line front end: ``zicantor <subcommand> ...``.

Output is JSON with sorted keys (CSV where offered).  Exit status: 0 ok,
1 domain error, 2 usage or parse error, 3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .errors import DomainError, ParseError, ResourceCapError
from .gaussian import parse_gauss, parse_gauss_rat
from .height import height, height_conjugate_pair, height_prime_power
from .ifs import (
    Coding,
    IfsSpec,
    box_cover_count,
    build_state_graph,
    coding_of,
    compose_depth,
    eval_coding,
    is_member,
    prune_to_live,
    similarity_dimension,
    to_dot,
)
from .order import (
    build_lower_bound_certificate,
    certificate_modulus,
    crt_order,
    euler_phi_zi,
    lift_data,
    multiplicative_order,
    order_lift,
    order_lower_bound,
)
from .primes import classify, factor, two_squares, valuation
from .search import (
    SmoothFamily,
    counting_fit,
    finiteness_search,
    found_row,
    iter_rows,
    period_height_report,
    round_sig,
    search_csv,
)

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from exc


def _load_spec(args) -> IfsSpec:
    beta, digits = None, None
    if args.spec:
        try:
            with open(args.spec, encoding="utf-8") as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read spec file {args.spec}: {exc}") from exc
        beta = doc.get("beta")
        digits = doc.get("digits")
        if beta is not None:
            beta = str(beta)
        if digits is not None:
            digits = [str(d) for d in digits]
    if args.beta is not None:
        beta = args.beta
    if args.digits is not None:
        digits = args.digits
    if beta is None or digits is None:
        raise UsageError("an IFS needs --beta and --digits (or --spec FILE)")
    return IfsSpec.from_literals(beta, digits)


def _emit(obj) -> str:
    return json.dumps(obj, sort_keys=True) + "\n"


# handlers return the text to print


def cmd_factor(a):
    f = factor(parse_gauss(a.z))
    return {
        "unit": str(f.unit),
        "factors": [{"prime": str(p), "exponent": e} for p, e in f.factors],
    }


def cmd_classify(a):
    return {"prime": str(parse_gauss(a.p)), "type": classify(parse_gauss(a.p)).value}


def cmd_two_squares(a):
    s, t = two_squares(a.p)
    return {"s": s, "t": t}


def cmd_valuation(a):
    return {"valuation": valuation(parse_gauss(a.gamma), parse_gauss(a.alpha))}


def cmd_height(a):
    z = parse_gauss(a.z)
    if a.conjugate_power is not None:
        if a.power is None:
            raise UsageError("--conjugate-power needs --power")
        return {"height": height_conjugate_pair(z, a.power, a.conjugate_power)}
    if a.power is not None:
        return {"height": height_prime_power(z, a.power)}
    return {"height": height(z)}


def cmd_order(a):
    alpha, gamma = parse_gauss(a.alpha), parse_gauss(a.gamma)
    k = crt_order(alpha, gamma) if a.method == "crt" else multiplicative_order(alpha, gamma)
    return {"order": k}


def cmd_order_lift(a):
    data = lift_data(parse_gauss(a.alpha), parse_gauss(a.gamma))
    ns = _ints(a.n)
    return {
        "d": data.d,
        "m": data.m,
        "chain": list(data.chain),
        "type": data.cls.value,
        "orders": {str(n): order_lift(data, n) for n in ns},
    }


def cmd_phi(a):
    return {"phi": euler_phi_zi(parse_gauss(a.gamma))}


def cmd_order_bound(a):
    fam = SmoothFamily.parse(a.family)
    cert = build_lower_bound_certificate(parse_gauss(a.alpha), fam.gamma2, fam.pairs, fam.singles)
    exps = _ints(a.exponents)
    bound = order_lower_bound(cert, exps)
    modulus = certificate_modulus(cert, exps)
    return {
        "lower_bound": str(bound),
        "lower_bound_float": round_sig(float(bound)),
        "modulus": str(modulus),
        "order": crt_order(cert.alpha, modulus),
        "c2": str(cert.c2),
        "c3": str(cert.c3),
    }


def cmd_dim(a):
    spec = _load_spec(a)
    return {"s": round_sig(similarity_dimension(spec))}


def cmd_compose(a):
    spec = _load_spec(a)
    rep = compose_depth(spec, a.depth)
    box = box_cover_count(spec, a.depth)
    return {
        "depth": rep.depth,
        "distinct_maps": rep.distinct_maps,
        "s_n": round_sig(rep.s_n),
        "s": round_sig(rep.s),
        "cover_radius": round_sig(box.radius),
    }


def cmd_member(a):
    return {"member": is_member(_load_spec(a), parse_gauss_rat(a.z))}


def _coding_json(c: Coding) -> dict:
    return {"preperiod": list(c.preperiod), "period": list(c.period)}


def cmd_coding(a):
    c = coding_of(_load_spec(a), parse_gauss_rat(a.z))
    out = _coding_json(c)
    out["minimized"] = _coding_json(c.minimized())
    return out


def cmd_eval(a):
    spec = _load_spec(a)
    c = Coding(tuple(_ints(a.preperiod)), tuple(_ints(a.period)))
    if any(not 0 <= j < spec.ell for j in c.preperiod + c.period):
        raise DomainError(f"digit indices must lie in 0..{spec.ell - 1}")
    return {"value": str(eval_coding(spec, c))}


def cmd_graph_export(a):
    spec = _load_spec(a)
    g = build_state_graph(spec, parse_gauss(a.gamma))
    if not a.full:
        g = prune_to_live(g)
    return to_dot(g)


def cmd_search(a):
    spec = _load_spec(a)
    rep = finiteness_search(spec, SmoothFamily.parse(a.family), a.cap)
    if a.format == "csv":
        return search_csv([found_row(f) for f in rep.found])
    return rep.to_json()


def cmd_count(a):
    spec = _load_spec(a)
    fit = counting_fit(spec, range(a.n_min, a.n_max + 1))
    if a.format == "csv":
        lines = ["n,q,r,q_star,r_star"]
        lines += [f"{r.n},{r.q},{r.r},{r.q_star},{r.r_star}" for r in fit.rows]
        return "\n".join(lines) + "\n"
    return fit.to_json()


def cmd_report(a):
    spec = _load_spec(a)
    rows = period_height_report(spec, SmoothFamily.parse(a.family), a.cap)
    if a.format == "csv":
        return search_csv(list(iter_rows(rows)))
    return {"rows": list(iter_rows(rows))}


def _spec_flags(p):
    p.add_argument("--beta", help="base, e.g. 3 or -2+i")
    p.add_argument("--digits", help="comma-separated digits, e.g. 0,2 or 0,1/2+i/2")
    p.add_argument("--spec", help="JSON file with fields beta and digits; flags override it")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="zicantor", description="Gaussian-integer arithmetic and rational points of self-similar sets.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("factor", help="factor a Gaussian integer")
    s.add_argument("z")
    s.set_defaults(func=cmd_factor)

    s = sub.add_parser("classify", help="prime type I, II or III")
    s.add_argument("p")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("two-squares", help="p = s^2 + t^2 for a prime p = 1 mod 4")
    s.add_argument("p", type=int)
    s.set_defaults(func=cmd_two_squares)

    s = sub.add_parser("valuation", help="exponent of a prime in a Gaussian integer")
    s.add_argument("gamma")
    s.add_argument("alpha")
    s.set_defaults(func=cmd_valuation)

    s = sub.add_parser("height", help="denominator height")
    s.add_argument("z")
    s.add_argument("--power", type=int, help="closed form for z**POWER (z prime)")
    s.add_argument("--conjugate-power", type=int, help="with --power: z**POWER * conj(z)**M")
    s.set_defaults(func=cmd_height)

    s = sub.add_parser("order", help="multiplicative order of alpha modulo gamma")
    s.add_argument("alpha")
    s.add_argument("gamma")
    s.add_argument("--method", choices=["descent", "crt"], default="descent")
    s.set_defaults(func=cmd_order)

    s = sub.add_parser("order-lift", help="orders modulo prime powers by lifting")
    s.add_argument("alpha")
    s.add_argument("gamma")
    s.add_argument("--n", default="1,2,3,4,5,6", help="comma-separated exponents")
    s.set_defaults(func=cmd_order_lift)

    s = sub.add_parser("phi", help="size of the unit group modulo gamma")
    s.add_argument("gamma")
    s.set_defaults(func=cmd_phi)

    s = sub.add_parser("order-bound", help="effective lower bound for an order over a smooth family")
    s.add_argument("alpha")
    s.add_argument("--family", required=True, help='primes, e.g. "1+i,2+i,2-i,3"')
    s.add_argument("--exponents", required=True, help="h,r1,s1,...,n1,... in family layout")
    s.set_defaults(func=cmd_order_bound)

    s = sub.add_parser("dim", help="similarity dimension")
    _spec_flags(s)
    s.set_defaults(func=cmd_dim)

    s = sub.add_parser("compose", help="distinct maps of the n-fold composition")
    _spec_flags(s)
    s.add_argument("--depth", type=int, required=True)
    s.set_defaults(func=cmd_compose)

    s = sub.add_parser("member", help="exact membership test")
    _spec_flags(s)
    s.add_argument("z")
    s.set_defaults(func=cmd_member)

    s = sub.add_parser("coding", help="eventually periodic coding of a member")
    _spec_flags(s)
    s.add_argument("z")
    s.set_defaults(func=cmd_coding)

    s = sub.add_parser("eval", help="value of an eventually periodic coding")
    _spec_flags(s)
    s.add_argument("--preperiod", default="", help="digit indices (0-based)")
    s.add_argument("--period", required=True, help="digit indices (0-based)")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("graph-export", help="state graph as DOT")
    _spec_flags(s)
    s.add_argument("--gamma", required=True)
    s.add_argument("--full", action="store_true", help="export before pruning")
    s.set_defaults(func=cmd_graph_export)

    s = sub.add_parser("search", help="rationals of K with smooth denominators")
    _spec_flags(s)
    s.add_argument("--family", required=True)
    s.add_argument("--cap", type=int, required=True)
    s.add_argument("--format", choices=["json", "csv"], default="json")
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("count", help="lattice-point counts and fitted constants")
    _spec_flags(s)
    s.add_argument("--n-min", type=int, default=1)
    s.add_argument("--n-max", type=int, required=True)
    s.add_argument("--format", choices=["json", "csv"], default="json")
    s.set_defaults(func=cmd_count)

    s = sub.add_parser("report", help="reports")
    rsub = s.add_subparsers(dest="report", required=True, parser_class=_Parser)
    r = rsub.add_parser("period-height", help="period against height for found rationals")
    _spec_flags(r)
    r.add_argument("--family", required=True)
    r.add_argument("--cap", type=int, required=True)
    r.add_argument("--format", choices=["json", "csv"], default="json")
    r.set_defaults(func=cmd_report)
    return p


_VALUE_FLAGS = {"--beta", "--digits", "--gamma", "--family", "--preperiod", "--period", "--exponents"}


def _glue_negative_values(argv: Sequence[str]) -> list[str]:
    # "--beta -2+i" would read -2+i as an option; pass it as "--beta=-2+i"
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUE_FLAGS:
            nxt = next(it, None)
            if nxt is None:
                out.append(tok)
            elif nxt.startswith("-") and not nxt.startswith("--"):
                out.append(f"{tok}={nxt}")
            else:
                out += [tok, nxt]
        else:
            out.append(tok)
    return out


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    argv = _glue_negative_values(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
        result = args.func(args)
    except (UsageError, ParseError) as exc:
        err.write(_emit({"error": str(exc), "kind": "usage"}))
        return EXIT_USAGE
    except DomainError as exc:
        err.write(_emit({"error": str(exc), "kind": "domain"}))
        return EXIT_DOMAIN
    except ResourceCapError as exc:
        err.write(_emit({"error": str(exc), "kind": "resource", "cap": exc.cap}))
        return EXIT_RESOURCE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    out.write(result if isinstance(result, str) else _emit(result))
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
