"""Command line front end.

One binary, one verb per operation.  Output is text by default, JSON with
--format json (machine-readable errors go to stderr then too), CSV for
census rows.  Exit codes: 0 ok, 2 parse error, 3 cap exceeded, 4 domain
error.
"""

import argparse
import json
import os
import sys
from fractions import Fraction

from . import census as census_mod
from .config import default_seed
from .errors import CapExceeded, DomainError, ParseError
from .factor import factorize
from .gf import make_field, parse_modulus, _prime_power
from .poly import (
    Poly,
    delta_inv,
    factorial_direct,
    factorial_product,
    valuation,
    valuation_of_factorial,
)
from .smarandache import (
    distance_to_fixed,
    fixed_points,
    inverse_image_prime_powers,
    s,
    s_iterate,
    s_oracle_definition,
    s_oracle_valuation,
)


def _shared_flags(ap, defaults):
    # the same flags are legal before and after the verb; the subparser
    # copies default to SUPPRESS so an absent flag never clobbers the
    # value the global parse already set (argparse shares action objects
    # across parents, so the two parsers need distinct action instances)
    d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    ap.add_argument("--q", type=int, default=d(2),
                    help="field order (prime power)")
    ap.add_argument("--modulus", default=d(None),
                    help="field modulus for q=p^k, k>1, e.g. x^2+2x+2")
    ap.add_argument("--format", choices=("text", "json", "csv"),
                    default=d("text"))
    ap.add_argument("--threads", type=int, default=d(1))
    ap.add_argument("--seed", type=int, default=d(None),
                    help="seed for randomized factorization (default fixed)")
    ap.add_argument("--delta-cap", type=int, default=d(None))
    ap.add_argument("--census-cap", type=int, default=d(None))
    ap.add_argument("--out", default=d(None),
                    help="write the result here instead of stdout")


def _parser():
    common = argparse.ArgumentParser(add_help=False)
    _shared_flags(common, defaults=False)

    ap = argparse.ArgumentParser(
        prog="smarpoly",
        description="Smarandache function and censuses over F_q[t]",
    )
    _shared_flags(ap, defaults=True)
    sub = ap.add_subparsers(dest="verb", required=True)

    def add(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    sp = add("delta", help="delta code of a polynomial")
    sp.add_argument("poly")
    sp = add("delta-inv", help="polynomial with the given delta code")
    sp.add_argument("m")
    sp = add("factorial", help="factorial of a polynomial")
    sp.add_argument("poly")
    sp.add_argument("--method", choices=("direct", "product"), default="direct")
    sp = add("valuation", help="P-adic valuation of h, or of h!")
    sp.add_argument("P")
    sp.add_argument("h")
    sp.add_argument("--of-factorial", action="store_true",
                    help="valuation of h! through the floor-sum formula")
    sp = add("factor", help="factor into monic irreducibles")
    sp.add_argument("poly")
    sp.add_argument("--method", choices=("trial", "cantor_zassenhaus"),
                    default="cantor_zassenhaus")
    sp = add("S", help="the Smarandache function")
    sp.add_argument("poly")
    sp = add("S-oracle", help="S from its definition, slowly")
    sp.add_argument("poly")
    sp.add_argument("--method", choices=("definition", "valuation"),
                    default="definition")
    sp = add("iterate", help="repeated application of S")
    sp.add_argument("poly")
    sp.add_argument("n", type=int)
    sp = add("distance", help="S-steps until a fixed point")
    sp.add_argument("poly")
    sp = add("inverse-image", help="prime powers P^e with S(P^e) = f")
    sp.add_argument("poly")
    add("fixed-points", help="all fixed points of S")
    sp = add("census", help="classify all monic degree-n polynomials")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--r", default="1", help="rational threshold scale, e.g. 2 or 3/2")
    sp.add_argument("--mode", choices=("standard", "tight"), default="standard")
    sp.add_argument("--shards", type=int, default=1)
    sp = add("tau-sum", help="sum of tau over monic degree-n polynomials")
    sp.add_argument("--n", type=int, required=True)
    sp = add("verify", help="run the acceptance criteria")
    sp.add_argument("--criteria", help="comma-separated criterion numbers (default all)")
    return ap


def _field(args):
    try:
        p, k = _prime_power(args.q)
    except DomainError:
        raise
    modulus = None
    if args.modulus is not None:
        modulus = parse_modulus(args.modulus, p)
    return make_field(p, k, modulus)


def _poly(spec, text):
    return Poly.parse(spec, text)


def _nat(text):
    try:
        m = int(text, 10)
    except ValueError:
        raise ParseError(f"not a natural number: {text!r}")
    if m < 0:
        raise ParseError("delta codes are not negative")
    return m


def _fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational number: {text!r}")


def _run(args):
    verb = args.verb
    if verb == "verify":
        from . import verify as verify_mod

        wanted = None
        if args.criteria:
            try:
                wanted = sorted({int(x) for x in args.criteria.split(",")})
            except ValueError:
                raise ParseError(f"bad criteria list: {args.criteria!r}")
        results = verify_mod.run_all(wanted)
        text = verify_mod.format_table(results)
        ok = all(r.ok for r in results)
        payload = {
            "criteria": [r.to_dict() for r in results],
            "passed": ok,
        }
        return text, payload, None, 0 if ok else 1

    spec = _field(args)
    seed = args.seed

    if verb == "delta":
        f = _poly(spec, args.poly)
        return str(f.delta), {"input": f.literal(), "delta": str(f.delta)}, None, 0
    if verb == "delta-inv":
        m = _nat(args.m)
        f = delta_inv(spec, m)
        return f.literal(), {"input": str(m), "poly": f.literal(),
                             "delta": str(m)}, None, 0
    if verb == "factorial":
        f = _poly(spec, args.poly)
        fact = factorial_direct(f) if args.method == "direct" else factorial_product(f)
        return fact.literal(), {"input": f.literal(), "method": args.method,
                                "factorial": fact.literal(),
                                "delta": str(fact.delta)}, None, 0
    if verb == "valuation":
        P = _poly(spec, args.P)
        h = _poly(spec, args.h)
        if args.of_factorial:
            v = valuation_of_factorial(P.degree, h.delta, spec.q)
        else:
            v = valuation(P, h)
        return str(v), {"P": P.literal(), "h": h.literal(),
                        "of_factorial": bool(args.of_factorial),
                        "valuation": str(v)}, None, 0
    if verb == "factor":
        f = _poly(spec, args.poly)
        fac = factorize(f, method=args.method, seed=seed)
        parts = [spec.element_str(fac.unit)]
        parts += [f"({P.literal()})^{e}" for P, e in fac.factors]
        return " * ".join(parts), {
            "input": f.literal(), "method": args.method,
            "unit": fac.unit,
            "factors": [[P.literal(), e] for P, e in fac.factors],
        }, None, 0
    if verb == "S":
        f = _poly(spec, args.poly)
        g = s(f, seed=seed)
        return g.literal(), {"input": f.literal(), "S": g.literal(),
                             "delta_S": str(g.delta)}, None, 0
    if verb == "S-oracle":
        f = _poly(spec, args.poly)
        if args.method == "definition":
            g = s_oracle_definition(f)
        else:
            g = s_oracle_valuation(f, seed=seed)
        return g.literal(), {"input": f.literal(), "method": args.method,
                             "S": g.literal(), "delta_S": str(g.delta)}, None, 0
    if verb == "iterate":
        f = _poly(spec, args.poly)
        chain = s_iterate(f, args.n, seed=seed)
        lits = [g.literal() for g in chain]
        return " -> ".join(lits), {"input": f.literal(), "n": args.n,
                                   "chain": lits, "S": lits[-1],
                                   "delta_S": str(chain[-1].delta)}, None, 0
    if verb == "distance":
        f = _poly(spec, args.poly)
        d = distance_to_fixed(f, seed=seed)
        return str(d), {"input": f.literal(), "distance": d}, None, 0
    if verb == "inverse-image":
        f = _poly(spec, args.poly)
        ivs = inverse_image_prime_powers(f)
        if ivs:
            text = "\n".join(f"d={d} e_min={lo} e_max={hi}" for d, lo, hi in ivs)
        else:
            text = "no prime-power preimages"
        return text, {"input": f.literal(),
                      "intervals": [{"d": d, "e_lo": str(lo), "e_hi": str(hi)}
                                    for d, lo, hi in ivs]}, None, 0
    if verb == "fixed-points":
        pts = fixed_points(spec)
        lits = [g.literal() for g in pts]
        return "\n".join(lits), {"q": spec.q, "fixed_points": lits}, None, 0
    if verb == "census":
        params = census_mod.CensusParams(spec, args.n, _fraction(args.r), args.mode)
        rep = census_mod.run_census(params, shards=args.shards,
                                    threads=max(1, args.threads))
        text = "\n".join(f"{k}: {v}" for k, v in rep.to_dict().items())
        csv_text = census_mod.CSV_HEADER + "\n" + rep.csv_row()
        return text, rep.to_dict(), csv_text, 0
    if verb == "tau-sum":
        total = census_mod.tau_sum(spec, args.n)
        return str(total), {"q": spec.q, "n": args.n,
                            "tau_sum": str(total)}, None, 0
    raise ParseError(f"unknown verb {verb!r}")


def _emit(args, text, payload, csv_text):
    if args.format == "csv":
        if csv_text is None:
            raise ParseError("csv output is only defined for census")
        out = csv_text
    elif args.format == "json":
        out = json.dumps(payload, indent=2, sort_keys=True)
    else:
        out = text
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out + "\n")
    else:
        sys.stdout.write(out + "\n")


def main(argv=None):
    args = _parser().parse_args(argv)
    # cap flags travel via the config env vars; restore them afterwards so an
    # embedding process (tests, notebooks) keeps its own caps
    saved = {}
    if args.delta_cap is not None:
        saved["SMARPOLY_DELTA_CAP"] = os.environ.get("SMARPOLY_DELTA_CAP")
        os.environ["SMARPOLY_DELTA_CAP"] = str(args.delta_cap)
    if args.census_cap is not None:
        saved["SMARPOLY_CENSUS_CAP"] = os.environ.get("SMARPOLY_CENSUS_CAP")
        os.environ["SMARPOLY_CENSUS_CAP"] = str(args.census_cap)
    if args.seed is None:
        args.seed = default_seed()
    try:
        text, payload, csv_text, status = _run(args)
        _emit(args, text, payload, csv_text)
        return status
    except ParseError as exc:
        return _fail(args, exc, 2)
    except CapExceeded as exc:
        return _fail(args, exc, 3)
    except DomainError as exc:
        return _fail(args, exc, 4)
    finally:
        for key, old in saved.items():
            if old is None:
                os.environ.pop(key, None)
            else:
                os.environ[key] = old


def _fail(args, exc, code):
    if args.format == "json":
        sys.stderr.write(json.dumps(
            {"error": type(exc).__name__, "message": str(exc)}) + "\n")
    else:
        sys.stderr.write(f"error: {exc}\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
