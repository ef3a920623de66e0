"""Command-line front end.

Exit codes: 0 success, 2 usage or parse error, 3 domain precondition
(for example a link where a knot is required), 4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .braid import BraidParseError, parse_braid
from .burau import NotAKnotError, alexander
from .config import Config, ConfigError, load_config
from .qpoly import NonDivisibleError, RationalFn, a_span
from .qpoly.jsonio import poly_to_obj

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_INTERNAL = 0, 2, 3, 4


class DomainError(Exception):
    pass


def _emit(obj, cfg: Config, out=None) -> None:
    out = out or sys.stdout
    if cfg.output == "json":
        out.write(json.dumps(obj, indent=2, sort_keys=True, default=str) + "\n")
        return
    for key, val in obj.items():
        val = _pretty(val)
        if isinstance(val, dict):
            out.write(f"{key}:\n")
            for sub, v in val.items():
                out.write(f"  {sub}: {v}\n")
        else:
            out.write(f"{key}: {val}\n")


def _pretty(val):
    """Replace serialized polynomials by their pretty form, recursively."""
    if isinstance(val, dict):
        if "pretty" in val:
            return val["pretty"]
        return {k: _pretty(v) for k, v in val.items()}
    return val


def _poly(p) -> dict:
    obj = poly_to_obj(p)
    obj["pretty"] = str(p)
    return obj


# ---------------------------------------------------------------------------


def cmd_invariant(args, cfg: Config) -> int:
    from .rtrep import homfly_char, jones_direct

    w = parse_braid(args.braid, args.strands)
    if args.which == "alexander":
        p = alexander(w)
    elif args.which == "jones":
        p = jones_direct(w)
    else:
        p = homfly_char(w)
    _emit({"braid": w.to_json(), "which": args.which, "value": _poly(p)}, cfg)
    return EXIT_OK


def cmd_hypothesis(args, cfg: Config) -> int:
    from .hypothetical import (FOUR_STRAND, acoef_solve, general_family, homfly_from_coeffs, hypothetical_H,
                               mfw_check, resolve_a22)

    if args.general_b is not None:
        _emit({"general_family": general_family(args.general_b, args.m).to_json()}, cfg)
        return EXIT_OK
    if args.m < 0:
        raise DomainError("m must be non-negative")
    h = hypothetical_H(args.m, args.family)
    out = {
        "m": args.m,
        "family": args.family,
        "writhe": h.W,
        "H": _poly(h.H),
        "F": _poly(h.F),
        "a_span": a_span(h.H),
        "mfw_4_strands": mfw_check(h.H, 4),
        "jones_trivial": h.H.subs_A_qpow(2) == 1,
        "q_inversion_symmetric": h.H.invert_q() == h.H,
        "divisors": list(FOUR_STRAND.ks),
    }
    if args.a22 is not None:
        a22 = resolve_a22(parse_braid(args.a22, args.a22_strands))
        c = acoef_solve(args.m, a22)
        H = homfly_from_coeffs(c)
        out["a22_source"] = args.a22
        out["a_coefficients"] = {"".join(map(str, Y)): _poly(RationalFn.coerce(v)) for Y, v in c.a.items()}
        out["H_from_a22"] = _poly(H)
        out["matches_family"] = H == h.H
    else:
        out["a_coefficients"] = symbolic_acoefs(args.m)
    _emit(out, cfg)
    return EXIT_OK


def symbolic_acoefs(m: int) -> dict:
    """Coefficient formulas with a22 left as a symbol."""
    from .qpoly import LaurentPoly

    q = LaurentPoly.q
    P = LaurentPoly({0: 1, 4: 1, 8: 1, 12: 1, 16: 1})
    D = LaurentPoly({0: 1, 4: 1, 8: 1})
    one_q2 = LaurentPoly({0: 1, 4: 1})
    return {
        "4": str(q(2 * m + 5)),
        "1111": str(-q(-2 * m - 5)),
        "22": "a22 (free)",
        "31": f"-(({q(2)})*a22 + ({q(2 * m + 3) * P - q(11 + 4 * m) * one_q2})) / ({D})",
        "211": f"-(({one_q2 - q(2 + 2 * m) * P}) + ({q(11 + 4 * m)})*a22) / ({q(9 + 4 * m) * D})",
    }


def cmd_screen(args, cfg: Config) -> int:
    from .eigenscreen import KGrid, box_screen, group_by_a22, screen_braid

    grid = KGrid(cfg.k_min, cfg.k_max, cfg.k_step)
    if args.braid:
        w = parse_braid(args.braid, 3)
        try:
            exps = tuple(int(x) for x in args.braid.strip("() ").replace(";", ",").split(",")) \
                if args.braid.strip().startswith("(") else ()
            rep = screen_braid(w, args.m, grid, cfg.tol, residual_tol=cfg.residual_tol, exponents=exps)
        except ValueError as exc:
            raise DomainError(str(exc)) from exc
        _emit(rep.to_json(), cfg)
        return EXIT_OK
    m_range = range(args.m, args.m + 1) if args.m_max is None else range(args.m, args.m_max + 1)
    reps = box_screen(args.limit, m_range, grid, cfg.tol, threads=cfg.threads)
    out = {
        "limit": args.limit,
        "m_range": [m_range.start, m_range.stop - 1],
        "survivors": [r.to_json() for r in reps],
        "a22_classes": [[list(r.exponents) for r in cls] for cls in group_by_a22(reps)],
    }
    if cfg.output == "table":
        for r in reps:
            sys.stdout.write(f"m={r.m} {r.exponents} max|dev|={r.max_deviation:.2e} {r.verdict}\n")
        sys.stdout.write(f"{len(reps)} survivors\n")
        return EXIT_OK
    _emit(out, cfg)
    return EXIT_OK


def cmd_perturb(args, cfg: Config) -> int:
    from .hypothetical import hypothetical_H
    from .perturb import expand, vanishing_order
    from .rtrep import homfly_char

    if args.braid:
        H = homfly_char(parse_braid(args.braid, args.strands))
    else:
        H = hypothetical_H(args.m).H
    s = expand(H, args.order)
    order = vanishing_order(s)
    _emit({"series": s.to_json(), "pretty": str(s),
           "vanishing_order": None if order == float("inf") else order}, cfg)
    return EXIT_OK


def cmd_search(args, cfg: Config) -> int:
    from .search import run_search

    rep = run_search(args.k, args.shards, args.checkpoint_dir, resume=args.resume, m=args.m,
                     limit=args.limit, threads=cfg.threads, seed=cfg.seed, tol=cfg.prefilter_tol)
    if args.report:
        Path(args.report).write_text(json.dumps(rep, indent=2, sort_keys=True))
    _emit(rep, cfg)
    return EXIT_OK


def cmd_selfcheck(args, cfg: Config) -> int:
    from .acceptance import run_all

    results = run_all(fast=args.fast)
    for r in results:
        print(r.line())
    failed = [r.number for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
    return EXIT_OK if not failed else EXIT_INTERNAL


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    # global flags work before or after the subcommand; SUPPRESS keeps the
    # subparser from overwriting a value given before it
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=argparse.SUPPRESS, help="key = value config file")
    common.add_argument("--format", choices=("json", "table"), default=argparse.SUPPRESS, help="output format")
    common.add_argument("--tol", type=float, default=argparse.SUPPRESS, help="unit-circle tolerance for screens")
    p = argparse.ArgumentParser(prog="braidforge", description="Exact knot invariants of braid closures.",
                                parents=[common])
    sub = p.add_subparsers(dest="command", required=True)
    _add = sub.add_parser
    sub.add_parser = lambda *a, **kw: _add(*a, parents=[common], **kw)

    s = sub.add_parser("invariant", help="Alexander, Jones or HOMFLY-PT of a braid closure")
    s.add_argument("-b", "--braid", required=True, help='letters "1,-2,1" or tuple "(c1,b1;c2,b2)"')
    s.add_argument("-n", "--strands", type=int, required=True)
    s.add_argument("--which", choices=("alexander", "jones", "homfly"), default="homfly")
    s.set_defaults(func=cmd_invariant)

    s = sub.add_parser("hypothesis", help="candidate HOMFLY-PT with trivial Jones polynomial")
    s.add_argument("-m", type=int, default=0)
    s.add_argument("--a22", help="braid supplying the [2,2] trace")
    s.add_argument("--a22-strands", type=int, default=3)
    s.add_argument("--family", choices=("negative", "positive"), default="negative")
    s.add_argument("--general-b", type=int, help="report the general braid-index family instead")
    s.set_defaults(func=cmd_hypothesis)

    s = sub.add_parser("screen", help="unit-circle eigenvalue screen")
    s.add_argument("--braid", help="single 3-strand braid to screen")
    s.add_argument("-m", type=int, default=0)
    s.add_argument("--m-max", type=int, help="screen m..m-max in box mode")
    s.add_argument("--limit", type=int, default=7, help="box bound on |exponent|")
    s.set_defaults(func=cmd_screen)

    s = sub.add_parser("perturb", help="hbar expansion and vanishing order")
    s.add_argument("-m", type=int, default=0)
    s.add_argument("-b", "--braid")
    s.add_argument("-n", "--strands", type=int, default=3)
    s.add_argument("--order", type=int, default=6)
    s.set_defaults(func=cmd_perturb)

    s = sub.add_parser("search", help="positive-braid sweep")
    s.add_argument("--k", type=int, default=0)
    s.add_argument("-m", type=int, default=0)
    s.add_argument("--shards", type=int, default=1)
    s.add_argument("--checkpoint-dir")
    s.add_argument("--resume", action="store_true")
    s.add_argument("--limit", type=int, help="max words per shard in this run")
    s.add_argument("--report", help="write the final report JSON here")
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("selfcheck", help="run the acceptance criteria")
    s.add_argument("--fast", action="store_true", help="skip the box screen and the search harness")
    s.set_defaults(func=cmd_selfcheck)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = load_config(getattr(args, "config", None)).with_overrides(
            output=getattr(args, "format", None), tol=getattr(args, "tol", None))
        return args.func(args, cfg)
    except (BraidParseError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NotAKnotError as exc:
        print(f"error: {exc} (components={exc.components})", file=sys.stderr)
        return EXIT_DOMAIN
    except (DomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (NonDivisibleError, ArithmeticError, AssertionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
