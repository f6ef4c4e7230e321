"""Command-line interface: ``catalog``, ``count``, ``verify`` and ``sweep``.

Exit codes: 0 when everything passes, 1 on a congruence failure or an
oracle mismatch, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from .catalog import catalog, family_examples, sweep_specs
from .errors import BaseOrderMismatch, GroupError, ParameterOutOfRange
from .group import DEFAULT_CAP, Group, p_valuation, prime_divisors, require_prime
from .oracle import brute_force_chain_count, brute_force_levels
from .psub import (
    ChainSpec,
    chain_count,
    default_base,
    p_subgroup_levels,
    subgroups_of_order_containing,
)
from .report import VerificationReport, format_rows, reports_to_json
from .subgroup import closure, trivial

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
ORACLE_MAX_ORDER = 48


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _load(args) -> Group:
    return catalog(args.group, cap=args.cap, trust=args.trust)


def _elapsed_ms(t0: float) -> int:
    return int(round((time.perf_counter() - t0) * 1000))


def cmd_catalog(args, out) -> int:
    entries = family_examples(args.max_order)
    if args.json:
        out.write(json.dumps(entries, indent=2) + "\n")
        return EXIT_OK
    width = max(len(e["syntax"]) for e in entries)
    for e in entries:
        params = f" ({e['parameters']})" if e["parameters"] else ""
        line = f"{e['syntax'].ljust(width)}  {e['description']}{params}"
        if args.max_order is not None:
            line += "  e.g. " + " ".join(e["examples"])
        out.write(line + "\n")
    if args.max_order is None:
        out.write(f"{'file:path'.ljust(width)}  group file (format perm | format table)\n")
    return EXIT_OK


def cmd_count(args, out) -> int:
    G = _load(args)
    p, s = args.prime, args.order_exp
    require_prime(p)
    if s < 0:
        raise UsageError("--order-exp must be nonnegative")
    subs = subgroups_of_order_containing(G, trivial(G), s, p)
    count = len(subs)
    record = {
        "group_name": G.name,
        "group_order": G.order,
        "prime": p,
        "order_exp": s,
        "exact_count": str(count),
        "residue": count % p,
    }
    if args.json:
        out.write(json.dumps(record, indent=2) + "\n")
    else:
        out.write(f"{G.name} (order {G.order}): {count} subgroups of order {p}^{s} = {p**s}, "
                  f"residue {count % p} mod {p}\n")
    return EXIT_OK


def _base_subgroup(G: Group, p: int, b0: int, base_gens: list[int] | None):
    if base_gens is not None:
        for g in base_gens:
            if not 0 <= g < G.order:
                raise UsageError(f"base generator {g} out of range")
        base = closure(G, base_gens)
        if base.order != p**b0:
            raise BaseOrderMismatch(f"base subgroup has order {base.order}, expected {p}^{b0}")
        return base
    if b0 == 0:
        return trivial(G)
    return default_base(G, p, b0)


def cmd_verify(args, out, err) -> int:
    G = _load(args)
    p = args.prime
    require_prime(p)
    n = p_valuation(G.order, p)
    chains = [_int_list(c) for c in args.chain] if args.chain else [[0, n]]
    base_gens = _int_list(args.base_gens) if args.base_gens is not None else None
    reports = []
    mismatches = []
    for exps in chains:
        spec = ChainSpec(p, tuple(exps))
        t0 = time.perf_counter()
        base = _base_subgroup(G, p, spec.exponents[0], base_gens)
        count = chain_count(G, base, spec)
        reports.append(VerificationReport.from_count(
            G.name, G.order, p, spec.exponents, base.order, count.exact, _elapsed_ms(t0)))
        if args.oracle and G.order <= ORACLE_MAX_ORDER:
            check = brute_force_chain_count(G, base, spec)
            if check.exact != count.exact:
                mismatches.append(f"oracle mismatch on {G.name} p={p} chain {list(exps)}: "
                                  f"lifting {count.exact}, oracle {check.exact}")
    _emit(reports, args.json, out)
    for m in mismatches:
        err.write(m + "\n")
    return EXIT_OK if all(r.passed for r in reports) and not mismatches else EXIT_FAIL


def sweep_group(spec: str, max_chain_len: int, oracle: bool,
                cap: int = DEFAULT_CAP) -> tuple[list[VerificationReport], list[str]]:
    """All sweep cases for one catalog group, trivial base throughout."""
    G = catalog(spec, cap=cap)
    reports: list[VerificationReport] = []
    mismatches: list[str] = []
    base = trivial(G)
    for p in prime_divisors(G.order):
        n = p_valuation(G.order, p)
        brute_levels = None
        if oracle:
            brute_levels = brute_force_levels(G, p, range(n + 1))
            for i, level in enumerate(p_subgroup_levels(G, p)):
                brute = brute_levels[i]
                if [H.elems for H in level] != [H.elems for H in brute]:
                    mismatches.append(f"oracle mismatch on {G.name}: subgroups of order {p}^{i} "
                                      f"(lifting {len(level)}, oracle {len(brute)})")
        for length in range(1, max_chain_len + 1):
            for rest in itertools.combinations(range(1, n + 1), length - 1):
                chain = ChainSpec(p, (0,) + rest)
                t0 = time.perf_counter()
                count = chain_count(G, base, chain)
                reports.append(VerificationReport.from_count(
                    G.name, G.order, p, chain.exponents, 1, count.exact, _elapsed_ms(t0)))
                if oracle:
                    check = brute_force_chain_count(G, base, chain, brute_levels)
                    if check.exact != count.exact:
                        mismatches.append(f"oracle mismatch on {G.name} p={p} chain "
                                          f"{list(chain.exponents)}: lifting {count.exact}, "
                                          f"oracle {check.exact}")
    return reports, mismatches


def _sweep_task(task):
    return sweep_group(*task)


def cmd_sweep(args, out, err) -> int:
    if args.max_order < 1 or args.max_chain_len < 1 or args.oracle_max_order < 0:
        raise UsageError("bounds must be positive")
    specs = sweep_specs(args.max_order, products=not args.no_products, max_degree=args.max_degree)
    tasks = [(s, args.max_chain_len, order <= args.oracle_max_order, args.cap) for s, order in specs]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_sweep_task, tasks, chunksize=4))
    else:
        results = [_sweep_task(t) for t in tasks]
    reports = [r for rs, _ in results for r in rs]
    mismatches = [m for _, ms in results for m in ms]
    _emit(reports, args.json, out)
    failed = sum(not r.passed for r in reports)
    for m in mismatches:
        err.write(m + "\n")
    summary = (f"summary: {len(specs)} groups, {len(reports)} cases, "
               f"{len(reports) - failed} passed, {failed} failed, "
               f"{len(mismatches)} oracle mismatches\n")
    (err if args.json else out).write(summary)
    return EXIT_OK if not failed and not mismatches else EXIT_FAIL


def _emit(reports, as_json: bool, out) -> None:
    out.write(reports_to_json(reports) if as_json else format_rows(reports))


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument("--trust", action="store_true",
                        help="skip the cubic associativity check on loaded tables")
    common.add_argument("--cap", type=int, default=DEFAULT_CAP,
                        help="element cap for closures and built groups (default %(default)s)")

    parser = _Parser(prog="pchains", description="Count p-subgroups and p-subgroup chains "
                     "of finite groups and check their congruences mod p.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("catalog", parents=[common], help="list the built-in group families")
    p.add_argument("--max-order", type=int, default=None)

    p = sub.add_parser("count", parents=[common], help="count subgroups of order p^s")
    p.add_argument("--group", required=True, help="catalog spec or file:path")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--order-exp", type=int, required=True)

    p = sub.add_parser("verify", parents=[common], help="count chains and check the residue")
    p.add_argument("--group", required=True, help="catalog spec or file:path")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--chain", action="append", help="exponents b0,b1,...; repeatable "
                   "(default 0,n)")
    p.add_argument("--base-gens", default=None, help="generators of the base subgroup")
    p.add_argument("--oracle", action="store_true",
                   help=f"cross-check against brute force when the order is <= {ORACLE_MAX_ORDER}")

    p = sub.add_parser("sweep", parents=[common], help="verify every catalog group up to an order")
    p.add_argument("--max-order", type=int, required=True)
    p.add_argument("--max-chain-len", type=int, default=4,
                   help="longest exponent list, base included (default %(default)s)")
    p.add_argument("--oracle-max-order", type=int, default=0,
                   help="compare against brute force for groups up to this order")
    p.add_argument("--max-degree", type=int, default=5,
                   help="largest sym/alt degree in the sweep (default %(default)s)")
    p.add_argument("--no-products", action="store_true", help="skip direct products")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.cap < 1:
            raise ParameterOutOfRange("--cap must be positive")
        if args.command == "catalog":
            return cmd_catalog(args, out)
        if args.command == "count":
            return cmd_count(args, out)
        if args.command == "verify":
            return cmd_verify(args, out, err)
        return cmd_sweep(args, out, err)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except GroupError as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
