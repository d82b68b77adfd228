"""Command-line front end.

Exit codes: 0 success, 1 usage, 2 parse error, 3 invalid decomposition or
ordering, 4 guard/limit refusal.  Diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .decomposition import (auto_decomposition, emit_decomposition, emit_ordering,
                            formula_elements, linear_decomposition, parse_decomposition,
                            parse_ordering)
from .dp import count_models, max_sat
from .errors import PSWidthError
from .formula import parse_any
from .interval import (DEFAULT_ELEMENT_LIMIT, find_interval_ordering, mim_of_decomposition,
                       verify_interval_ordering)
from .ps import ps_width

MIM_WARN_ELEMENTS = 60
STRATEGIES = ("greedy-ps", "file-order")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _read(path):
    with open(path, "rb") as fh:
        return fh.read()


def _add_source(p, required=False):
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--decomp", metavar="FILE", help="decomposition file")
    g.add_argument("--order", metavar="FILE", help="leaf ordering file (v<i>/c<j> tokens)")
    g.add_argument("--auto", metavar="STRATEGY", choices=STRATEGIES,
                   help="build a linear decomposition (default greedy-ps)")


def _decomposition(args, formula):
    """The decomposition named by the arguments; None for a formula with no elements."""
    if args.decomp:
        return parse_decomposition(_read(args.decomp), formula)
    if args.order:
        return linear_decomposition(formula, parse_ordering(_read(args.order)))
    if not formula_elements(formula):
        return None
    return auto_decomposition(formula, args.auto or "greedy-ps")


def build_parser():
    p = _Parser(prog="pswidth", description="Exact #SAT and weighted MaxSAT by ps-width dynamic programming.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    c = sub.add_parser("count", help="exact model count")
    c.add_argument("file")
    _add_source(c)
    c.add_argument("--all-vars", action="store_true",
                   help="count over all declared variables, not only those occurring")

    m = sub.add_parser("maxsat", help="weighted MaxSAT optimum and witness")
    m.add_argument("file")
    _add_source(m)

    w = sub.add_parser("psw", help="ps-width of a decomposition")
    w.add_argument("file")
    _add_source(w)
    w.add_argument("--verbose", "-v", action="store_true", help="per-node report")
    w.add_argument("--plot", metavar="PNG", help="write a per-node bar chart")

    o = sub.add_parser("order", help="interval orderings")
    osub = o.add_subparsers(dest="order_command", parser_class=_Parser)
    ov = osub.add_parser("verify", help="check an ordering")
    ov.add_argument("file")
    ov.add_argument("ordering")
    of = osub.add_parser("find", help="exhaustive search for an interval ordering")
    of.add_argument("file")
    of.add_argument("--limit", type=int, default=DEFAULT_ELEMENT_LIMIT)

    mm = sub.add_parser("mim", help="per-node maximum induced matchings")
    mm.add_argument("file")
    _add_source(mm)
    mm.add_argument("--plot", metavar="PNG", help="write a per-node bar chart")

    dd = sub.add_parser("decomp", help="print the decomposition that would be used")
    dd.add_argument("file")
    _add_source(dd)
    return p


def _cmd_count(args, out, err):
    formula = parse_any(_read(args.file))
    d = _decomposition(args, formula)
    print(count_models(formula, d, all_vars=args.all_vars), file=out)


def _cmd_maxsat(args, out, err):
    formula = parse_any(_read(args.file))
    d = _decomposition(args, formula)
    res = max_sat(formula, d)
    lits = [x if res.witness[x] else -x for x in range(1, formula.num_vars + 1)]
    print(f"o {res.weight}", file=out)
    print(" ".join(["v"] + [str(l) for l in lits]), file=out)


def _cmd_psw(args, out, err):
    formula = parse_any(_read(args.file))
    d = _decomposition(args, formula)
    if d is None:
        print(1, file=out)
        return
    k, report = ps_width(formula, d)
    print(k, file=out)
    if args.verbose:
        for v, a, b in report:
            print(f"{v}\t{a}\t{b}", file=out)
    if args.plot:
        from .plotting import plot_node_profile
        plot_node_profile(report, args.plot, title=f"ps-width {k}")


def _cmd_order(args, out, err):
    if args.order_command is None:
        raise UsageError("order: choose 'verify' or 'find'")
    formula = parse_any(_read(args.file))
    if args.order_command == "verify":
        bad = verify_interval_ordering(formula, parse_ordering(_read(args.ordering)))
        if bad is None:
            print("VALID", file=out)
            return 0
        print(f"VIOLATION {bad}", file=out)
        return 3
    found = find_interval_ordering(formula, args.limit)
    print("NONE" if found is None else emit_ordering(found).rstrip("\n"), file=out)


def _cmd_mim(args, out, err):
    formula = parse_any(_read(args.file))
    if len(formula_elements(formula)) > MIM_WARN_ELEMENTS:
        print(f"warning: exact induced-matching search on {len(formula_elements(formula))} "
              "elements may be slow", file=err)
    d = _decomposition(args, formula)
    if d is None:
        print(0, file=out)
        return
    rows, best = mim_of_decomposition(formula, d)
    print(best, file=out)
    for v, a, b in rows:
        print(f"{v}\t{a}\t{b}", file=out)
    if args.plot:
        from .plotting import plot_node_profile
        plot_node_profile(rows, args.plot, ylabel="max induced matching", title=f"MIM {best}")


def _cmd_decomp(args, out, err):
    formula = parse_any(_read(args.file))
    d = _decomposition(args, formula)
    if d is None:
        raise UsageError("formula has no clauses or variables to decompose")
    out.write(emit_decomposition(d))


COMMANDS = {"count": _cmd_count, "maxsat": _cmd_maxsat, "psw": _cmd_psw,
            "order": _cmd_order, "mim": _cmd_mim, "decomp": _cmd_decomp}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise UsageError("pswidth: a subcommand is required")
        return COMMANDS[args.command](args, out, err) or 0
    except UsageError as exc:
        print(exc, file=err)
        return 1
    except PSWidthError as exc:
        print(f"error: {exc}", file=err)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=err)
        return 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
