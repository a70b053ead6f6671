"""Command-line surface: compute, verify, iterate, compare, export.

Flags mirror the conventional letters: ``--levels`` is N, ``--particles``
(or ``--length``) is K, ``--sum`` (or ``--total-energy``) is i / E.

Every distribution output carries the exact rationals; floats are a
convenience rendering and are flagged as approximate in JSON output.
Exit codes: 0 success, 1 failed verification, 2 usage or domain error.
The environment variable DBOLTZ_FORMAT picks the default output format.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Sequence

from . import approx as approx_mod
from . import markov as markov_mod
from .boltzmann import (
    boltzmann_on_energy,
    boltzmann_on_multisets,
    boltzmann_on_numbers,
    boltzmann_on_numbers_via_multisets,
    scaled_unnormalized,
)
from .distributions import Dist, point, uniform
from .ketform import dist_to_csv_rows, dist_to_json, element_text, format_dist
from .multisets import parse_multiset
from .multivariate import (
    boltzmann_multi,
    boltzmann_multi_on_levels,
    hypergeometric,
    nomial_distribution,
    polya,
)
from .nomials import (
    DEFAULT_BUDGET,
    NomialTable,
    nomial,
    nomial_enum_sequences,
    nomial_recursive,
    nomial_via_multisets,
)
from .verify import run_all

__all__ = ["run", "main", "export_plot_data"]


def export_plot_data(omega: Dist, path: str) -> None:
    """Write ``index,probability,numerator,denominator`` rows for plotting.

    Probabilities are decimals at 12 significant digits; the exact
    rational columns are authoritative.
    """
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("index,probability,numerator,denominator\n")
        for x, p in omega.items():
            cell = element_text(x)
            if "," in cell:
                cell = f'"{cell}"'
            fh.write(f"{cell},{float(p):.12g},{p.numerator},{p.denominator}\n")


def _default_format() -> str:
    return os.environ.get("DBOLTZ_FORMAT", "kets")


def _emit_dist(omega: Dist, args: argparse.Namespace) -> None:
    fmt = getattr(args, "format", None) or _default_format()
    if fmt == "kets":
        print(format_dist(omega))
    elif fmt == "json":
        envelope = {
            "command": " ".join(args.command_echo),
            "format": "json",
            "payload": dist_to_json(omega),
            "floats_are_approximate": True,
        }
        print(json.dumps(envelope))
    elif fmt == "csv":
        print("element,probability")
        for row in dist_to_csv_rows(omega):
            print(row)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    output = getattr(args, "output", None)
    if output:
        export_plot_data(omega, output)


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------

def _cmd_nomial_value(args) -> int:
    routes = {
        "auto": nomial,
        "multisets": nomial_via_multisets,
        "recursive": nomial_recursive,
        "sequences": lambda n, k, i: nomial_enum_sequences(n, k, i, args.budget),
    }
    print(routes[args.route](args.levels, args.length, args.sum))
    return 0


def _cmd_nomial_table(args) -> int:
    table = NomialTable(args.levels, args.max_length)
    for k in range(args.max_length + 1):
        print(",".join(str(v) for v in table.row(k)))
    return 0


def _cmd_nomial_check(args) -> int:
    failures = 0
    for n in range(1, args.max_levels + 1):
        for k in range(args.max_length + 1):
            for i in range((n - 1) * k + 1):
                values = {nomial(n, k, i), nomial_via_multisets(n, k, i),
                          nomial_recursive(n, k, i)}
                if n ** k <= args.budget:
                    values.add(nomial_enum_sequences(n, k, i, args.budget))
                if len(values) != 1:
                    print(f"FAIL N={n} K={k} i={i}: {sorted(values)}")
                    failures += 1
    print(f"{'FAIL' if failures else 'PASS'} nomial route agreement "
          f"(N <= {args.max_levels}, K <= {args.max_length})")
    return 1 if failures else 0


def _cmd_boltzmann(args) -> int:
    kind = args.family
    if kind == "energy":
        e, k = args.total_energy, args.particles
        dist = boltzmann_on_energy(e, k)
        if args.scaled:
            print(",".join(f"{v:.12g}" for v in scaled_unnormalized(e, k)))
            return 0
    else:
        n, k = args.levels, args.particles
        i = args.sum if args.sum is not None else args.total_energy
        if i is None:
            raise ValueError("need --sum (or --total-energy) for this family")
        if kind == "multisets":
            dist = boltzmann_on_multisets(n, k, i)
        else:
            dist = (boltzmann_on_numbers_via_multisets(n, k, i)
                    if args.route == "flrn" else boltzmann_on_numbers(n, k, i))
    _emit_dist(dist, args)
    return 0


def _cmd_markov_stationarity(args) -> int:
    n, k, i = args.levels, args.particles, args.sum
    residual = markov_mod.stationarity_residual(
        boltzmann_on_multisets(n, k, i), markov_mod.shift_channel(n, k, i))
    print(residual)
    return 0


def _start_distribution(args, n: int, k: int, i: int) -> Dist:
    from .multisets import enumerate_multisets_with_sum
    space = list(enumerate_multisets_with_sum(n, k, i))
    if args.start == "uniform":
        return uniform(space)
    if args.start == "first":
        return point(space[0])
    if args.start == "last":
        return point(space[-1])
    raise ValueError(f"unknown start {args.start!r}")


def _cmd_markov_iterate(args) -> int:
    n, k, i = args.levels, args.particles, args.sum
    reference = boltzmann_on_multisets(n, k, i)
    omega0 = _start_distribution(args, n, k, i)
    trace = markov_mod.iterate_chain(omega0, markov_mod.shift_channel(n, k, i),
                                     args.steps, reference)
    print("step,tv_distance")
    for step, residual in trace:
        print(f"{step},{float(residual):.12g}")
    return 0


def _cmd_markov_matrix(args) -> int:
    states, rows = markov_mod.transition_matrix(args.levels, args.particles, args.sum)
    print("state," + ",".join(f'"{s}"' for s in states))
    for phi, row in zip(states, rows):
        print(f'"{phi}",' + ",".join(str(w) for w in row))
    return 0


def _cmd_approx_compare(args) -> int:
    report = approx_mod.compare(args.total_energy, args.particles)
    if args.format == "json":
        payload = {
            "command": " ".join(args.command_echo),
            "energy": report.energy,
            "particles": report.particles,
            "mu": {"numerator": report.mu.numerator, "denominator": report.mu.denominator},
            "reference_entropy": report.reference_entropy,
            "max_entropy_base": report.max_entropy_base,
            "continuous_rate": report.continuous_rate,
            "floats_are_approximate": True,
            "reference": dist_to_json(report.reference),
            "candidates": [
                {
                    "name": c.name,
                    "mean": float(c.mean),
                    "entropy": c.entropy,
                    "kl_from_reference": c.kl_from_reference,
                    "total_variation": float(c.total_variation),
                    "dist": dist_to_json(c.dist),
                }
                for c in report.candidates
            ],
        }
        print(json.dumps(payload))
        return 0
    pdf = approx_mod.continuous_exponential_pdf(report.mu)
    names = [c.name for c in report.candidates]
    print("j,reference," + ",".join(names) + ",continuous_pdf")
    grid = max(1, args.grid)
    for step in range(args.total_energy * grid + 1):
        x = Fraction(step, grid)
        cells = [f"{float(x):.12g}"]
        if x.denominator == 1:
            j = int(x)
            cells.append(f"{float(report.reference(j)):.12g}")
            cells.extend(f"{float(c.dist(j)):.12g}" for c in report.candidates)
        else:
            cells.extend([""] * (1 + len(report.candidates)))
        cells.append(f"{pdf(float(x)):.12g}")
        print(",".join(cells))
    return 0


def _cmd_multivariate(args) -> int:
    psi = parse_multiset(args.urn)
    kind = args.dist
    if kind == "hypergeometric":
        dist = hypergeometric(args.draw, psi)
    elif kind == "polya":
        dist = polya(args.draw, psi)
    elif kind == "nomial-dist":
        dist = nomial_distribution(args.draw, psi, args.levels)
    else:  # boltzmann-multi
        if args.on_levels:
            dist = boltzmann_multi_on_levels(args.levels, psi, args.sum)
        else:
            dist = boltzmann_multi(args.levels, psi, args.sum)
    _emit_dist(dist, args)
    return 0


def _cmd_verify(args) -> int:
    results = run_all(max_levels=args.max_levels, max_size=args.max_size,
                      budget=args.budget, trials=args.trials)
    failures = 0
    for r in results:
        tag = "PASS" if r.ok else "FAIL"
        detail = f"  ({r.detail})" if r.detail else ""
        print(f"{tag} {r.name}{detail}")
        failures += 0 if r.ok else 1
    print(f"{len(results) - failures}/{len(results)} checks passed")
    return 1 if failures else 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _add_format_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=["kets", "json", "csv"], default=None,
                   help="output format (default from DBOLTZ_FORMAT, else kets)")
    p.add_argument("--output", metavar="FILE", default=None,
                   help="also write plot-data CSV (index, probability, exact columns)")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dboltz",
        description="Exact N-nomial coefficients and discrete Boltzmann distributions.")
    sub = parser.add_subparsers(dest="group", required=True)

    nom = sub.add_parser("nomial", help="N-nomial coefficients").add_subparsers(
        dest="action", required=True)
    value = nom.add_parser("value", help="one coefficient")
    value.add_argument("--levels", type=int, required=True)
    value.add_argument("--length", "--particles", dest="length", type=int, required=True)
    value.add_argument("--sum", type=int, required=True)
    value.add_argument("--route", choices=["auto", "multisets", "recursive", "sequences"],
                       default="auto")
    value.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    value.set_defaults(handler=_cmd_nomial_value)
    table = nom.add_parser("table", help="triangle rows as CSV")
    table.add_argument("--levels", type=int, required=True)
    table.add_argument("--max-length", type=int, required=True)
    table.set_defaults(handler=_cmd_nomial_table)
    check = nom.add_parser("check", help="cross-route agreement sweep")
    check.add_argument("--max-levels", type=int, default=5)
    check.add_argument("--max-length", type=int, default=6)
    check.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    check.set_defaults(handler=_cmd_nomial_check)

    boltz = sub.add_parser("boltzmann", help="the three distribution families").add_subparsers(
        dest="family", required=True)
    for family in ("multisets", "numbers", "energy"):
        p = boltz.add_parser(family)
        if family == "energy":
            p.add_argument("--total-energy", type=int, required=True)
            p.add_argument("--particles", type=int, required=True)
            p.add_argument("--scaled", action="store_true",
                           help="print K times the weights as decimals")
        else:
            p.add_argument("--levels", type=int, required=True)
            p.add_argument("--particles", "--length", dest="particles", type=int, required=True)
            p.add_argument("--sum", type=int, default=None)
            p.add_argument("--total-energy", type=int, default=None)
            if family == "numbers":
                p.add_argument("--route", choices=["nomial", "flrn"], default="nomial")
        _add_format_flags(p)
        p.set_defaults(handler=_cmd_boltzmann)

    markov = sub.add_parser("markov", help="the sum-preserving shift chain").add_subparsers(
        dest="action", required=True)
    stat = markov.add_parser("stationarity", help="exact equilibrium residual")
    for p in (stat,):
        p.add_argument("--levels", type=int, required=True)
        p.add_argument("--particles", type=int, required=True)
        p.add_argument("--sum", "--total-energy", dest="sum", type=int, required=True)
    stat.set_defaults(handler=_cmd_markov_stationarity)
    it = markov.add_parser("iterate", help="pushforward iteration trace")
    it.add_argument("--levels", type=int, required=True)
    it.add_argument("--particles", type=int, required=True)
    it.add_argument("--sum", "--total-energy", dest="sum", type=int, required=True)
    it.add_argument("--steps", type=int, default=10)
    it.add_argument("--start", choices=["uniform", "first", "last"], default="uniform")
    it.set_defaults(handler=_cmd_markov_iterate)
    mat = markov.add_parser("matrix", help="explicit transition matrix")
    mat.add_argument("--levels", type=int, required=True)
    mat.add_argument("--particles", type=int, required=True)
    mat.add_argument("--sum", "--total-energy", dest="sum", type=int, required=True)
    mat.set_defaults(handler=_cmd_markov_matrix)

    appx = sub.add_parser("approx", help="approximation comparison").add_subparsers(
        dest="action", required=True)
    cmp_p = appx.add_parser("compare")
    cmp_p.add_argument("--total-energy", type=int, required=True)
    cmp_p.add_argument("--particles", type=int, required=True)
    cmp_p.add_argument("--grid", type=int, default=1,
                       help="subdivisions per level for the continuous overlay")
    cmp_p.add_argument("--format", choices=["csv", "json"], default="csv")
    cmp_p.set_defaults(handler=_cmd_approx_compare)

    multi = sub.add_parser("multivariate", help="urn distributions").add_subparsers(
        dest="dist", required=True)
    for kind in ("hypergeometric", "polya", "nomial-dist", "boltzmann-multi"):
        p = multi.add_parser(kind)
        p.add_argument("--urn", required=True, help='multiset text, e.g. "1|a> + 5|b> + 3|c>"')
        if kind == "boltzmann-multi":
            p.add_argument("--levels", type=int, required=True)
            p.add_argument("--sum", "--total-energy", dest="sum", type=int, required=True)
            p.add_argument("--on-levels", action="store_true",
                           help="push each component through frequentist learning")
        else:
            p.add_argument("--draw", "--sum", dest="draw", type=int, required=True)
            if kind == "nomial-dist":
                p.add_argument("--levels", type=int, default=None,
                               help="colour count N (default: size of the urn's ground set)")
        _add_format_flags(p)
        p.set_defaults(handler=_cmd_multivariate)

    ver = sub.add_parser("verify", help="invariant sweeps").add_subparsers(
        dest="action", required=True)
    allp = ver.add_parser("all")
    allp.add_argument("--max-levels", type=int, default=4)
    allp.add_argument("--max-size", type=int, default=5)
    allp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    allp.add_argument("--trials", type=int, default=25)
    allp.set_defaults(handler=_cmd_verify)

    return parser


def run(argv: Sequence[str] | None = None) -> int:
    """Parse and dispatch; returns the process exit code."""
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.command_echo = ["dboltz", *argv]
    try:
        return args.handler(args)
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
