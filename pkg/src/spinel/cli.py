"""Command-line front end.

Subcommands cover the whole pipeline: reduce / solve / backmap / spectrum
for Hamiltonian files, plus the experiment drivers maxcut, mobius,
hopfield and presets.  All output is plain text or CSV and byte-identical
for identical (arguments, seed) pairs.

Exit codes: 0 success, 1 parse error or invalid parameters, 2 a reduction
made no progress, 3 an exhaustive-oracle size cap was exceeded.
"""

from __future__ import annotations

import argparse
import sys

from .eliminate import (
    ReductionLimits,
    Trace,
    back_substitute,
    full_solve,
    reduce_hamiltonian,
    spectrum,
)
from .expand import CapExceeded
from .poly import (
    ParseError,
    format_polynomial,
    format_rational,
    load_polynomial,
    parse_rational,
    save_polynomial,
)
from .problems import (
    MAXCUT_CSV_HEADER,
    PRESET_NAMES,
    cut_value,
    critical_j_scan,
    is_two_wall,
    eliminate_block_spins,
    factor_from_assignment_291311,
    factor_preset,
    hadamard_patterns,
    hebbian_couplings,
    maxcut_hamiltonian,
    maxcut_reduce_2local,
    maxcut_reduce_klocal,
    mobius_ladder,
    random_cubic_graph,
    spins_to_bits,
)
from .solve import DescentParams, brute_force, run_trials

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_NO_PROGRESS = 2
EXIT_SIZE_CAP = 3


def _state_line(assignment: dict[int, int]) -> str:
    items = sorted(assignment.items())
    return "".join("+" if v > 0 else "-" for _, v in items)


def _parse_order(text: str | None) -> list[int] | str:
    if text is None or text == "greedy":
        return "greedy"
    if text == "":
        return []
    return [int(tok) for tok in text.split(",") if tok != ""]


def _limits(args: argparse.Namespace) -> ReductionLimits:
    return ReductionLimits(
        max_neighborhood=args.max_neighborhood,
        max_locality=args.max_locality,
        max_degree=args.max_degree,
    )


def _parse_assign(text: str) -> dict[int, int]:
    out: dict[int, int] = {}
    for item in text.split(","):
        if not item:
            continue
        key, _, val = item.partition("=")
        out[int(key)] = int(val)
    if any(v not in (-1, 1) for v in out.values()):
        raise ValueError("assignments must map spins to +1 or -1")
    return out


def cmd_reduce(args: argparse.Namespace) -> int:
    h = load_polynomial(args.input)
    order = _parse_order(args.order)
    h2, trace = reduce_hamiltonian(
        h, order=order, limits=_limits(args), target_remaining=args.target_spins
    )
    if args.output:
        save_polynomial(h2, args.output)
    else:
        sys.stdout.write(format_polynomial(h2))
    if args.trace:
        trace.save(args.trace)
    print(
        f"eliminated {len(trace)} spins; remaining {len(h2.variables)}; "
        f"locality {h2.locality()}; max degree {h2.max_degree()}"
    )
    requested = order == "greedy" or (isinstance(order, list) and len(order) > 0)
    if requested and len(trace) == 0:
        return EXIT_NO_PROGRESS
    return EXIT_OK


def cmd_solve(args: argparse.Namespace) -> int:
    h = load_polynomial(args.input)
    if args.method == "brute":
        energy, states = brute_force(h)
    else:
        energy, states = full_solve(h)
    print(format_rational(energy))
    for st in sorted(states, key=_state_line):
        print(_state_line(st))
    return EXIT_OK


def cmd_backmap(args: argparse.Namespace) -> int:
    trace = Trace.load(args.trace)
    reduced = _parse_assign(args.assign)
    completions = back_substitute(trace, reduced)
    for st in sorted(completions, key=_state_line):
        line = _state_line(st)
        if args.decode == "bits":
            line += f" bits={spins_to_bits(st)}"
        elif args.decode == "factor291311":
            line += f" factor={factor_from_assignment_291311(st)}"
        print(line)
    return EXIT_OK


def cmd_spectrum(args: argparse.Namespace) -> int:
    h = load_polynomial(args.input)
    levels = spectrum(h)
    lines = [f"{format_rational(e)},{count}" for e, count in levels]
    text = "\n".join(lines) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_maxcut(args: argparse.Namespace) -> int:
    rows = []
    fractions = []
    for run in range(args.runs):
        seed = args.seed + run
        g = random_cubic_graph(args.n, seed=seed)
        if args.strategy == "2local":
            h2, trace, stats = maxcut_reduce_2local(g, seed=seed)
        else:
            h2, trace, stats = maxcut_reduce_klocal(g, rounds=args.rounds)
        rows.append(stats.csv_row())
        fractions.append(stats.removed_fraction)
        if args.verify:
            if args.n > 20:
                print("oracle verification needs n <= 20", file=sys.stderr)
                return EXIT_SIZE_CAP
            _, best = brute_force(maxcut_hamiltonian(g))
            _, reduced_states = brute_force(h2)
            completion = back_substitute(trace, reduced_states[0])[0]
            cut = cut_value(g, completion)
            if cut != cut_value(g, best[0]):
                print(f"seed {seed}: back-mapped cut mismatch", file=sys.stderr)
                return EXIT_PARSE
            solution = "".join(
                "+" if completion[v] > 0 else "-" for v in sorted(completion)
            )
            print(f"seed={seed} cut={format_rational(cut)} solution={solution}")
    text = "\n".join([MAXCUT_CSV_HEADER] + rows) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    print(f"mean_removed_fraction={sum(fractions) / len(fractions):.6f}")
    return EXIT_OK


def cmd_mobius(args: argparse.Namespace) -> int:
    grid = [parse_rational(tok) for tok in args.grid.split(",")]
    jstar = critical_j_scan(args.n, grid)
    for j in grid:
        _, states = brute_force(mobius_ladder(args.n, j))
        cls = "S1" if any(is_two_wall(st, args.n) for st in states) else "S0"
        print(f"J={format_rational(j)} ground={cls}")
    print(f"J*={format_rational(jstar)}")
    return EXIT_OK


def cmd_hopfield(args: argparse.Namespace) -> int:
    ps = hadamard_patterns(args.n, args.p)
    h = hebbian_couplings(ps, keep_diagonal=args.keep_diagonal)
    if args.remove:
        h, _ = eliminate_block_spins(h, blocks=args.p, per_block=args.remove)
    params = DescentParams(dt=args.dt, max_steps=args.max_steps, seed=args.seed)
    hist = run_trials(h, args.trials, params)
    text = hist.to_csv()
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_presets(args: argparse.Namespace) -> int:
    h = factor_preset(args.name)
    if args.output:
        save_polynomial(h, args.output)
    else:
        sys.stdout.write(format_polynomial(h))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinel",
        description="Exact spin elimination for 2-local and k-local Ising Hamiltonians",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    reduce_p = sub.add_parser("reduce", help="eliminate spins from a Hamiltonian file")
    reduce_p.add_argument("--input", required=True)
    reduce_p.add_argument("--output")
    reduce_p.add_argument("--trace")
    reduce_p.add_argument("--order", help='comma list of spins, "greedy", or "" for none')
    reduce_p.add_argument("--max-neighborhood", type=int)
    reduce_p.add_argument("--max-locality", type=int)
    reduce_p.add_argument("--max-degree", type=int)
    reduce_p.add_argument("--target-spins", type=int, default=0)
    reduce_p.set_defaults(fn=cmd_reduce)

    solve_p = sub.add_parser("solve", help="minimum energy and ground states")
    solve_p.add_argument("--input", required=True)
    solve_p.add_argument("--method", choices=("brute", "eliminate"), default="brute")
    solve_p.set_defaults(fn=cmd_solve)

    back_p = sub.add_parser("backmap", help="complete a reduced solution through a trace")
    back_p.add_argument("--trace", required=True)
    back_p.add_argument("--assign", required=True, help='e.g. "2=1,3=-1"')
    back_p.add_argument("--decode", choices=("bits", "factor291311"))
    back_p.set_defaults(fn=cmd_backmap)

    spec_p = sub.add_parser("spectrum", help="energy,count CSV by exhaustive enumeration")
    spec_p.add_argument("--input", required=True)
    spec_p.add_argument("--output")
    spec_p.set_defaults(fn=cmd_spectrum)

    maxcut_p = sub.add_parser("maxcut", help="cubic Max-Cut elimination statistics")
    maxcut_p.add_argument("--n", type=int, required=True)
    maxcut_p.add_argument("--runs", type=int, default=1)
    maxcut_p.add_argument("--strategy", choices=("2local", "klocal"), default="2local")
    maxcut_p.add_argument("--rounds", type=int, default=1)
    maxcut_p.add_argument("--seed", type=int, default=0)
    maxcut_p.add_argument("--verify", action="store_true")
    maxcut_p.add_argument("--output")
    maxcut_p.set_defaults(fn=cmd_maxcut)

    mobius_p = sub.add_parser("mobius", help="critical-J scan of the Moebius ladder")
    mobius_p.add_argument("--n", type=int, required=True)
    mobius_p.add_argument("--grid", required=True, help="comma list of rationals")
    mobius_p.set_defaults(fn=cmd_mobius)

    hop_p = sub.add_parser("hopfield", help="retrieval trials on a Hebbian network")
    hop_p.add_argument("--n", type=int, required=True)
    hop_p.add_argument("--p", type=int, required=True)
    hop_p.add_argument("--trials", type=int, default=1000)
    hop_p.add_argument("--seed", type=int, default=0)
    hop_p.add_argument("--remove", type=int, default=0, help="spins removed per block")
    hop_p.add_argument("--keep-diagonal", action="store_true")
    hop_p.add_argument("--dt", type=float, default=0.05)
    hop_p.add_argument("--max-steps", type=int, default=5000)
    hop_p.add_argument("--output")
    hop_p.set_defaults(fn=cmd_hopfield)

    presets_p = sub.add_parser("presets", help="write a bundled Hamiltonian")
    presets_p.add_argument("--name", required=True, choices=PRESET_NAMES)
    presets_p.add_argument("--output")
    presets_p.set_defaults(fn=cmd_presets)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except CapExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_SIZE_CAP
    except (ParseError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
