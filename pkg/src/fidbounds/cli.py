"""Command-line interface.

Exit codes: 0 success, 1 invalid input or flags, 2 bound violation,
3 numerical failure.
"""

import argparse
import contextlib
import csv
import json
import sys

from . import bounds, extremal, measures, oracle, sampling
from .decompose import decompose_to_rank2
from .errors import BoundViolation, InvalidInput, NumericalFailure
from .states import dumps_state, load_state


class _ArgumentError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _ArgumentError(message)


@contextlib.contextmanager
def _output(path):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _emit_json(text, path):
    with _output(path) as fh:
        fh.write(text)
        fh.write("\n")


def cmd_measure(args):
    rho = load_state(args.state)
    _emit_json(measures.measure_report(rho).to_json(), None)


def cmd_bounds_check(args):
    rho = load_state(args.state)
    _emit_json(bounds.check_bounds(rho, args.tol).to_json(), None)


def cmd_scan(args):
    if args.rank is None:
        states, ranks = sampling.mixed_rank_ensemble(args.seed, args.count)
    else:
        spec = sampling.SampleSpec(args.seed, args.rank, args.count)
        states = sampling.random_density_array(spec)
        ranks = [args.rank] * args.count
    F, C, N = measures.measures_batch(states)
    violation = None
    with _output(args.out) as fh:
        rank_label = "mixed" if args.rank is None else args.rank
        fh.write(f"# seed={args.seed} count={args.count} rank={rank_label} rng={sampling.RNG_NAME}\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["index", "rank", "concurrence", "negativity", "fidelity"])
        for i in range(len(states)):
            writer.writerow([i, int(ranks[i]), f"{C[i]:.17g}", f"{N[i]:.17g}", f"{F[i]:.17g}"])
            if violation is None:
                try:
                    bounds.bound_report(float(F[i]), float(C[i]), float(N[i]), args.tol)
                except BoundViolation as exc:
                    violation = (i, exc)
    if violation is not None:
        i, exc = violation
        raise BoundViolation(f"{exc.bound} (sample {i})", exc.margin, exc.tol)


def cmd_curves(args):
    table = bounds.curve_data(args.resolution)
    with _output(args.out) as fh:
        bounds.write_curve_csv(table, fh)


def cmd_extremal(args):
    _emit_json(dumps_state(extremal.min_fidelity_state(args.concurrence)), args.out)


def cmd_pure(args):
    _emit_json(dumps_state(extremal.pure_state_with_concurrence(args.concurrence)), args.out)


def cmd_decompose(args):
    rho = load_state(args.state)
    _emit_json(decompose_to_rank2(rho).to_json(), args.out)


def cmd_oracle(args):
    rho = load_state(args.state)
    res = oracle.fidelity_oracle(rho, args.grid, args.tol)
    closed = measures.fidelity(rho)
    report = {
        "oracle": res.value,
        "closed_form": closed,
        "difference": res.value - closed,
        "best_angles": list(res.best_angles),
        "grid_points": res.grid_points,
        "refinement_iterations": res.refinement_iterations,
    }
    _emit_json(json.dumps(report), None)


def build_parser():
    p = _Parser(prog="fidbounds", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("measure", help="fidelity, concurrence, negativity of a state file")
    s.add_argument("state")
    s.set_defaults(func=cmd_measure)

    s = sub.add_parser("bounds-check", help="verify all fidelity bounds for a state file")
    s.add_argument("state")
    s.add_argument("--tol", type=float, default=1e-9)
    s.set_defaults(func=cmd_bounds_check)

    s = sub.add_parser("scan", help="Monte-Carlo sweep with bound checking")
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--count", type=int, required=True)
    s.add_argument("--rank", type=int, choices=(1, 2, 3, 4), default=None,
                   help="state rank; omit to cycle through ranks 1-4")
    s.add_argument("--out", default=None)
    s.add_argument("--tol", type=float, default=1e-9)
    s.set_defaults(func=cmd_scan)

    s = sub.add_parser("curves", help="bound curves as CSV")
    s.add_argument("--resolution", type=int, required=True)
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_curves)

    s = sub.add_parser("extremal", help="minimal-fidelity state for a concurrence")
    s.add_argument("--concurrence", type=float, required=True)
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_extremal)

    s = sub.add_parser("pure", help="pure state a|00>+b|11> with given concurrence")
    s.add_argument("--concurrence", type=float, required=True)
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_pure)

    s = sub.add_parser("decompose", help="rank-2 decomposition preserving the spin-spin block")
    s.add_argument("state")
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("oracle", help="brute-force fidelity against the closed form")
    s.add_argument("state")
    s.add_argument("--grid", type=int, default=24)
    s.add_argument("--tol", type=float, default=1e-10)
    s.set_defaults(func=cmd_oracle)
    return p


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        args.func(args)
    except _ArgumentError as exc:
        parser.print_usage(sys.stderr)
        print(f"fidbounds: error: {exc}", file=sys.stderr)
        return 1
    except (InvalidInput, OSError) as exc:
        print(f"fidbounds: invalid input: {exc}", file=sys.stderr)
        return 1
    except BoundViolation as exc:
        print(f"fidbounds: bound violation: {exc}", file=sys.stderr)
        return 2
    except NumericalFailure as exc:
        print(f"fidbounds: numerical failure: {exc}", file=sys.stderr)
        return 3
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
