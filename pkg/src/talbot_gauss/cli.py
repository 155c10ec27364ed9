"""Command-line interface: ``talbot-gauss <command> ...``.

Exit codes: 0 success, 1 a verification predicate failed, 2 usage or domain
error, 3 data or grid error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import DomainError, GridMismatchError
from .gauss_phase import (
    sequence_to_csv,
    sequence_to_json,
    spectral_weights,
    talbot_phases,
    xi0,
)
from .numtheory import gcd
from .talbot_field import (
    compare,
    envelope_from_csv,
    envelope_sidecar,
    envelope_to_csv,
    propagate,
    reconstruct_fractional,
)
from .talbot_s import TalbotOrder, s_table, table_to_csv, table_to_json
from .tai import check_concentration, design_to_json, tai_forward, tai_phases, trace_to_csv
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DATA = 0, 1, 2, 3


def _note(msg: str) -> None:
    print(msg, file=sys.stderr)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _add_order_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("p", nargs="?", type=int, help="Talbot order numerator")
    parser.add_argument("q", nargs="?", type=int, help="Talbot order denominator")
    parser.add_argument("--order", help="order as a fraction p/q (reduced if needed)")
    parser.add_argument("--sign", type=int, choices=(1, -1), default=1, help="dispersion sign sigma")


def _order_from_args(args) -> TalbotOrder:
    if args.order is not None:
        if args.p is not None:
            raise DomainError("give the order either as 'p q' or as --order p/q, not both")
        try:
            num, _, den = args.order.partition("/")
            p, q = int(num), int(den or 1)
        except ValueError:
            raise DomainError(f"cannot parse order {args.order!r}; expected p/q") from None
        if p < 1 or q < 1:
            raise DomainError(f"order must be positive, got {args.order}")
        g = gcd(p, q)
        if g != 1:
            _note(f"note: order {p}/{q} reduced to {p // g}/{q // g}")
            p, q = p // g, q // g
        return TalbotOrder(p, q, args.sign)
    if args.p is None or args.q is None:
        raise DomainError("an order is required: 'p q' or --order p/q")
    return TalbotOrder(args.p, args.q, args.sign)


def cmd_s_table(args) -> int:
    table = s_table(args.qmax, args.pmax)
    _emit(table_to_json(table) if args.format == "json" else table_to_csv(table), args.out)
    return EXIT_OK


def cmd_phases(args) -> int:
    order = _order_from_args(args)
    x = talbot_phases(order)
    if args.format == "csv":
        _emit(sequence_to_csv(x), args.out)
        return EXIT_OK
    doc = json.loads(sequence_to_json(x))
    X = spectral_weights(order)
    doc["spectral"] = {
        "gain": X.gain,
        "phases": [{"num": ph.num, "den": ph.den} for ph in X.exact],
    }
    _emit(json.dumps(doc, indent=1) + "\n", args.out)
    _note(f"s={x.s} xi0={xi0(order)}")
    return EXIT_OK


def cmd_verify(args) -> int:
    results = run_suite(args.suite, args.qmax, args.tol)
    for res in results:
        print(res.line())
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} properties passed")
    return EXIT_OK if failed == 0 else EXIT_FAIL


def cmd_tai(args) -> int:
    order = _order_from_args(args)
    design = tai_phases(order)
    output = tai_forward(design, args.samples_per_bin)
    report = check_concentration(design, output, args.tol)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = f"tai_p{order.p}_q{order.q}_{'m' if order.sigma < 0 else 'p'}"
    (out_dir / f"{stem}.json").write_text(design_to_json(design))
    (out_dir / f"{stem}_trace.csv").write_text(trace_to_csv(output))
    status = "PASS" if report["passed"] else "FAIL"
    print(f"{status} tai {order.p}/{order.q} sigma={order.sigma} s={design.s} levels={order.q} "
          f"peak={report['peak_amplitude']:.12g} gain={report['peak_power_gain']:.12g} "
          f"l_inf={report['l_inf_vs_ideal']:.3g}")
    return EXIT_OK if report["passed"] else EXIT_FAIL


def cmd_simulate(args) -> int:
    order = _order_from_args(args)
    src = Path(args.input)
    sidecar_path = src.with_suffix(".json")
    try:
        text = src.read_text()
        sidecar = sidecar_path.read_text() if sidecar_path.exists() else None
        env = envelope_from_csv(text, sidecar)
    except (OSError, ValueError, KeyError) as exc:
        _note(f"error: cannot read envelope {src}: {exc}")
        return EXIT_USAGE
    prefix = Path(args.out) if args.out else src.with_name(src.stem + "_out")
    outputs = {}
    if args.mode in ("propagate", "both"):
        outputs["propagate"] = propagate(env, order)
    if args.mode in ("reconstruct", "both"):
        outputs["reconstruct"] = reconstruct_fractional(env, order)
        if order.e_pq:
            _note("note: half-period delay applied (p*q odd)")
    for i, (mode, result) in enumerate(outputs.items()):
        path = prefix.with_name(prefix.name + ("" if i == 0 else f"_{mode}"))
        path.with_suffix(".csv").write_text(envelope_to_csv(result))
        path.with_suffix(".json").write_text(envelope_sidecar(result))
    if args.mode == "both":
        metrics = compare(outputs["propagate"], outputs["reconstruct"])
        metrics.update({"p": order.p, "q": order.q, "sigma": order.sigma, "half_period_shift": bool(order.e_pq)})
        prefix.with_name(prefix.name + "_metrics.json").write_text(json.dumps(metrics, indent=1) + "\n")
        print(f"l_inf={metrics['l_inf']:.3g} l2={metrics['l2']:.3g} peak_ratio={metrics['peak_ratio']:.12g}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="talbot-gauss",
        description="Quadratic Gauss sums of the fractional Talbot effect.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("s-table", help="table of s over q in [2, qmax], p in [1, pmax]")
    p.add_argument("--qmax", type=int, required=True)
    p.add_argument("--pmax", type=int, default=10)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_s_table)

    p = sub.add_parser("phases", help="Talbot weights x_n, their DFT X_m, xi0 and s")
    _add_order_args(p)
    p.add_argument("--format", choices=("csv", "json"), default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_phases)

    p = sub.add_parser("verify", help="exhaustive property sweeps")
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--qmax", type=int, default=32)
    p.add_argument("--tol", type=float, default=None, help="tolerance for floating-point properties (default 1e-9)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("tai", help="design a Talbot array illuminator and run it forward")
    _add_order_args(p)
    p.add_argument("--samples-per-bin", type=int, default=16)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--out-dir", default=".")
    p.set_defaults(func=cmd_tai)

    p = sub.add_parser("simulate", help="propagate an envelope file to a Talbot plane")
    p.add_argument("input", help="envelope CSV (k,t,re,im); a .json sidecar {T, N} is read if present")
    _add_order_args(p)
    p.add_argument("--mode", choices=("propagate", "reconstruct", "both"), default="propagate")
    p.add_argument("--out", help="output path prefix (default: <input>_out)")
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GridMismatchError as exc:
        _note(f"error: {exc}")
        return EXIT_DATA
    except (DomainError, ValueError) as exc:
        _note(f"error: {exc}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
