"""Command-line interface.

Exit codes: 0 success, 1 malformed input, 2 unknown (or only approximate)
volume, 3 table mismatch or database validation failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from .config import ConfigurationError, configuration_from_text
from .exactnum import PiValue, parse_fraction
from .families import (
    PrincipalError,
    c_area_hyperelliptic,
    lsum_minus_from_carea,
    lsum_minus_hyperelliptic,
    principal_breakdown,
)
from .geometry import qmax_tilde, ratio_area_gt_p, ratio_single_cyl_gt_p
from .strata import AbelianStratum, HypComponentSpec, HypKind, QuadStratum, parse_orders, principal
from .svcore import sv_constants
from .tables import TABLES, regenerate, render_text, table_to_json
from .volumes import (
    ApproximateVolumeError,
    UnknownVolumeError,
    VolumeDb,
    VolumeDbFormatError,
    shipped_db,
)

EXIT_OK, EXIT_INPUT, EXIT_UNKNOWN_VOLUME, EXIT_MISMATCH = 0, 1, 2, 3


class InputError(ValueError):
    pass


def _load_db(path: Optional[str]) -> VolumeDb:
    path = path or os.environ.get("SVQ_DB")
    if not path:
        return shipped_db()
    try:
        return VolumeDb.load(path)
    except OSError as exc:
        raise InputError(f"cannot read volume database {path}: {exc}") from None


def _pair(text: str, what: str) -> tuple[int, int]:
    try:
        a, b = (int(x) for x in text.split(","))
    except ValueError:
        raise InputError(f"{what} must look like K,L") from None
    return a, b


def _hyp_spec(text: str) -> HypComponentSpec:
    try:
        kind, k1, k2 = text.split(",")
        return HypComponentSpec(HypKind.parse(kind), int(k1), int(k2))
    except ValueError as exc:
        raise InputError(f"--hyp expects TYPE,K1,K2 (e.g. Type2,-1,2): {exc}") from None


class _Out:
    def __init__(self, args):
        self.json = args.format == "json"
        self.approx = args.approx

    def value(self, v: PiValue) -> str:
        text = v.to_text()
        if self.approx:
            text += f"  (approx {v.approx(12)})"
        return text

    def num(self, v: PiValue) -> dict:
        out = {"exact": v.to_text()}
        if self.approx:
            out["approx"] = v.approx(12)
        return out

    def emit(self, text_lines: list[str], payload: dict) -> None:
        if self.json:
            print(json.dumps(payload, indent=2, sort_keys=True))
        else:
            print("\n".join(text_lines))


def cmd_volume(args, out: _Out) -> int:
    db = _load_db(args.db)
    orders = parse_orders(args.stratum)
    s = AbelianStratum(orders) if args.abelian else QuadStratum(orders)
    v = db.lookup(s, args.component, allow_approx=args.allow_approximate)
    out.emit([out.value(v)], {"stratum": str(s), "component": args.component, "volume": out.num(v)})
    return EXIT_OK


def cmd_sv_config(args, out: _Out) -> int:
    db = _load_db(args.db)
    try:
        with open(args.config, encoding="utf-8") as fh:
            cfg = configuration_from_text(fh.read())
    except OSError as exc:
        raise InputError(f"cannot read {args.config}: {exc}") from None
    res = sv_constants(cfg, db)
    print(json.dumps(res.to_json(), indent=2))
    return EXIT_OK


def cmd_sv_stratum(args, out: _Out) -> int:
    if bool(args.principal) == bool(args.hyp):
        raise InputError("give exactly one of --principal K,L or --hyp TYPE,K1,K2")
    if args.hyp:
        spec = _hyp_spec(args.hyp)
        c = c_area_hyperelliptic(spec)
        out.emit(
            [f"c_area {out.value(c)}"],
            {"component": str(spec), "stratum": str(spec.signature()), "c_area": out.num(c)},
        )
        return EXIT_OK
    k, l = _pair(args.principal, "--principal")
    db = _load_db(args.db)
    lines, rows = [], []
    total = PiValue.zero()
    for cfg, c in principal_breakdown(k, l, db):
        weighted = c * cfg.multiplicity
        total = total + weighted
        mult = f"{cfg.multiplicity.numerator}/{cfg.multiplicity.denominator}"
        lines.append(f"{cfg.label():<10} N={mult:<8} c_area={out.value(c)}  N*c_area={out.value(weighted)}")
        rows.append({"config": cfg.label(), "N": mult, "c_area": out.num(c), "N_times_c_area": out.num(weighted)})
    lines.append(f"total {out.value(total)}")
    out.emit(lines, {"stratum": str(principal(k, l)), "configurations": rows, "total": out.num(total)})
    return EXIT_OK


def cmd_lyapunov(args, out: _Out) -> int:
    chosen = [x for x in (args.carea, args.principal, args.hyp) if x]
    if len(chosen) != 1:
        raise InputError("give exactly one of --carea (with --stratum), --principal K,L or --hyp TYPE,K1,K2")
    if args.hyp:
        spec = _hyp_spec(args.hyp)
        s = spec.signature()
        lm = lsum_minus_hyperelliptic(spec)
        bridged = lsum_minus_from_carea(s, c_area_hyperelliptic(spec))
        if bridged != lm:
            print(
                f"warning: closed form gives {lm} but c_area through I and K gives {bridged}",
                file=sys.stderr,
            )
    elif args.principal:
        k, l = _pair(args.principal, "--principal")
        s = principal(k, l)
        db = _load_db(args.db)
        c = sum((c * cfg.multiplicity for cfg, c in principal_breakdown(k, l, db)), PiValue.zero())
        lm = lsum_minus_from_carea(s, c)
    else:
        if not args.stratum:
            raise InputError("--carea needs --stratum")
        s = QuadStratum(parse_orders(args.stratum))
        lm = lsum_minus_from_carea(s, PiValue.parse(args.carea))
    v = PiValue.rational(lm)
    out.emit([out.value(v)], {"stratum": str(s), "L_minus": out.num(v)})
    return EXIT_OK


def cmd_qmax(args, out: _Out) -> int:
    s = QuadStratum(parse_orders(args.stratum))
    r = qmax_tilde(s, args.method)
    lo, hi = r.interval
    out.emit(
        [f"qmax_tilde {r.value} ({r.method})", f"qmax in [{lo}, {hi}]"],
        {"stratum": str(s), "qmax_tilde": r.value, "method": r.method, "qmax_interval": [lo, hi]},
    )
    return EXIT_OK


def cmd_area_ratio(args, out: _Out) -> int:
    p = parse_fraction(args.p)
    if args.single:
        if args.dim is None:
            raise InputError("--single needs --dim")
        r = ratio_single_cyl_gt_p(args.dim, p)
    else:
        if args.ns is None or args.q is None:
            raise InputError("give --ns and --q, or --single --dim")
        r = ratio_area_gt_p(args.ns, args.q, p)
    v = PiValue.rational(r)
    out.emit([out.value(v)], {"p": args.p, "ratio": out.num(v)})
    return EXIT_OK


def cmd_tables(args, out: _Out) -> int:
    db = _load_db(args.db)
    names = TABLES if args.which == "all" else (args.which,)
    tables = [regenerate(name, db) for name in names]
    if out.json:
        print(json.dumps([table_to_json(t) for t in tables], indent=2))
    else:
        sys.stdout.write("\n".join(render_text(t) for t in tables))
    return EXIT_MISMATCH if any(t.mismatches for t in tables) else EXIT_OK


def cmd_db_validate(args, out: _Out) -> int:
    db = _load_db(args.db)
    problems = db.validate()
    out.emit(
        problems + [f"{len(db)} entries, {len(problems)} disagreements with closed forms"],
        {"entries": len(db), "problems": problems},
    )
    return EXIT_MISMATCH if problems else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--db", help="volume database JSON (default: $SVQ_DB or the bundled data)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--approx", action="store_true", help="also print 12-digit decimal approximations")

    parser = argparse.ArgumentParser(prog="svq", description="Exact Siegel-Veech constants and volumes.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("volume", parents=[common], help="look up a volume")
    p.add_argument("--stratum", required=True)
    p.add_argument("--component", default="whole", choices=("whole", "hyp", "nonhyp", "reg", "irr"))
    p.add_argument("--abelian", action="store_true", help="treat the orders as an Abelian stratum")
    p.add_argument("--allow-approximate", action="store_true")
    p.set_defaults(func=cmd_volume)

    p = sub.add_parser("sv-config", parents=[common], help="constants of a configuration given as JSON")
    p.add_argument("--config", required=True)
    p.set_defaults(func=cmd_sv_config)

    p = sub.add_parser("sv-stratum", parents=[common], help="c_area of a whole stratum")
    p.add_argument("--principal", metavar="K,L")
    p.add_argument("--hyp", metavar="TYPE,K1,K2")
    p.set_defaults(func=cmd_sv_stratum)

    p = sub.add_parser("lyapunov", parents=[common], help="sum L^- of Lyapunov exponents")
    p.add_argument("--stratum")
    p.add_argument("--carea", metavar="EXACT")
    p.add_argument("--principal", metavar="K,L")
    p.add_argument("--hyp", metavar="TYPE,K1,K2")
    p.set_defaults(func=cmd_lyapunov)

    p = sub.add_parser("qmax", parents=[common], help="maximal number of homologous cylinders")
    p.add_argument("--stratum", required=True)
    p.add_argument("--method", default="auto", choices=("auto", "closed_form", "subset_search"))
    p.set_defaults(func=cmd_qmax)

    p = sub.add_parser("area-ratio", parents=[common], help="area-conditioned constant ratios")
    p.add_argument("--ns", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--single", action="store_true")
    p.add_argument("--dim", type=int)
    p.add_argument("--p", required=True, metavar="NUM/DEN")
    p.set_defaults(func=cmd_area_ratio)

    p = sub.add_parser("tables", parents=[common], help="regenerate reference tables and diff them")
    p.add_argument("--which", default="all", choices=TABLES + ("all",))
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("db-validate", parents=[common], help="check stored volumes against closed forms")
    p.set_defaults(func=cmd_db_validate)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    out = _Out(args)
    try:
        return args.func(args, out)
    except (UnknownVolumeError, ApproximateVolumeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNKNOWN_VOLUME
    except (InputError, ConfigurationError, PrincipalError, VolumeDbFormatError, ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())
