"""``photonic-engine`` command line.

Exit codes: 0 success, 1 configuration error, 2 numerical failure,
3 finished but some rows were above threshold (NaN-flagged).
"""
from __future__ import annotations

import argparse
import logging
import sys

from ..errors import ConfigError, EngineError
from .config import config_from_dict, deep_update, load_config, parse_override
from .presets import get_preset, list_presets
from .runner import run_convergence_study, run_cycle_preset, run_sweep

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC, EXIT_FLAGGED = 0, 1, 2, 3
DEFAULT_PRESET = {"sweep": None, "cycle": "fig2", "converge": "convergence"}

log = logging.getLogger("photonic_engine")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="photonic-engine", description="Entangled-atom photonic engine sweeps.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="verb", required=True)
    for verb, help_ in (("sweep", "grid sweep of steady-state quantities"),
                        ("cycle", "four-stroke cycle traces"),
                        ("converge", "truncation / expansion-order / interaction-time report")):
        s = sub.add_parser(verb, help=help_)
        s.add_argument("--config", metavar="PATH", help="TOML config file")
        s.add_argument("--preset", metavar="NAME", help="start from a built-in preset")
        s.add_argument("--out", metavar="PATH", help="output CSV (overrides outputs.csv)")
        s.add_argument("--threads", type=int, metavar="N", help="worker threads (overrides run.threads)")
        s.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                       help="override one config key, e.g. run.coherence_weight=1.0")
        s.add_argument("--svg", action="store_true", help="also write static SVG plots")
        if verb == "cycle":
            s.add_argument("--steps", type=int, metavar="N", help="quadrature nodes per stroke")
    presets = sub.add_parser("presets", help="preset catalogue")
    presets.add_argument("action", choices=["list"])
    return p


def resolve_config(args, verb: str):
    data: dict = {}
    name = args.preset or DEFAULT_PRESET[verb]
    if name:
        preset = get_preset(name)
        if preset["kind"] != verb:
            raise ConfigError(f"preset {name!r} is a {preset['kind']} preset, not {verb}")
        data = preset["config"]
    if args.config:
        data = deep_update(data, load_config(args.config))
    for item in args.set:
        data = deep_update(data, parse_override(item))
    if args.out:
        data = deep_update(data, {"outputs": {"csv": args.out}})
    if args.threads is not None:
        data = deep_update(data, {"run": {"threads": args.threads}})
    if getattr(args, "steps", None) is not None:
        data = deep_update(data, {"run": {"steps": args.steps}})
    return config_from_dict(data, name=name or "custom")


def _run(args) -> int:
    if args.verb == "presets":
        for name, kind, desc in list_presets():
            print(f"{name:<12} {kind:<9} {desc}")
        return EXIT_OK
    config = resolve_config(args, args.verb)
    out = config.outputs["csv"]
    if args.verb == "sweep":
        result = run_sweep(config, out)
        print(f"wrote {len(result.rows)} rows to {out} ({result.flagged} above threshold)")
        if args.svg:
            from .svg import sweep_svgs
            for path in sweep_svgs(result, config, out):
                print(f"wrote {path}")
        return EXIT_FLAGGED if result.flagged else EXIT_OK
    if args.verb == "cycle":
        reports, _ = run_cycle_preset(config, out)
        for rep in reports:
            r = rep.result
            tag = " ".join(f"{k}={v:g}" for k, v in rep.point.items() if k in config.gridded_axes())
            print(f"[{tag or 'cycle'}] q23={r.q23:.6e} q41={r.q41:.6e} w_net={r.w_net:.6e} eta={r.eta:.6f} "
                  f"eta_closed_form={r.eta_closed_form:.6f} q12+q34={r.isochoric_residual:.6e} "
                  f"q23_quadrature_diff={rep.quadrature_difference:.3e}"
                  + (" NO-WORK" if r.no_work else ""))
        print(f"wrote {out}")
        if args.svg:
            from .svg import cycle_svg
            print(f"wrote {cycle_svg(reports, out)}")
        return EXIT_OK
    if args.verb == "converge":
        _, slope, _ = run_convergence_study(config, out)
        print(f"expansion-order slope {slope:.3f}; wrote {out}")
        return EXIT_OK
    raise ConfigError(f"unknown verb {args.verb}")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return _run(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"config error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (EngineError, ArithmeticError, RuntimeError, ValueError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
