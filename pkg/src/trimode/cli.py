"""Command-line front end for sweeps, bundled presets and config checks.

Three verbs::

    trimode sweep <config.toml> --out <path> [--format csv|json]
    trimode preset <fig-id> --out <path> [--format csv|json]
    trimode check <config.toml>

``preset`` runs one of the bundled figure configs (fig2a, fig2b, fig3a-d,
fig4a, fig4b, fig5a, fig5b).  Exit status is 0 on success and nonzero on
any fatal problem (bad config, unknown preset, unwritable output, failed
check); per-point numerical trouble never kills a sweep, it lands in the
output as sentinel cells instead.
"""

from __future__ import annotations

import argparse
import sys
from importlib import resources

from .errors import ConfigError, TrimodeError
from .sweep import (
    SweepConfig,
    check_config,
    config_from_dict,
    emit,
    load_config,
    run_sweep,
)

PRESETS = (
    "fig2a",
    "fig2b",
    "fig3a",
    "fig3b",
    "fig3c",
    "fig3d",
    "fig4a",
    "fig4b",
    "fig5a",
    "fig5b",
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trimode",
        description=(
            "Amplification, added noise, squeezing and bandwidth of a "
            "modulated three-mode optomechanical chain."
        ),
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p_sweep = sub.add_parser("sweep", help="run a sweep described by a TOML config")
    p_sweep.add_argument("config", help="path to the sweep config")
    p_sweep.add_argument("--out", required=True, help="output file path")
    p_sweep.add_argument(
        "--format", choices=("csv", "json"), default="csv", help="output format"
    )

    p_preset = sub.add_parser("preset", help="run a bundled figure preset")
    p_preset.add_argument("fig_id", metavar="fig-id", help=", ".join(PRESETS))
    p_preset.add_argument("--out", required=True, help="output file path")
    p_preset.add_argument(
        "--format", choices=("csv", "json"), default="csv", help="output format"
    )

    p_check = sub.add_parser(
        "check", help="validate a config and run the invariant battery on it"
    )
    p_check.add_argument("config", help="path to the sweep config")

    return parser


def preset_config_text(fig_id: str) -> str:
    """Contents of the bundled preset config for `fig_id`."""
    if fig_id not in PRESETS:
        raise ConfigError(
            f"unknown preset {fig_id!r}; expected one of {', '.join(PRESETS)}"
        )
    ref = resources.files("trimode").joinpath("presets", f"{fig_id}.toml")
    return ref.read_text(encoding="utf-8")


def preset_config(fig_id: str) -> SweepConfig:
    """Parsed and validated bundled preset config."""
    try:
        import tomllib
    except ModuleNotFoundError:
        import tomli as tomllib  # type: ignore[no-redef]

    data = tomllib.loads(preset_config_text(fig_id))
    return config_from_dict(data, source=f"preset:{fig_id}")


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.verb == "sweep":
            result = run_sweep(load_config(args.config))
            emit(result, args.format, args.out)
        elif args.verb == "preset":
            result = run_sweep(preset_config(args.fig_id))
            emit(result, args.format, args.out)
        elif args.verb == "check":
            cfg = load_config(args.config)
            outcomes = check_config(cfg)
            for outcome in outcomes:
                status = "PASS" if outcome.passed else "FAIL"
                print(f"{status} {outcome.name}: {outcome.detail}")
            if not all(o.passed for o in outcomes):
                return 1
            print("config ok")
    except ConfigError as exc:
        where = f" [{exc.location}]" if exc.location else ""
        print(f"error:{where} {exc}", file=sys.stderr)
        return 2
    except TrimodeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
