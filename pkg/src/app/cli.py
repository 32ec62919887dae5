"""Command-line parser and the merge of flags into a run-config document."""

import argparse
import copy
from typing import Any

from src.adapters.storage import load_document
from src.app.exceptions import ConfigValidationError
from src.rules.presets import PresetLoader

PROG = "curve-extremes"

# flags that are not part of the params block
_GENERAL = (
    "command",
    "config",
    "preset",
    "seed",
    "output_dir",
    "run_dir",
    "threads",
    "plot",
    "constants",
    "pin",
    "constant_reps",
    "constant_step",
    "no_closed_forms",
)
_POWER_LAWS = ("rho1", "rho2", "v")


def _add_common(parser: argparse.ArgumentParser, constants: bool = False) -> None:
    group = parser.add_argument_group("run")
    group.add_argument("--config", help="YAML/JSON run config or a previous manifest.yaml")
    group.add_argument("--preset", help="Bundled preset id")
    group.add_argument("--seed", type=int, help="Root seed")
    group.add_argument("--output-dir", help="Parent directory of the run directory")
    group.add_argument("--run-dir", help="Exact run directory, overrides --output-dir")
    group.add_argument("--threads", help="Worker threads or 'auto'")
    group.add_argument("--plot", action="store_true", default=None, help="Also write an SVG plot")
    if constants:
        group.add_argument("--constants", choices=["mc", "pinned"], help="Constants provider")
        group.add_argument(
            "--pin",
            action="append",
            metavar="LABEL=VALUE",
            help="Pinned constant value, repeatable",
        )
        group.add_argument("--constant-reps", type=int, help="Replications per Monte Carlo constant")
        group.add_argument("--constant-step", type=float, help="Grid step of the Monte Carlo constants")
        group.add_argument(
            "--no-closed-forms",
            action="store_true",
            default=None,
            help="Estimate even the constants known in closed form",
        )


def _opt(parser: argparse.ArgumentParser, *flags: str, **kwargs: Any) -> None:
    parser.add_argument(*flags, default=argparse.SUPPRESS, **kwargs)


class _RaisingParser(argparse.ArgumentParser):
    """Parser whose usage errors raise instead of exiting."""

    def error(self, message: str):  # type: ignore[override]
        raise ConfigValidationError("arguments", self.prog, message)


def build_parser() -> argparse.ArgumentParser:
    parser = _RaisingParser(
        prog=PROG,
        description="Tail asymptotics of suprema of 2-D Gaussian fields",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="Exact fBm paths or 2-D field samples")
    _opt(p, "--target", choices=["fbm", "w-field", "fbm-sum-field"])
    _opt(p, "--alpha1", "--alpha", dest="alpha1", type=float)
    _opt(p, "--alpha2", type=float)
    _opt(p, "--T", dest="T", type=float)
    _opt(p, "--n", type=int, help="Grid cells per axis")
    _opt(p, "--paths", type=int)
    _add_common(p)

    p = sub.add_parser("constant", help="Monte Carlo Pickands-type constant")
    _opt(
        p,
        "--kind",
        choices=["pickands", "pickands-finite", "piterbarg", "piterbarg-finite", "gen-rate", "generalized"],
    )
    _opt(p, "--alpha", type=float)
    _opt(p, "--alpha2", type=float)
    _opt(p, "--gamma", help="Drift weight, 'inf' allowed")
    _opt(p, "--b", type=float)
    _opt(p, "--beta", type=float)
    _opt(p, "--S", dest="S", type=float)
    _opt(p, "--S1", dest="S1", type=float)
    _opt(p, "--S2", dest="S2", type=float)
    _opt(p, "--ladder", type=float, nargs="+")
    _opt(p, "--one-sided", dest="one_sided", action="store_true")
    _opt(p, "--step", type=float)
    _opt(p, "--reps", type=int)
    _opt(p, "--no-extrapolate", dest="extrapolate", action="store_false")
    _add_common(p)

    p = sub.add_parser("asymptote", help="Exact tail asymptote of a scenario")
    _opt(p, "--scenario", choices=["line", "fbm-sum", "fbm-sum-curve"])
    _opt(p, "--T1", dest="T1", type=float)
    _opt(p, "--T2", dest="T2", type=float)
    _opt(p, "--b", type=float)
    for name in _POWER_LAWS:
        _opt(p, f"--{name}", type=float, nargs=2, metavar=("COEFF", "ALPHA"))
    _opt(p, "--boundary", action="store_true")
    _opt(p, "--t1", type=float)
    _opt(p, "--t2", type=float)
    _opt(p, "--alpha1", type=float)
    _opt(p, "--alpha2", type=float)
    _opt(p, "--piece", type=int, choices=[1, 2])
    _opt(p, "--u-grid", dest="u_grid", type=float, nargs="+")
    _add_common(p, constants=True)

    p = sub.add_parser("fbm-sum", help="Asymptote of the supremum of the fBm sum")
    _opt(p, "--alpha1", type=float)
    _opt(p, "--alpha2", type=float)
    _opt(p, "--u-grid", dest="u_grid", type=float, nargs="+")
    _opt(p, "--no-cross-check", dest="cross_check", action="store_false")
    _add_common(p, constants=True)

    p = sub.add_parser("compare", help="Monte Carlo tail against the asymptote")
    _opt(p, "--alpha1", type=float)
    _opt(p, "--alpha2", type=float)
    _opt(p, "--u", type=float, nargs="+")
    _opt(p, "--grid-ladder", dest="grid_ladder", type=int, nargs="+")
    _opt(p, "--reps", type=int)
    _add_common(p, constants=True)

    p = sub.add_parser("check-expansions", help="Local variance and correlation expansions")
    _opt(p, "--alpha1", type=float)
    _opt(p, "--alpha2", type=float)
    _opt(p, "--delta-ladder", dest="delta_ladder", type=float, nargs="+")
    _opt(p, "--n-points", dest="n_points", type=int)
    _add_common(p)
    return parser


def _parse_pin(item: str) -> tuple[str, float]:
    label, sep, value = item.rpartition("=")
    if not sep or not label:
        raise ConfigValidationError("constants.pinned", item, "expected LABEL=VALUE")
    try:
        return label.strip(), float(value)
    except ValueError as e:
        raise ConfigValidationError("constants.pinned", item, "value is not a number") from e


def _parse_threads(value: str) -> int | str:
    if value == "auto":
        return value
    try:
        return int(value)
    except ValueError as e:
        raise ConfigValidationError("threads", value, "expected an integer or 'auto'") from e


def build_document(args: argparse.Namespace, presets: PresetLoader) -> dict[str, Any]:
    """Preset, then config file, then flags; later sources win key by key."""
    document: dict[str, Any] = {}
    if args.preset:
        document = copy.deepcopy(presets.get(args.preset).config)
        document["preset"] = args.preset
    if args.config:
        loaded = load_document(args.config)
        params = {**document.get("params", {}), **loaded.get("params", {})}
        constants = {**document.get("constants", {}), **loaded.get("constants", {})}
        document.update(loaded)
        document["params"] = params
        document["constants"] = constants

    command = document.get("command", args.command)
    if command != args.command:
        source = "preset" if not args.config else "config"
        raise ConfigValidationError(source, command, f"written for '{command}', not '{args.command}'")
    document["command"] = args.command
    for key in ("seed", "output_dir", "run_dir", "plot"):
        value = getattr(args, key)
        if value is not None:
            document[key] = value
    if args.threads is not None:
        document["threads"] = _parse_threads(args.threads)

    params = document.setdefault("params", {})
    for key, value in vars(args).items():
        if key in _GENERAL:
            continue
        if key in _POWER_LAWS:
            value = {"coeff": value[0], "alpha": value[1]}
        params[key] = value

    constants = document.setdefault("constants", {})
    if getattr(args, "constants", None):
        constants["provider"] = args.constants
    for item in getattr(args, "pin", None) or []:
        label, value = _parse_pin(item)
        constants.setdefault("pinned", {})[label] = value
    if getattr(args, "constant_reps", None) is not None:
        constants["reps"] = args.constant_reps
    if getattr(args, "constant_step", None) is not None:
        constants["step"] = args.constant_step
    if getattr(args, "no_closed_forms", None):
        constants["closed_forms"] = False
    return document
