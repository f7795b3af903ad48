"""Command-line surface: sweeps, figure presets, verification and compilation.

Commands::

    spincorr correlate --config cfg.json --out out.csv [--jobs N]
    spincorr figure --preset fig4a --out outdir [--jobs N]
    spincorr verify --suite protocol-vs-oracle --trials 1000 --seed 42
    spincorr susceptibility --alpha x --beta x --omega-start -2000 \
        --omega-stop 2000 --omega-step 40 --eta 50 --beta-inv-temp 0.01 \
        --out chi.csv
    spincorr compile --gate cz [--xy-only]

Exit codes: 0 success, 1 validation error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from importlib import resources
from pathlib import Path

from .experiments import ConfigError, load_config, parse_config, rows_to_csv, run_config
from .nmr import MoleculeParams, compile_controlled, sequence_text
from .qcore import PauliAxis
from .response import ResponseParams, susceptibility
from .verification import SUITES, run_suite

_GATES = {"cx": PauliAxis.X, "cy": PauliAxis.Y, "cz": PauliAxis.Z}


def preset_names() -> list:
    files = resources.files("spincorr").joinpath("presets")
    return sorted(p.name[:-5] for p in files.iterdir() if p.name.endswith(".json"))


def load_preset(name: str):
    ref = resources.files("spincorr").joinpath("presets").joinpath(name + ".json")
    if not ref.is_file():
        raise ConfigError(f"unknown preset {name!r}; available: {', '.join(preset_names())}")
    return parse_config(json.loads(ref.read_text(encoding="utf-8")))


def _cmd_correlate(args) -> int:
    cfg = load_config(args.config)
    rows = run_config(cfg, jobs=args.jobs)
    text = rows_to_csv(cfg, rows)
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


def _cmd_figure(args) -> int:
    names = preset_names() if args.preset == "all" else [args.preset]
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    for name in names:
        cfg = load_preset(name)
        rows = run_config(cfg, jobs=args.jobs)
        path = outdir / f"{name}.csv"
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(rows_to_csv(cfg, rows))
        print(f"wrote {len(rows)} rows to {path}")
    return 0


def _cmd_verify(args) -> int:
    suites = SUITES if args.suite == "all" else [args.suite]
    ok = True
    for suite in suites:
        report = run_suite(suite, trials=args.trials, seed=args.seed)
        print(report.summary())
        ok = ok and report.passed
    return 0 if ok else 2


def _parse_beta(text: str) -> float:
    if text == "inf":
        return math.inf
    return float(text)


def _cmd_susceptibility(args) -> int:
    alpha = PauliAxis.from_str(args.alpha)
    beta_axis = PauliAxis.from_str(args.beta)
    if args.omega_step <= 0:
        raise ConfigError("--omega-step must be positive")
    if args.omega_stop < args.omega_start:
        raise ConfigError("--omega-stop must be >= --omega-start")
    count = int(math.floor((args.omega_stop - args.omega_start) / args.omega_step + 1e-9)) + 1
    omegas = [args.omega_start + k * args.omega_step for k in range(count)]
    params = ResponseParams(gamma=args.gamma, b=args.field, bp0=args.drive,
                            beta=args.beta_inv_temp, eta=args.eta, omega=tuple(omegas))
    lines = ["omega_rad_s,re_chi,im_chi"]
    for omega in omegas:
        chi = susceptibility(alpha, beta_axis, omega, params)
        lines.append(f"{omega:.17g},{chi.real:.17g},{chi.imag:.17g}")
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        print(f"wrote {count} rows to {args.out}")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_compile(args) -> int:
    molecule = MoleculeParams.with_system_offset(args.delta_nu_hz, j12=args.j_hz)
    seq = compile_controlled(_GATES[args.gate], molecule, xy_only=args.xy_only)
    sys.stdout.write(sequence_text(seq))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spincorr", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("correlate", help="run a correlation sweep from a JSON config")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=_cmd_correlate)

    p = sub.add_parser("figure", help="run a shipped figure preset to CSV")
    p.add_argument("--preset", required=True,
                   help="preset name, or 'all' (see spincorr figure --preset list)")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=_cmd_figure)

    p = sub.add_parser("verify", help="run a randomized cross-validation suite")
    p.add_argument("--suite", required=True, choices=SUITES + ("all",))
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("susceptibility", help="frequency sweep of chi(omega) to CSV")
    p.add_argument("--alpha", required=True, choices=("x", "y", "z"))
    p.add_argument("--beta", required=True, choices=("x", "y", "z"))
    p.add_argument("--omega-start", type=float, required=True, help="rad/s")
    p.add_argument("--omega-stop", type=float, required=True, help="rad/s")
    p.add_argument("--omega-step", type=float, required=True, help="rad/s")
    p.add_argument("--eta", type=float, default=50.0, help="regularization rate, 1/s")
    p.add_argument("--beta-inv-temp", type=_parse_beta, default=0.01,
                   help="inverse temperature (rad/s)^-1; 'inf' for the ground state")
    p.add_argument("--gamma", type=float, default=100 * math.pi,
                   help="gyromagnetic ratio, rad/s per field unit")
    p.add_argument("--field", type=float, default=1.0, help="static field")
    p.add_argument("--drive", type=float, default=1.0, help="perturbation amplitude")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_susceptibility)

    p = sub.add_parser("compile", help="print the pulse sequence of a controlled gate")
    p.add_argument("--gate", required=True, choices=sorted(_GATES))
    p.add_argument("--xy-only", action="store_true",
                   help="expand virtual z-rotations into x/y pulses")
    p.add_argument("--delta-nu-hz", type=float, default=0.0,
                   help="system Zeeman offset (Hz); nonzero adds compensation z-rotations")
    p.add_argument("--j-hz", type=float, default=214.95, help="J coupling (Hz)")
    p.set_defaults(func=_cmd_compile)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
