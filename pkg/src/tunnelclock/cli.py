"""Command-line front end.

Every module is exposed as a subcommand emitting machine-readable CSV (the
default) or JSON.  Physical-domain failures (energy above the barrier, a
radius at the horizon) are row-level status values so sweeps can cross
singular lines; only usage errors terminate the process, with exit code 2.
`check-eq` exits 1 when any input line fails.

Argument literals accept a fixed table of unit suffixes: eV, nm, kg, m, s.
Bare numbers are SI.  Sweeps are declared as
``--sweep name=start:stop:points[:linear|log]``.
"""

from __future__ import annotations

import argparse
import math
import sys
from typing import Optional, Sequence

import numpy as np

from . import bondnet as bn
from . import dimparse
from .constants import C, EV, G, M_E
from .errors import DomainError
from .gravity import (D0_CAUSAL, DilationParams, derive_constants,
                      dilation_gr, dilation_tunneling)
from .orthoclock import SpectralState, first_orthogonal_time, ml_bound
from .scatter import PotentialProfile, opaque_transmission, transfer_matrix_scatter
from .sweep import Axis, SweepSpec, run_sweep, write_csv, write_json
from .tunneltime import tunneling_time_closed, tunneling_time_fd

__all__ = ["main", "console_main"]

_SUFFIXES = {"eV": EV, "nm": 1e-9, "kg": 1.0, "m": 1.0, "s": 1.0}

# Reference data (mass kg, radius m): Earth and Sun from standard astronomical
# tables; "ns" is a canonical 1.4-solar-mass, 12 km neutron star.
PRESETS = {
    "earth": (5.972e24, 6.371e6),
    "sun": (1.989e30, 6.96e8),
    "ns": (2.7846e30, 1.2e4),
}


class UsageError(Exception):
    """Bad flag combination or malformed argument value; exit code 2."""


def parse_scalar(text: str) -> float:
    """A float with an optional unit suffix from the fixed table, in SI."""
    text = text.strip()
    for suffix in sorted(_SUFFIXES, key=len, reverse=True):
        if text.endswith(suffix):
            number = text[: -len(suffix)]
            try:
                return float(number) * _SUFFIXES[suffix]
            except ValueError:
                raise UsageError(f"cannot parse quantity literal {text!r}") from None
    try:
        return float(text)
    except ValueError:
        raise UsageError(
            f"cannot parse quantity literal {text!r} "
            f"(suffixes: {', '.join(_SUFFIXES)})") from None


def parse_mass(text: str) -> float:
    if text.strip() == "electron":
        return M_E
    return parse_scalar(text)


def parse_sweep(text: str, aliases: dict[str, str]) -> Axis:
    """Parse ``name=start:stop:points[:scale]`` into an Axis."""
    if "=" not in text:
        raise UsageError(f"sweep {text!r} must look like name=start:stop:points[:scale]")
    name, _, rest = text.partition("=")
    name = name.strip()
    if name not in aliases:
        raise UsageError(f"unknown sweep axis {name!r}; choose from {', '.join(aliases)}")
    fields = rest.split(":")
    if len(fields) not in (3, 4):
        raise UsageError(f"sweep {text!r} must look like name=start:stop:points[:scale]")
    scale = fields[3].strip() if len(fields) == 4 else "linear"
    try:
        points = int(fields[2])
    except ValueError:
        raise UsageError(f"sweep {text!r}: point count must be an integer") from None
    try:
        return Axis(name=aliases[name], start=parse_scalar(fields[0]),
                    stop=parse_scalar(fields[1]), points=points, scale=scale)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _collect_axes(args, aliases: dict[str, str],
                  fixed: dict[str, Optional[float]]) -> list[Axis]:
    """Merge --sweep axes with fixed-flag values; each parameter exactly once."""
    axes: dict[str, Axis] = {}
    for text in args.sweep or []:
        axis = parse_sweep(text, aliases)
        if axis.name in axes:
            raise UsageError(f"axis {axis.name!r} swept twice")
        axes[axis.name] = axis
    for column, value in fixed.items():
        if column in axes:
            if value is not None:
                raise UsageError(f"{column!r} given both as a flag and a sweep axis")
            continue
        if value is None:
            raise UsageError(f"missing value for {column!r} (flag or sweep axis)")
        axes[column] = Axis.fixed(column, value)
    # declaration order: fixed flags first, then sweeps, per `fixed` ordering
    ordered = [axes[c] for c in fixed if c in axes]
    return ordered


def _emit(args, header: list[str], rows: list[dict]) -> None:
    writer = write_json if args.format == "json" else write_csv
    if args.output:
        with open(args.output, "w", newline="") as stream:
            writer(rows, header, stream)
    else:
        writer(rows, header, sys.stdout)


# --- transmission -----------------------------------------------------------

def _cmd_transmission(args) -> int:
    mass = parse_mass(args.mass)
    aliases = {"energy": "energy_j", "v0": "v0_j", "width": "width_m"}
    axes = _collect_axes(args, aliases, {
        "energy_j": parse_scalar(args.energy) if args.energy else None,
        "v0_j": parse_scalar(args.v0) if args.v0 else None,
        "width_m": parse_scalar(args.width) if args.width else None,
    })
    method = args.method

    def point_fn(point: dict) -> dict:
        profile = PotentialProfile.rectangular(
            height=point["v0_j"], width=point["width_m"], mass=mass)
        if method == "opaque":
            return {"T_prob": opaque_transmission(profile, point["energy_j"]),
                    "method": "opaque"}
        result = transfer_matrix_scatter(profile, point["energy_j"])
        return {
            "T_prob": result.transmission,
            "R_prob": result.reflection,
            "method": "exact",
            "unitarity": "pass" if result.unitarity_defect <= 1e-10 else "fail",
        }

    spec = SweepSpec(target="transmission", axes=tuple(axes),
                     columns=("T_prob", "R_prob", "method", "unitarity"))
    _emit(args, spec.header(), run_sweep(spec, point_fn, workers=args.workers))
    return 0


# --- tunneltime ---------------------------------------------------------------

def _cmd_tunneltime(args) -> int:
    mass = parse_mass(args.mass)
    aliases = {"energy": "energy_j", "v0": "v0_j", "width": "width_m"}
    axes = _collect_axes(args, aliases, {
        "energy_j": parse_scalar(args.energy) if args.energy else None,
        "v0_j": parse_scalar(args.v0) if args.v0 else None,
        "width_m": parse_scalar(args.width) if args.width else None,
    })
    method = args.method

    def point_fn(point: dict) -> dict:
        profile = PotentialProfile.rectangular(
            height=point["v0_j"], width=point["width_m"], mass=mass)
        energy = point["energy_j"]
        out: dict = {}
        if method in ("closed", "both"):
            out["t_closed_s"] = tunneling_time_closed(profile, energy, ceiling=args.ceiling).time
        if method in ("fd", "both"):
            out["t_fd_s"] = tunneling_time_fd(
                lambda e: opaque_transmission(profile, e), energy).time
        if method == "both":
            out["rel_diff"] = abs(out["t_closed_s"] - out["t_fd_s"]) / out["t_closed_s"]
        return out

    spec = SweepSpec(target="tunneltime", axes=tuple(axes),
                     columns=("t_closed_s", "t_fd_s", "rel_diff"))
    _emit(args, spec.header(), run_sweep(spec, point_fn, workers=args.workers))
    return 0


# --- dilation -----------------------------------------------------------------

def _cmd_dilation(args) -> int:
    if args.preset:
        if args.mass_kg is not None or args.radius_m is not None:
            raise UsageError("--preset replaces --mass-kg/--radius-m")
        mass, radius = PRESETS[args.preset]
    else:
        mass, radius = args.mass_kg, args.radius_m

    aliases = {"mass": "mass_kg", "radius": "radius_m", "x": "x"}
    swept_names = {parse_sweep(t, aliases).name for t in (args.sweep or [])}
    fixed: dict[str, Optional[float]] = {"mass_kg": mass}
    if "x" in swept_names:
        if radius is not None:
            raise UsageError("sweep over x replaces --radius-m")
        fixed["x"] = None
    else:
        fixed["radius_m"] = radius
    axes = _collect_axes(args, aliases, fixed)

    b_override = None
    if args.b is not None:
        b_override = None if args.b == "canonical" else parse_scalar(args.b)
    d0 = parse_scalar(args.d0) if args.d0 is not None else D0_CAUSAL
    method = args.method

    def point_fn(point: dict) -> dict:
        m = point["mass_kg"]
        if "x" in point:
            if m <= 0.0:
                raise DomainError("sweeping x requires a positive mass")
            r = 2.0 * G * m / (C**2 * point["x"])
        else:
            r = point["radius_m"]
        out: dict = {"radius_m_used": r, "x_ratio": 2.0 * G * m / (r * C**2)}
        if method in ("tunneling", "both"):
            params = DilationParams(mass=m, radius=r, d0=d0, b=b_override)
            out["delta_tunneling"] = dilation_tunneling(params).dilation_factor
        if method in ("gr", "both"):
            out["delta_gr"] = dilation_gr(m, r)
        if method == "both":
            out["residual"] = abs(out["delta_tunneling"] - out["delta_gr"]) / out["delta_gr"]
        return out

    spec = SweepSpec(target="dilation", axes=tuple(axes),
                     columns=("radius_m_used", "x_ratio", "delta_tunneling",
                              "delta_gr", "residual"))
    _emit(args, spec.header(), run_sweep(spec, point_fn, workers=args.workers))
    return 0


# --- constants ------------------------------------------------------------------

def _cmd_constants(args) -> int:
    from .constants import L_P

    b = L_P if args.b == "planck" else parse_scalar(args.b)
    d0 = parse_scalar(args.d0) if args.d0 is not None else D0_CAUSAL

    def point_fn(point: dict) -> dict:
        derived = derive_constants(b=b, d0=d0)
        return {
            "b_m": derived.b,
            "d0_m": derived.d0,
            "A0_per_s": derived.rate_scale,
            "E0_J": derived.energy0,
            "m0_kg": derived.m0,
            "rho_E_J_per_m3": derived.rho_vacuum,
            "rho_E_closed_J_per_m3": derived.rho_vacuum_closed,
        }

    spec = SweepSpec(target="constants", axes=(),
                     columns=("b_m", "d0_m", "A0_per_s", "E0_J", "m0_kg",
                              "rho_E_J_per_m3", "rho_E_closed_J_per_m3"))
    _emit(args, spec.header(), run_sweep(spec, point_fn))
    return 0


# --- mlbound --------------------------------------------------------------------

def _parse_levels(text: str) -> SpectralState:
    energies = []
    amplitudes = []
    for chunk in text.split(","):
        if ":" not in chunk:
            raise UsageError(f"level {chunk!r} must look like energy:amplitude")
        e_text, _, c_text = chunk.partition(":")
        energies.append(parse_scalar(e_text))
        try:
            amplitudes.append(float(c_text))
        except ValueError:
            raise UsageError(f"bad amplitude {c_text!r}") from None
    try:
        return SpectralState.normalized(energies, amplitudes)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _random_state(n: int, seed: int) -> SpectralState:
    """Commensurate ladder spectrum with equal-weight random-phase amplitudes.

    The ladder guarantees exact orthogonality events, so the bound is
    actually exercised rather than trivially unreached.
    """
    rng = np.random.default_rng(seed)
    base = rng.uniform(0.5, 5.0) * EV
    energies = base * np.arange(n)
    phases = rng.uniform(0.0, 2.0 * math.pi, size=n)
    amplitudes = np.exp(1j * phases) / math.sqrt(n)
    return SpectralState(energies, amplitudes)


def _cmd_mlbound(args) -> int:
    if (args.levels is None) == (args.random is None):
        raise UsageError("give exactly one of --levels or --random")
    if args.levels is not None:
        state = _parse_levels(args.levels)
    else:
        n, seed = args.random
        if not 1 <= n <= 64:
            raise UsageError("--random level count must be in 1..64")
        state = _random_state(n, seed)
    tol = args.tol

    def point_fn(point: dict) -> dict:
        t_perp = first_orthogonal_time(state, tol=tol) if state.energies.size > 1 else None
        bound = ml_bound(state)
        out = {
            "n_levels": state.energies.size,
            "mean_energy_J": state.mean_energy,
            "t_min_s": bound.t_min,
            "rate_per_s": bound.rate,
            "t_perp_s": t_perp,
        }
        if t_perp is None:
            out["saturation"] = None
            out["bound"] = "pass"  # nothing measured, nothing violated
        else:
            out["saturation"] = t_perp / bound.t_min
            out["bound"] = "pass" if t_perp >= bound.t_min * (1.0 - 1e-4) else "violated"
        return out

    spec = SweepSpec(target="mlbound", axes=(),
                     columns=("n_levels", "mean_energy_J", "t_min_s", "rate_per_s",
                              "t_perp_s", "saturation", "bound"))
    _emit(args, spec.header(), run_sweep(spec, point_fn))
    return 0


# --- bondnet --------------------------------------------------------------------

def _cmd_bondnet(args) -> int:
    if args.flux is not None:
        if args.network or args.collapse:
            raise UsageError("--flux is standalone; it does not combine with --network")
        b_text, r_text, geometry = args.flux
        try:
            bond_count = float(b_text)
            radius = float(r_text)
        except ValueError:
            raise UsageError("--flux takes: bond-count radius geometry") from None
        if geometry not in ("area_law_2d", "volume_3d"):
            raise UsageError(f"unknown geometry {geometry!r}")

        def flux_fn(point: dict) -> dict:
            return {
                "bond_count": bond_count,
                "radius_m": radius,
                "geometry": geometry,
                "flux": bn.entanglement_flux(bond_count, radius, geometry),
            }

        spec = SweepSpec(target="bondnet-flux", axes=(),
                         columns=("bond_count", "radius_m", "geometry", "flux"))
        _emit(args, spec.header(), run_sweep(spec, flux_fn))
        return 0

    if not args.network:
        raise UsageError("give --network FILE or --flux B R GEOMETRY")
    try:
        with open(args.network) as handle:
            net = bn.parse_network_file(handle, name=args.network)
    except OSError as exc:
        raise UsageError(f"cannot read network file: {exc}") from None
    except bn.NetworkFormatError as exc:
        raise UsageError(str(exc)) from None
    if args.collapse is not None and args.collapse not in net.nodes:
        raise UsageError(f"unknown collapse node {args.collapse!r}")

    def net_fn(point: dict) -> dict:
        capacity = bn.entanglement_capacity(net)
        out = {
            "nodes": len(net.nodes),
            "bond_count": capacity.bond_count,
            "total_log2_chi": capacity.total_log2_chi,
        }
        if args.collapse is not None:
            out["collapse_source"] = args.collapse
            out["tau_b_s"] = args.tau_b
            out["propagation_time_s"] = bn.collapse_propagation_time(
                net, args.collapse, tau_b=args.tau_b)
        return out

    spec = SweepSpec(target="bondnet", axes=(),
                     columns=("nodes", "bond_count", "total_log2_chi",
                              "collapse_source", "tau_b_s", "propagation_time_s"))
    _emit(args, spec.header(), run_sweep(spec, net_fn))
    return 0


# --- check-eq --------------------------------------------------------------------

def _check_line(line: str) -> dict:
    expression, _, expected_text = line.partition("=>")
    expression = expression.strip()
    row = {"expression": expression, "value": None, "si_dimension": None,
           "status": "ok", "error": None}
    try:
        node = dimparse.parse(expression)
        quantity = dimparse.evaluate(node)
        row["value"] = quantity.value
        row["si_dimension"] = str(quantity.dim)
        if expected_text.strip():
            expected = dimparse.parse_expected_dimension(expected_text)
            report = dimparse.check_dimension(node, expected)
            if not report.passed:
                row["status"] = "dimension-mismatch"
                row["error"] = str(report)
    except dimparse.ParseError as exc:
        row["status"] = "parse-error"
        row["error"] = str(exc)
    except dimparse.EvaluationError as exc:
        row["status"] = exc.label
        row["error"] = str(exc)
    return row


def _cmd_check_eq(args) -> int:
    if args.file:
        try:
            with open(args.file) as handle:
                lines = handle.readlines()
        except OSError as exc:
            raise UsageError(f"cannot read expression file: {exc}") from None
    else:
        lines = sys.stdin.readlines()

    rows = []
    for raw in lines:
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        rows.append(_check_line(line))

    header = ["expression", "value", "si_dimension", "status", "error"]
    _emit(args, header, rows)
    return 1 if any(row["status"] != "ok" for row in rows) else 0


# --- parser -----------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tunnelclock",
        description="Tunneling times, dilation factors, speed-limit bounds, "
                    "bond accounting, and dimension-checked constants algebra.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv",
                        help="output format (default csv)")
    common.add_argument("--output", metavar="PATH", help="write to a file instead of stdout")
    common.add_argument("--workers", type=int, default=1,
                        help="parallel sweep evaluation (output order is unaffected)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("transmission", parents=[common],
                       help="barrier transmission probability")
    p.add_argument("--mass", default="electron", help="particle mass (kg or 'electron')")
    p.add_argument("--v0", help="barrier height (e.g. 10eV)")
    p.add_argument("--width", help="barrier width (e.g. 1nm)")
    p.add_argument("--energy", help="incident energy (e.g. 5eV)")
    p.add_argument("--method", choices=("exact", "opaque"), default="exact")
    p.add_argument("--sweep", action="append", metavar="AXIS",
                   help="energy|v0|width=start:stop:points[:scale]")
    p.set_defaults(handler=_cmd_transmission)

    p = sub.add_parser("tunneltime", parents=[common], help="barrier traversal time")
    p.add_argument("--mass", default="electron")
    p.add_argument("--v0")
    p.add_argument("--width")
    p.add_argument("--energy")
    p.add_argument("--method", choices=("closed", "fd", "both"), default="both")
    p.add_argument("--ceiling", type=float, default=None,
                   help="flag divergence when the closed form exceeds this many seconds")
    p.add_argument("--sweep", action="append", metavar="AXIS")
    p.set_defaults(handler=_cmd_tunneltime)

    p = sub.add_parser("dilation", parents=[common],
                       help="gravitational dilation factor, both routes")
    p.add_argument("--preset", choices=tuple(PRESETS))
    p.add_argument("--mass-kg", type=float)
    p.add_argument("--radius-m", type=float)
    p.add_argument("--method", choices=("tunneling", "gr", "both"), default="both")
    p.add_argument("--d0", help="causal correlation distance in meters")
    p.add_argument("--b", help="flux proportionality length in meters, or 'canonical'")
    p.add_argument("--sweep", action="append", metavar="AXIS",
                   help="mass|radius|x=start:stop:points[:scale]")
    p.set_defaults(handler=_cmd_dilation)

    p = sub.add_parser("constants", parents=[common],
                       help="derived constants for a choice of b and d0")
    p.add_argument("--b", default="planck", help="'planck' or a length in meters")
    p.add_argument("--d0", help="causal correlation distance in meters")
    p.set_defaults(handler=_cmd_constants)

    p = sub.add_parser("mlbound", parents=[common],
                       help="orthogonalization time vs the speed-limit bound")
    p.add_argument("--levels", help='spectrum as "E:c,E:c,..." (e.g. "0:0.7071,1eV:0.7071")')
    p.add_argument("--random", nargs=2, type=int, metavar=("N", "SEED"),
                   help="random N-level state from SEED")
    p.add_argument("--tol", type=float, default=1e-6,
                   help="orthogonality tolerance on |overlap|")
    p.set_defaults(handler=_cmd_mlbound)

    p = sub.add_parser("bondnet", parents=[common],
                       help="bond capacity, collapse propagation, flux laws")
    p.add_argument("--network", metavar="FILE", help="network description file")
    p.add_argument("--collapse", metavar="NODE", help="propagate a collapse from this node")
    p.add_argument("--tau-b", type=float, default=1.0, help="per-bond delay unit, seconds")
    p.add_argument("--flux", nargs=3, metavar=("B", "R", "GEOMETRY"),
                   help="flux of B bonds at radius R for area_law_2d or volume_3d")
    p.set_defaults(handler=_cmd_bondnet)

    p = sub.add_parser("check-eq", parents=[common],
                       help="dimension-check expressions, one per line")
    p.add_argument("--file", metavar="FILE", help="expression file (default: stdin)")
    p.set_defaults(handler=_cmd_check_eq)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except UsageError as exc:
        print(f"tunnelclock: error: {exc}", file=sys.stderr)
        return 2


def console_main() -> None:
    sys.exit(main())
