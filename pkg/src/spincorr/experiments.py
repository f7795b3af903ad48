"""Config-driven correlation sweeps with a stable CSV output contract.

A config is a single JSON document. Times anywhere in the document are in the
unit named by the top-level ``"unit"`` field ("s" or "ms", default "s") and
are converted to seconds once at parse time. Angular frequencies are rad/s;
any numeric key may be given with an ``_over_pi`` suffix instead, meaning the
value times pi.

Document layout::

    {
      "unit": "ms",
      "hamiltonian": {"type": "const", "hz_over_pi": -100}
            | {"type": "timedep", "terms": [{"axis": "y", "envelope":
                 {"type": "exp_decay", "amplitude_over_pi": 500, "rate": 300}
               | {"type": "sampled", "times": [...], "values": [...]}}]},
      "initial_state": {"type": "ket", "amplitudes": [[re, im], [re, im]]}
            | {"type": "rotation", "axis": "x", "angle_over_pi": 0.5}
            | {"type": "thermal", "beta": 0.01},
      "operators": [{"axis": "x", "time": 0}, {"axis": "y", "time": "t1"}]
            | {"family": "xx" | "xy", "dt": 0.3},
      "sweep": [{"variable": "t1", "start": 0.5, "stop": 10, "step": 0.5}],
      "backend": "all" | "protocol" | ["protocol", "oracle", "nmr"],
      "molecule": {"nu1": 0, "nu1_ref": 0, "nu2": 100, "nu2_ref": 0,
                   "j12": 214.95},                      # required for nmr
      "steps": 1024                                     # time-dependent only
    }

Swept operator times reference sweep variables by name; the order-scan form
sweeps the single variable ``"n"``. The CSV written for a run has the fixed
header ``t_1_s,...,t_k_s,n,re_protocol,im_protocol,re_oracle,im_oracle,
re_nmr,im_nmr,abs_err_max`` where the time columns follow the sweep-list
order; unrequested backends leave their cells empty, and every float is
printed with 17 significant digits so reruns are byte-identical.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .nmr import MoleculeParams, run_nmr_experiment
from .oracle import correlation_direct
from .protocol import CorrelationSpec, run_protocol, run_protocol_thermal
from .qcore import (
    ConstHamiltonian,
    ExpDecay,
    KET_0,
    PauliAxis,
    Sampled,
    TimeDepHamiltonian,
    check_state,
    gibbs_weights,
    normalized,
    rotation,
    thermal_state,
)

BACKENDS = ("protocol", "oracle", "nmr")


class ConfigError(ValueError):
    """Config validation failure; the message names the offending field."""


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _fail(path: str, msg: str):
    raise ConfigError(f"{path}: {msg}")


def _get_number(doc: dict, key: str, path: str, default=None):
    """Fetch a float that may also be spelled `<key>_over_pi`."""
    plain, scaled = doc.get(key), doc.get(key + "_over_pi")
    if plain is not None and scaled is not None:
        _fail(f"{path}.{key}", "give either the plain value or the _over_pi form, not both")
    if scaled is not None:
        plain = float(scaled) * math.pi
    if plain is None:
        if default is None:
            _fail(f"{path}.{key}", "missing required number")
        return float(default)
    if not isinstance(plain, (int, float)) or isinstance(plain, bool):
        _fail(f"{path}.{key}", "expected a number")
    return float(plain)


@dataclass(frozen=True)
class SweepVar:
    variable: str
    start: float
    stop: float
    step: float

    def values(self):
        if self.variable == "n":
            return list(range(int(self.start), int(self.stop) + 1, int(self.step)))
        count = int(math.floor((self.stop - self.start) / self.step + 1e-9)) + 1
        return [self.start + k * self.step for k in range(count)]


@dataclass(frozen=True)
class OrderScan:
    family: str
    dt: float


@dataclass(frozen=True)
class ExperimentConfig:
    hamiltonian: object
    initial: object  # 2-vector, or ("thermal", beta)
    operators: object  # list of (axis, time-or-varname) or OrderScan
    sweeps: tuple
    backends: tuple
    molecule: MoleculeParams | None = None
    steps: int = 1024

    @property
    def time_variables(self) -> tuple:
        return tuple(s.variable for s in self.sweeps if s.variable != "n")


def order_scan_spec(family: str, n: int, dt: float) -> CorrelationSpec:
    """Correlation spec for the fixed-interval order scans.

    Times are t_k = k*dt. The "xx" family probes x at every slot; the "xy"
    family alternates, with y on the odd slots and x on slot 0 and the even
    slots.
    """
    if n < 2:
        raise ValueError("order scans start at n = 2")
    if dt <= 0:
        raise ValueError("dt must be positive")
    if family == "xx":
        axes = [PauliAxis.X] * n
    elif family == "xy":
        axes = [PauliAxis.Y if k % 2 == 1 else PauliAxis.X for k in range(n)]
    else:
        raise ValueError(f"unknown family {family!r}, expected 'xx' or 'xy'")
    return CorrelationSpec(tuple((axes[k], k * dt) for k in range(n)))


# ---------------------------------------------------------------------------
# config parsing

def _parse_envelope(doc, unit_scale, path):
    if not isinstance(doc, dict):
        _fail(path, "expected an object")
    kind = doc.get("type")
    if kind == "exp_decay":
        return ExpDecay(_get_number(doc, "amplitude", path), _get_number(doc, "rate", path))
    if kind == "sampled":
        times = doc.get("times")
        values = doc.get("values")
        if not isinstance(times, list) or not isinstance(values, list):
            _fail(path, "sampled envelope needs 'times' and 'values' lists")
        try:
            return Sampled(tuple(float(t) * unit_scale for t in times),
                           tuple(float(v) for v in values))
        except ValueError as exc:
            _fail(path, str(exc))
    _fail(f"{path}.type", "expected 'exp_decay' or 'sampled'")


def _parse_hamiltonian(doc, unit_scale, path="hamiltonian"):
    if not isinstance(doc, dict):
        _fail(path, "expected an object")
    kind = doc.get("type")
    if kind == "const":
        return ConstHamiltonian(
            h0=_get_number(doc, "h0", path, default=0.0),
            hx=_get_number(doc, "hx", path, default=0.0),
            hy=_get_number(doc, "hy", path, default=0.0),
            hz=_get_number(doc, "hz", path, default=0.0),
        )
    if kind == "timedep":
        terms = doc.get("terms")
        if not isinstance(terms, list) or not terms:
            _fail(f"{path}.terms", "expected a non-empty list")
        parsed = []
        for i, term in enumerate(terms):
            tpath = f"{path}.terms[{i}]"
            if not isinstance(term, dict) or "axis" not in term or "envelope" not in term:
                _fail(tpath, "expected an object with 'axis' and 'envelope'")
            try:
                axis = PauliAxis.from_str(term["axis"])
            except ValueError as exc:
                _fail(f"{tpath}.axis", str(exc))
            parsed.append((axis, _parse_envelope(term["envelope"], unit_scale, f"{tpath}.envelope")))
        return TimeDepHamiltonian(tuple(parsed))
    _fail(f"{path}.type", "expected 'const' or 'timedep'")


def _parse_initial(doc, path="initial_state"):
    if not isinstance(doc, dict):
        _fail(path, "expected an object")
    kind = doc.get("type")
    if kind == "ket":
        amps = doc.get("amplitudes")
        if not isinstance(amps, list) or len(amps) != 2:
            _fail(f"{path}.amplitudes", "expected two [re, im] pairs")
        try:
            psi = np.array([complex(a[0], a[1]) for a in amps])
            return check_state(normalized(psi))
        except (TypeError, IndexError, ValueError):
            _fail(f"{path}.amplitudes", "expected two [re, im] pairs")
    if kind == "rotation":
        try:
            axis = PauliAxis.from_str(doc.get("axis", ""))
        except ValueError as exc:
            _fail(f"{path}.axis", str(exc))
        angle = _get_number(doc, "angle", path)
        return rotation(axis, angle) @ KET_0
    if kind == "thermal":
        beta = doc.get("beta")
        if beta == "inf":
            beta = math.inf
        if not isinstance(beta, (int, float)) or isinstance(beta, bool) or math.isnan(beta):
            _fail(f"{path}.beta", "expected a number or 'inf'")
        if beta < 0:
            _fail(f"{path}.beta", "must be >= 0")
        return ("thermal", float(beta))
    _fail(f"{path}.type", "expected 'ket', 'rotation' or 'thermal'")


def _parse_operators(doc, unit_scale, path="operators"):
    if isinstance(doc, dict):
        family = doc.get("family")
        if family not in ("xx", "xy"):
            _fail(f"{path}.family", "expected 'xx' or 'xy'")
        dt = _get_number(doc, "dt", path) * unit_scale
        if dt <= 0:
            _fail(f"{path}.dt", "must be positive")
        return OrderScan(family, dt)
    if not isinstance(doc, list) or not doc:
        _fail(path, "expected a non-empty list or an order-scan object")
    ops = []
    for i, op in enumerate(doc):
        opath = f"{path}[{i}]"
        if not isinstance(op, dict) or "axis" not in op or "time" not in op:
            _fail(opath, "expected an object with 'axis' and 'time'")
        try:
            axis = PauliAxis.from_str(op["axis"])
        except ValueError as exc:
            _fail(f"{opath}.axis", str(exc))
        t = op["time"]
        if isinstance(t, str):
            ops.append((axis, t))
        elif isinstance(t, (int, float)) and not isinstance(t, bool):
            ops.append((axis, float(t) * unit_scale))
        else:
            _fail(f"{opath}.time", "expected a number or a sweep variable name")
    if ops[0][1] != 0.0:
        _fail(f"{path}[0].time", "the first operator must act at time 0")
    return ops


def _parse_sweep(doc, unit_scale, path="sweep"):
    if isinstance(doc, dict):
        doc = [doc]
    if not isinstance(doc, list) or not doc:
        _fail(path, "expected an object or a non-empty list")
    out = []
    seen = set()
    for i, sw in enumerate(doc):
        spath = f"{path}[{i}]"
        if not isinstance(sw, dict):
            _fail(spath, "expected an object")
        var = sw.get("variable")
        if not isinstance(var, str) or not var:
            _fail(f"{spath}.variable", "expected a variable name")
        if var in seen:
            _fail(f"{spath}.variable", f"duplicate sweep variable {var!r}")
        seen.add(var)
        scale = 1.0 if var == "n" else unit_scale
        start = _get_number(sw, "start", spath) * scale
        stop = _get_number(sw, "stop", spath) * scale
        step = _get_number(sw, "step", spath) * scale
        if step <= 0:
            _fail(f"{spath}.step", "must be positive")
        if stop < start:
            _fail(f"{spath}.stop", "must be >= start")
        out.append(SweepVar(var, start, stop, step))
    return tuple(out)


def _parse_backends(doc, path="backend"):
    if doc == "all":
        return BACKENDS
    if isinstance(doc, str):
        doc = [doc]
    if not isinstance(doc, list) or not doc:
        _fail(path, "expected 'all', a backend name, or a list of names")
    for b in doc:
        if b not in BACKENDS:
            _fail(path, f"unknown backend {b!r}, expected one of {', '.join(BACKENDS)}")
    return tuple(dict.fromkeys(doc))


def _parse_molecule(doc, path="molecule"):
    if doc is None:
        return None
    if not isinstance(doc, dict):
        _fail(path, "expected an object")
    kwargs = {}
    for key in ("nu1", "nu2", "nu1_ref", "nu2_ref", "j12", "t1_relax", "t2_relax"):
        if key in doc:
            kwargs[key] = _get_number(doc, key, path)
    try:
        return MoleculeParams(**kwargs)
    except ValueError as exc:
        _fail(path, str(exc))


def parse_config(doc: dict) -> ExperimentConfig:
    if not isinstance(doc, dict):
        raise ConfigError("config root: expected a JSON object")
    unit = doc.get("unit", "s")
    if unit not in ("s", "ms"):
        _fail("unit", "expected 's' or 'ms'")
    unit_scale = 1.0 if unit == "s" else 1e-3

    for key in ("hamiltonian", "initial_state", "operators", "sweep", "backend"):
        if key not in doc:
            _fail(key, "missing required field")

    h = _parse_hamiltonian(doc["hamiltonian"], unit_scale)
    initial = _parse_initial(doc["initial_state"])
    operators = _parse_operators(doc["operators"], unit_scale)
    sweeps = _parse_sweep(doc["sweep"], unit_scale)
    backends = _parse_backends(doc["backend"])
    molecule = _parse_molecule(doc.get("molecule"))
    steps = doc.get("steps", 1024)
    if not isinstance(steps, int) or steps < 1:
        _fail("steps", "expected a positive integer")

    sweep_vars = {s.variable for s in sweeps}
    if isinstance(operators, OrderScan):
        if sweep_vars != {"n"}:
            _fail("sweep", "order scans sweep exactly the variable 'n'")
    else:
        if "n" in sweep_vars:
            _fail("sweep", "'n' is only swept with the order-scan operator form")
        referenced = {t for _, t in operators if isinstance(t, str)}
        for var in referenced - sweep_vars:
            _fail("operators", f"time variable {var!r} is not declared in the sweep")
        for var in sweep_vars - referenced:
            _fail("sweep", f"variable {var!r} is not referenced by any operator")

    if "nmr" in backends:
        if molecule is None:
            _fail("molecule", "the nmr backend needs molecule parameters")
        _check_molecule_consistency(h, molecule)

    if isinstance(initial, tuple) and initial[0] == "thermal" and isinstance(h, TimeDepHamiltonian):
        _fail("initial_state", "thermal inputs need a constant Hamiltonian")

    return ExperimentConfig(h, initial, operators, sweeps, backends, molecule, steps)


def _check_molecule_consistency(h, molecule: MoleculeParams):
    """The nmr backend realizes the system Hamiltonian through the molecule's
    Zeeman offset, so the configured Hamiltonian must match it."""
    system_hz = -math.pi * molecule.offset2
    if isinstance(h, ConstHamiltonian):
        if h.hx != 0.0 or h.hy != 0.0:
            _fail("hamiltonian", "the nmr backend supports z-type constant Hamiltonians only")
        if abs(h.hz - system_hz) > 1e-9 * max(1.0, abs(h.hz)):
            _fail("molecule", f"system offset gives hz = {system_hz!r} rad/s "
                              f"but the Hamiltonian has hz = {h.hz!r} rad/s")
    else:
        if system_hz != 0.0:
            _fail("molecule", "time-dependent runs require the system on resonance "
                              "(nu2 == nu2_ref)")


def load_config(path) -> ExperimentConfig:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON ({exc})") from None
    return parse_config(doc)


# ---------------------------------------------------------------------------
# sweep execution

@dataclass(frozen=True)
class SweepRow:
    """One sweep point: coordinates plus the per-backend correlation values."""

    coords: tuple  # (variable, value) pairs in sweep order
    n: int
    values: dict  # backend -> complex

    @property
    def abs_err_max(self) -> float | None:
        vals = [v for v in self.values.values() if v is not None]
        if len(vals) < 2:
            return None
        return max(abs(a - b) for a, b in itertools.combinations(vals, 2))


def _build_spec(cfg: ExperimentConfig, point: dict) -> CorrelationSpec:
    if isinstance(cfg.operators, OrderScan):
        return order_scan_spec(cfg.operators.family, int(point["n"]), cfg.operators.dt)
    ops = []
    for axis, t in cfg.operators:
        ops.append((axis, point[t] if isinstance(t, str) else t))
    return CorrelationSpec(tuple(ops))


def _eigen_decomposition(h: ConstHamiltonian):
    energies, vecs = np.linalg.eigh(h.matrix())
    return energies, vecs


def evaluate_point(cfg: ExperimentConfig, point: dict) -> SweepRow:
    """Evaluate every requested backend at one sweep point."""
    spec = _build_spec(cfg, point)
    thermal = isinstance(cfg.initial, tuple) and cfg.initial[0] == "thermal"
    values = {}
    for backend in BACKENDS:
        if backend not in cfg.backends:
            values[backend] = None
            continue
        try:
            if backend == "protocol":
                if thermal:
                    values[backend] = run_protocol_thermal(spec, cfg.hamiltonian, cfg.initial[1],
                                                           steps=cfg.steps)
                else:
                    values[backend] = run_protocol(spec, cfg.hamiltonian, cfg.initial,
                                                   steps=cfg.steps).f
            elif backend == "oracle":
                if thermal:
                    state = thermal_state(cfg.hamiltonian.matrix(), cfg.initial[1])
                else:
                    state = cfg.initial
                values[backend] = correlation_direct(spec, cfg.hamiltonian, state, steps=cfg.steps)
            else:
                timedep = cfg.hamiltonian if isinstance(cfg.hamiltonian, TimeDepHamiltonian) else None
                if thermal:
                    energies, vecs = _eigen_decomposition(cfg.hamiltonian)
                    w = gibbs_weights(energies, cfg.initial[1])
                    total = 0j
                    for k in range(energies.shape[0]):
                        if w[k] == 0.0:
                            continue
                        total += w[k] * run_nmr_experiment(spec, cfg.molecule, vecs[:, k],
                                                           timedep=timedep, steps=cfg.steps)
                    values[backend] = total
                else:
                    values[backend] = run_nmr_experiment(spec, cfg.molecule, cfg.initial,
                                                         timedep=timedep, steps=cfg.steps)
        except (ValueError, TypeError) as exc:
            coord_txt = ", ".join(f"{k}={v}" for k, v in point.items())
            raise RuntimeError(f"backend {backend!r} failed at sweep point ({coord_txt}): {exc}") from exc
    coords = tuple((s.variable, point[s.variable]) for s in cfg.sweeps)
    return SweepRow(coords=coords, n=spec.order, values=values)


def sweep_points(cfg: ExperimentConfig) -> list:
    """Cartesian product of the sweep values, first variable outermost."""
    grids = [sw.values() for sw in cfg.sweeps]
    names = [sw.variable for sw in cfg.sweeps]
    return [dict(zip(names, combo)) for combo in itertools.product(*grids)]


def run_config(cfg: ExperimentConfig, jobs: int = 1) -> list:
    """Evaluate the whole sweep; rows come back in deterministic sweep order."""
    points = sweep_points(cfg)
    if jobs > 1:
        import multiprocessing

        with multiprocessing.Pool(jobs) as pool:
            return pool.starmap(evaluate_point, [(cfg, pt) for pt in points])
    return [evaluate_point(cfg, pt) for pt in points]


# ---------------------------------------------------------------------------
# CSV output

def csv_header(cfg: ExperimentConfig) -> str:
    time_cols = [f"t_{i + 1}_s" for i in range(len(cfg.time_variables))]
    backend_cols = []
    for b in BACKENDS:
        backend_cols += [f"re_{b}", f"im_{b}"]
    return ",".join(time_cols + ["n"] + backend_cols + ["abs_err_max"])


def rows_to_csv(cfg: ExperimentConfig, rows: list) -> str:
    lines = [csv_header(cfg)]
    for row in rows:
        cells = [_fmt(v) for name, v in row.coords if name != "n"]
        cells.append(str(row.n))
        for b in BACKENDS:
            v = row.values.get(b)
            cells += ["", ""] if v is None else [_fmt(v.real), _fmt(v.imag)]
        err = row.abs_err_max
        cells.append("" if err is None else _fmt(err))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def write_csv(cfg: ExperimentConfig, rows: list, path) -> None:
    text = rows_to_csv(cfg, rows)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
