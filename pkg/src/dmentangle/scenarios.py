"""Scenario configuration, figure presets and sweep execution.

Config files are flat ``key = value`` text, one entry per line, ``#`` starts a
comment and lists are comma separated::

    scenario = fig1
    jx = 1.0
    jy = 1.0
    jz = 1.0
    dz = 1.0
    bza = 1.0
    bzb = 1.0
    alpha_values = 1.0, 2.0, 3.0
    theta = pi/4
    windows = 0:50, 0:100, 0:200

Unlisted couplings default to 0 and the grid to ``t_max = 100`` with
``n_steps = 10001``.
"""

import json
import math
import os
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, fields
from pathlib import Path

from .entanglement import Subsystem, negativity_series, time_average
from .errors import ConfigError, DMEntangleError, ParseError, UnknownPreset
from .model import FIGURE_DZ_VALUES, FIGURE_PARAMETERS, SpinParameters
from .states import InitialStateSpec

DEFAULT_T_MAX = 100.0
DEFAULT_N_STEPS = 10001
DEFAULT_WINDOWS = ((0.0, 50.0), (0.0, 100.0), (0.0, 200.0))
FORMATS = ("csv", "json")
CSV_HEADER = "t,negativity"

_PARAM_KEYS = tuple(f.name for f in fields(SpinParameters))
_KEYS = (
    "scenario",
    *_PARAM_KEYS,
    "alpha_values",
    "dz_values",
    "theta",
    "phi",
    "t_max",
    "n_steps",
    "windows",
    "subsystem",
    "format",
)
_NAME_RE = re.compile(r"^[A-Za-z0-9_.-]+$")


@dataclass(frozen=True)
class ScenarioConfig:
    name: str
    params: SpinParameters
    alpha_values: tuple = ()
    dz_values: tuple = ()
    theta: float = math.pi / 4
    phi: float = 0.0
    t_max: float = DEFAULT_T_MAX
    n_steps: int = DEFAULT_N_STEPS
    windows: tuple = DEFAULT_WINDOWS
    subsystem: Subsystem = Subsystem.QubitA
    output_format: str = "csv"

    def __post_init__(self):
        object.__setattr__(self, "alpha_values", tuple(complex(a) for a in self.alpha_values))
        object.__setattr__(self, "dz_values", tuple(float(d) for d in self.dz_values))
        object.__setattr__(
            self, "windows", tuple((float(lo), float(hi)) for lo, hi in self.windows)
        )
        object.__setattr__(self, "subsystem", Subsystem.parse(self.subsystem))
        if not _NAME_RE.match(self.name):
            raise ConfigError(f"scenario name {self.name!r} must match {_NAME_RE.pattern}")
        if not self.alpha_values and not self.dz_values:
            raise ConfigError("at least one of alpha_values / dz_values must be non-empty")
        if self.dz_values and len(self.alpha_values) > 1:
            raise ConfigError("a dz sweep takes a single alpha value")
        if not (isinstance(self.n_steps, int) and self.n_steps >= 2):
            raise ConfigError(f"n_steps must be an integer >= 2, got {self.n_steps!r}")
        if not (math.isfinite(self.t_max) and self.t_max > 0):
            raise ConfigError(f"t_max must be positive, got {self.t_max!r}")
        for lo, hi in self.windows:
            if not (0.0 <= lo < hi and math.isfinite(hi)):
                raise ConfigError(f"window {lo}:{hi} must satisfy 0 <= t_lo < t_hi")
        if self.output_format not in FORMATS:
            raise ConfigError(f"format must be one of {FORMATS}, got {self.output_format!r}")
        for angle in ("theta", "phi"):
            value = getattr(self, angle)
            if not 0.0 <= value < 2 * math.pi:
                raise ConfigError(f"{angle} must lie in [0, 2pi), got {value!r}")

    @property
    def sweep_param(self) -> str:
        return "dz" if self.dz_values else "alpha"

    def sweep(self):
        """``(param, value, SpinParameters, InitialStateSpec)`` for each sweep point."""
        if self.dz_values:
            alpha = self.alpha_values[0] if self.alpha_values else 1.0
            for dz in self.dz_values:
                yield (
                    "dz",
                    dz,
                    self.params.replace(dz=dz),
                    InitialStateSpec.substituted(alpha, self.theta, self.phi),
                )
        else:
            for alpha in self.alpha_values:
                yield (
                    "alpha",
                    alpha,
                    self.params,
                    InitialStateSpec.substituted(alpha, self.theta, self.phi),
                )

    def replace(self, **changes) -> "ScenarioConfig":
        values = {f.name: getattr(self, f.name) for f in fields(self)}
        values.update(changes)
        return ScenarioConfig(**values)


def _preset(name, params, alphas=(1.0, 2.0, 3.0), dzs=()):
    return ScenarioConfig(name=name, params=params, alpha_values=alphas, dz_values=dzs)


PRESETS = {
    "fig1": _preset("fig1", FIGURE_PARAMETERS["fig1"]),
    "fig2": _preset("fig2", FIGURE_PARAMETERS["fig2"]),
    "fig3": _preset("fig3", FIGURE_PARAMETERS["fig3"]),
    "fig4": _preset("fig4", FIGURE_PARAMETERS["fig4"]),
    "fig5": _preset("fig5", FIGURE_PARAMETERS["fig5"], alphas=(1.0,), dzs=FIGURE_DZ_VALUES),
}


# ---------------------------------------------------------------- formatting


def format_real(x: float) -> str:
    """Shortest round-tripping text for a float, without a trailing ``.0``."""
    s = repr(float(x))
    return s[:-2] if s.endswith(".0") else s


def format_complex(z: complex) -> str:
    z = complex(z)
    if z.imag == 0.0 and math.copysign(1.0, z.imag) > 0:
        return format_real(z.real)
    sign = "-" if math.copysign(1.0, z.imag) < 0 else "+"
    return f"{format_real(z.real)}{sign}{format_real(abs(z.imag))}j"


def format_value(v) -> str:
    return format_complex(v) if isinstance(v, complex) else format_real(v)


def _json_value(v):
    if isinstance(v, complex):
        return v.real if v.imag == 0.0 else format_complex(v)
    return v


# ---------------------------------------------------------------- parsing

_PI_RE = re.compile(r"^(?P<sign>[+-]?)(?:(?P<num>[0-9.eE+-]+)\s*\*\s*)?pi(?:\s*/\s*(?P<den>[0-9.eE+-]+))?$")


def parse_real(text: str) -> float:
    """Parse a float; also accepts ``pi``, ``k*pi``, ``pi/n`` and ``k*pi/n``."""
    s = text.strip()
    m = _PI_RE.match(s)
    if m:
        value = math.pi
        if m["num"]:
            value *= float(m["num"])
        if m["den"]:
            value /= float(m["den"])
        value = -value if m["sign"] == "-" else value
    else:
        value = float(s)
    if not math.isfinite(value):
        raise ValueError(f"{text!r} is not finite")
    return value


def parse_complex(text: str) -> complex:
    s = text.strip().replace(" ", "")
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    try:
        return complex(parse_real(s))
    except ValueError:
        z = complex(s)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"{text!r} is not finite")
    return z


def parse_windows(text: str):
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        lo, sep, hi = part.partition(":")
        if not sep:
            raise ValueError(f"window {part!r} must look like t_lo:t_hi")
        out.append((parse_real(lo), parse_real(hi)))
    return tuple(out)


def _split_list(text):
    return [item for item in (p.strip() for p in text.split(",")) if item]


def _convert(key, raw):
    if key == "scenario":
        return raw.strip()
    if key in _PARAM_KEYS or key in ("theta", "phi", "t_max"):
        return parse_real(raw)
    if key == "n_steps":
        value = raw.strip()
        if not re.fullmatch(r"[0-9]+", value):
            raise ValueError(f"n_steps must be a positive integer, got {value!r}")
        return int(value)
    if key == "alpha_values":
        return tuple(parse_complex(v) for v in _split_list(raw))
    if key == "dz_values":
        return tuple(parse_real(v) for v in _split_list(raw))
    if key == "windows":
        return parse_windows(raw)
    if key == "subsystem":
        return Subsystem.parse(raw)
    if key == "format":
        value = raw.strip().lower()
        if value not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}")
        return value
    raise KeyError(key)  # pragma: no cover - keys are checked by the caller


def parse_config(text: str, *, path=None, default_name="custom") -> ScenarioConfig:
    """Parse config text; errors carry 1-based line and column numbers."""
    values = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0]
        if not body.strip():
            continue
        key_part, sep, value_part = body.partition("=")
        key = key_part.strip()
        key_col = len(key_part) - len(key_part.lstrip()) + 1
        if not sep:
            raise ParseError("expected 'key = value'", lineno, key_col, path)
        if key not in _KEYS:
            raise ParseError(f"unknown key {key!r}", lineno, key_col, path)
        if key in values:
            raise ParseError(f"duplicate key {key!r}", lineno, key_col, path)
        value_col = len(key_part) + 2 + (len(value_part) - len(value_part.lstrip()))
        try:
            values[key] = _convert(key, value_part)
        except ValueError as exc:
            raise ParseError(f"bad value for {key!r}: {exc}", lineno, value_col, path) from None

    params = SpinParameters(**{k: values.pop(k) for k in _PARAM_KEYS if k in values})
    kwargs = {
        "name": values.pop("scenario", default_name),
        "params": params,
        "subsystem": values.pop("subsystem", Subsystem.QubitA),
        "output_format": values.pop("format", "csv"),
    }
    kwargs.update(values)
    try:
        return ScenarioConfig(**kwargs)
    except ConfigError as exc:
        raise ParseError(str(exc), path=path) from None
    except ValueError as exc:
        raise ParseError(str(exc), path=path) from None


def write_config(config: ScenarioConfig) -> str:
    """Serialise `config` so that `parse_config` reproduces it exactly."""
    p = config.params
    lines = [f"scenario = {config.name}"]
    lines += [f"{k} = {format_real(getattr(p, k))}" for k in _PARAM_KEYS]
    lines += [
        "alpha_values = " + ", ".join(format_complex(a) for a in config.alpha_values),
        "dz_values = " + ", ".join(format_real(d) for d in config.dz_values),
        f"theta = {format_real(config.theta)}",
        f"phi = {format_real(config.phi)}",
        f"t_max = {format_real(config.t_max)}",
        f"n_steps = {config.n_steps}",
        "windows = " + ", ".join(f"{format_real(lo)}:{format_real(hi)}" for lo, hi in config.windows),
        f"subsystem = {config.subsystem.value}",
        f"format = {config.output_format}",
    ]
    return "\n".join(lines) + "\n"


def load_config(target) -> ScenarioConfig:
    """Resolve a preset name or read a config file."""
    target = os.fspath(target)
    if target in PRESETS:
        return PRESETS[target]
    path = Path(target)
    if path.is_file():
        try:
            text = path.read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as exc:
            raise ConfigError(f"cannot read {path}: {exc}") from None
        return parse_config(text, path=str(path), default_name=path.stem)
    if os.sep in target or "." in target:
        raise ConfigError(f"no such config file: {target}")
    raise UnknownPreset(f"unknown preset {target!r}; choose from {', '.join(PRESETS)}")


# ---------------------------------------------------------------- running


@dataclass
class SweepResult:
    param: str
    value: object
    series: object = None
    averages: dict = field(default_factory=dict)  # (t_lo, t_hi) -> average
    error: str | None = None


@dataclass
class Report:
    config: ScenarioConfig
    results: list
    files: list = field(default_factory=list)

    @property
    def failures(self):
        return [r for r in self.results if r.error is not None]

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> dict:
        windows = []
        for window in self.config.windows:
            averages = [
                {"param": r.param, "value": _json_value(r.value), "average": r.averages[window]}
                for r in self.results
                if r.error is None
            ]
            windows.append({"t_lo": window[0], "t_hi": window[1], "averages": averages})
        return {
            "scenario": self.config.name,
            "subsystem": self.config.subsystem.value,
            "windows": windows,
        }

    def table(self) -> str:
        heads = [f"[{format_real(lo)},{format_real(hi)}]" for lo, hi in self.config.windows]
        rows = [["param", "value", *heads]]
        for r in self.results:
            if r.error is None:
                cells = [f"{r.averages[w]:.4f}" for w in self.config.windows]
            else:
                cells = ["failed"] * len(heads)
            rows.append([r.param, format_value(r.value), *cells])
        widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
        lines = [f"scenario {self.config.name}  subsystem {self.config.subsystem.value}"]
        lines += ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in rows]
        return "\n".join(lines)


def window_points(config: ScenarioConfig, window) -> int:
    """Grid size giving a window the same step as the main series."""
    dt = config.t_max / (config.n_steps - 1)
    return max(2, int(round((window[1] - window[0]) / dt)) + 1)


def _run_one(config: ScenarioConfig, point) -> SweepResult:
    param, value, params, spec = point
    result = SweepResult(param, value)
    try:
        result.series = negativity_series(
            params, spec, config.t_max, config.n_steps, config.subsystem
        )
        for window in config.windows:
            lo, hi = window
            if lo == 0.0 and hi == config.t_max:
                series = result.series
            else:
                series = negativity_series(
                    params, spec, hi, window_points(config, window), config.subsystem, t_min=lo
                )
            result.averages[window] = time_average(series)
    except (DMEntangleError, ValueError, ArithmeticError) as exc:
        result.series = None
        result.averages = {}
        result.error = f"{type(exc).__name__}: {exc}"
    return result


def compute_scenario(config: ScenarioConfig, jobs: int = 1) -> Report:
    """Evaluate every sweep point; results keep sweep order whatever `jobs` is."""
    points = list(config.sweep())
    if jobs > 1 and len(points) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(lambda pt: _run_one(config, pt), points))
    else:
        results = [_run_one(config, pt) for pt in points]
    return Report(config, results)


def series_filename(config: ScenarioConfig, result: SweepResult) -> str:
    return f"{config.name}_{result.param}={format_value(result.value)}.{config.output_format}"


def render_series(config: ScenarioConfig, result: SweepResult) -> str:
    s = result.series
    if config.output_format == "csv":
        rows = [CSV_HEADER]
        rows += [f"{t:.17g},{v:.17g}" for t, v in zip(s.times.tolist(), s.values.tolist())]
        return "\n".join(rows) + "\n"
    doc = {
        "scenario": config.name,
        "subsystem": config.subsystem.value,
        "param": result.param,
        "value": _json_value(result.value),
        "t": s.times.tolist(),
        "negativity": s.values.tolist(),
    }
    return json.dumps(doc) + "\n"


def _write(path: Path, text: str):
    try:
        path.write_text(text, encoding="utf-8", newline="\n")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc


def run_scenario(config: ScenarioConfig, out_dir=".", jobs: int = 1) -> Report:
    """Compute all sweeps, write one series file each plus ``<name>_summary.json``."""
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OSError(f"cannot create output directory {out}: {exc.strerror or exc}") from exc
    report = compute_scenario(config, jobs)
    for result in report.results:
        if result.error is None:
            path = out / series_filename(config, result)
            _write(path, render_series(config, result))
            report.files.append(path)
    summary_path = out / f"{config.name}_summary.json"
    _write(summary_path, json.dumps(report.summary(), indent=2) + "\n")
    report.files.append(summary_path)
    return report
