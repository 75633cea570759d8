"""Run configuration: JSON schema validation and pipeline input assembly.

Unknown keys are rejected at every level so typos fail loudly instead of
silently falling back to defaults.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
import json

import numpy as np

from .dirac import (LeftSpinor, Potential, RightSpinor, canonical_right_spinor,
                    constant_p_left_family, constant_potential, potential_from_beta,
                    solve_left_dirac)
from .errors import ConfigError, ParseError
from .expressions import Expression, parse_expression
from .fields import ComplexField, Grid
from .errors import ValidationError

__all__ = ["RunConfig", "load_config", "parse_config", "build_inputs"]


def _check_keys(obj: dict, allowed: set[str], where: str) -> None:
    unknown = set(obj) - allowed
    if unknown:
        raise ConfigError(f"unknown key(s) {sorted(unknown)} in {where}")


def _complex_pair(value, where: str) -> complex:
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, list) and len(value) == 2 and all(isinstance(v, (int, float)) for v in value):
        return complex(value[0], value[1])
    raise ConfigError(f"{where} must be a number or a [re, im] pair")


@dataclass(frozen=True)
class RunConfig:
    grid: dict
    beta: str | None
    potential: object  # "from_beta" | complex constant
    left_spinor: dict
    right_spinor: object  # "canonical" | {"file": ...}
    mode: str  # "auto" | "fd" | "spectral"
    tolerance: float
    output: dict
    base_dir: Path = field(default_factory=Path)


def load_config(path: str | Path) -> RunConfig:
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return parse_config(raw, base_dir=path.parent)


def parse_config(raw: dict, base_dir: Path | None = None) -> RunConfig:
    if not isinstance(raw, dict):
        raise ConfigError("config root must be a JSON object")
    _check_keys(raw, {"grid", "beta", "potential", "left_spinor", "right_spinor",
                      "mode", "tolerance", "output"}, "config root")

    grid_raw = raw.get("grid")
    if not isinstance(grid_raw, dict):
        raise ConfigError("config needs a 'grid' object")
    _check_keys(grid_raw, {"nx", "ny", "x0", "y0", "length_x", "length_y",
                           "hx", "hy", "periodic_x", "periodic_y"}, "grid")

    beta = raw.get("beta")
    if beta is not None:
        if not isinstance(beta, str):
            raise ConfigError("'beta' must be an expression string")
        try:
            parse_expression(beta)
        except ParseError as exc:
            raise ConfigError(f"invalid beta expression: {exc}") from exc

    potential = raw.get("potential", "from_beta")
    if potential != "from_beta":
        if not isinstance(potential, dict):
            raise ConfigError("'potential' must be \"from_beta\" or {\"constant\": ...}")
        _check_keys(potential, {"constant"}, "potential")
        potential = _complex_pair(potential["constant"], "potential.constant")
    elif beta is None:
        raise ConfigError("potential \"from_beta\" requires a 'beta' expression")

    left = raw.get("left_spinor")
    if not isinstance(left, dict) or len(left) != 1:
        raise ConfigError("'left_spinor' must name exactly one source")
    source = next(iter(left))
    if source == "analytic_family":
        _check_keys(left[source], {"a", "b", "alpha"}, "left_spinor.analytic_family")
    elif source == "picard":
        _check_keys(left[source], {"seed", "tol", "max_iter"}, "left_spinor.picard")
    elif source == "file":
        if not isinstance(left[source], str):
            raise ConfigError("left_spinor.file must be a path string")
    else:
        raise ConfigError(f"unknown left spinor source {source!r}")

    right = raw.get("right_spinor", "canonical")
    if right != "canonical":
        if not (isinstance(right, dict) and set(right) == {"file"} and isinstance(right["file"], str)):
            raise ConfigError("'right_spinor' must be \"canonical\" or {\"file\": path}")
    elif beta is None:
        raise ConfigError("canonical right spinor requires a 'beta' expression")

    mode = raw.get("mode", "auto")
    if mode not in ("auto", "fd", "spectral"):
        raise ConfigError(f"mode must be auto, fd or spectral, got {mode!r}")

    tolerance = raw.get("tolerance", 1e-9)
    if not isinstance(tolerance, (int, float)) or tolerance < 0:
        raise ConfigError("tolerance must be a non-negative number")

    output = raw.get("output", {})
    _check_keys(output, {"csv", "obj", "project_axes"}, "output")
    axes = output.get("project_axes", [1, 2, 3])
    if (not isinstance(axes, list) or len(axes) != 3
            or len(set(axes)) != 3 or not all(a in (1, 2, 3, 4) for a in axes)):
        raise ConfigError("output.project_axes must be three distinct axes from 1..4")

    return RunConfig(
        grid=grid_raw, beta=beta, potential=potential, left_spinor=left,
        right_spinor=right, mode=mode, tolerance=float(tolerance),
        output={"csv": bool(output.get("csv", True)), "obj": bool(output.get("obj", True)),
                "project_axes": axes},
        base_dir=base_dir or Path(),
    )


def build_grid(cfg: RunConfig, refine: int = 1) -> Grid:
    g = cfg.grid
    try:
        nx, ny = int(g["nx"]), int(g["ny"])
    except KeyError as exc:
        raise ConfigError(f"grid needs {exc.args[0]!r}") from exc
    periodic_x = bool(g.get("periodic_x", False))
    periodic_y = bool(g.get("periodic_y", False))
    nx, ny = nx * refine if periodic_x else (nx - 1) * refine + 1, \
        ny * refine if periodic_y else (ny - 1) * refine + 1

    def spacing(axis, n, periodic):
        h_key, l_key = (f"h{axis}", f"length_{axis}")
        if h_key in g and l_key in g:
            raise ConfigError(f"grid: give {h_key} or {l_key}, not both")
        if h_key in g:
            return float(g[h_key]) / refine
        if l_key in g:
            return float(g[l_key]) / (n if periodic else n - 1)
        raise ConfigError(f"grid needs {h_key} or {l_key}")

    try:
        return Grid(nx, ny, spacing("x", nx, periodic_x), spacing("y", ny, periodic_y),
                    x0=float(g.get("x0", 0.0)), y0=float(g.get("y0", 0.0)),
                    periodic_x=periodic_x, periodic_y=periodic_y)
    except ValidationError as exc:
        raise ConfigError(str(exc)) from exc


def _sample_beta(cfg: RunConfig, grid: Grid) -> ComplexField | None:
    if cfg.beta is None:
        return None
    expr = parse_expression(cfg.beta)
    x, y = grid.mesh()
    with np.errstate(all="raise"):
        try:
            vals = np.broadcast_to(np.asarray(expr.evaluate(x, y), dtype=float), grid.shape)
        except FloatingPointError as exc:
            raise ConfigError(f"beta expression is singular on the grid: {exc}") from exc
    return ComplexField(grid, vals.astype(np.complex128))


def _load_spinor_file(path: Path, keys: tuple[str, str], grid: Grid):
    try:
        data = np.load(path)
    except OSError as exc:
        raise ConfigError(f"cannot read spinor file {path}: {exc}") from exc
    try:
        return (ComplexField(grid, np.asarray(data[keys[0]], dtype=np.complex128)),
                ComplexField(grid, np.asarray(data[keys[1]], dtype=np.complex128)))
    except KeyError as exc:
        raise ConfigError(f"spinor file {path} lacks array {exc.args[0]!r}") from exc
    except ValidationError as exc:
        raise ConfigError(f"spinor file {path}: {exc}") from exc


@dataclass
class PipelineInputs:
    grid: Grid
    beta: ComplexField | None
    potential: Potential
    left: LeftSpinor
    right: RightSpinor
    method: str
    solver_iterations: int = 0
    residual_history: list[float] | None = None


def build_inputs(cfg: RunConfig, refine: int = 1, method: str | None = None) -> PipelineInputs:
    """Build grid, potential and both spinors from a validated config.

    ``refine`` multiplies the grid resolution (for convergence studies);
    solver divergence propagates as DivergenceError.
    """
    grid = build_grid(cfg, refine)
    method = method or cfg.mode
    beta = _sample_beta(cfg, grid)

    if cfg.potential == "from_beta":
        potential = potential_from_beta(beta, method)
    else:
        potential = constant_potential(grid, cfg.potential)

    source, spec = next(iter(cfg.left_spinor.items()))
    iterations, history = 0, None
    if source == "analytic_family":
        p0 = complex(potential.p.values[0, 0])
        if potential.p.max_abs() > 0 and np.max(np.abs(potential.p.values - p0)) > 1e-10:
            raise ConfigError("analytic_family needs a constant potential")
        left = constant_p_left_family(p0, float(spec["a"]), float(spec["b"]),
                                      _complex_pair(spec.get("alpha", 1.0), "alpha"), grid)
    elif source == "picard":
        seed = _build_seed(spec.get("seed", {"constant": [1.0, 0.0]}), grid, potential)
        left, history = solve_left_dirac(potential, seed,
                                         tol=float(spec.get("tol", 1e-6)),
                                         max_iter=int(spec.get("max_iter", 500)))
        iterations = len(history)
    else:
        s1, s2 = _load_spinor_file(cfg.base_dir / spec, ("s1", "s2"), grid)
        left = LeftSpinor(s1, s2)

    if cfg.right_spinor == "canonical":
        right = canonical_right_spinor(beta)
    else:
        t1, t2 = _load_spinor_file(cfg.base_dir / cfg.right_spinor["file"], ("t1", "t2"), grid)
        right = RightSpinor(t1, t2)

    return PipelineInputs(grid, beta, potential, left, right, method,
                          solver_iterations=iterations, residual_history=history)


def _build_seed(spec, grid: Grid, potential: Potential) -> LeftSpinor:
    if not isinstance(spec, dict) or len(spec) != 1:
        raise ConfigError("picard seed must name exactly one source")
    kind = next(iter(spec))
    if kind == "constant":
        vals = spec[kind]
        if not (isinstance(vals, list) and len(vals) == 2):
            raise ConfigError("picard seed constant must be a [s1, s2] pair")
        return LeftSpinor(ComplexField.constant(grid, _complex_pair(vals[0], "seed s1")),
                          ComplexField.constant(grid, _complex_pair(vals[1], "seed s2")))
    if kind == "analytic_family":
        _check_keys(spec[kind], {"a", "b", "alpha"}, "picard.seed.analytic_family")
        p0 = complex(potential.p.values[0, 0])
        return constant_p_left_family(p0, float(spec[kind]["a"]), float(spec[kind]["b"]),
                                      _complex_pair(spec[kind].get("alpha", 1.0), "alpha"), grid)
    raise ConfigError(f"unknown picard seed source {kind!r}")
