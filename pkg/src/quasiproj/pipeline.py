"""Run configuration and the enumerate, window, project, analyse, export pipeline."""

from __future__ import annotations

import time
from dataclasses import dataclass, field, replace
from pathlib import Path

from .coxeter_core import GroupId, cartan_matrix
from .errors import ConfigError, QuasiprojError
from .export import RenderOptions, export_points, read_config, render_svg
from .lattice_window import (
    DEFAULT_BUDGET,
    LatticeKind,
    WindowSpec,
    complement_axes,
    default_range,
    lattice_array,
    voronoi_vertices,
    window_radius,
)
from .projector import (
    EdgeSet,
    ProjectedPointSet,
    SymmetryReport,
    cut_and_project,
    detect_symmetry_order,
    dihedral_closure,
    minimal_edges,
)
from .spectral_frame import orthonormal_frame

CLOSURES = ("dihedral", "none")


@dataclass(frozen=True)
class RunConfig:
    """One projection run. ``plane`` and ``axes`` are 1-based, as on the command line."""

    group: GroupId
    lattice: LatticeKind = LatticeKind.ROOT
    range: int | None = None           # None: default_range(group)
    plane: int | None = 1
    axes: tuple[int, int] | None = None  # overrides plane
    window: float | str = "auto"
    csv: Path | None = None
    json: Path | None = None
    svg: Path | None = None
    edges: bool = False
    closure: str = "dihedral"
    max_order: int = 24
    budget: int | None = DEFAULT_BUDGET
    render: RenderOptions = field(default_factory=RenderOptions)

    def __post_init__(self):
        n = self.group.rank
        if self.axes is not None:
            i, j = self.axes
            if i == j or not (1 <= i <= n and 1 <= j <= n):
                raise ConfigError(f"axes must be two distinct indices in 1..{n}, got {self.axes}")
        elif self.plane is None or not 1 <= self.plane <= n // 2:
            raise ConfigError(f"plane must be in 1..{n // 2} for {self.group}, got {self.plane}")
        if self.range is not None and self.range < 0:
            raise ConfigError(f"range must be >= 0, got {self.range}")
        if self.closure not in CLOSURES:
            raise ConfigError(f"closure must be one of {CLOSURES}, got {self.closure!r}")
        if self.max_order < 1:
            raise ConfigError("max-order must be >= 1")
        if self.window != "auto" and not (isinstance(self.window, float) and self.window > 0):
            raise ConfigError(f"window must be 'auto' or a positive radius, got {self.window!r}")

    @property
    def effective_range(self) -> int:
        return default_range(self.group) if self.range is None else self.range

    @property
    def par_axes(self) -> tuple[int, int]:
        """0-based frame indices of the parallel plane."""
        if self.axes is not None:
            return (self.axes[0] - 1, self.axes[1] - 1)
        n = self.group.rank
        return (self.plane - 1, n - self.plane)


@dataclass(frozen=True)
class Summary:
    config: RunConfig
    par_axes: tuple[int, int]
    perp_axes: tuple[int, ...]
    radius: float
    min_radius: float | None
    candidates: int
    count: int
    symmetry: SymmetryReport | None
    edge_length: float | None
    edge_count: int | None
    wall_time: float
    points: ProjectedPointSet = field(repr=False)
    edges: EdgeSet | None = field(repr=False, default=None)

    def lines(self) -> list[str]:
        out = [
            f"group={self.config.group}",
            f"lattice={self.config.lattice.value}",
            f"range={self.config.effective_range}",
            f"closure={self.config.closure}",
            f"parallel_axes={self.par_axes[0] + 1},{self.par_axes[1] + 1}",
            f"perp_axes={','.join(str(i + 1) for i in self.perp_axes)}",
            f"radius={self.radius:.12g}",
            f"candidates={self.candidates}",
            f"points={self.count}",
        ]
        if self.min_radius is not None:
            out.append(f"min_vertex_radius={self.min_radius:.12g}")
        if self.symmetry is not None:
            out += [f"symmetry={self.symmetry.order}", f"mirror={str(self.symmetry.mirror).lower()}"]
        if self.edge_length is not None:
            out += [f"edge_length={self.edge_length:.12g}", f"edges={self.edge_count}"]
        out.append(f"wall_time={self.wall_time:.3f}")
        return out


def _convert(key: str, value: str):
    if key in ("range", "plane", "max_order", "budget"):
        return int(value)
    if key == "axes":
        parts = [p for p in value.replace(" ", "").split(",") if p]
        if len(parts) != 2:
            raise ConfigError(f"axes must be 'i,j', got {value!r}")
        return (int(parts[0]), int(parts[1]))
    if key == "window":
        return "auto" if value == "auto" else float(value)
    if key == "edges":
        if value.lower() not in ("true", "false", "1", "0", "yes", "no"):
            raise ConfigError(f"edges must be a boolean, got {value!r}")
        return value.lower() in ("true", "1", "yes")
    if key in ("csv", "json", "svg"):
        return Path(value)
    if key == "group":
        return GroupId.parse(value)
    if key == "lattice":
        return LatticeKind.parse(value)
    return value


_RENDER_KEYS = {"canvas": int, "point_radius": float}


def make_config(values: dict, base: dict | None = None) -> RunConfig:
    """Build a config from string or typed values; ``values`` override ``base``."""
    merged = dict(base or {})
    merged.update({k: v for k, v in values.items() if v is not None})
    render = {}
    kwargs = {}
    try:
        for k, v in merged.items():
            if k in _RENDER_KEYS:
                render[k] = _RENDER_KEYS[k](v)
            elif k in RunConfig.__dataclass_fields__ and k != "render":
                kwargs[k] = _convert(k, v) if isinstance(v, str) else v
            else:
                raise ConfigError(f"unknown config key {k!r}")
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"bad config value: {exc}") from None
    if "group" not in kwargs:
        raise ConfigError("group is required")
    if isinstance(kwargs["group"], str):
        kwargs["group"] = GroupId.parse(kwargs["group"])
    if "lattice" in kwargs and isinstance(kwargs["lattice"], str):
        kwargs["lattice"] = LatticeKind.parse(kwargs["lattice"])
    if "axes" in kwargs and kwargs["axes"] is not None:
        kwargs["plane"] = None
    if "window" in kwargs and kwargs["window"] != "auto":
        kwargs["window"] = float(kwargs["window"])
    cfg = RunConfig(**kwargs)
    if render:
        cfg = replace(cfg, render=replace(cfg.render, **render))
    return cfg


def load_config(path: str | Path, overrides: dict | None = None) -> RunConfig:
    return make_config(overrides or {}, read_config(path))


def _meta(cfg: RunConfig, par: tuple[int, int], radius: float) -> dict:
    return {
        "group": str(cfg.group),
        "lattice": cfg.lattice.value,
        "range": cfg.effective_range,
        "plane": [par[0] + 1, par[1] + 1],
        "radius": radius,
        "closure": cfg.closure,
    }


def run_pipeline(cfg: RunConfig) -> Summary:
    """Enumerate the box, close it under the dihedral group, window, project, analyse and export."""
    t0 = time.perf_counter()
    try:
        frame = orthonormal_frame(cartan_matrix(cfg.group))
        par = cfg.par_axes
        perp = complement_axes(frame.rank, par)
        if cfg.window == "auto":
            window = window_radius(voronoi_vertices(cfg.group, cfg.lattice), frame, perp)
        else:
            window = WindowSpec(perp, float(cfg.window))
        a = lattice_array(cfg.group, cfg.lattice, cfg.effective_range, cfg.budget)
        if cfg.closure == "dihedral":
            a = dihedral_closure(a, cfg.group, cfg.budget)
        ps = cut_and_project(a, frame, par, window)
        sym = detect_symmetry_order(ps, cfg.max_order) if len(ps) else None
        edges = minimal_edges(ps) if cfg.edges and len(ps) >= 2 else None
        meta = _meta(cfg, par, window.radius)
        if cfg.csv:
            export_points(ps, None, "csv", cfg.csv)
        if cfg.json:
            export_points(ps, edges, "json", cfg.json, meta)
        if cfg.svg:
            with open(cfg.svg, "w", newline="\n") as fh:
                fh.write(render_svg(ps, edges, replace(cfg.render, draw_edges=edges is not None)))
    except QuasiprojError as exc:
        exc.args = (f"{cfg.group} {cfg.lattice.value} range={cfg.effective_range}: {exc}",)
        raise
    except OSError as exc:
        raise ConfigError(f"I/O failure: {exc}") from exc
    return Summary(
        config=cfg,
        par_axes=par,
        perp_axes=perp,
        radius=window.radius,
        min_radius=window.min_radius,
        candidates=len(a),
        count=len(ps),
        symmetry=sym,
        edge_length=edges.edge_length if edges else None,
        edge_count=len(edges) if edges else None,
        wall_time=time.perf_counter() - t0,
        points=ps,
        edges=edges,
    )
