"""Command-line driver: ``ndorigami <subcommand> CONFIG.json [--depth] [--out] [--format]``.

Exit codes: 0 ok, 2 configuration error, 3 output truncated by the point
cap (partial output is still written), 4 internal error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import asdict, dataclass, field, fields
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import analysis, quaternion
from .construction import GenerationConfig, generate, normalize_angles
from .errors import ConfigError, OrigamiError
from .export import dumps, point_cloud_json, snapshot_csv, snapshot_json, snapshot_svg
from .geometry import format_point, parse_point
from .lattice import (
    DenseEvidence,
    LatticeBasis,
    LatticeVerdict,
    angles_for_lattice,
    hnf_canonicalize,
    lattice_hypothesis_test,
)
from .presets import PRESETS
from .scalar import parse_scalar

log = logging.getLogger("ndorigami")

EXIT_OK, EXIT_CONFIG, EXIT_TRUNCATED, EXIT_INTERNAL = 0, 2, 3, 4

FORMATS = {
    "generate": ("json", "csv"),
    "detect": ("json",),
    "synthesize": ("json",),
    "quat-table": ("markdown", "csv"),
    "polynomials": ("text", "json"),
    "irrelevant": ("json",),
    "basis-search": ("json",),
}


@dataclass
class RunConfig:
    dimension: int
    angles: list = field(default_factory=list)
    preset: Optional[str] = None
    depth: int = 3
    retention_box: Optional[list] = None
    margin_factor: str = "2"
    max_points: int = 10**6
    out: Optional[str] = None
    format: Optional[str] = None
    lattice: Optional[list] = None
    tau: Optional[list] = None
    reverse: bool = False
    distinct_degrees: bool = False
    segment: Optional[list] = None
    svg_lines: bool = True
    seed: int = 0

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
        if "dimension" not in data:
            raise ConfigError("config needs 'dimension'")
        cfg = cls(**data)
        cfg.validate()
        return cfg

    @classmethod
    def from_json(cls, text: str) -> "RunConfig":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid JSON: {exc}") from exc
        return cls.from_dict(data)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def validate(self) -> None:
        if not isinstance(self.dimension, int) or self.dimension < 2:
            raise ConfigError("dimension must be an integer >= 2")
        if self.preset is not None and self.angles:
            raise ConfigError("give either 'angles' or 'preset', not both")
        if self.preset is not None and self.preset not in PRESETS:
            raise ConfigError(f"unknown preset {self.preset!r}; known: {', '.join(PRESETS)}")
        if not isinstance(self.depth, int) or self.depth < 0:
            raise ConfigError("depth must be a nonnegative integer")
        if not isinstance(self.max_points, int) or self.max_points < 1:
            raise ConfigError("max_points must be a positive integer")
        try:
            for v in self.angle_vectors():
                if len(v) != self.dimension:
                    raise ConfigError(f"angle {format_point(v)} has wrong dimension")
            self.generation_config()
            for v in self.lattice or []:
                parse_point(v)
            for v in self.tau or []:
                parse_point(v)
            for v in self.segment or []:
                parse_point(v)
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(str(exc)) from exc

    def angle_vectors(self) -> list:
        if self.preset is not None:
            return [tuple(Fraction(c) for c in v) for v in PRESETS[self.preset]]
        return [parse_point(v) for v in self.angles]

    def generation_config(self) -> GenerationConfig:
        box = None
        if self.retention_box is not None:
            if len(self.retention_box) != 2:
                raise ConfigError("retention_box is [lower corner, upper corner]")
            box = tuple(parse_point(c) for c in self.retention_box)
            if any(len(c) != self.dimension for c in box):
                raise ConfigError("retention_box has wrong dimension")
        return GenerationConfig(
            max_depth=self.depth,
            retention_box=box,
            margin_factor=parse_scalar(str(self.margin_factor)),
            max_points=self.max_points,
        )


def _emit(cfg: RunConfig, text: str, suffix: str = "") -> None:
    if cfg.out is None:
        sys.stdout.write(text)
        return
    path = Path(cfg.out)
    if suffix:
        path.mkdir(parents=True, exist_ok=True)
        path = path / suffix
    else:
        path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    log.info("wrote %s", path)


def _dump(obj) -> str:
    return dumps(obj)


def cmd_generate(cfg: RunConfig) -> int:
    state = generate(cfg.angle_vectors(), cfg.generation_config())
    fmt = cfg.format or "json"
    counts = " ".join(f"M_{k}={c}" for k, c in enumerate(state.counts))
    if cfg.out is None:
        sys.stdout.write(snapshot_json(state) if fmt == "json" else snapshot_csv(state))
        print(counts, file=sys.stderr)
    else:
        _emit(cfg, snapshot_json(state) if fmt == "json" else snapshot_csv(state), f"points.{fmt}")
        if state.dimension == 2:
            _emit(cfg, snapshot_svg(state, lines=cfg.svg_lines), "points.svg")
        elif state.dimension == 3:
            _emit(cfg, point_cloud_json(state), "cloud.json")
        print(counts)
    if state.cap_truncated:
        log.warning("point cap %d reached; output is partial", cfg.max_points)
        return EXIT_TRUNCATED
    return EXIT_OK


def detect(cfg: RunConfig) -> dict:
    angles = cfg.angle_vectors()
    verdict = lattice_hypothesis_test(angles, cfg.generation_config())
    if cfg.segment is not None and not isinstance(verdict, LatticeVerdict):
        state = generate(angles, cfg.generation_config())
        ev = analysis.density_probe(state, [parse_point(p) for p in cfg.segment])
        if ev.shrinking and not isinstance(verdict, DenseEvidence):
            verdict = DenseEvidence("gap_shrinking", ev.to_json())
        out = verdict.to_json()
        out["density_probe"] = ev.to_json()
        return out
    return verdict.to_json()


def cmd_detect(cfg: RunConfig) -> int:
    _emit(cfg, _dump(detect(cfg)))
    return EXIT_OK


def _lattice(cfg: RunConfig) -> Optional[LatticeBasis]:
    if cfg.lattice is None:
        return None
    return hnf_canonicalize([parse_point(v) for v in cfg.lattice])


def cmd_synthesize(cfg: RunConfig) -> int:
    L = _lattice(cfg)
    if L is None:
        raise ConfigError("synthesize needs 'lattice' generators")
    dirs = angles_for_lattice(L)
    _emit(cfg, _dump({"lattice": L.to_json(), "angles": [d.to_json() for d in dirs]}))
    return EXIT_OK


def cmd_quat_table(cfg: RunConfig) -> int:
    if cfg.dimension != 4:
        raise ConfigError("quat-table needs dimension 4")
    U = cfg.angle_vectors()
    fmt = cfg.format or "markdown"
    _emit(cfg, quaternion.table_markdown(U) if fmt == "markdown" else quaternion.table_csv(U))
    return EXIT_OK


def cmd_polynomials(cfg: RunConfig) -> int:
    U = cfg.angle_vectors()
    n = cfg.dimension
    tau = [parse_point(v) for v in cfg.tau] if cfg.tau else [
        tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)
    ]
    if cfg.reverse:
        U, tau = U[::-1], tau[::-1]
    if cfg.distinct_degrees:
        _, _, M = analysis.distinct_degree_basis(U, tau)
    else:
        M = analysis.origami_polynomials(U, tau)
    fmt = cfg.format or "text"
    _emit(cfg, M.text() if fmt == "text" else _dump(M.to_json()))
    return EXIT_OK


def _require_lattice(cfg: RunConfig, angles) -> LatticeBasis:
    L = _lattice(cfg)
    if L is not None:
        return L
    verdict = lattice_hypothesis_test(angles, cfg.generation_config())
    if not isinstance(verdict, LatticeVerdict):
        raise ConfigError(f"no lattice verdict for these angles: {verdict.to_json()['verdict']}")
    return verdict.basis


def cmd_irrelevant(cfg: RunConfig) -> int:
    U = cfg.angle_vectors()
    L = _require_lattice(cfg, U)
    beta = analysis.irrelevant_angle(U)
    report = analysis.verify_irrelevant(U, beta, L, cfg.depth)
    _emit(cfg, _dump({"beta": beta.to_json(), "lattice": L.to_json(), "report": report.to_json()}))
    return EXIT_OK


def cmd_basis_search(cfg: RunConfig) -> int:
    U = cfg.angle_vectors()
    gcfg = cfg.generation_config()
    if gcfg.retention_box is None:
        raise ConfigError("basis-search needs a retention_box")
    result = analysis.origami_basis_search(U, gcfg, lattice=_lattice(cfg), seed=cfg.seed)
    _emit(cfg, _dump(result.to_json()))
    return EXIT_OK


COMMANDS = {
    "generate": cmd_generate,
    "detect": cmd_detect,
    "synthesize": cmd_synthesize,
    "quat-table": cmd_quat_table,
    "polynomials": cmd_polynomials,
    "irrelevant": cmd_irrelevant,
    "basis-search": cmd_basis_search,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ndorigami", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("config", help="JSON run configuration")
        p.add_argument("--depth", type=int)
        p.add_argument("--out")
        p.add_argument("--format", choices=FORMATS[name])
    return parser


def load_config(args) -> RunConfig:
    try:
        text = Path(args.config).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    cfg = RunConfig.from_json(text)
    if args.depth is not None:
        cfg.depth = args.depth
    if args.out is not None:
        cfg.out = args.out
    if args.format is not None:
        cfg.format = args.format
    if cfg.format is not None and cfg.format not in FORMATS[args.command]:
        raise ConfigError(f"format {cfg.format!r} not available for {args.command}")
    cfg.validate()
    return cfg


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s %(message)s",
        stream=sys.stderr,
    )
    try:
        cfg = load_config(args)
        if cfg.angle_vectors():
            normalize_angles(cfg.angle_vectors())
        return COMMANDS[args.command](cfg)
    except ConfigError as exc:
        log.error("config error: %s", exc)
        return EXIT_CONFIG
    except OrigamiError as exc:
        log.error("%s: %s", type(exc).__name__, exc)
        return EXIT_CONFIG
    except Exception:  # noqa: BLE001
        log.exception("internal error")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
