"""Command-line interface: ``eigenpoly <command> [options]``.

Exit status 0 means a verdict was computed (including negative ones),
2 is a usage error, 3 an unreadable or invalid input, 4 a failure inside a
computation, and 1 a catalog run whose results differ from expectations.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .catalog import POLYTOPE_BUILDERS, SCALE_CLASSES, polytope_points, run_catalog
from .certify import is_spectral_graph, is_spectral_polytope
from .geometry import DEFAULT_HULL_TOL, convex_hull, skeleton_graph
from .graphs import GraphError, parse_generator_spec, parse_graph
from .izmestiev import DEFAULT_CRITERION_TOL, DEFAULT_STEP, audit, izmestiev_fd, izmestiev_ridge, theta2_criterion
from .metrics import metric_report
from .spectra import DEFAULT_GROUP_TOL, eigenmatrix, spectrum

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_INPUT, EXIT_COMPUTE = 0, 1, 2, 3, 4


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    source: str | None = None
    k: int = 2
    tol_group: float = DEFAULT_GROUP_TOL
    tol_hull: float = DEFAULT_HULL_TOL
    tol_criterion: float = DEFAULT_CRITERION_TOL
    emit: list = field(default_factory=lambda: ["json"])
    out: str | None = None

    def __post_init__(self):
        if self.k < 1:
            raise InputError("--k must be at least 1")
        for name in ("tol_group", "tol_hull", "tol_criterion"):
            if not getattr(self, name) > 0:
                raise InputError(f"--{name.replace('_', '-')} must be positive")

    def header(self) -> dict:
        return {"version": __version__, "command": self.command, "source": self.source, "k": self.k,
                "tolerances": {"group": self.tol_group, "hull": self.tol_hull, "criterion": self.tol_criterion}}


def _positive_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _add_common(p: argparse.ArgumentParser, polytope: bool = False, emits=("json",)):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--gen", metavar="NAME:PARAMS", help="generator spec, e.g. hypercube:3 or petersen")
    src.add_argument("--in", dest="infile", metavar="FILE", help="graph file (see --format)")
    if polytope:
        src.add_argument("--points", metavar="FILE", help="vertex coordinates, one point per line (CSV or spaces)")
        src.add_argument("--polytope", choices=sorted(POLYTOPE_BUILDERS), help="named catalog polytope")
    p.add_argument("--format", choices=["edges", "graph6"], default="edges", help="format of --in (default edges)")
    p.add_argument("--k", type=int, default=2, help="eigenvalue index, 1 = largest (default 2)")
    p.add_argument("--tol-group", type=_positive_float, default=DEFAULT_GROUP_TOL)
    p.add_argument("--tol-hull", type=_positive_float, default=DEFAULT_HULL_TOL)
    p.add_argument("--tol-criterion", type=_positive_float, default=DEFAULT_CRITERION_TOL)
    p.add_argument("--emit", action="append", choices=list(emits), help=f"artifact formats {list(emits)}")
    p.add_argument("--out", metavar="DIR", help="write artifacts to DIR instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="eigenpoly", description="Eigenpolytopes and spectral certification.")
    parser.add_argument("--version", action="version", version=f"eigenpoly {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    _add_common(sub.add_parser("spectrum", help="grouped adjacency spectrum"), emits=("json", "csv"))
    _add_common(sub.add_parser("polytope", help="theta_k eigenpolytope: coordinates and hull"),
                emits=("json", "off", "csv"))
    _add_common(sub.add_parser("certify", help="spectral certificate of a graph or polytope"), polytope=True)
    iz = sub.add_parser("izmestiev", help="Izmestiev matrix, audit and theta_2 criterion")
    _add_common(iz, polytope=True, emits=("json", "csv"))
    iz.add_argument("--method", choices=["ridge", "fd"], default="ridge")
    iz.add_argument("--h", type=_positive_float, default=DEFAULT_STEP, help="finite-difference step")
    _add_common(sub.add_parser("metrics", help="edge length / circumradius / dihedral identities"),
                polytope=True, emits=("json", "csv"))
    cat = sub.add_parser("catalog", help="run the regression catalog")
    cat.add_argument("--class", dest="classes", action="append", choices=list(SCALE_CLASSES),
                     help="scale classes to run (default fast and slow)")
    cat.add_argument("--entry", action="append", help="restrict to named entries")
    cat.add_argument("--tol-group", type=_positive_float, default=DEFAULT_GROUP_TOL)
    cat.add_argument("--tol-hull", type=_positive_float, default=DEFAULT_HULL_TOL)
    cat.add_argument("--tol-criterion", type=_positive_float, default=DEFAULT_CRITERION_TOL)
    cat.add_argument("--emit", action="append", choices=["json", "table"])
    cat.add_argument("--out", metavar="DIR")
    return parser


def _load_graph(args):
    try:
        if args.gen:
            return parse_generator_spec(args.gen)
        text = Path(args.infile).read_text()
        return parse_graph(text, format=args.format, name=Path(args.infile).stem)
    except OSError as exc:
        raise InputError(f"cannot read {args.infile}: {exc}") from exc
    except (GraphError, ValueError, KeyError) as exc:
        raise InputError(str(exc)) from exc


def _load_points(path: str) -> np.ndarray:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            rows.append([float(x) for x in line.replace(",", " ").split()])
    if not rows or len({len(r) for r in rows}) != 1:
        raise InputError(f"{path}: expected a non-empty table of equal-length rows")
    return np.array(rows)


def _polytope_input(args, cfg: RunConfig):
    """Polytope from coordinates, a catalog name, or the theta_k eigenpolytope of a graph."""
    if getattr(args, "points", None):
        P = convex_hull(_load_points(args.points), tol=cfg.tol_hull)
        return convex_hull(P.points - P.coords.mean(axis=0), tol=cfg.tol_hull)
    if getattr(args, "polytope", None):
        return convex_hull(polytope_points(args.polytope), tol=cfg.tol_hull)
    g = _load_graph(args)
    Phi = eigenmatrix(spectrum(g, cfg.tol_group), cfg.k)
    return convex_hull(Phi.entries, tol=cfg.tol_hull)


def _source(args) -> str:
    for attr in ("gen", "infile", "points", "polytope"):
        v = getattr(args, attr, None)
        if v:
            return f"{attr}:{v}"
    return "catalog"


class _Emitter:
    def __init__(self, cfg: RunConfig, stem: str):
        self.cfg, self.stem = cfg, stem
        if cfg.out:
            Path(cfg.out).mkdir(parents=True, exist_ok=True)

    def json(self, payload: dict, suffix: str = ""):
        doc = {"header": self.cfg.header(), **payload}
        self.write(json.dumps(doc, sort_keys=True, indent=1) + "\n", f"{self.stem}{suffix}.json")

    def write(self, text: str, filename: str):
        if self.cfg.out:
            Path(self.cfg.out, filename).write_text(text)
        else:
            sys.stdout.write(text)


def _status(msg: str):
    print(msg, file=sys.stderr)


def cmd_spectrum(args, cfg: RunConfig) -> int:
    g = _load_graph(args)
    s = spectrum(g, cfg.tol_group)
    em = _Emitter(cfg, "spectrum")
    if "csv" in cfg.emit:
        em.write(s.to_csv(), "spectrum.csv")
    if "json" in cfg.emit:
        em.json({"spectrum": s.to_dict()})
    return EXIT_OK


def cmd_polytope(args, cfg: RunConfig) -> int:
    g = _load_graph(args)
    s = spectrum(g, cfg.tol_group)
    Phi = eigenmatrix(s, cfg.k)
    d = Phi.d
    em = _Emitter(cfg, "polytope")
    for theta, mult in s.table():
        _status(f"theta {theta: .10g}  multiplicity {mult}")
    if d < 2:
        _status(f"status: dimension too low (d = {d}); the eigenpolytope is a point or a segment")
    elif d > 3:
        _status(f"status: dimension {d} > 3; OFF output unavailable, JSON carries all coordinates "
                "(a 3-dimensional projection keeps the first three)")
    P = convex_hull(Phi.entries, tol=cfg.tol_hull)
    if not P.degenerate and P.dim >= 2 and set(g.edges) - set(P.edges):
        _status("warning: input edges not realized as hull edges")
    if "csv" in cfg.emit:
        em.write(Phi.to_csv(), "polytope_coordinates.csv")
    if "off" in cfg.emit:
        if P.ambient_dim <= 3 and not P.degenerate and P.dim >= 2:
            em.write(P.to_off(), "polytope.off")
        else:
            _status(f"status: no OFF output for dimension {P.dim}")
    if "json" in cfg.emit:
        em.json({"theta": Phi.theta, "dim": d, "spectrum": s.to_dict(), "coordinates": Phi.entries.tolist(),
                 "polytope": P.to_dict()})
    return EXIT_OK


def cmd_certify(args, cfg: RunConfig) -> int:
    em = _Emitter(cfg, "certificate")
    if getattr(args, "points", None) or getattr(args, "polytope", None):
        cert = is_spectral_polytope(_polytope_input(args, cfg), group_tol=cfg.tol_group)
    else:
        cert = is_spectral_graph(_load_graph(args), cfg.k, cfg.tol_hull, cfg.tol_group)
    _status(f"verdict: {cert.kind}" + (f" ({', '.join(cert.reasons)})" if cert.reasons else ""))
    em.json({"certificate": cert.to_dict()})
    return EXIT_OK


def cmd_izmestiev(args, cfg: RunConfig) -> int:
    P = _polytope_input(args, cfg)
    if P.degenerate or not P.full_dimensional:
        _status(f"status: dimension too low (affine dimension {P.dim}); no Izmestiev matrix")
        return EXIT_COMPUTE
    X = izmestiev_fd(P, args.h) if args.method == "fd" else izmestiev_ridge(P)
    rep = audit(X, P)
    cert = theta2_criterion(X, skeleton_graph(P), cfg.tol_criterion, p=P)
    _status(f"audit: {'pass' if rep.passed else 'fail'}; criterion: "
            f"{'holds' if cert.kind == 'spectral_polytope' else 'inconclusive'}")
    em = _Emitter(cfg, "izmestiev")
    if "csv" in cfg.emit:
        em.write(X.to_csv(), "izmestiev.csv")
    if "json" in cfg.emit:
        em.json({"scheme": X.scheme, "step": X.step, "X": X.X.tolist(), "audit": rep.to_dict(),
                 "criterion": cert.to_dict()})
    return EXIT_OK


def cmd_metrics(args, cfg: RunConfig) -> int:
    P = _polytope_input(args, cfg)
    m = metric_report(P)
    if not m.applicable:
        _status(f"status: identities not applicable ({', '.join(m.notes)})")
    em = _Emitter(cfg, "metrics")
    if "csv" in cfg.emit:
        em.write(m.to_csv(), "metrics.csv")
    if "json" in cfg.emit:
        em.json({"metrics": m.to_dict()})
    return EXIT_OK


def cmd_catalog(args, cfg: RunConfig) -> int:
    classes = tuple(args.classes or ("fast", "slow"))
    tols = {"group": cfg.tol_group, "hull": cfg.tol_hull, "criterion": cfg.tol_criterion}
    summary = run_catalog(classes, tols, names=args.entry)
    em = _Emitter(cfg, "catalog")
    emit = args.emit or ["table", "json"]
    if "table" in emit:
        if cfg.out:
            em.write(summary.table() + "\n", "catalog.txt")
        else:
            _status(summary.table())
    if "json" in emit:
        em.json({"summary": summary.to_dict()})
    return EXIT_OK if summary.passed else EXIT_MISMATCH


COMMANDS = {
    "spectrum": cmd_spectrum,
    "polytope": cmd_polytope,
    "certify": cmd_certify,
    "izmestiev": cmd_izmestiev,
    "metrics": cmd_metrics,
    "catalog": cmd_catalog,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        cfg = RunConfig(
            command=args.command,
            source=_source(args),
            k=getattr(args, "k", 2),
            tol_group=args.tol_group,
            tol_hull=args.tol_hull,
            tol_criterion=args.tol_criterion,
            emit=getattr(args, "emit", None) or ["json"],
            out=args.out,
        )
        return COMMANDS[args.command](args, cfg)
    except InputError as exc:
        _status(f"error: {exc}")
        return EXIT_INPUT
    except (ValueError, ArithmeticError, np.linalg.LinAlgError) as exc:
        _status(f"error: {type(exc).__name__}: {exc}")
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
