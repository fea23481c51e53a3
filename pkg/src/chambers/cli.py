"""Command-line front end: ``chambers <command> ...``.

Every flag can also be set through an environment variable named
``CHAMBERS_<FLAG>`` (``--cache-dir`` becomes ``CHAMBERS_CACHE_DIR``); flags win.
Exit codes: 0 pass, 1 a verification failed, 2 bad input or refused hypothesis.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from .apartments import (
    RealizationCertificate,
    ThicknessError,
    realize_convex_subcomplex,
    simplices_from_json,
    simplices_json,
)
from .building import Apartment, Building, BuildingError, is_apartment, validate_building
from .coxeter import CoxeterError, CoxeterSystem, convex_hull, named_system
from .dot import chamber_graph_dot
from .instances import BuildingSpec, from_incidence_file
from .verify import SUITES, VerificationReport, check_certificate, run_suite, scan_condition_iv

ENV_PREFIX = "CHAMBERS_"
CERT_SCHEMA = "chambers.certificate/1"
BUILD_SCHEMA = "chambers.build/1"


class CliError(Exception):
    def __init__(self, code: str, message: str, witness=None):
        super().__init__(message)
        self.code = code
        self.witness = witness


@dataclass(frozen=True)
class Config:
    cache_dir: Path = Path(".chambers-cache")
    radii: tuple = (4, 8)
    jobs: int = 1
    format: str = "json"

    def __post_init__(self):
        if len(self.radii) != 2 or min(self.radii) < 0:
            raise CliError("usage", f"radii must be two non-negative integers, got {self.radii}")
        if self.jobs < 1:
            raise CliError("usage", "jobs must be at least 1")
        if self.format not in ("json", "dot", "text"):
            raise CliError("usage", f"unknown format {self.format!r}")


def parse_radii(text: str) -> tuple:
    try:
        a, b = (int(x) for x in text.split(","))
    except ValueError:
        raise CliError("usage", f"--radii expects 'a,b', got {text!r}") from None
    return a, b


def dump_json(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def emit(text: str, report: Optional[str]) -> None:
    if report:
        Path(report).write_text(text)
    else:
        sys.stdout.write(text)


# -- loading -------------------------------------------------------------------------


def load_system(arg: str) -> CoxeterSystem:
    path = Path(arg)
    if path.is_file():
        return CoxeterSystem.load(path)
    return named_system(arg)


def load_building(arg: str) -> Building:
    """A spec JSON, a building JSON, an incidence file, or a shorthand like ``pg2:3``."""
    path = Path(arg)
    if path.is_file():
        text = path.read_text()
        if path.suffix == ".json":
            try:
                doc = json.loads(text)
            except json.JSONDecodeError as exc:
                raise CliError("parse_error", f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
            if "adjacency" in doc:
                return Building.from_json(doc, name=path.stem)
            return BuildingSpec.from_json(doc).build(path.parent)
        return from_incidence_file(path)
    kind, _, param = arg.partition(":")
    if kind == "pg2":
        return BuildingSpec("pg2", {"q": int(param)}).build()
    if kind == "rank1":
        return BuildingSpec("rank1", {"n": int(param)}).build()
    if kind in ("gq", "gq22"):
        return BuildingSpec("gq").build()
    raise CliError("usage", f"cannot load building {arg!r}: not a file or a known shorthand")


def cached_apartments(b: Building, cfg: Config) -> list:
    """Apartment charts cached as .npy files keyed by the building's content hash."""
    folder = cfg.cache_dir / "apartments"
    path = folder / f"{b.content_hash()}.npy"
    if path.exists():
        charts = np.load(path)
        b._apartments = [Apartment(tuple(int(x) for x in row)) for row in charts]
    else:
        aps = b.apartments()
        folder.mkdir(parents=True, exist_ok=True)
        np.save(path, np.array([ap.chart for ap in aps], dtype=np.int64).reshape(len(aps), b.W.order))
    return b.apartments()


def pick_apartment(b: Building, cfg: Config, ident: str) -> tuple:
    aps = cached_apartments(b, cfg)
    try:
        i = int(ident)
    except ValueError:
        raise CliError("usage", f"--apartment expects an index, got {ident!r}") from None
    if not 0 <= i < len(aps):
        raise CliError("usage", f"apartment index {i} out of range 0..{len(aps) - 1}")
    return i, aps[i]


def read_subcomplex(b: Building, arg: str):
    try:
        doc = json.loads(Path(arg).read_text())
    except json.JSONDecodeError as exc:
        raise CliError("parse_error", f"{arg}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    items = doc["simplices"] if isinstance(doc, dict) else doc
    return simplices_from_json(b, items)


# -- commands --------------------------------------------------------------------------


def cmd_build(args, cfg: Config) -> int:
    source = args.spec or args.building
    if not source:
        raise CliError("usage", "build needs --spec")
    b = load_building(source)
    check = validate_building(b)
    if not check.valid:
        raise CliError("invalid_building", "building axioms fail", check.violations)
    h = b.content_hash()
    out = cfg.cache_dir / "buildings" / f"{h}.json"
    cached = out.exists()
    if not cached:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(dump_json(b.to_json()))
    aps = cached_apartments(b, cfg)
    print("cache hit" if cached else "built", out, file=sys.stderr)
    doc = {"schema": BUILD_SCHEMA, "hash": h, "name": b.name, "chambers": b.n,
           "system": b.system.to_json(), "apartments": len(aps), "path": str(out)}
    text = dump_json(doc) if cfg.format != "text" else f"{b.name} {b.n} chambers {len(aps)} apartments {h}\n"
    emit(text, args.report)
    return 0


def cmd_hull(args, cfg: Config) -> int:
    system = load_system(args.system or "A2")
    try:
        words = json.loads(args.elements)
    except json.JSONDecodeError as exc:
        raise CliError("parse_error", f"--elements: {exc.msg} at column {exc.colno}") from None
    F = [system.element(w) for w in words]
    hull = sorted(convex_hull(system, F))
    doc = {"system": system.to_json(), "input": [list(w.word) for w in sorted(set(F))],
           "hull": [list(w.word) for w in hull]}
    if cfg.format == "text":
        text = " ".join(w.label() for w in hull) + "\n"
    else:
        text = dump_json(doc)
    emit(text, args.report)
    return 0


def certificate_doc(b: Building, index: int, cert: RealizationCertificate) -> dict:
    doc = cert.to_json()
    doc.update({"schema": CERT_SCHEMA, "building": b.content_hash(), "apartment": index})
    return doc


def cmd_realize(args, cfg: Config) -> int:
    if not (args.building and args.apartment is not None and args.subcomplex):
        raise CliError("usage", "realize needs --building, --apartment and --subcomplex")
    b = load_building(args.building)
    i, sigma = pick_apartment(b, cfg, args.apartment)
    kappa = read_subcomplex(b, args.subcomplex)
    cert = realize_convex_subcomplex(b, sigma, kappa)
    if cfg.format == "dot":
        text = chamber_graph_dot(b, sigma.chambers | cert.witness.chambers, sigma.chambers,
                                 cert.witness.chambers, cert.target.chambers)
    elif cfg.format == "text":
        text = f"apartment {i}: witness {list(cert.witness.chart)} meets it in {len(cert.checked)} simplices\n"
    else:
        text = dump_json(certificate_doc(b, i, cert))
    emit(text, args.report)
    return 0


def replay_certificate(b: Building, doc: dict) -> VerificationReport:
    rep = VerificationReport("certificate", instances=1, params={"building": b.content_hash()})
    if doc.get("schema") != CERT_SCHEMA:
        raise CliError("parse_error", f"not a certificate (schema {doc.get('schema')!r})")
    if doc.get("building") != b.content_hash():
        rep.failures.append({"check": "building", "expected": doc.get("building")})
        return rep
    host, witness = is_apartment(b, doc["host"]), is_apartment(b, doc["witness"])
    if host is None or witness is None:
        rep.failures.append({"check": "apartment", "host": host is not None, "witness": witness is not None})
        return rep
    target = simplices_from_json(b, doc["target"])
    cert = RealizationCertificate(target, host, witness, target)
    if not check_certificate(b, cert):
        rep.failures.append({"check": "intersection", "target": simplices_json(target)})
    return rep


def cmd_verify(args, cfg: Config) -> int:
    if not args.suite:
        raise CliError("usage", f"verify needs --suite, one of {sorted(SUITES) + ['certificate']}")
    if args.suite == "condition-iv":
        a, w = parse_radii(args.radii) if args.radii else cfg.radii
        rep = scan_condition_iv(load_system(args.system or "A2"), a, w)
    elif args.suite == "certificate":
        if not (args.building and args.certificate):
            raise CliError("usage", "the certificate suite needs --building and --certificate")
        b = load_building(args.building)
        rep = replay_certificate(b, json.loads(Path(args.certificate).read_text()))
    else:
        if not args.building:
            raise CliError("usage", f"suite {args.suite!r} needs --building")
        b = load_building(args.building)
        cached_apartments(b, cfg)
        try:
            rep = run_suite(args.suite, b, cfg.jobs)
        except ValueError as exc:
            if isinstance(exc, (BuildingError, CoxeterError)):
                raise
            raise CliError("usage", str(exc)) from None
    text = rep.summary() + "\n" if cfg.format == "text" else dump_json(rep.to_json(args.with_elapsed))
    emit(text, args.report)
    print(rep.summary(), file=sys.stderr)
    return 0 if rep.passed else 1


def cmd_scan(args, cfg: Config) -> int:
    a, w = parse_radii(args.radii) if args.radii else cfg.radii
    rep = scan_condition_iv(load_system(args.system or "A2"), a, w)
    text = rep.summary() + "\n" if cfg.format == "text" else dump_json(rep.to_json(args.with_elapsed))
    emit(text, args.report)
    print(f"{len(rep.failures)} of {rep.instances} triples uncovered", file=sys.stderr)
    return 0


def cmd_export_dot(args, cfg: Config) -> int:
    if not args.building:
        raise CliError("usage", "export-dot needs --building")
    b = load_building(args.building)
    host, witness, target = set(), set(), set()
    nodes = None
    if args.certificate:
        doc = json.loads(Path(args.certificate).read_text())
        host, witness = set(doc["host"]), set(doc["witness"])
        target = {x["rep"] for x in doc["target"] if not x["cotype"]}
        nodes = host | witness
    elif args.apartment is not None:
        _, sigma = pick_apartment(b, cfg, args.apartment)
        host = set(sigma.chambers)
        nodes = host
        if args.subcomplex:
            target = set(read_subcomplex(b, args.subcomplex).chambers)
    emit(chamber_graph_dot(b, nodes, host, witness, target), args.report)
    return 0


COMMANDS = {
    "build": cmd_build,
    "hull": cmd_hull,
    "realize": cmd_realize,
    "verify": cmd_verify,
    "scan": cmd_scan,
    "export-dot": cmd_export_dot,
}


def _env(name: str, default=None):
    return os.environ.get(ENV_PREFIX + name.upper().replace("-", "_"), default)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chambers", description="Apartments and convex subcomplexes of finite buildings.")
    parser.add_argument("command", choices=sorted(COMMANDS))
    for flag in ("building", "apartment", "subcomplex", "suite", "radii", "report", "system",
                 "certificate", "spec", "elements"):
        parser.add_argument(f"--{flag}", default=_env(flag))
    parser.add_argument("--format", default=_env("format", "json"), choices=["json", "dot", "text"])
    parser.add_argument("--cache-dir", default=_env("cache_dir", ".chambers-cache"))
    parser.add_argument("--jobs", type=int, default=int(_env("jobs", "1")))
    parser.add_argument("--with-elapsed", action="store_true",
                        help="include wall-clock time in reports (breaks byte-identical output)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        radii = parse_radii(args.radii) if args.radii else (4, 8)
        cfg = Config(Path(args.cache_dir), radii, args.jobs, args.format)
        return COMMANDS[args.command](args, cfg)
    except CliError as exc:
        err = {"error": exc.code, "message": str(exc)}
        if exc.witness is not None:
            err["witness"] = exc.witness
    except ThicknessError as exc:
        err = {"error": "thickness", "message": str(exc)}
    except (BuildingError, CoxeterError) as exc:
        err = {"error": "invalid_input", "message": str(exc)}
        if getattr(exc, "witness", None) is not None:
            err["witness"] = exc.witness
    except ValueError as exc:
        err = {"error": "usage", "message": str(exc)}
    except (OSError, KeyError) as exc:
        err = {"error": "io_error", "message": str(exc)}
    sys.stderr.write(json.dumps(err, sort_keys=True) + "\n")
    return 2


if __name__ == "__main__":
    sys.exit(main())
