"""Concrete thick buildings from finite incidence geometries."""

from __future__ import annotations

import hashlib
import json
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations, product
from pathlib import Path
from typing import Optional

import numpy as np

from .building import Building, BuildingError
from .coxeter import CoxeterSystem


class GeometryError(BuildingError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class IncidenceGeometry:
    n_points: int
    n_lines: int
    incidence: frozenset  # (point, line) pairs
    gon: int = 3

    def __post_init__(self):
        for p, l in self.incidence:
            if not (0 <= p < self.n_points and 0 <= l < self.n_lines):
                raise GeometryError(f"incidence ({p}, {l}) out of range")

    def flags(self) -> list:
        return sorted(self.incidence)

    def lines_through(self, p: int) -> list:
        return sorted(l for q, l in self.incidence if q == p)

    def points_on(self, l: int) -> list:
        return sorted(p for p, m in self.incidence if m == l)


@dataclass(frozen=True)
class BuildingSpec:
    kind: str  # rank1 | pg2 | gq | file
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind == "pg2" and self.params.get("q") not in _FIELDS:
            raise BuildingError(f"pg2 needs q in {sorted(_FIELDS)}")
        if self.kind == "rank1" and int(self.params.get("n", 0)) < 2:
            raise BuildingError("rank1 needs n >= 2")
        if self.kind == "file" and "path" not in self.params:
            raise BuildingError("file spec needs a path")
        if self.kind not in ("rank1", "pg2", "gq", "file"):
            raise BuildingError(f"unknown building kind {self.kind!r}")

    @classmethod
    def from_json(cls, doc: dict) -> "BuildingSpec":
        if "kind" not in doc:
            raise BuildingError("building spec needs a 'kind'")
        return cls(doc["kind"], {k: v for k, v in doc.items() if k != "kind"})

    def build(self, base_dir: Optional[Path] = None) -> Building:
        if self.kind == "rank1":
            return rank1_building(int(self.params["n"]))
        if self.kind == "pg2":
            return pg2_flag_building(int(self.params["q"]))
        if self.kind == "gq":
            return gq22_flag_building()
        path = Path(self.params["path"])
        if base_dir is not None and not path.is_absolute():
            path = base_dir / path
        return from_incidence_file(path)


# GF(q) for q = 2, 3, 4: (add, mul) tables; GF(4) = {0, 1, a, a+1} as 0..3
_GF4_MUL = [
    [0, 0, 0, 0],
    [0, 1, 2, 3],
    [0, 2, 3, 1],
    [0, 3, 1, 2],
]
_FIELDS = {
    2: ([[(a + b) % 2 for b in range(2)] for a in range(2)], [[a * b % 2 for b in range(2)] for a in range(2)]),
    3: ([[(a + b) % 3 for b in range(3)] for a in range(3)], [[a * b % 3 for b in range(3)] for a in range(3)]),
    4: ([[a ^ b for b in range(4)] for a in range(4)], _GF4_MUL),
}


def projective_points(q: int) -> list:
    """Normalised nonzero vectors of GF(q)^3: first nonzero coordinate is 1."""
    pts = []
    for v in product(range(q), repeat=3):
        nz = [x for x in v if x]
        if nz and nz[0] == 1:
            pts.append(v)
    return pts


def pg2_geometry(q: int) -> IncidenceGeometry:
    if q not in _FIELDS:
        raise BuildingError(f"unsupported q={q}; choose from {sorted(_FIELDS)}")
    add, mul = _FIELDS[q]
    pts = projective_points(q)

    def dot(u, v):
        acc = 0
        for a, b in zip(u, v):
            acc = add[acc][mul[a][b]]
        return acc

    inc = frozenset((i, j) for i, p in enumerate(pts) for j, l in enumerate(pts) if dot(p, l) == 0)
    return IncidenceGeometry(len(pts), len(pts), inc, 3)


def gq22_geometry() -> IncidenceGeometry:
    """The symplectic quadrangle W(2): duads and synthemes of a 6-set."""
    duads = list(combinations(range(6), 2))
    synthemes = sorted({tuple(sorted(t)) for t in combinations(duads, 3)
                        if len({x for d in t for x in d}) == 6})
    pos = {d: i for i, d in enumerate(duads)}
    inc = frozenset((pos[d], j) for j, t in enumerate(synthemes) for d in t)
    return IncidenceGeometry(len(duads), len(synthemes), inc, 4)


def flag_building(geom: IncidenceGeometry, name: str = "") -> Building:
    """Chambers are flags (p, L) in lexicographic order.

    Generator 0 changes the point along the line, generator 1 the line
    through the point.
    """
    m = geom.gon
    system = CoxeterSystem([[1, m], [m, 1]], ["s_point", "s_line"])
    flags = geom.flags()
    by_line: dict = {}
    by_point: dict = {}
    for i, (p, l) in enumerate(flags):
        by_line.setdefault(l, []).append(i)
        by_point.setdefault(p, []).append(i)
    parts = [[by_line[k] for k in sorted(by_line)], [by_point[k] for k in sorted(by_point)]]
    b = Building.from_adjacency(system, len(flags), parts, name=name)
    b.flags = flags
    return b


def rank1_building(n: int) -> Building:
    if n < 2:
        raise BuildingError("a rank-1 building needs at least 2 chambers")
    system = CoxeterSystem([[1]], ["s"])
    return Building.from_adjacency(system, n, [[list(range(n))]], name=f"rank1({n})")


def pg2_flag_building(q: int) -> Building:
    return flag_building(pg2_geometry(q), name=f"PG(2,{q})")


def gq22_flag_building() -> Building:
    return flag_building(gq22_geometry(), name="GQ(2,2)")


# -- incidence files ---------------------------------------------------------------


def parse_incidence(text: str, source: str = "<text>") -> IncidenceGeometry:
    header: dict = {}
    inc = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        where = f"{source}:{lineno}"
        try:
            if tok[0] in ("points", "lines") and len(tok) == 2:
                header[tok[0]] = int(tok[1])
            elif tok[:2] == ["type", "gon"] and len(tok) == 3:
                header["gon"] = int(tok[2])
            elif tok[0] == "p" and len(tok) == 3:
                pair = (int(tok[1]), int(tok[2]))
                if pair in inc:
                    raise GeometryError(f"{where}: repeated incidence {pair}")
                inc.add(pair)
            else:
                raise GeometryError(f"{where}: cannot parse {raw.strip()!r}")
        except ValueError as exc:
            if isinstance(exc, GeometryError):
                raise
            raise GeometryError(f"{where}: {exc}") from None
    for key in ("points", "lines", "gon"):
        if key not in header:
            raise GeometryError(f"{source}: missing header '{'type gon' if key == 'gon' else key}'")
    return IncidenceGeometry(header["points"], header["lines"], frozenset(inc), header["gon"])


def _incidence_graph(geom: IncidenceGeometry) -> list:
    n = geom.n_points + geom.n_lines
    adj = [[] for _ in range(n)]
    for p, l in sorted(geom.incidence):
        adj[p].append(geom.n_points + l)
        adj[geom.n_points + l].append(p)
    return adj


def _vertex_name(geom: IncidenceGeometry, v: int) -> str:
    return f"p{v}" if v < geom.n_points else f"L{v - geom.n_points}"


def polygon_defect(geom: IncidenceGeometry) -> Optional[dict]:
    """None for a generalised ``gon``-gon, else a description with a witness.

    The incidence graph of a generalised k-gon has diameter k and girth 2k.
    """
    k = geom.gon
    adj = _incidence_graph(geom)
    n = len(adj)
    for v in range(n):
        if len(adj[v]) < 2:
            return {"reason": "degree below 2", "witness": [_vertex_name(geom, v)]}
    best = None
    for root in range(n):
        dist = [-1] * n
        parent = [-1] * n
        dist[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    parent[v] = u
                    queue.append(v)
                elif v != parent[u] and dist[v] >= dist[u]:
                    length = dist[u] + dist[v] + 1
                    if length < 2 * k and (best is None or length < best[0]):
                        left, right = [u], [v]
                        while left[-1] != root:
                            left.append(parent[left[-1]])
                        while right[-1] != root:
                            right.append(parent[right[-1]])
                        cycle = list(reversed(left)) + right[:-1]
                        if len(set(cycle)) == len(cycle):
                            best = (length, cycle)
        far = [v for v in range(n) if dist[v] < 0 or dist[v] > k]
        if far:
            v = far[0]
            if dist[v] < 0:
                return {"reason": "incidence graph disconnected",
                        "witness": [_vertex_name(geom, root), _vertex_name(geom, v)]}
            path = [v]
            while path[-1] != root:
                path.append(parent[path[-1]])
            return {"reason": f"distance {dist[v]} exceeds {k}",
                    "witness": [_vertex_name(geom, x) for x in reversed(path)]}
    if best is not None:
        return {"reason": f"cycle of length {best[0]} below girth {2 * k}",
                "witness": [_vertex_name(geom, x) for x in best[1]]}
    return None


def from_incidence_file(path) -> Building:
    path = Path(path)
    geom = parse_incidence(path.read_text(), str(path))
    defect = polygon_defect(geom)
    if defect is not None:
        raise GeometryError(f"{path}: not a generalized {geom.gon}-gon: {defect['reason']}", defect["witness"])
    return flag_building(geom, name=path.stem)


def write_incidence(geom: IncidenceGeometry) -> str:
    lines = [f"points {geom.n_points}", f"lines {geom.n_lines}", f"type gon {geom.gon}"]
    lines += [f"p {p} {l}" for p, l in sorted(geom.incidence)]
    return "\n".join(lines) + "\n"


# -- isomorphism ------------------------------------------------------------------------


def delta_profile(b: Building) -> str:
    """Relabeling-invariant hash: the multiset of per-chamber Weyl-distance histograms."""
    rows = sorted(tuple(np.bincount(b.delta[c], minlength=b.W.order).tolist()) for c in range(b.n))
    blob = json.dumps({"system": b.system.to_json(), "rows": rows}, sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()


def find_isomorphism(b1: Building, b2: Building) -> Optional[dict]:
    """A chamber bijection preserving Weyl distance, or None."""
    if b1.system != b2.system or b1.n != b2.n or delta_profile(b1) != delta_profile(b2):
        return None
    order = [0]
    via = {0: None}
    for c in order:
        for s in range(b1.rank):
            for d in b1.neighbours(c, s):
                if d not in via:
                    via[d] = (c, s)
                    order.append(d)
    image = np.full(b1.n, -1, dtype=np.int64)

    def rec(k):
        if k == len(order):
            return True
        x = order[k]
        mapped = order[:k]
        if via[x] is None:
            cands = range(b2.n)
        else:
            c, s = via[x]
            cands = b2.neighbours(int(image[c]), s)
        want = b1.delta[mapped, x]
        used = set(image[mapped].tolist())
        for y in cands:
            if y in used:
                continue
            if (b2.delta[image[mapped], y] == want).all():
                image[x] = y
                if rec(k + 1):
                    return True
        image[x] = -1
        return False

    if not rec(0):
        return None
    return {c: int(image[c]) for c in range(b1.n)}
