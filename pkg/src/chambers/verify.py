"""Exhaustive verification suites with replayable failure witnesses."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement
from math import comb
from typing import Optional, Sequence

import numpy as np

from .apartments import (
    Apartment,
    RealizationCertificate,
    adjacent_pair_intersection,
    convex_subcomplexes,
    panel_criterion,
    glue_roots,
    realize_chamber_subcomplex,
    realize_convex_subcomplex,
    simplices_json,
    ThicknessError,
)
from .building import (
    Building,
    is_apartment,
    min_thickness,
    projection_chamber,
    roots_of,
    validate_building,
    wall_of,
    walls_of,
)
from .coxeter import CoxeterSystem, ball_index, ball_list

SCHEMA = "chambers.report/1"


@dataclass
class VerificationReport:
    suite: str
    instances: int = 0
    failures: list = field(default_factory=list)
    elapsed: float = 0.0
    params: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def __bool__(self):
        return self.passed

    def to_json(self, with_elapsed: bool = False) -> dict:
        doc = {
            "schema": SCHEMA,
            "suite": self.suite,
            "params": self.params,
            "instances": self.instances,
            "passed": self.passed,
            "failures": self.failures,
            "notes": self.notes,
        }
        if with_elapsed:
            doc["elapsed"] = round(self.elapsed, 3)
        return doc

    def summary(self) -> str:
        state = "PASS" if self.passed else "FAIL"
        return f"{state} {self.suite}: {self.instances} instances, {len(self.failures)} failures"


class _Timer:
    def __init__(self, report: VerificationReport):
        self.report = report

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self.report

    def __exit__(self, *exc):
        self.report.elapsed = time.perf_counter() - self.t0
        return False


# -- theorem-level suites -----------------------------------------------------------


def check_certificate(b: Building, cert: RealizationCertificate) -> bool:
    """Recompute the intersection from the charts alone."""
    if is_apartment(b, cert.host.chambers) is None or is_apartment(b, cert.witness.chambers) is None:
        return False
    inter = b.complex_of(cert.host).simplices & b.complex_of(cert.witness).simplices
    return inter == cert.target.simplices


def _theorem1_chunk(b: Building, indices: Sequence[int]) -> tuple:
    aps = b.apartments()
    count = 0
    failures = []
    for i in indices:
        sigma = aps[i]
        for kappa in convex_subcomplexes(b, sigma):
            count += 1
            try:
                cert = realize_convex_subcomplex(b, sigma, kappa)
                ok = check_certificate(b, cert)
                err = None if ok else "certificate does not replay"
            except Exception as exc:  # a failure witness, not a crash
                err = f"{type(exc).__name__}: {exc}"
            if err is not None:
                failures.append({"apartment": i, "chart": list(sigma.chart),
                                 "subcomplex": simplices_json(kappa), "error": err})
    return count, failures


_WORKER_BUILDING: Optional[Building] = None


def _init_worker(doc: dict) -> None:
    global _WORKER_BUILDING
    _WORKER_BUILDING = Building.from_json(doc)


def _worker_chunk(indices):
    return _theorem1_chunk(_WORKER_BUILDING, indices)


def verify_theorem1(b: Building, jobs: int = 1) -> VerificationReport:
    """Every convex subcomplex of every apartment is cut out by a second apartment."""
    rep = VerificationReport("theorem1", params={"building": b.content_hash()})
    t = min_thickness(b)
    if t < 4:
        raise ThicknessError(f"needs every panel in at least 4 chambers; found {t}")
    with _Timer(rep):
        n = len(b.apartments())
        if jobs <= 1:
            rep.instances, rep.failures = _theorem1_chunk(b, range(n))
        else:
            chunks = [list(range(k, n, jobs)) for k in range(jobs)]
            with ProcessPoolExecutor(jobs, initializer=_init_worker, initargs=(b.to_json(),)) as pool:
                results = list(pool.map(_worker_chunk, chunks))
            for count, fails in results:
                rep.instances += count
                rep.failures.extend(fails)
            rep.failures.sort(key=lambda f: f["apartment"])
    return rep


def verify_chamber_subcomplexes(b: Building) -> VerificationReport:
    """Every convex chamber subcomplex of every apartment is realized exactly."""
    rep = VerificationReport("chamber-subcomplexes", params={"building": b.content_hash()})
    with _Timer(rep):
        for i, sigma in enumerate(b.apartments()):
            for kappa in convex_subcomplexes(b, sigma):
                if kappa.dimension != b.rank - 1:
                    continue
                rep.instances += 1
                try:
                    ok = check_certificate(b, realize_chamber_subcomplex(b, sigma, kappa))
                    err = None if ok else "certificate does not replay"
                except Exception as exc:
                    err = f"{type(exc).__name__}: {exc}"
                if err is not None:
                    rep.failures.append({"apartment": i, "subcomplex": simplices_json(kappa), "error": err})
    return rep


def verify_thickness3_obstruction(b: Building) -> VerificationReport:
    """Walls through a 3-chamber panel are never the intersection of two apartments."""
    rep = VerificationReport("thickness3-obstruction", params={"building": b.content_hash()})
    with _Timer(rep):
        aps = b.apartments()
        complexes = [b.complex_of(ap).simplices for ap in aps]
        for i, sigma in enumerate(aps):
            walls = {}
            for M in walls_of(b, sigma):
                if any(len(b.residue(P)) == 3 for P in M.panels):
                    walls[M.face_closure.simplices] = M
            if not walls:
                continue
            rep.instances += len(walls)
            for j, other in enumerate(complexes):
                inter = complexes[i] & other
                if inter in walls:
                    rep.failures.append({"apartment": i, "other": j, "wall": simplices_json(inter)})
        if rep.instances == 0:
            rep.notes.append("no panel with exactly 3 chambers; vacuous")
    return rep


def verify_glue_criterion(b: Building) -> VerificationReport:
    """Gluing two roots with a common wall succeeds exactly when the panel test says so."""
    rep = VerificationReport("glue-criterion", params={"building": b.content_hash()})
    with _Timer(rep):
        by_wall: dict = {}
        tally = {True: 0, False: 0}
        for ap in b.apartments():
            for r in roots_of(b, ap):
                by_wall.setdefault(wall_of(b, r).panels, {})[r.chambers] = r
        for panels in sorted(by_wall, key=lambda p: sorted(x.sort_key for x in p)):
            roots = [by_wall[panels][k] for k in sorted(by_wall[panels], key=sorted)]
            for r1, r2 in combinations_with_replacement(roots, 2):
                rep.instances += 1
                glued = isinstance(glue_roots(b, r1, r2), Apartment)
                criterion = panel_criterion(b, r1, r2) is not None
                tally[glued] += 1
                if glued != criterion:
                    rep.failures.append({"root1": sorted(r1.chambers), "root2": sorted(r2.chambers),
                                         "glued": glued, "criterion": criterion})
        rep.params["glued"] = tally[True]
        rep.params["refused"] = tally[False]
    return rep


def verify_adjacent_pairs(b: Building, system: Optional[list] = None) -> VerificationReport:
    """Apartments through two adjacent chambers meet only in their faces."""
    rep = VerificationReport("adjacent-pairs", params={"building": b.content_hash()})
    system = b.apartments() if system is None else system
    with _Timer(rep):
        for C in range(b.n):
            for D in range(C + 1, b.n):
                if not b.adjacent(C, D):
                    continue
                rep.instances += 1
                inter, flag = adjacent_pair_intersection(b, system, C, D)
                if not flag:
                    rep.failures.append({"pair": [C, D], "intersection": simplices_json(inter)})
    return rep


def verify_apartment_map(b: Building, b2: Building, system: Optional[list], system2: Optional[list],
                         phi) -> VerificationReport:
    """A chamber map sending apartments onto apartments is injective and preserves adjacency."""
    rep = VerificationReport("apartment-map")
    system = b.apartments() if system is None else system
    system2 = b2.apartments() if system2 is None else system2
    lookup = dict(phi) if isinstance(phi, dict) else dict(enumerate(phi))
    with _Timer(rep):
        missing = [c for c in range(b.n) if c not in lookup]
        if missing:
            rep.failures.append({"check": "total", "chambers": missing[:5]})
            return rep
        phi = [int(lookup[c]) for c in range(b.n)]
        targets = {ap.chambers for ap in system2}
        for i, ap in enumerate(system):
            rep.instances += 1
            image = [phi[c] for c in sorted(ap.chambers)]
            if frozenset(image) in targets and len(set(image)) == len(image):
                continue
            seen: dict = {}
            clash = None
            for c in sorted(ap.chambers):
                if phi[c] in seen:
                    clash = [seen[phi[c]], c]
                    break
                seen[phi[c]] = c
            rep.failures.append({"check": "hypothesis", "apartment": i, "chambers": sorted(ap.chambers),
                                 "image": image, "collision": clash})
            return rep
        seen = {}
        for c in range(b.n):
            rep.instances += 1
            if phi[c] in seen:
                rep.failures.append({"check": "injective", "chambers": [seen[phi[c]], c], "image": phi[c]})
                return rep
            seen[phi[c]] = c
        for c in range(b.n):
            for d in range(c + 1, b.n):
                if b.adjacent(c, d) != b2.adjacent(phi[c], phi[d]):
                    rep.failures.append({"check": "adjacency", "chambers": [c, d],
                                         "images": [phi[c], phi[d]]})
                    return rep
    return rep


# -- foundations ---------------------------------------------------------------------


def verify_building_axioms(b: Building) -> VerificationReport:
    rep = VerificationReport("building-axioms", params={"building": b.content_hash()})
    with _Timer(rep):
        result = validate_building(b)
        rep.instances = b.n * b.n
        rep.failures = list(result.violations)
    return rep


def verify_projection_gates(b: Building) -> VerificationReport:
    """d(D, C) = d(D, proj) + d(proj, C) for every simplex, chamber D, and C on the simplex."""
    rep = VerificationReport("projection-gates", params={"building": b.content_hash()})
    with _Timer(rep):
        for k in range(1, b.rank + 1):
            for J in combinations(range(b.rank), k):
                J = frozenset(J)
                reps = b.residue_reps(J)
                for r in sorted(set(reps.tolist())):
                    A = b.simplex(J, r)
                    R = np.flatnonzero(reps == r)
                    for D in range(b.n):
                        rep.instances += 1
                        p = projection_chamber(b, A, D)
                        if not (b.dist[D, R] == b.dist[D, p] + b.dist[p, R]).all():
                            rep.failures.append({"simplex": {"cotype": sorted(J), "rep": int(r)},
                                                 "chamber": D, "projection": p})
    return rep


def verify_apartment_test(b: Building, limit: int = 100_000) -> VerificationReport:
    """is_apartment agrees with enumeration on chamber sets through a fixed opposite pair.

    Candidate sets contain chamber 0 and the least chamber opposite it; the
    remaining members come from the first k other chambers, with k the
    largest value keeping the number of subsets within ``limit``.
    """
    rep = VerificationReport("apartment-test", params={"building": b.content_hash(), "limit": limit})
    with _Timer(rep):
        N = b.W.order
        c0 = 0
        c1 = int(np.flatnonzero(b.delta[c0] == b.W.longest)[0])
        known = {ap.chambers for ap in b.apartments()}
        others = [c for c in range(b.n) if c not in (c0, c1)]
        k = len(others)
        while k > N - 2 and comb(k, N - 2) > limit:
            k -= 1
        pool = others[:k]
        if k < len(others):
            rep.notes.append(f"candidate pool limited to {k} of {len(others)} chambers")
        rep.params["pool"] = k
        for rest in combinations(pool, N - 2):
            K = frozenset((c0, c1) + rest)
            rep.instances += 1
            if (is_apartment(b, K) is not None) != (K in known):
                rep.failures.append({"chambers": sorted(K), "is_apartment": K not in known})
    return rep


def apartment_count_oracle(q: int) -> int:
    """Triangles of PG(2, q): non-collinear point triples."""
    v = q * q + q + 1
    return comb(v, 3) - v * comb(q + 1, 3)


# -- Coxeter-side scans -----------------------------------------------------------------


def scan_condition_iv(system: CoxeterSystem, triple_radius: int, witness_radius: int) -> VerificationReport:
    """For each 3-set of the triple ball, look for a pair in the witness ball whose interval holds it.

    A triple without a witness is reported as uncovered within the radius;
    it is not a proof that no witness exists.
    """
    rep = VerificationReport("condition-iv", params={
        "system": system.to_json(), "triple_radius": triple_radius, "witness_radius": witness_radius})
    if triple_radius < 0 or witness_radius < triple_radius:
        raise ValueError("need 0 <= triple radius <= witness radius")
    with _Timer(rep):
        idx = ball_index(system, witness_radius)
        triples = ball_list(system, triple_radius)
        pos = [idx.position[w.word] for w in triples]
        for a, b_, c in combinations(range(len(triples)), 3):
            rep.instances += 1
            if idx.first_enclosing_pair([pos[a], pos[b_], pos[c]]) is None:
                rep.failures.append({"triple": [list(triples[i].word) for i in (a, b_, c)],
                                     "status": "no witness within radius"})
    return rep


SUITES = {
    "theorem1": "every convex subcomplex is an intersection of two apartments (thickness >= 4)",
    "chamber-subcomplexes": "convex chamber subcomplexes are intersections of two apartments",
    "obstruction": "walls are not apartment intersections when a wall panel has 3 chambers",
    "glue": "gluing roots succeeds iff the panel criterion holds",
    "adjacent-pairs": "apartments through an adjacent pair meet exactly in the pair",
    "axioms": "Weyl-distance axioms",
    "gates": "gate property of projections",
    "apartment-test": "is_apartment agrees with enumeration",
    "condition-iv": "bounded witness scan for chamber triples (needs --system and --radii)",
}


def run_suite(name: str, b: Optional[Building], jobs: int = 1) -> VerificationReport:
    table = {
        "theorem1": lambda: verify_theorem1(b, jobs),
        "chamber-subcomplexes": lambda: verify_chamber_subcomplexes(b),
        "obstruction": lambda: verify_thickness3_obstruction(b),
        "glue": lambda: verify_glue_criterion(b),
        "adjacent-pairs": lambda: verify_adjacent_pairs(b),
        "axioms": lambda: verify_building_axioms(b),
        "gates": lambda: verify_projection_gates(b),
        "apartment-test": lambda: verify_apartment_test(b),
    }
    if name not in table:
        raise ValueError(f"unknown suite {name!r}; known: {sorted(SUITES)}")
    if b is None:
        raise ValueError(f"suite {name!r} needs a building")
    return table[name]()
