"""Finite W-metric buildings.

A building is a set of chambers ``0..n-1`` with a Weyl distance
``delta(C, D)`` stored as a dense table of indices into the ShortLex-ordered
elements of W.  Simplices are identified with their residues: the simplex
of cotype J contained in chamber C is the J-residue of C, keyed by its least
chamber.  Cotype S is the empty simplex; it exists as a ``SimplexRef`` (it is
the panel of a rank-1 building) but is never stored in a ``SubComplex``.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Optional

import numpy as np

from .coxeter import CoxeterSystem, CoxRoot, Reflection, WeylElement


class BuildingError(ValueError):
    pass


class IsometryError(BuildingError):
    pass


@dataclass(frozen=True)
class SimplexRef:
    cotype: frozenset
    rep: int  # least chamber of the residue

    @property
    def sort_key(self):
        return (len(self.cotype), tuple(sorted(self.cotype)), self.rep)

    def __lt__(self, other):
        return self.sort_key < other.sort_key

    def __repr__(self):
        return f"SimplexRef({sorted(self.cotype)}, {self.rep})"


@dataclass(frozen=True)
class SubComplex:
    """Face-closed set of nonempty simplices."""

    simplices: frozenset
    rank: int = field(compare=False)

    def __and__(self, other: "SubComplex") -> "SubComplex":
        return SubComplex(self.simplices & other.simplices, self.rank)

    def __or__(self, other: "SubComplex") -> "SubComplex":
        return SubComplex(self.simplices | other.simplices, self.rank)

    def __le__(self, other: "SubComplex") -> bool:
        return self.simplices <= other.simplices

    def __contains__(self, simplex) -> bool:
        return simplex in self.simplices

    def __iter__(self):
        return iter(sorted(self.simplices))

    def __len__(self):
        return len(self.simplices)

    def __bool__(self):
        return bool(self.simplices)

    @property
    def chambers(self) -> frozenset:
        return frozenset(x.rep for x in self.simplices if not x.cotype)

    def simplex_dimension(self, x: SimplexRef) -> int:
        return self.rank - len(x.cotype) - 1

    @property
    def dimension(self) -> int:
        if not self.simplices:
            return -1
        return max(self.simplex_dimension(x) for x in self.simplices)

    @property
    def codimension(self) -> int:
        return self.rank - 1 - self.dimension

    def maximal_simplices(self) -> list:
        """Simplices of top dimension, in key order."""
        if not self.simplices:
            return []
        d = self.dimension
        return sorted(x for x in self.simplices if self.simplex_dimension(x) == d)


@dataclass(frozen=True)
class Apartment:
    """An isometric image of W; ``chart[i]`` is the chamber at the i-th element of W."""

    chart: tuple = field(compare=False)
    chambers: frozenset = field(init=False)

    def __post_init__(self):
        chart = tuple(int(c) for c in self.chart)
        object.__setattr__(self, "chart", chart)
        object.__setattr__(self, "chambers", frozenset(chart))
        object.__setattr__(self, "_pos", {c: i for i, c in enumerate(chart)})

    @property
    def base(self) -> int:
        return self.chart[0]

    def position(self, chamber: int) -> int:
        return self._pos[chamber]

    def __contains__(self, chamber) -> bool:
        return chamber in self._pos

    @property
    def key(self) -> tuple:
        return tuple(sorted(self.chambers))

    def __lt__(self, other):
        return self.key < other.key


@dataclass(frozen=True)
class BRoot:
    chambers: frozenset
    home: Apartment = field(compare=False)
    reflection: int = field(compare=False)  # index of the reflection in W
    positive: bool = field(compare=False)

    def cox_root(self, system: CoxeterSystem) -> CoxRoot:
        return CoxRoot(Reflection(system.table().elements[self.reflection]), self.positive)


@dataclass(frozen=True)
class BWall:
    panels: frozenset
    face_closure: SubComplex = field(compare=False)
    root: Optional[BRoot] = field(default=None, compare=False)

    @property
    def home(self) -> Optional[Apartment]:
        return self.root.home if self.root is not None else None


@dataclass
class ValidationReport:
    valid: bool
    violations: list

    def __bool__(self):
        return self.valid


class Building:
    def __init__(self, system: CoxeterSystem, delta, origin: Optional[tuple] = None, name: str = ""):
        self.system = system
        self.W = system.table()
        self.delta = np.asarray(delta, dtype=np.int64)
        n = self.delta.shape[0]
        if self.delta.shape != (n, n):
            raise BuildingError("delta table must be square")
        self.n = n
        self.origin = origin
        self.name = name
        self.dist = self.W.length[self.delta]
        self._residue_rep: dict = {}
        self._links: dict = {}
        self._apartments: Optional[list] = None
        self._walls: Optional[list] = None
        self._face_cache: dict = {}

    def __repr__(self):
        label = self.name or "Building"
        return f"<{label}: {self.n} chambers, rank {self.system.rank}>"

    @property
    def rank(self) -> int:
        return self.system.rank

    @property
    def chambers(self) -> range:
        return range(self.n)

    @classmethod
    def from_adjacency(cls, system: CoxeterSystem, n: int, partitions, name: str = "") -> "Building":
        """Build from per-generator panel partitions ``partitions[s] = [[ids...], ...]``.

        Weyl distances follow gallery types along breadth-first search.
        """
        W = system.table()
        if len(partitions) != system.rank:
            raise BuildingError(f"need one partition per generator, got {len(partitions)}")
        nbrs = [[() for _ in range(n)] for _ in range(system.rank)]
        for s, classes in enumerate(partitions):
            seen = set()
            for cls_ in classes:
                cls_ = [int(c) for c in cls_]
                for c in cls_:
                    if not 0 <= c < n:
                        raise BuildingError(f"chamber id {c} out of range")
                    if c in seen:
                        raise BuildingError(f"chamber {c} appears twice in the partition for generator {s}")
                    seen.add(c)
                for c in cls_:
                    nbrs[s][c] = tuple(x for x in cls_ if x != c)
            if len(seen) != n:
                raise BuildingError(f"partition for generator {s} misses chambers {sorted(set(range(n)) - seen)}")
        delta = np.full((n, n), -1, dtype=np.int64)
        for c in range(n):
            delta[c, c] = W.identity
            frontier = [c]
            while frontier:
                nxt = []
                for e in frontier:
                    w = delta[c, e]
                    for s in range(system.rank):
                        for d in nbrs[s][e]:
                            if delta[c, d] < 0:
                                delta[c, d] = W.rmul_gen[w, s]
                                nxt.append(d)
                frontier = nxt
        if (delta < 0).any():
            c, d = map(int, np.argwhere(delta < 0)[0])
            raise BuildingError(f"chamber graph is disconnected: no gallery from {c} to {d}")
        return cls(system, delta, name=name)

    # -- serialization ----------------------------------------------------

    def panel_classes(self, s: int) -> list:
        rep = self.residue_reps(frozenset({s}))
        groups: dict = {}
        for c in range(self.n):
            groups.setdefault(int(rep[c]), []).append(c)
        return [groups[k] for k in sorted(groups)]

    def to_json(self) -> dict:
        return {
            "system": self.system.to_json(),
            "chambers": self.n,
            "adjacency": [{"s": s, "classes": self.panel_classes(s)} for s in range(self.rank)],
        }

    @classmethod
    def from_json(cls, doc: Mapping, name: str = "") -> "Building":
        try:
            system = CoxeterSystem.from_json(doc["system"])
            n = int(doc["chambers"])
            parts = [None] * system.rank
            for entry in doc["adjacency"]:
                parts[int(entry["s"])] = entry["classes"]
        except (KeyError, TypeError, IndexError) as exc:
            raise BuildingError(f"malformed building document: {exc}") from None
        if any(p is None for p in parts):
            raise BuildingError("adjacency must list every generator")
        return cls.from_adjacency(system, n, parts, name=name)

    def content_hash(self) -> str:
        blob = json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()

    # -- distances ----------------------------------------------------------

    def weyl_distance(self, c: int, d: int) -> WeylElement:
        return self.W.elements[self.delta[c, d]]

    def neighbours(self, c: int, s: int) -> list:
        g = self.W.generators[s]
        return [int(x) for x in np.flatnonzero(self.delta[c] == g)]

    def adjacent(self, c: int, d: int) -> bool:
        return c != d and int(self.dist[c, d]) == 1

    # -- residues and simplices ---------------------------------------------

    def residue_reps(self, J: frozenset) -> np.ndarray:
        J = frozenset(J)
        rep = self._residue_rep.get(J)
        if rep is None:
            mask = self.W.parabolic_mask(J)
            rep = np.full(self.n, -1, dtype=np.int64)
            for c in range(self.n):
                if rep[c] < 0:
                    rep[np.flatnonzero(mask[self.delta[c]])] = c
            self._residue_rep[J] = rep
        return rep

    def simplex(self, J: Iterable[int], chamber: int) -> SimplexRef:
        J = frozenset(J)
        return SimplexRef(J, int(self.residue_reps(J)[chamber]))

    def chamber_simplex(self, chamber: int) -> SimplexRef:
        return SimplexRef(frozenset(), int(chamber))

    def panel(self, s: int, chamber: int) -> SimplexRef:
        return self.simplex({s}, chamber)

    def residue(self, simplex: SimplexRef) -> frozenset:
        rep = self.residue_reps(simplex.cotype)
        return frozenset(int(x) for x in np.flatnonzero(rep == rep[simplex.rep]))

    def is_face(self, a: SimplexRef, b: SimplexRef) -> bool:
        """Whether ``a`` is a face of ``b``."""
        return b.cotype <= a.cotype and int(self.residue_reps(a.cotype)[b.rep]) == a.rep

    def _cotypes_above(self, J: frozenset) -> list:
        S = frozenset(range(self.rank))
        rest = sorted(S - J)
        out = []
        for k in range(len(rest) + 1):
            for extra in combinations(rest, k):
                K = J | frozenset(extra)
                if K != S:
                    out.append(K)
        return out

    def face_closure(self, items: Iterable) -> SubComplex:
        """Face closure of chambers (ints) and/or simplices; the empty simplex is dropped."""
        items = list(items)
        key = frozenset(items)
        hit = self._face_cache.get(key)
        if hit is not None:
            return hit
        out = set()
        for x in items:
            if not isinstance(x, SimplexRef):
                x = self.chamber_simplex(int(x))
            for K in self._cotypes_above(x.cotype):
                out.add(SimplexRef(K, int(self.residue_reps(K)[x.rep])))
        sc = SubComplex(frozenset(out), self.rank)
        if len(self._face_cache) < 200_000:
            self._face_cache[key] = sc
        return sc

    def complex_of(self, ap: Apartment) -> SubComplex:
        return self.face_closure(ap.chambers)

    def panels(self) -> list:
        out = []
        for s in range(self.rank):
            rep = self.residue_reps(frozenset({s}))
            out.extend(SimplexRef(frozenset({s}), int(r)) for r in sorted(set(rep.tolist())))
        return out

    # -- counting -------------------------------------------------------------

    def apartments(self) -> list:
        if self._apartments is None:
            self._apartments = enumerate_apartments(self)
        return self._apartments


# -- validation ----------------------------------------------------------------


def validate_building(b: Building, limit: int = 20) -> ValidationReport:
    """Exhaustive check of the W-distance axioms and panel thickness >= 2."""
    W = b.W
    delta = b.delta
    n = b.n
    violations: list = []

    def add(kind, **info):
        if len(violations) < limit:
            violations.append({"kind": kind, **{k: (int(v) if isinstance(v, (np.integer,)) else v)
                                                for k, v in info.items()}})

    diag = np.diagonal(delta)
    for c in np.flatnonzero(diag != W.identity):
        add("nonzero_self_distance", chamber=int(c))
    off = (delta == W.identity) & ~np.eye(n, dtype=bool)
    for c, d in np.argwhere(off):
        add("distinct_at_identity", pair=[int(c), int(d)])
    inv_bad = W.inv[delta] != delta.T
    for c, d in np.argwhere(inv_bad):
        add("asymmetric", pair=[int(c), int(d)])
        break
    if violations:
        return ValidationReport(False, violations)
    for s in range(b.rank):
        g = W.generators[s]
        ws = W.rmul_gen[:, s]
        for d in range(n):
            mates = np.flatnonzero(delta[d] == g)
            if mates.size == 0:
                add("thin_panel", chamber=d, generator=s)
                continue
            w = delta[:, d]
            target = ws[w]
            up = W.length[target] > W.length[w]
            for e in mates:
                got = delta[:, e]
                bad = ((got != w) & (got != target)) | (up & (got != target))
                for c in np.flatnonzero(bad):
                    add("wd2", triple=[int(c), d, int(e)], generator=s)
                    break
            # WD3: some s-neighbour of d realises delta(c, d) * s
            hit = (delta[:, mates] == target[:, None]).any(axis=1)
            for c in np.flatnonzero(~hit):
                add("wd3", pair=[int(c), d], generator=s)
                break
    return ValidationReport(not violations, violations)


# -- galleries -------------------------------------------------------------------


def gallery_distance(b: Building, c: int, d: int) -> int:
    return int(b.dist[c, d])


def minimal_galleries(b: Building, c: int, d: int) -> list:
    out = []
    path = [c]

    def walk(x):
        if x == d:
            out.append(tuple(path))
            return
        step = b.dist[x, d] - 1
        for y in np.flatnonzero((b.dist[x] == 1) & (b.dist[:, d] == step)):
            path.append(int(y))
            walk(int(y))
            path.pop()

    walk(c)
    return out


def interval(b: Building, c: int, d: int) -> frozenset:
    """Chambers on some minimal gallery from c to d."""
    return frozenset(int(x) for x in np.flatnonzero(b.dist[c] + b.dist[:, d] == b.dist[c, d]))


def convex_closure_chambers(b: Building, K: Iterable[int]) -> frozenset:
    hull = set(int(c) for c in K)
    done: set = set()
    changed = True
    while changed:
        changed = False
        members = sorted(hull)
        for i, c in enumerate(members):
            for d in members[i + 1:]:
                if (c, d) in done:
                    continue
                done.add((c, d))
                new = interval(b, c, d) - hull
                if new:
                    hull |= new
                    changed = True
    return frozenset(hull)


def is_convex_chambers(b: Building, K: Iterable[int]) -> bool:
    K = frozenset(K)
    return convex_closure_chambers(b, K) == K


# -- projections -----------------------------------------------------------------


def projection_chamber(b: Building, A: SimplexRef, d: int) -> int:
    """Chamber of the residue of ``A`` nearest to chamber ``d`` (the gate)."""
    W = b.W
    c0 = A.rep
    w = b.delta[c0, d]
    in_J = np.flatnonzero(W.parabolic_mask(A.cotype))
    coset = W.mul[in_J, w]
    u = coset[np.argmin(W.length[coset])]
    for e in sorted(b.residue(A)):
        if b.delta[e, d] == u:
            return e
    raise BuildingError("no gate chamber found; building axioms violated")


def projection(b: Building, A: SimplexRef, B: SimplexRef) -> SimplexRef:
    """The simplex proj_A B: chambers through A closest to B span its residue."""
    RA = sorted(b.residue(A))
    RB = sorted(b.residue(B))
    dmin = b.dist[np.ix_(RA, RB)].min(axis=1)
    closest = [c for c, x in zip(RA, dmin) if x == dmin.min()]
    letters: set = set()
    for x in closest:
        for y in closest:
            letters.update(b.W.elements[b.delta[x, y]].word)
    P = b.simplex(frozenset(letters), closest[0])
    if b.residue(P) != frozenset(closest):
        raise BuildingError("projection set is not a residue")
    return P


# -- links -------------------------------------------------------------------------


def link(b: Building, A: SimplexRef) -> Building:
    """The residue of ``A`` as a building of type (W_J, J); ``origin`` maps back."""
    if not A.cotype:
        raise BuildingError("the link of a chamber is empty")
    hit = b._links.get(A)
    if hit is not None:
        return hit
    J = sorted(A.cotype)
    sub = b.system.parabolic(J)
    local = {g: i for i, g in enumerate(J)}
    T = sub.table()
    trans = np.full(b.W.order, -1, dtype=np.int64)
    for i in np.flatnonzero(b.W.parabolic_mask(A.cotype)):
        word = b.W.elements[i].word
        trans[i] = T.index[sub.element(local[x] for x in word).word]
    R = sorted(b.residue(A))
    sub_delta = trans[b.delta[np.ix_(R, R)]]
    lb = Building(sub, sub_delta, origin=tuple(R), name=f"link of {A!r}")
    b._links[A] = lb
    return lb


def to_parent(lb: Building, chambers: Iterable[int]) -> frozenset:
    return frozenset(lb.origin[c] for c in chambers)


def to_link(lb: Building, chambers: Iterable[int]) -> frozenset:
    back = {g: i for i, g in enumerate(lb.origin)}
    return frozenset(back[c] for c in chambers)


# -- thickness -----------------------------------------------------------------------


def thickness(b: Building, P: SimplexRef) -> int:
    if len(P.cotype) != 1:
        raise BuildingError(f"{P!r} is not a panel")
    return len(b.residue(P))


def min_thickness(b: Building) -> int:
    best = None
    for s in range(b.rank):
        rep = b.residue_reps(frozenset({s}))
        counts = np.bincount(rep, minlength=b.n)
        m = int(counts[counts > 0].min())
        best = m if best is None else min(best, m)
    return best


# -- apartments ------------------------------------------------------------------------


def satisfies_star(b: Building, K: Iterable[int]) -> bool:
    """delta(C, E) = delta(C, D) delta(D, E) for all C, D, E in K."""
    K = sorted(set(K))
    D = b.delta[np.ix_(K, K)]
    prod = b.W.mul[D[:, :, None], D[None, :, :]]
    return bool((prod == D[:, None, :]).all())


def is_apartment(b: Building, K: Iterable[int]) -> Optional[Apartment]:
    K = sorted(set(int(c) for c in K))
    if len(K) != b.W.order or not satisfies_star(b, K):
        return None
    f = b.delta[K[0], K]
    if len(set(f.tolist())) != b.W.order:
        return None
    chart = [0] * b.W.order
    for c, w in zip(K, f):
        chart[w] = c
    return Apartment(tuple(chart))


def canonical(b: Building, ap: Apartment) -> Apartment:
    out = is_apartment(b, ap.chambers)
    if out is None:
        raise BuildingError("not an apartment")
    return out


def _w_index(b: Building, key) -> int:
    return b.W.idx(key)


def check_isometry(b: Building, partial: Mapping[int, int]) -> None:
    us = list(partial)
    cs = [partial[u] for u in us]
    if len(set(cs)) != len(cs):
        raise IsometryError("partial map is not injective")
    W = b.W
    for i, u in enumerate(us):
        for j, v in enumerate(us):
            if b.delta[cs[i], cs[j]] != W.mul[W.inv[u], v]:
                raise IsometryError(
                    f"delta({cs[i]}, {cs[j]}) != u^-1 v for u={W.elements[u].word}, v={W.elements[v].word}")


def extend_isometry(b: Building, partial: Mapping) -> Apartment:
    """Extend an isometry from part of W into the chambers to all of W.

    Elements of W are placed in ShortLex order, each at the least chamber
    consistent with everything placed so far.  The result is re-certified.
    """
    W = b.W
    placed = {_w_index(b, u): int(c) for u, c in partial.items()}
    if not placed:
        placed = {W.identity: 0}
    check_isometry(b, placed)
    chart = [-1] * W.order
    for u, c in placed.items():
        chart[u] = c
    us = list(placed)
    for w in range(W.order):
        if chart[w] >= 0:
            continue
        rows = b.delta[[chart[u] for u in us]]
        target = W.mul[W.inv[us], w]
        ok = (rows == target[:, None]).all(axis=0)
        cands = np.flatnonzero(ok)
        if cands.size == 0:
            raise IsometryError(f"cannot place element {W.elements[w].word}; building axioms violated")
        chart[w] = int(cands[0])
        us.append(w)
    ap = Apartment(tuple(chart))
    if is_apartment(b, ap.chambers) is None:
        raise IsometryError("extended chart failed the apartment check")
    return ap


def enumerate_apartments(b: Building) -> list:
    """Every apartment once, each with its chart based at its least chamber."""
    W = b.W
    N = W.order
    parent = [0] * N
    last = [0] * N
    for i, w in enumerate(W.elements):
        if w.word:
            parent[i] = W.index[w.word[:-1]]
            last[i] = w.word[-1]
    nbrs = [[np.flatnonzero(b.delta[c] == W.generators[s]) for c in range(b.n)] for s in range(b.rank)]
    out = []
    chart = np.zeros(N, dtype=np.int64)
    for c0 in range(b.n):
        chart[0] = c0

        def rec(k):
            if k == N:
                out.append(Apartment(tuple(chart.tolist())))
                return
            target = W.mul[W.inv[np.arange(k)], k]
            for x in nbrs[last[k]][chart[parent[k]]]:
                if x <= c0:
                    continue
                if (b.delta[chart[:k], x] == target).all():
                    chart[k] = x
                    rec(k + 1)

        rec(1)
    return sorted(out)


def apartments_containing(b: Building, chambers: Iterable[int], system: Optional[list] = None) -> list:
    chambers = frozenset(chambers)
    pool = b.apartments() if system is None else system
    return [ap for ap in pool if chambers <= ap.chambers]


# -- roots and walls -------------------------------------------------------------------


def roots_of(b: Building, ap: Apartment) -> list:
    W = b.W
    out = []
    for r in W.reflections:
        pos = W.length[W.mul[r]] > W.length
        plus = frozenset(ap.chart[i] for i in np.flatnonzero(pos))
        minus = frozenset(ap.chart[i] for i in np.flatnonzero(~pos))
        out.append(BRoot(plus, ap, r, True))
        out.append(BRoot(minus, ap, r, False))
    return out


def opposite_root(b: Building, root: BRoot) -> BRoot:
    return BRoot(root.home.chambers - root.chambers, root.home, root.reflection, not root.positive)


def wall_of(b: Building, root: BRoot) -> BWall:
    """Panels of the home apartment lying in exactly one chamber of ``root``."""
    W = b.W
    ap = root.home
    panels = set()
    for c in root.chambers:
        w = ap.position(c)
        for s in range(b.rank):
            mate = ap.chart[W.rmul_gen[w, s]]
            if mate not in root.chambers:
                panels.add(b.panel(s, c))
    panels = frozenset(panels)
    return BWall(panels, b.face_closure(panels), root)


def root_complex(b: Building, root: BRoot) -> SubComplex:
    return b.face_closure(root.chambers)


def walls_of(b: Building, ap: Apartment) -> list:
    """One wall per reflection, attached to its positive root."""
    return [wall_of(b, r) for r in roots_of(b, ap) if r.positive]


def all_walls(b: Building) -> list:
    """Distinct walls of all apartments, sorted by panel keys."""
    if b._walls is None:
        seen = {}
        for ap in b.apartments():
            for M in walls_of(b, ap):
                seen.setdefault(M.panels, M)
        b._walls = [seen[k] for k in sorted(seen, key=lambda p: sorted(x.sort_key for x in p))]
    return b._walls


def chamber_pair_through(b: Building, ap: Apartment, P: SimplexRef) -> tuple:
    """The two chambers of ``ap`` containing the panel ``P``, least first."""
    pair = sorted(b.residue(P) & ap.chambers)
    if len(pair) != 2:
        raise BuildingError(f"{P!r} is not a panel of the apartment")
    return pair[0], pair[1]


def apartment_isomorphism(b: Building, sigma: Apartment, sigma2: Apartment) -> dict:
    """Type-preserving chamber map sigma -> sigma2 fixing every common simplex.

    Candidates are the left translations w -> xw between the two charts,
    scanned with x in ShortLex order.
    """
    W = b.W
    common = b.complex_of(sigma) & b.complex_of(sigma2)
    anchors = []
    for A in common.simplices:
        c = min(b.residue(A) & sigma.chambers)
        anchors.append((A, sigma.position(c)))
    for x in range(W.order):
        ok = True
        for A, w in anchors:
            image = sigma2.chart[W.mul[x, w]]
            if b.simplex(A.cotype, image) != A:
                ok = False
                break
        if ok:
            return {sigma.chart[w]: sigma2.chart[W.mul[x, w]] for w in range(W.order)}
    raise BuildingError("no isomorphism fixes the intersection; building axioms violated")
