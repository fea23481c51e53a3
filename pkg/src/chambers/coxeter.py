"""Coxeter systems, the word problem, and the Coxeter complex Sigma(W, S).

Elements of W are carried as ShortLex-least reduced words.  Reduction uses
Tits' solution of the word problem: all reduced words of an element are
connected by braid moves, and a word is reduced unless braid moves expose a
square ``ss``.  Right multiplication by a generator is memoised per system,
so repeated work over balls of W stays cheap.

Chambers of Sigma(W, S) are the elements of W.  A simplex of cotype J is a
coset wW_J, stored by its minimal-length representative; cotype S is the
empty simplex and cotype {} a chamber.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from pathlib import Path
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

INFINITY = 0  # matrix entry for m(s, t) = infinity, as in the JSON format

Word = tuple


class CoxeterError(ValueError):
    pass


def _shortlex(word: Sequence[int]) -> tuple:
    return (len(word), tuple(word))


@dataclass(frozen=True)
class CoxeterMatrix:
    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.entries)
        object.__setattr__(self, "entries", rows)
        n = len(rows)
        if n == 0:
            raise CoxeterError("Coxeter matrix must have at least one generator")
        for i, row in enumerate(rows):
            if len(row) != n:
                raise CoxeterError(f"row {i} has length {len(row)}, expected {n}")
            if row[i] != 1:
                raise CoxeterError(f"diagonal entry m({i},{i}) must be 1")
            for j, m in enumerate(row):
                if rows[j][i] != m:
                    raise CoxeterError(f"matrix not symmetric at ({i},{j})")
                if i != j and m != INFINITY and m < 2:
                    raise CoxeterError(f"off-diagonal entry m({i},{j})={m} must be >= 2 or infinite")

    @property
    def size(self) -> int:
        return len(self.entries)

    def m(self, s: int, t: int) -> float:
        v = self.entries[s][t]
        return math.inf if v == INFINITY else v


class CoxeterSystem:
    """A Coxeter system (W, S) given by its matrix and ordered generator labels.

    The generator order is the tie-break for ShortLex normal forms.
    """

    def __init__(self, matrix, generators: Optional[Sequence[str]] = None):
        if not isinstance(matrix, CoxeterMatrix):
            matrix = CoxeterMatrix(tuple(tuple(r) for r in matrix))
        self.matrix = matrix
        n = matrix.size
        if generators is None:
            generators = [f"s{i}" for i in range(n)]
        generators = tuple(str(g) for g in generators)
        if len(generators) != n:
            raise CoxeterError(f"{len(generators)} generator labels for a rank-{n} matrix")
        if len(set(generators)) != n:
            raise CoxeterError("generator labels must be distinct")
        self.generators = generators
        self.rank = n
        self._m = matrix.entries
        self._alt = [[self._alternating(s, t) for t in range(n)] for s in range(n)]
        self._reduced: dict[Word, frozenset] = {(): frozenset({()})}
        self._rmul: dict[tuple, Word] = {}
        self._hash = hash((matrix.entries, generators))

    def _alternating(self, s: int, t: int) -> Optional[Word]:
        m = self._m[s][t]
        if s == t or m == INFINITY:
            return None
        return tuple(s if k % 2 == 0 else t for k in range(m))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, CoxeterSystem):
            return NotImplemented
        return self.matrix == other.matrix and self.generators == other.generators

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"CoxeterSystem({[list(r) for r in self._m]}, {list(self.generators)})"

    # -- serialization -------------------------------------------------

    def to_json(self) -> dict:
        return {"generators": list(self.generators), "matrix": [list(r) for r in self._m]}

    @classmethod
    def from_json(cls, doc: dict) -> "CoxeterSystem":
        try:
            return cls(doc["matrix"], doc.get("generators"))
        except KeyError as exc:
            raise CoxeterError(f"missing key {exc} in Coxeter system document") from None

    @classmethod
    def load(cls, path) -> "CoxeterSystem":
        return cls.from_json(json.loads(Path(path).read_text()))

    # -- word problem --------------------------------------------------

    def _check_word(self, word: Iterable[int]) -> Word:
        word = tuple(int(x) for x in word)
        for x in word:
            if not 0 <= x < self.rank:
                raise CoxeterError(f"invalid generator index {x} for rank {self.rank}")
        return word

    def _braid_class(self, word: Word) -> frozenset:
        seen = {word}
        stack = [word]
        m_table = self._m
        alt = self._alt
        while stack:
            u = stack.pop()
            n = len(u)
            for i in range(n - 1):
                s, t = u[i], u[i + 1]
                m = m_table[s][t]
                if s == t or m == INFINITY or i + m > n:
                    continue
                if u[i:i + m] == alt[s][t]:
                    v = u[:i] + alt[t][s] + u[i + m:]
                    if v not in seen:
                        seen.add(v)
                        stack.append(v)
        return frozenset(seen)

    def reduced_words(self, w: "WeylElement") -> frozenset:
        """All reduced words of ``w``."""
        return self._reduced_of(w.word)

    def _reduced_of(self, word: Word) -> frozenset:
        # equal systems share elements but not caches, so a normal form may arrive unseen
        cls = self._reduced.get(word)
        if cls is None:
            cls = self._reduced[word] = self._braid_class(word)
        return cls

    def _rmul_gen(self, word: Word, s: int) -> Word:
        key = (word, s)
        hit = self._rmul.get(key)
        if hit is not None:
            return hit
        reduced = self._reduced_of(word)
        shorter = [u[:-1] for u in reduced if u[-1:] == (s,)]
        if shorter:
            cls = frozenset(shorter)
        else:
            cls = self._braid_class(word + (s,))
        canon = min(cls)
        self._reduced.setdefault(canon, cls)
        self._rmul[key] = canon
        self._rmul[(canon, s)] = word
        return canon

    def _mul_words(self, a: Word, b: Word) -> Word:
        for s in b:
            a = self._rmul_gen(a, s)
        return a

    def _inverse_word(self, a: Word) -> Word:
        cls = frozenset(u[::-1] for u in self._reduced_of(a))
        canon = min(cls)
        self._reduced.setdefault(canon, cls)
        return canon

    def _has_right_descent(self, a: Word, s: int) -> bool:
        return len(self._rmul_gen(a, s)) < len(a)

    def element(self, word: Iterable[int] = ()) -> "WeylElement":
        return normal_form(self, word)

    @property
    def identity(self) -> "WeylElement":
        return WeylElement((), self)

    def generator(self, s: int) -> "WeylElement":
        return normal_form(self, (s,))

    # -- structure -----------------------------------------------------

    @cached_property
    def is_finite(self) -> bool:
        n = self.rank
        gram = np.empty((n, n))
        for i in range(n):
            for j in range(n):
                m = self.matrix.m(i, j)
                gram[i, j] = -1.0 if m == math.inf else -math.cos(math.pi / m)
        return bool(np.linalg.eigvalsh(gram).min() > 1e-9)

    def table(self) -> "FiniteTable":
        if not self.is_finite:
            raise CoxeterError("W is infinite; no multiplication table")
        tab = self.__dict__.get("_table")
        if tab is None:
            tab = FiniteTable(self)
            self.__dict__["_table"] = tab
        return tab

    def parabolic(self, J: Iterable[int]) -> "CoxeterSystem":
        """The standard parabolic subsystem (W_J, J), generators renumbered in order."""
        J = sorted(set(J))
        return CoxeterSystem([[self._m[a][b] for b in J] for a in J], [self.generators[a] for a in J])


@dataclass(frozen=True)
class WeylElement:
    word: tuple
    system: CoxeterSystem = field(repr=False)

    @property
    def length(self) -> int:
        return len(self.word)

    def __len__(self):
        return len(self.word)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return multiply(self, other)

    def inverse(self) -> "WeylElement":
        return inverse(self)

    @property
    def sort_key(self) -> tuple:
        return _shortlex(self.word)

    def __lt__(self, other: "WeylElement") -> bool:
        return self.sort_key < other.sort_key

    def label(self) -> str:
        if not self.word:
            return "1"
        return "".join(self.system.generators[s] for s in self.word)


def normal_form(system: CoxeterSystem, word: Iterable[int]) -> WeylElement:
    """ShortLex-least reduced word of the element represented by ``word``."""
    w = system._check_word(word)
    acc: Word = ()
    for s in w:
        acc = system._rmul_gen(acc, s)
    return WeylElement(acc, system)


def _same_system(a: WeylElement, b: WeylElement) -> CoxeterSystem:
    if a.system != b.system:
        raise CoxeterError("elements belong to different Coxeter systems")
    return a.system


def multiply(a: WeylElement, b: WeylElement) -> WeylElement:
    system = _same_system(a, b)
    return WeylElement(system._mul_words(a.word, b.word), system)


def inverse(a: WeylElement) -> WeylElement:
    return WeylElement(a.system._inverse_word(a.word), a.system)


def length(a: WeylElement) -> int:
    return len(a.word)


def ball(system: CoxeterSystem, radius: int) -> set:
    return set(ball_list(system, radius))


def ball_list(system: CoxeterSystem, radius: int) -> list:
    """Elements of length <= radius in ShortLex order."""
    if radius < 0:
        raise CoxeterError("radius must be >= 0")
    layer = {()}
    out = [()]
    for _ in range(radius):
        nxt = set()
        for w in layer:
            for s in range(system.rank):
                v = system._rmul_gen(w, s)
                if len(v) > len(w):
                    nxt.add(v)
        if not nxt:
            break
        out.extend(sorted(nxt))
        layer = nxt
    return [WeylElement(w, system) for w in out]


class FiniteTable:
    """Dense multiplication data for a finite W; elements indexed in ShortLex order."""

    def __init__(self, system: CoxeterSystem):
        self.system = system
        words = [w.word for w in ball_list(system, 10_000)]
        self.elements = [WeylElement(w, system) for w in words]
        self.index = {w: i for i, w in enumerate(words)}
        n = len(words)
        self.order = n
        self.length = np.array([len(w) for w in words], dtype=np.int64)
        gens = np.empty((n, system.rank), dtype=np.int64)
        for i, w in enumerate(words):
            for s in range(system.rank):
                gens[i, s] = self.index[system._rmul_gen(w, s)]
        self.rmul_gen = gens
        mul = np.empty((n, n), dtype=np.int64)
        mul[:, 0] = np.arange(n)
        # column j from the column of w_j with its last letter removed
        for j in range(1, n):
            w = words[j]
            mul[:, j] = gens[mul[:, self.index[w[:-1]]], w[-1]]
        self.mul = mul
        self.inv = np.array([self.index[system._inverse_word(w)] for w in words], dtype=np.int64)
        self.identity = 0
        self.generators = [self.index[(s,)] for s in range(system.rank)]
        self.longest = int(np.argmax(self.length))

    def idx(self, w) -> int:
        if isinstance(w, WeylElement):
            return self.index[w.word]
        if isinstance(w, (int, np.integer)):
            return int(w)
        return self.index[tuple(w)]

    def parabolic_mask(self, J: Iterable[int]) -> np.ndarray:
        J = set(J)
        return np.array([set(w.word) <= J for w in self.elements], dtype=bool)

    @cached_property
    def reflections(self) -> list:
        refl = set()
        for i in range(self.order):
            for g in self.generators:
                refl.add(int(self.mul[self.mul[i, g], self.inv[i]]))
        return sorted(refl)


# -- reflections, roots, walls -------------------------------------------------


@dataclass(frozen=True)
class Reflection:
    element: WeylElement

    def __post_init__(self):
        w = self.element
        if w.length % 2 != 1 or (w * w).word != ():
            raise CoxeterError(f"{w.word} is not a reflection")

    @property
    def sort_key(self):
        return self.element.sort_key


def conjugate_generator(w: WeylElement, s: int) -> Reflection:
    system = w.system
    word = system._mul_words(system._mul_words(w.word, (s,)), system._inverse_word(w.word))
    return Reflection(WeylElement(word, system))


@dataclass(frozen=True)
class CoxRoot:
    """Half of Sigma(W, S) cut by the wall of ``reflection``.

    ``positive`` selects the side containing the identity chamber.
    """

    reflection: Reflection
    positive: bool = True

    def opposite(self) -> "CoxRoot":
        return CoxRoot(self.reflection, not self.positive)


def root_side(root: CoxRoot, w: WeylElement) -> bool:
    t = root.reflection.element
    _same_system(t, w)
    on_positive = len(t.system._mul_words(t.word, w.word)) > len(w.word)
    return on_positive == root.positive


def _left_inversion_words(system: CoxeterSystem, x: Word) -> list:
    """Reflections crossed, in order, by the gallery spelled by the word ``x``."""
    out = []
    prefix: Word = ()
    for s in x:
        t = system._mul_words(system._mul_words(prefix, (s,)), system._inverse_word(prefix))
        out.append(t)
        prefix = system._rmul_gen(prefix, s)
    return out


def separating_walls(u: WeylElement, v: WeylElement) -> set:
    system = _same_system(u, v)
    x = system._mul_words(system._inverse_word(u.word), v.word)
    u_inv = system._inverse_word(u.word)
    walls = set()
    for t in _left_inversion_words(system, x):
        conj = system._mul_words(system._mul_words(u.word, t), u_inv)
        walls.add(Reflection(WeylElement(conj, system)))
    return walls


def _sep_words(system: CoxeterSystem, u: Word, v: Word) -> set:
    u_inv = system._inverse_word(u)
    x = system._mul_words(u_inv, v)
    return {system._mul_words(system._mul_words(u, t), u_inv) for t in _left_inversion_words(system, x)}


def convex_hull(system: CoxeterSystem, F: Iterable[WeylElement]) -> set:
    """Smallest gallery-convex chamber set of Sigma(W, S) containing ``F``.

    Only roots whose wall separates two members of F can cut the hull down;
    the hull is materialised by walking outward from one member of F,
    crossing only such walls.
    """
    words = sorted({w.word for w in F}, key=_shortlex)
    if not words:
        raise CoxeterError("convex hull of an empty set")
    for w in F:
        _same_system(w, WeylElement((), system))
    f0 = words[0]
    walls = set()
    for f in words[1:]:
        walls |= _sep_words(system, f0, f)
    f0_inv = system._inverse_word(f0)
    seen = {f0}
    frontier = [f0]
    while frontier:
        nxt = []
        for x in frontier:
            rel = system._mul_words(f0_inv, x)
            x_inv = system._inverse_word(x)
            for s in range(system.rank):
                if len(system._rmul_gen(rel, s)) < len(rel):
                    continue
                t = system._mul_words(system._rmul_gen(x, s), x_inv)
                if t not in walls:
                    continue
                y = system._rmul_gen(x, s)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return {WeylElement(w, system) for w in seen}


def is_convex_chamber_set(system: CoxeterSystem, K: Iterable[WeylElement]) -> bool:
    K = set(K)
    if not K:
        return True
    return convex_hull(system, K) == K


# -- simplices of Sigma(W, S) -------------------------------------------------


def _min_coset_rep(system: CoxeterSystem, w: Word, J: frozenset) -> Word:
    changed = True
    while changed:
        changed = False
        for s in sorted(J):
            v = system._rmul_gen(w, s)
            if len(v) < len(w):
                w = v
                changed = True
    return w


@dataclass(frozen=True)
class CoxSimplex:
    """The simplex wW_J of Sigma(W, S), keyed by its minimal coset representative."""

    cotype: frozenset
    representative: WeylElement

    @classmethod
    def of(cls, w: WeylElement, J: Iterable[int]) -> "CoxSimplex":
        J = frozenset(J)
        system = w.system
        for s in J:
            if not 0 <= s < system.rank:
                raise CoxeterError(f"invalid generator index {s}")
        return cls(J, WeylElement(_min_coset_rep(system, w.word, J), system))

    @property
    def system(self) -> CoxeterSystem:
        return self.representative.system

    @property
    def is_chamber(self) -> bool:
        return not self.cotype

    @property
    def is_empty(self) -> bool:
        return len(self.cotype) == self.system.rank

    @property
    def dimension(self) -> int:
        return self.system.rank - len(self.cotype) - 1

    def contains_chamber(self, w: WeylElement) -> bool:
        return _min_coset_rep(w.system, w.word, self.cotype) == self.representative.word

    def is_face_of(self, other: "CoxSimplex") -> bool:
        return other.cotype <= self.cotype and self.contains_chamber(other.representative)

    @property
    def sort_key(self):
        return (len(self.cotype), tuple(sorted(self.cotype)), self.representative.sort_key)


class _WholeComplex:
    """Marker for the entire Coxeter complex (the empty intersection of walls)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "WHOLE_COMPLEX"

    def __contains__(self, item):
        return True


WHOLE_COMPLEX = _WholeComplex()


def _fixes(system: CoxeterSystem, t: Word, simplex: CoxSimplex) -> bool:
    w = simplex.representative.word
    conj = system._mul_words(system._mul_words(system._inverse_word(w), t), w)
    return set(conj) <= simplex.cotype


def cox_simplices(system: CoxeterSystem, radius: Optional[int] = None) -> list:
    """Nonempty simplices of Sigma(W, S).

    For infinite W, ``radius`` bounds the representatives' length.
    """
    if radius is None:
        if not system.is_finite:
            raise CoxeterError("infinite W: pass a radius")
        elems = system.table().elements
    else:
        elems = ball_list(system, radius)
    out = set()
    S = range(system.rank)
    for k in range(system.rank):
        for J in combinations(S, k):
            J = frozenset(J)
            for w in elems:
                out.add(CoxSimplex(J, WeylElement(_min_coset_rep(system, w.word, J), system)))
    return sorted(out, key=lambda x: x.sort_key)


def walls_containing(simplex: CoxSimplex) -> list:
    """Reflections whose walls contain ``simplex`` (W_J must be finite)."""
    system = simplex.system
    J = sorted(simplex.cotype)
    sub = system.parabolic(J)
    if not sub.is_finite:
        raise CoxeterError("simplex lies on infinitely many walls")
    w = simplex.representative.word
    w_inv = system._inverse_word(w)
    out = set()
    for r in sub.table().reflections:
        local = sub.table().elements[r].word
        r_word = system.element(J[s] for s in local).word
        out.add(system._mul_words(system._mul_words(w, r_word), w_inv))
    return [Reflection(WeylElement(t, system)) for t in sorted(out, key=_shortlex)]


def cox_support(system: CoxeterSystem, A: CoxSimplex, radius: Optional[int] = None):
    """Intersection of all walls containing ``A``, as a set of nonempty simplices.

    A chamber lies on no wall, so its support is ``WHOLE_COMPLEX``.
    """
    if A.is_chamber:
        return WHOLE_COMPLEX
    if A.is_empty:
        if system.is_finite:
            walls = [Reflection(system.table().elements[r]) for r in system.table().reflections]
        else:
            walls = None
    else:
        walls = walls_containing(A)
    out = set()
    for B in cox_simplices(system, radius):
        if walls is None:
            # infinitely many walls through the empty simplex; B must be fixed by all of W
            if set(range(system.rank)) <= B.cotype:
                out.add(B)
            continue
        if all(_fixes(system, t.element.word, B) for t in walls):
            out.add(B)
    return out


def wall_simplices(reflection: Reflection, radius: Optional[int] = None) -> set:
    """Nonempty simplices having chambers on both sides of the wall."""
    t = reflection.element
    system = t.system
    out = set()
    for B in cox_simplices(system, radius):
        if _fixes(system, t.word, B):
            out.add(B)
    return out


def cox_projection(target: CoxSimplex, from_: WeylElement) -> WeylElement:
    """Chamber of the residue ``target`` nearest to ``from_``."""
    system = _same_system(target.representative, from_)
    y = system._mul_words(system._inverse_word(from_.word), target.representative.word)
    y_min = _min_coset_rep(system, y, target.cotype)
    return WeylElement(system._mul_words(from_.word, y_min), system)


# -- Theorem-2 style searches -----------------------------------------------------


class BallIndex:
    """Chambers of a ball with their left inversion sets packed as bit rows.

    Walls separating C and D are ``sep[C] ^ sep[D]``, which makes interval
    membership a pair of matrix products.
    """

    def __init__(self, system: CoxeterSystem, radius: int):
        self.system = system
        self.radius = radius
        self.elements = ball_list(system, radius)
        self.position = {w.word: i for i, w in enumerate(self.elements)}
        refl_id: dict = {}
        rows = []
        masks: dict = {(): frozenset()}
        for w in self.elements:
            word = w.word
            if word:
                prefix = word[:-1]
                t = system._mul_words(system._mul_words(prefix, word[-1:]), system._inverse_word(prefix))
                rid = refl_id.setdefault(t, len(refl_id))
                masks[word] = masks[prefix] | {rid}
            rows.append(masks[word])
        self.reflections = list(refl_id)
        sep = np.zeros((len(self.elements), len(refl_id)), dtype=np.float32)
        for i, m in enumerate(rows):
            if m:
                sep[i, sorted(m)] = 1.0
        self.sep = sep
        self.not_sep = 1.0 - sep

    def __len__(self):
        return len(self.elements)

    def first_enclosing_pair(self, members: Sequence[int]) -> Optional[tuple]:
        """First (C, D) in scan order with every member inside the interval [C, D]."""
        sep = self.sep
        union = np.zeros_like(sep)
        for x in members:
            union = np.maximum(union, np.abs(sep - sep[x]))
        # x in [C, D]  <=>  walls(C, x) is a subset of walls(C, D)
        bad = (union * sep) @ sep.T + (union * self.not_sep) @ self.not_sep.T
        hits = np.flatnonzero(bad.ravel() < 0.5)
        if hits.size == 0:
            return None
        c, d = divmod(int(hits[0]), len(self.elements))
        return c, d


_BALL_CACHE: dict = {}


def ball_index(system: CoxeterSystem, radius: int) -> BallIndex:
    key = (system, radius)
    idx = _BALL_CACHE.get(key)
    if idx is None:
        idx = _BALL_CACHE[key] = BallIndex(system, radius)
    return idx


def in_interval(c: WeylElement, d: WeylElement, x: WeylElement) -> bool:
    system = _same_system(c, d)
    ci = system._inverse_word(c.word)
    return (len(system._mul_words(ci, x.word)) + len(system._mul_words(system._inverse_word(x.word), d.word))
            == len(system._mul_words(ci, d.word)))


def condition_iv_witness(system: CoxeterSystem, X: WeylElement, Y: WeylElement, Z: WeylElement,
                         search_radius: int) -> Optional[tuple]:
    """First pair (C, D) of the search ball whose convex hull holds X, Y, Z.

    Pairs are scanned in ShortLex order of (C, D).  ``None`` means no witness
    inside the ball, which is a disproof only when the ball is all of W.
    """
    triple = (X, Y, Z)
    for w in triple:
        _same_system(w, system.identity)
        if w.length > search_radius:
            raise CoxeterError(f"search radius {search_radius} does not contain {w.word}")
    idx = ball_index(system, search_radius)
    found = idx.first_enclosing_pair([idx.position[w.word] for w in triple])
    if found is None:
        return None
    c, d = found
    return idx.elements[c], idx.elements[d]


TripleOracle = Callable[[WeylElement, WeylElement, WeylElement], Optional[tuple]]


def enclose_finite_set(system: CoxeterSystem, F: Iterable[WeylElement],
                       triple_oracle: TripleOracle) -> Optional[tuple]:
    """Two chambers whose hull contains ``F``, built by peeling one chamber at a time.

    The ShortLex-largest chamber is peeled, the rest is enclosed recursively,
    and one triple query merges it back.
    """
    members = sorted(set(F))
    if not members:
        raise CoxeterError("cannot enclose an empty set")
    if len(members) == 1:
        return members[0], members[0]
    if len(members) == 2:
        return members[0], members[1]
    *rest, z = members
    inner = enclose_finite_set(system, rest, triple_oracle)
    if inner is None:
        return None
    return triple_oracle(inner[0], inner[1], z)


# -- named systems -----------------------------------------------------------------

_NAMED = {
    "A1": [[1]],
    "A2": [[1, 3], [3, 1]],
    "A3": [[1, 3, 2], [3, 1, 3], [2, 3, 1]],
    "B2": [[1, 4], [4, 1]],
    "G2": [[1, 6], [6, 1]],
    "A1~": [[1, INFINITY], [INFINITY, 1]],
    "A2~": [[1, 3, 3], [3, 1, 3], [3, 3, 1]],
    "334": [[1, 3, 4], [3, 1, 3], [4, 3, 1]],
}
_ALIASES = {"affine-A1": "A1~", "affine-A2": "A2~", "hyperbolic-334": "334", "triangle-334": "334"}


def named_system(name: str) -> CoxeterSystem:
    key = _ALIASES.get(name, name)
    if key not in _NAMED:
        raise CoxeterError(f"unknown system {name!r}; known: {sorted(_NAMED)}")
    return CoxeterSystem(_NAMED[key])
