"""Apartment constructions: two-apartment realizations of convex subcomplexes.

Every function that hands back an ``Apartment`` has re-certified it with
``is_apartment``; constructions are never trusted on their own.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional

import numpy as np

from .building import (
    Apartment,
    BRoot,
    Building,
    BuildingError,
    BWall,
    SimplexRef,
    SubComplex,
    all_walls,
    chamber_pair_through,
    extend_isometry,
    gallery_distance,
    is_apartment,
    is_convex_chambers,
    link,
    min_thickness,
    roots_of,
    satisfies_star,
    to_link,
    to_parent,
    wall_of,
)


class ThicknessError(BuildingError):
    """The building is too thin for the requested construction."""


@dataclass(frozen=True)
class GlueRefusal:
    panel: Optional[SimplexRef]
    chamber: Optional[int]
    reason: str

    def __bool__(self):
        return False


@dataclass(frozen=True)
class RealizationCertificate:
    target: SubComplex
    host: Apartment
    witness: Apartment
    checked: SubComplex

    @property
    def valid(self) -> bool:
        return self.checked == self.target

    def to_json(self) -> dict:
        return {
            "target": simplices_json(self.target),
            "host": list(self.host.chart),
            "witness": list(self.witness.chart),
            "intersection": simplices_json(self.checked),
            "valid": self.valid,
        }


def simplices_json(k: Iterable[SimplexRef]) -> list:
    return [{"cotype": sorted(x.cotype), "rep": x.rep} for x in sorted(k)]


def simplices_from_json(b: Building, items) -> SubComplex:
    """Face closure of simplices given as {"cotype": [...], "rep": chamber}."""
    out = []
    for it in items:
        J = frozenset(int(s) for s in it["cotype"])
        if len(J) >= b.rank or not J <= frozenset(range(b.rank)):
            raise BuildingError(f"bad cotype {sorted(J)}")
        c = int(it["rep"])
        if not 0 <= c < b.n:
            raise BuildingError(f"chamber {c} out of range")
        out.append(b.simplex(J, c))
    return b.face_closure(out)


def certify(b: Building, sigma: Apartment, witness: Apartment, target: SubComplex) -> RealizationCertificate:
    if is_apartment(b, witness.chambers) is None:
        raise BuildingError("witness is not an apartment")
    checked = SubComplex(b.complex_of(sigma).simplices & b.complex_of(witness).simplices, b.rank)
    cert = RealizationCertificate(target, sigma, witness, checked)
    if not cert.valid:
        raise BuildingError(
            f"construction produced intersection of size {len(checked)}, expected {len(target)}")
    return cert


# -- convexity inside one apartment -------------------------------------------------


def root_complexes(b: Building, sigma: Apartment) -> list:
    """(root, face closure) for every root of ``sigma``."""
    cache = b.__dict__.setdefault("_root_cx", {})
    hit = cache.get(sigma.chambers)
    if hit is None:
        hit = [(r, b.face_closure(r.chambers)) for r in roots_of(b, sigma)]
        cache[sigma.chambers] = hit
    return hit


def hull_in_apartment(b: Building, sigma: Apartment, items: Iterable) -> SubComplex:
    """Intersection of the roots of ``sigma`` containing the given simplices."""
    k = b.face_closure(items)
    if not k:
        return k
    if not k <= b.complex_of(sigma):
        raise BuildingError("simplices are not in the apartment")
    out = b.complex_of(sigma).simplices
    for _, rc in root_complexes(b, sigma):
        if k.simplices <= rc.simplices:
            out = out & rc.simplices
    return SubComplex(out, b.rank)


def is_convex_in(b: Building, sigma: Apartment, k: SubComplex) -> bool:
    return k <= b.complex_of(sigma) and hull_in_apartment(b, sigma, k) == k


def convex_subcomplexes(b: Building, sigma: Apartment) -> list:
    """All distinct intersections of sets of roots of ``sigma`` (the empty set gives sigma)."""
    found = {b.complex_of(sigma).simplices}
    for _, rc in root_complexes(b, sigma):
        found |= {x & rc.simplices for x in found}
    out = [SubComplex(x, b.rank) for x in found]
    return sorted(out, key=lambda k: (k.dimension, len(k), sorted(x.sort_key for x in k.simplices)))


def wall_through_panel(b: Building, sigma: Apartment, P: SimplexRef) -> BWall:
    C = min(b.residue(P) & sigma.chambers)
    (s,) = P.cotype
    W = b.W
    w = sigma.position(C)
    t = int(W.mul[W.mul[w, W.generators[s]], W.inv[w]])
    for r in roots_of(b, sigma):
        if r.reflection == t and C in r.chambers:
            return wall_of(b, r)
    raise BuildingError(f"{P!r} is not a panel of the apartment")


def _root_with_chambers(b: Building, sigma: Apartment, chambers: frozenset) -> BRoot:
    for r in roots_of(b, sigma):
        if r.chambers == chambers:
            return r
    raise BuildingError("chamber set is not a root of the apartment")


def _wall_chamber(b: Building, root: BRoot, P: SimplexRef) -> int:
    hit = b.residue(P) & root.chambers
    if len(hit) != 1:
        raise BuildingError(f"{P!r} is not a boundary panel of the root")
    return next(iter(hit))


# -- chamber subcomplexes ---------------------------------------------------------------


def realize_chamber_subcomplex(b: Building, sigma: Apartment, kappa: SubComplex) -> RealizationCertificate:
    """Second apartment meeting ``sigma`` exactly in a convex chamber subcomplex.

    Across each boundary wall of ``kappa`` the outside chamber of ``sigma``
    is swapped for a third chamber on the same panel; the swapped set is
    still isometric to W and extends to an apartment.
    """
    K = kappa.chambers
    if not K or b.face_closure(K) != kappa:
        raise BuildingError("not a chamber subcomplex")
    if not K <= sigma.chambers:
        raise BuildingError("subcomplex is not contained in the apartment")
    if not is_convex_chambers(b, K):
        raise BuildingError("subcomplex is not convex")
    if K == sigma.chambers:
        return certify(b, sigma, sigma, kappa)
    W = b.W
    boundary: dict = {}
    for C in sorted(K):
        w = sigma.position(C)
        for s in range(b.rank):
            D = sigma.chart[W.rmul_gen[w, s]]
            if D in K:
                continue
            t = int(W.mul[W.mul[w, W.generators[s]], W.inv[w]])
            P = b.panel(s, C)
            if t not in boundary or P < boundary[t][0]:
                boundary[t] = (P, C, D)
    partial = {sigma.position(X): X for X in K}
    for t in sorted(boundary):
        P, C, D = boundary[t]
        third = sorted(b.residue(P) - {C, D})
        if not third:
            raise ThicknessError(f"panel {P!r} lies in only two chambers")
        partial[sigma.position(D)] = third[0]
    witness = extend_isometry(b, partial)
    return certify(b, sigma, witness, kappa)


# -- roots ----------------------------------------------------------------------------


def apartment_with_root_and_chamber(b: Building, alpha: BRoot, C: int) -> Apartment:
    if C in alpha.chambers:
        raise BuildingError(f"chamber {C} already lies in the root")
    M = wall_of(b, alpha)
    mine = sorted(P for P in (b.panel(s, C) for s in range(b.rank)) if P in M.panels)
    if not mine:
        raise BuildingError(f"chamber {C} contains no panel of the root's wall")
    P = mine[0]
    home = alpha.home
    (D,) = (b.residue(P) & home.chambers) - alpha.chambers
    partial = {home.position(X): X for X in alpha.chambers}
    partial[home.position(D)] = C
    out = extend_isometry(b, partial)
    if not (alpha.chambers | {C}) <= out.chambers:
        raise BuildingError("extension lost the root")
    return out


def panel_criterion(b: Building, a1: BRoot, a2: BRoot) -> Optional[SimplexRef]:
    """A wall panel where the two roots use different chambers, if any."""
    M = wall_of(b, a1)
    for P in sorted(M.panels):
        if _wall_chamber(b, a1, P) != _wall_chamber(b, a2, P):
            return P
    return None


def glue_roots(b: Building, a1: BRoot, a2: BRoot):
    """The apartment with chamber set a1 u a2, or a ``GlueRefusal``."""
    M1, M2 = wall_of(b, a1), wall_of(b, a2)
    if M1.panels != M2.panels:
        raise BuildingError("roots have different walls")
    ap = is_apartment(b, a1.chambers | a2.chambers)
    if ap is not None:
        return ap
    for P in sorted(M1.panels):
        c1 = _wall_chamber(b, a1, P)
        if c1 == _wall_chamber(b, a2, P):
            return GlueRefusal(P, c1, "roots share a chamber at this panel")
    return GlueRefusal(None, None, "union is not an apartment")


def root_family(b: Building, P: SimplexRef, M: BWall) -> dict:
    """One root per chamber on ``P``, all bounded by ``M``, pairwise gluable."""
    if P not in M.panels:
        raise BuildingError(f"{P!r} is not a panel of the wall")
    root = M.root
    home = root.home
    C0, D0 = chamber_pair_through(b, home, P)
    base = root if C0 in root.chambers else _root_with_chambers(b, home, home.chambers - root.chambers)
    family = {C0: base, D0: _root_with_chambers(b, home, home.chambers - base.chambers)}
    for C in sorted(b.residue(P) - {C0, D0}):
        ap = apartment_with_root_and_chamber(b, base, C)
        family[C] = _root_with_chambers(b, ap, ap.chambers - base.chambers)
    for C, a in family.items():
        if C not in a.chambers or wall_of(b, a).panels != M.panels:
            raise BuildingError("root family property failed")
    for C, D in combinations(sorted(family), 2):
        if not isinstance(glue_roots(b, family[C], family[D]), Apartment):
            raise BuildingError(f"roots at {C} and {D} do not glue")
    return dict(sorted(family.items()))


# -- links ------------------------------------------------------------------------------


def _extend_chamber_set(b: Building, K: frozenset) -> Apartment:
    """Apartment containing K, given that K satisfies the isometry condition."""
    if not satisfies_star(b, K):
        raise BuildingError("chamber set violates delta(C,E) = delta(C,D) delta(D,E)")
    c0 = min(K)
    return extend_isometry(b, {int(b.delta[c0, X]): X for X in K})


def _link_root(b: Building, lb: Building, ap_chambers: frozenset, root_chambers: frozenset) -> BRoot:
    home = is_apartment(lb, to_link(lb, ap_chambers & frozenset(lb.origin)))
    if home is None:
        raise BuildingError("apartment does not restrict to a link apartment")
    return _root_with_chambers(lb, home, to_link(lb, root_chambers & frozenset(lb.origin)))


def lift_link_apartment(b: Building, M: BWall, A: SimplexRef, sigma_a: Apartment) -> Apartment:
    """Apartment containing the wall ``M`` whose trace on the residue of ``A`` is ``sigma_a``."""
    lb = link(b, A)
    CA = to_parent(lb, sigma_a.chambers)
    RA = b.residue(A)
    if A not in M.face_closure:
        raise BuildingError(f"{A!r} is not in the wall")
    for B in M.face_closure:
        if B != A and b.is_face(A, B) and not (b.residue(B) & CA):
            raise BuildingError(f"wall simplex {B!r} above A is missing from the link apartment")
    alpha = M.root.chambers
    Ps = [P for P in sorted(M.panels) if b.is_face(A, P) and len(b.residue(P) & CA) == 2]
    if not Ps:
        raise BuildingError("no wall panel through A meets the link apartment")
    P = Ps[0]
    C1, C2 = sorted(b.residue(P) & CA)
    a1 = frozenset(X for X in CA if gallery_distance(b, X, C1) < gallery_distance(b, X, C2))
    a2 = CA - a1
    if a1 <= alpha:
        out = _extend_chamber_set(b, alpha | a2)
    elif a2 <= alpha:
        out = _extend_chamber_set(b, alpha | a1)
    else:
        # a1, a2 both leave alpha: glue alpha's trace with a1 in the link,
        # lift that, and then replace alpha by the opposite root found there
        (C,) = b.residue(P) & alpha
        if C in a1:
            a1, a2 = a2, a1
        r_alpha = _link_root(b, lb, M.root.home.chambers, alpha)
        r_one = _root_with_chambers(lb, sigma_a, to_link(lb, a1))
        glued = glue_roots(lb, r_alpha, r_one)
        if not isinstance(glued, Apartment):
            raise BuildingError("auxiliary link apartment failed to glue")
        aux = _extend_chamber_set(b, alpha | a1)
        alpha_t = aux.chambers - alpha
        if not a1 <= alpha_t:
            raise BuildingError("auxiliary apartment lost the link root")
        out = _extend_chamber_set(b, alpha_t | a2)
    if out.chambers & RA != CA:
        raise BuildingError("lifted apartment has the wrong link")
    if not M.face_closure <= b.complex_of(out):
        raise BuildingError("lifted apartment misses the wall")
    return out


# -- walls avoiding an apartment ----------------------------------------------------------


def _require_thick(b: Building, need: int = 4) -> None:
    t = min_thickness(b)
    if t < need:
        raise ThicknessError(f"every panel must lie in at least {need} chambers; found one with {t}")


def wall_avoiding_apartment(b: Building, sigma: Apartment, M: BWall) -> Apartment:
    """Apartment containing ``M`` that meets ``sigma`` exactly in M n sigma."""
    _require_thick(b)
    S = b.complex_of(sigma)
    inter = SubComplex(M.face_closure.simplices & S.simplices, b.rank)
    if not inter:
        P = min(M.panels)
        family = root_family(b, P, M)
        four = sorted(family)[:4]
        out = None
        for C, D in combinations(four, 2):
            g = glue_roots(b, family[C], family[D])
            if isinstance(g, Apartment) and not (b.complex_of(g).simplices & S.simplices):
                out = g
                break
        if out is None:
            raise BuildingError("no glued apartment avoids the given one")
    else:
        A = inter.maximal_simplices()[0]
        lb = link(b, A)
        sigma_a = is_apartment(lb, to_link(lb, sigma.chambers & b.residue(A)))
        if sigma_a is None:
            raise BuildingError("apartment does not restrict to a link apartment")
        r = _link_root(b, lb, M.root.home.chambers, M.root.chambers)
        local = wall_avoiding_apartment(lb, sigma_a, wall_of(lb, r))
        out = lift_link_apartment(b, M, A, local)
    got = SubComplex(b.complex_of(out).simplices & S.simplices, b.rank)
    if not M.face_closure <= b.complex_of(out) or got != inter:
        raise BuildingError("constructed apartment does not meet the apartment in the wall trace")
    return out


# -- convex subcomplexes ----------------------------------------------------------------


def realize_convex_subcomplex(b: Building, sigma: Apartment, kappa: SubComplex) -> RealizationCertificate:
    """Apartment meeting ``sigma`` exactly in the convex subcomplex ``kappa``.

    Induction on codimension: enlarge a maximal simplex A of kappa by the
    far vertex of a chamber on a panel through A, realize the hull of that,
    and then take an apartment through a wall of the result that cuts the
    enlarged hull back down to kappa.
    """
    _require_thick(b)
    cache = b.__dict__.setdefault("_realized", {})
    key = (sigma.chambers, kappa.simplices)
    hit = cache.get(key)
    if hit is not None:
        return hit
    S = b.complex_of(sigma)
    if not kappa <= S:
        raise BuildingError("subcomplex is not contained in the apartment")
    if hull_in_apartment(b, sigma, kappa) != kappa:
        raise BuildingError("subcomplex is not convex in the apartment")
    if kappa == S or kappa.dimension == b.rank - 1:
        cert = realize_chamber_subcomplex(b, sigma, kappa)
    elif not kappa:
        for M in all_walls(b):
            if not (M.face_closure.simplices & S.simplices):
                break
        else:
            raise BuildingError("every wall meets the apartment")
        cert = certify(b, sigma, wall_avoiding_apartment(b, sigma, M), kappa)
    else:
        A = kappa.maximal_simplices()[0]
        panels = sorted({b.panel(s, C) for C in b.residue(A) & sigma.chambers for s in A.cotype})
        P = panels[0]
        (s,) = P.cotype
        C1, _ = chamber_pair_through(b, sigma, P)
        A1 = b.simplex(A.cotype - {s}, C1)
        kappa1 = hull_in_apartment(b, sigma, list(kappa) + [A1])
        sigma1 = realize_convex_subcomplex(b, sigma, kappa1).witness
        D1 = min(b.residue(A1) & sigma1.chambers)
        M1 = wall_through_panel(b, sigma1, b.panel(s, D1))
        if SubComplex(M1.face_closure.simplices & kappa1.simplices, b.rank) != kappa:
            raise BuildingError("cutting wall does not meet the enlarged hull in the subcomplex")
        cert = certify(b, sigma, wall_avoiding_apartment(b, sigma, M1), kappa)
    cache[key] = cert
    return cert


def wall_pair_representation(b: Building, sigma: Apartment, kappa: SubComplex) -> tuple:
    """Walls M of ``sigma`` and M' of another apartment with M n M' = kappa."""
    if kappa.dimension >= b.rank - 1:
        raise BuildingError("subcomplex must have lower dimension than the apartment")
    cert = realize_convex_subcomplex(b, sigma, kappa)
    pick = []
    for ap in (sigma, cert.witness):
        walls = [wall_of(b, r) for r in roots_of(b, ap) if r.positive]
        if kappa:
            A = kappa.maximal_simplices()[0]
            walls = [M for M in walls if A in M.face_closure]
        pick.append(walls[0])
    M, M2 = pick
    if SubComplex(M.face_closure.simplices & M2.face_closure.simplices, b.rank) != kappa:
        raise BuildingError("walls do not meet in the subcomplex")
    return M, M2


# -- adjacent pairs -------------------------------------------------------------------------


def is_apartment_system(b: Building, system: list) -> bool:
    cov = np.zeros((b.n, b.n), dtype=bool)
    for ap in system:
        idx = np.array(sorted(ap.chambers))
        cov[np.ix_(idx, idx)] = True
    return bool(cov.all())


def adjacent_pair_intersection(b: Building, system: list, C: int, D: int) -> tuple:
    """(intersection of all members containing C and D, whether it is just their face closure)."""
    if not b.adjacent(C, D):
        raise BuildingError(f"chambers {C} and {D} are not adjacent")
    if not is_apartment_system(b, system):
        raise BuildingError("apartment list does not cover every pair of chambers")
    out = None
    for ap in system:
        if C in ap.chambers and D in ap.chambers:
            cx = b.complex_of(ap).simplices
            out = cx if out is None else out & cx
    inter = SubComplex(out, b.rank)
    return inter, inter == b.face_closure([C, D])
