from itertools import combinations

import pytest

from chambers.apartments import (
    GlueRefusal,
    ThicknessError,
    adjacent_pair_intersection,
    apartment_with_root_and_chamber,
    convex_subcomplexes,
    glue_roots,
    hull_in_apartment,
    is_convex_in,
    lift_link_apartment,
    panel_criterion,
    realize_chamber_subcomplex,
    realize_convex_subcomplex,
    root_family,
    wall_avoiding_apartment,
    wall_pair_representation,
)
from chambers.building import (
    Apartment,
    BuildingError,
    SubComplex,
    all_walls,
    is_apartment,
    link,
    opposite_root,
    roots_of,
    to_link,
    wall_of,
    walls_of,
)
from chambers.instances import IncidenceGeometry, flag_building, rank1_building


def intersection(b, s1, s2):
    return b.complex_of(s1).simplices & b.complex_of(s2).simplices


def vertex_of(b, sigma):
    return b.face_closure([min(b.panel(1, c) for c in sigma.chambers)])


# -- convexity inside an apartment ------------------------------------------------------


def test_convex_subcomplexes_of_a_hexagon(pg2):
    sigma = pg2.apartments()[0]
    found = convex_subcomplexes(pg2, sigma)
    shapes = sorted((k.dimension, len(k.chambers), len(k)) for k in found)
    # empty, 6 vertices, 3 walls, 6 chambers, 6 chamber pairs, 6 roots, everything
    assert len(found) == 29
    assert shapes.count((0, 0, 1)) == 6 and shapes.count((0, 0, 2)) == 3
    assert shapes.count((1, 3, 7)) == 6


def test_convex_subcomplexes_match_brute_force(pg2):
    sigma = pg2.apartments()[3]
    simplices = sorted(pg2.complex_of(sigma).simplices)
    face_closed = set()
    for k in range(len(simplices) + 1):
        for subset in combinations(simplices, k):
            sc = pg2.face_closure(subset)
            if sc.simplices == frozenset(subset):
                face_closed.add(sc.simplices)
    convex = {k for k in face_closed if is_convex_in(pg2, sigma, SubComplex(k, 2)) or not k}
    assert convex == {k.simplices for k in convex_subcomplexes(pg2, sigma)}


def test_hull_of_two_opposite_vertices_is_a_wall(pg2):
    sigma = pg2.apartments()[0]
    M = walls_of(pg2, sigma)[0]
    assert hull_in_apartment(pg2, sigma, M.panels) == M.face_closure


# -- chamber subcomplexes ----------------------------------------------------------------


def test_chamber_subcomplex_trivial_and_single(pg2):
    sigma = pg2.apartments()[0]
    whole = pg2.complex_of(sigma)
    assert realize_chamber_subcomplex(pg2, sigma, whole).witness == sigma
    C = min(sigma.chambers)
    cert = realize_chamber_subcomplex(pg2, sigma, pg2.face_closure([C]))
    assert intersection(pg2, sigma, cert.witness) == pg2.face_closure([C]).simplices
    D = next(d for d in sigma.chambers if pg2.adjacent(C, d))
    cert = realize_chamber_subcomplex(pg2, sigma, pg2.face_closure([C, D]))
    assert cert.checked.chambers == {C, D}


def test_chamber_subcomplex_rejections(pg2):
    sigma = pg2.apartments()[0]
    cs = sorted(sigma.chambers)
    far = next(d for d in cs if pg2.dist[cs[0], d] == 2)
    with pytest.raises(BuildingError, match="convex"):
        realize_chamber_subcomplex(pg2, sigma, pg2.face_closure([cs[0], far]))
    with pytest.raises(BuildingError, match="chamber subcomplex"):
        realize_chamber_subcomplex(pg2, sigma, vertex_of(pg2, sigma))
    outside = min(set(range(pg2.n)) - sigma.chambers)
    with pytest.raises(BuildingError, match="contained"):
        realize_chamber_subcomplex(pg2, sigma, pg2.face_closure([outside]))


# -- roots --------------------------------------------------------------------------------


def test_apartment_with_root_and_chamber(pg2, pg3):
    sigma = pg3.apartments()[0]
    alpha = roots_of(pg3, sigma)[0]
    M = wall_of(pg3, alpha)
    P = min(M.panels)
    C, D = sorted(pg3.residue(P) & sigma.chambers)
    inside = C if C in alpha.chambers else D
    mate = D if inside == C else C
    assert apartment_with_root_and_chamber(pg3, alpha, mate).chambers == sigma.chambers
    for third in sorted(pg3.residue(P) - {C, D}):
        ap = apartment_with_root_and_chamber(pg3, alpha, third)
        assert is_apartment(pg3, ap.chambers) is not None
        assert alpha.chambers | {third} <= ap.chambers
    with pytest.raises(BuildingError):
        apartment_with_root_and_chamber(pg3, alpha, inside)
    beta = roots_of(pg2, pg2.apartments()[0])[0]
    with pytest.raises(BuildingError):
        apartment_with_root_and_chamber(pg2, beta, min(beta.chambers))


def test_glue_opposite_roots_and_refusal(pg2):
    sigma = pg2.apartments()[0]
    alpha = roots_of(pg2, sigma)[0]
    assert glue_roots(pg2, alpha, opposite_root(pg2, alpha)) == sigma
    refusal = glue_roots(pg2, alpha, alpha)
    assert isinstance(refusal, GlueRefusal) and not refusal
    assert refusal.panel in wall_of(pg2, alpha).panels
    other = roots_of(pg2, sigma)[2]
    if wall_of(pg2, other).panels != wall_of(pg2, alpha).panels:
        with pytest.raises(BuildingError, match="different walls"):
            glue_roots(pg2, alpha, other)


def test_distinct_roots_on_one_wall_always_glue(gq):
    # in a generalized polygon a root is fixed by its chamber at either wall panel,
    # so distinct roots on a wall differ at both panels
    for sigma in gq.apartments()[:6]:
        for alpha in roots_of(gq, sigma):
            M = wall_of(gq, alpha)
            for other in gq.apartments():
                for beta in roots_of(gq, other):
                    if wall_of(gq, beta).panels != M.panels:
                        continue
                    got = glue_roots(gq, alpha, beta)
                    assert isinstance(got, Apartment) == (beta.chambers != alpha.chambers)
                    assert isinstance(got, Apartment) == (panel_criterion(gq, alpha, beta) is not None)


@pytest.mark.parametrize("fixture,size", [("pg2", 3), ("pg3", 4)])
def test_root_family(request, fixture, size):
    b = request.getfixturevalue(fixture)
    M = walls_of(b, b.apartments()[0])[0]
    P = min(M.panels)
    family = root_family(b, P, M)
    assert len(family) == size
    for C, alpha in family.items():
        assert C in alpha.chambers
        assert wall_of(b, alpha).panels == M.panels
    for C, D in combinations(family, 2):
        assert isinstance(glue_roots(b, family[C], family[D]), Apartment)
    other = min(p for p in b.panels() if p not in M.panels)
    with pytest.raises(BuildingError):
        root_family(b, other, M)


def test_root_family_thin():
    b = rank1_building(2)
    sigma = b.apartments()[0]
    M = walls_of(b, sigma)[0]
    family = root_family(b, min(M.panels), M)
    assert len(family) == 2
    assert {frozenset(a.chambers) for a in family.values()} == {frozenset({0}), frozenset({1})}


# -- links --------------------------------------------------------------------------------


def test_lift_existing_link_apartment(pg3):
    sigma = pg3.apartments()[0]
    M = walls_of(pg3, sigma)[0]
    A = min(M.panels)
    lb = link(pg3, A)
    local = is_apartment(lb, to_link(lb, sigma.chambers & pg3.residue(A)))
    out = lift_link_apartment(pg3, M, A, local)
    assert out.chambers & pg3.residue(A) == sigma.chambers & pg3.residue(A)
    assert M.face_closure <= pg3.complex_of(out)


def test_lift_every_link_apartment_at_a_vertex(pg3):
    sigma = pg3.apartments()[5]
    M = walls_of(pg3, sigma)[1]
    for A in sorted(M.panels):
        lb = link(pg3, A)
        for local in lb.apartments():
            out = lift_link_apartment(pg3, M, A, local)
            assert out.chambers & pg3.residue(A) == frozenset(lb.origin[c] for c in local.chambers)
            assert M.face_closure <= pg3.complex_of(out)


def test_lift_rejects_missing_wall_simplex(pg3):
    sigma = pg3.apartments()[0]
    M = walls_of(pg3, sigma)[0]
    # A lies on the first wall only, so the second wall cannot be lifted through it
    A = min(M.panels)
    lb = link(pg3, A)
    other = walls_of(pg3, sigma)[1]
    local = lb.apartments()[0]
    with pytest.raises(BuildingError):
        lift_link_apartment(pg3, other, A, local)


# -- walls avoiding apartments ------------------------------------------------------------


def test_wall_avoiding_disjoint_and_vertex(pg3):
    sigma = pg3.apartments()[0]
    S = pg3.complex_of(sigma).simplices
    disjoint = next(M for M in all_walls(pg3) if not (M.face_closure.simplices & S))
    out = wall_avoiding_apartment(pg3, sigma, disjoint)
    assert not intersection(pg3, sigma, out)
    assert disjoint.face_closure <= pg3.complex_of(out)
    meeting = next(M for M in all_walls(pg3) if len(M.face_closure.simplices & S) == 1)
    out = wall_avoiding_apartment(pg3, sigma, meeting)
    assert intersection(pg3, sigma, out) == meeting.face_closure.simplices & S


def test_wall_avoiding_refuses_thin(pg2):
    sigma = pg2.apartments()[0]
    with pytest.raises(ThicknessError, match="at least 4"):
        wall_avoiding_apartment(pg2, sigma, walls_of(pg2, sigma)[0])


# -- convex subcomplexes ---------------------------------------------------------------------


def test_realize_examples(pg3):
    sigma = pg3.apartments()[7]
    whole = pg3.complex_of(sigma)
    assert realize_convex_subcomplex(pg3, sigma, whole).witness == sigma
    v = vertex_of(pg3, sigma)
    cert = realize_convex_subcomplex(pg3, sigma, v)
    assert intersection(pg3, sigma, cert.witness) == v.simplices
    M = walls_of(pg3, sigma)[2]
    cert = realize_convex_subcomplex(pg3, sigma, M.face_closure)
    assert intersection(pg3, sigma, cert.witness) == M.face_closure.simplices
    empty = SubComplex(frozenset(), 2)
    assert not intersection(pg3, sigma, realize_convex_subcomplex(pg3, sigma, empty).witness)


def test_realize_rejects_nonconvex_and_thin(pg2, pg3):
    sigma = pg3.apartments()[0]
    cs = sorted(sigma.chambers)
    far = next(d for d in cs if pg3.dist[cs[0], d] == 2)
    with pytest.raises(BuildingError, match="convex"):
        realize_convex_subcomplex(pg3, sigma, pg3.face_closure([cs[0], far]))
    with pytest.raises(ThicknessError):
        realize_convex_subcomplex(pg2, pg2.apartments()[0], pg2.complex_of(pg2.apartments()[0]))


def test_wall_pair_representation(pg3):
    sigma = pg3.apartments()[2]
    M0 = walls_of(pg3, sigma)[0]
    M, M2 = wall_pair_representation(pg3, sigma, M0.face_closure)
    assert M.panels == M0.panels
    assert M.face_closure.simplices & M2.face_closure.simplices == M0.face_closure.simplices
    v = vertex_of(pg3, sigma)
    M, M2 = wall_pair_representation(pg3, sigma, v)
    assert M.face_closure.simplices & M2.face_closure.simplices == v.simplices
    with pytest.raises(BuildingError):
        wall_pair_representation(pg3, sigma, pg3.complex_of(sigma))


# -- adjacent pairs ----------------------------------------------------------------------------


def test_adjacent_pair_intersection(pg2):
    aps = pg2.apartments()
    C = 0
    D = pg2.neighbours(0, 0)[0]
    inter, flag = adjacent_pair_intersection(pg2, aps, C, D)
    assert flag and inter == pg2.face_closure([C, D])
    with pytest.raises(BuildingError, match="adjacent"):
        adjacent_pair_intersection(pg2, aps, 0, 0)
    with pytest.raises(BuildingError, match="cover"):
        adjacent_pair_intersection(pg2, aps[:3], C, D)


def test_adjacent_pair_thin_flags():
    # one hexagon: the only apartment is strictly bigger than the pair
    g = IncidenceGeometry(3, 3, frozenset({(0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (0, 2)}), 3)
    b = flag_building(g)
    inter, flag = adjacent_pair_intersection(b, b.apartments(), 0, b.neighbours(0, 0)[0])
    assert not flag and inter == b.complex_of(b.apartments()[0])
    # two chambers of a rank-1 building: the apartment is the pair itself
    b = rank1_building(2)
    inter, flag = adjacent_pair_intersection(b, b.apartments(), 0, 1)
    assert flag and inter.chambers == {0, 1}
