"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""

import json
import time
from pathlib import Path

from chambers.coxeter import condition_iv_witness, named_system, normal_form, CoxeterSystem
from chambers.instances import gq22_flag_building, pg2_flag_building, rank1_building
from chambers.apartments import convex_subcomplexes
from chambers.verify import (
    scan_condition_iv,
    verify_adjacent_pairs,
    verify_apartment_map,
    verify_apartment_test,
    verify_building_axioms,
    verify_chamber_subcomplexes,
    verify_glue_criterion,
    verify_projection_gates,
    verify_theorem1,
    verify_thickness3_obstruction,
)
from oracles import all_words, projective_triangle_count, rewrite_normal_form
from helpers import collineation_map

FIXTURES = Path(__file__).parent / "fixtures"


def record(capsys, number, title, ok, detail):
    with capsys.disabled():
        print(f"\n[acceptance {number}] {'PASS' if ok else 'FAIL'} {title}: {detail}")
    assert ok, detail


def test_1_every_convex_subcomplex_is_an_apartment_intersection(capsys):
    details = []
    ok = True
    for q, budget in ((3, 300.0), (4, None)):
        b = pg2_flag_building(q)
        kappas = convex_subcomplexes(b, b.apartments()[0])
        shapes = {(k.dimension, len(k)) for k in kappas}
        # empty, single vertices, walls (two vertices) and single chambers are all enumerated
        assert {(-1, 0), (0, 1), (0, 2), (1, 3)} <= shapes
        t0 = time.perf_counter()
        rep = verify_theorem1(b)
        elapsed = time.perf_counter() - t0
        expected = len(b.apartments()) * len(kappas)
        good = rep.passed and rep.instances == expected and (budget is None or elapsed <= budget)
        ok &= good
        details.append(f"PG(2,{q}) {len(b.apartments())} apartments, {rep.instances} cases, "
                       f"{len(rep.failures)} failures, {elapsed:.1f}s")
    record(capsys, 1, "convex subcomplexes realized exactly", ok, "; ".join(details))


def test_2_walls_are_not_intersections_at_thickness_3(capsys):
    reps = [verify_thickness3_obstruction(b) for b in (pg2_flag_building(2), gq22_flag_building())]
    ok = all(r.passed for r in reps) and [r.instances for r in reps] == [28 * 3, 90 * 4]
    record(capsys, 2, "wall obstruction at thickness 3", ok,
           ", ".join(f"{r.instances} wall instances, {len(r.failures)} exceptions" for r in reps))


def test_3_chamber_subcomplexes_at_thickness_3(capsys):
    rep = verify_chamber_subcomplexes(pg2_flag_building(2))
    # per hexagon: whole, 6 roots, 6 adjacent pairs, 6 chambers
    ok = rep.passed and rep.instances == 28 * 19
    record(capsys, 3, "chamber subcomplexes on PG(2,2)", ok,
           f"{rep.instances} cases, {len(rep.failures)} failures")


def test_4_root_gluing_criterion(capsys):
    rep = verify_glue_criterion(pg2_flag_building(2))
    ok = rep.passed and rep.params["glued"] > 0 and rep.params["refused"] > 0
    record(capsys, 4, "glue succeeds iff panel criterion", ok,
           f"{rep.instances} root pairs ({rep.params['glued']} glued, {rep.params['refused']} refused), "
           f"{len(rep.failures)} mismatches")


def test_5_adjacent_pairs(capsys):
    builds = [pg2_flag_building(2), gq22_flag_building(), rank1_building(4)]
    reps = [verify_adjacent_pairs(b) for b in builds]
    ok = all(r.passed for r in reps) and all(r.instances > 0 for r in reps)
    record(capsys, 5, "adjacent pair intersections", ok,
           ", ".join(f"{b.name} {r.instances} pairs/{len(r.failures)} failures" for b, r in zip(builds, reps)))


def test_6_condition_iv_scans(capsys):
    fixture = json.loads((FIXTURES / "condition_iv_334.json").read_text())
    runs = {
        "A2": scan_condition_iv(named_system("A2"), 3, 3),
        "B2": scan_condition_iv(named_system("B2"), 4, 4),
        "A1~": scan_condition_iv(named_system("A1~"), 4, 8),
        "A2~": scan_condition_iv(named_system("A2~"), 4, 8),
    }
    ok = all(r.passed for r in runs.values())
    hyper = CoxeterSystem(fixture["matrix"])
    scan = scan_condition_iv(hyper, fixture["triple_radius"], fixture["witness_radius"])
    found = [f["triple"] for f in scan.failures]
    ok &= len(found) >= 1 and len(found) == fixture["uncovered_count"]
    for triple in fixture["triples"]:
        X, Y, Z = (hyper.element(w) for w in triple)
        ok &= triple in found
        ok &= condition_iv_witness(hyper, X, Y, Z, fixture["witness_radius"]) is None
    detail = ", ".join(f"{k} {len(r.failures)}/{r.instances} uncovered" for k, r in runs.items())
    detail += f", (3,3,4) radii ({fixture['triple_radius']},{fixture['witness_radius']}) {len(found)} uncovered"
    record(capsys, 6, "condition IV scans", ok, detail)


def test_7_foundations(capsys):
    b = pg2_flag_building(2)
    reps = [verify_building_axioms(b), verify_projection_gates(b), verify_apartment_test(b)]
    counts = (len(b.apartments()), len(pg2_flag_building(3).apartments()))
    ok = all(r.passed for r in reps) and counts == (projective_triangle_count(2), projective_triangle_count(3))
    ok &= counts == (28, 234)
    record(capsys, 7, "foundations on PG(2,2)", ok,
           ", ".join(r.summary() for r in reps) + f", apartment counts {counts}")


def test_8_normal_form_against_rewriting(capsys):
    total = bad = 0
    for name in ("A2", "B2", "A1~", "A2~", "334"):
        W = named_system(name)
        matrix = W.to_json()["matrix"]
        for w in all_words(W.rank, 8):
            total += 1
            if normal_form(W, w).word != rewrite_normal_form(matrix, w):
                bad += 1
    record(capsys, 8, "normal forms vs rewriting oracle", bad == 0, f"{total} words, {bad} mismatches")


def test_9_apartment_map_rigidity(capsys):
    b = pg2_flag_building(2)
    ident = verify_apartment_map(b, b, None, None, list(range(b.n)))
    phi = collineation_map(b, (1, 2, 0))
    col = verify_apartment_map(b, b, None, None, phi)
    collapse = list(range(b.n))
    collapse[1] = 0
    bad = verify_apartment_map(b, b, None, None, collapse)
    witness = bad.failures[0] if bad.failures else {}
    ok = ident.passed and col.passed and any(phi[c] != c for c in phi)
    ok &= not bad.passed and witness.get("collision") == [0, 1]
    record(capsys, 9, "apartment-map rigidity", ok,
           f"identity {ident.passed}, collineation {col.passed}, collapse caught at {witness}")
