"""Test helpers that build inputs from the package's own constructors."""

from chambers.instances import pg2_geometry, projective_points


def collineation_map(b, perm):
    """Flag map induced by permuting the coordinates of GF(2)^3."""
    g = pg2_geometry(2)
    pts = projective_points(2)
    pos = {v: i for i, v in enumerate(pts)}

    def move(v):
        return tuple(v[perm[k]] for k in range(3))

    flag_id = {f: i for i, f in enumerate(b.flags)}
    assert len(g.incidence) == b.n
    return {c: flag_id[(pos[move(pts[p])], pos[move(pts[l])])] for c, (p, l) in enumerate(b.flags)}
