"""Build-time transcription of the fixture catalog into _fixture_data.py.

Curve drawings are transcribed through the exact arrangement module;
region labels are located geometrically and transported onto printed
permutations via map isomorphism where a printed encoding exists.
Run from the repository root:  python tools/build_fixtures.py
"""

import pprint
import sys
from fractions import Fraction as F
from itertools import permutations

sys.path.insert(0, "src")

from multiloop.arrangement import arrange
from multiloop.combmap import as_multiloop, map_isomorphism, validate_map
from multiloop.presentation import pinned_presentation_for, self_intersection

FIXTURES = {}


def sigma_cycles(loop):
    return [list(v) for v in loop.map.vertices]


def record(name, loop, labels=None, **expected):
    m = loop.map
    entry = {
        "sigma": sigma_cycles(loop),
        "orientation": list(loop.strand_orientations),
        "labels": {int(k): str(v) for k, v in (labels or {}).items()},
        "expected": {
            "n_regions": len(m.regions),
            "n_double_points": loop.n_double_points,
            "n_strands": loop.n_strands,
            "chi": m.euler_characteristic(),
            **expected,
        },
    }
    FIXTURES[name] = entry
    print(f"[{name}] V={loop.n_double_points} F={len(m.regions)} "
          f"strands={loop.n_strands} chi={m.euler_characteristic()} labels={entry['labels']}")
    return entry


def transport_labels(src_loop, dst_loop):
    psi = map_isomorphism(src_loop.map, dst_loop.map)
    assert psi is not None, "transcription does not match the printed permutation"
    out = {}
    for r in src_loop.map.regions:
        if r.index in src_loop.map.labels:
            out[dst_loop.map.region_of[psi[r.orbit[0]]]] = src_loop.map.labels[r.index]
    return out


def build_worked16():
    sigma = [[9, 8, -10, -1], [5, 2, -6, -3], [3, 12, -4, -13], [13, 4, -14, -5],
             [14, 7, -15, -8], [10, 15, -11, -16], [1, 16, -2, -9], [6, 11, -7, -12]]
    printed = as_multiloop(validate_map(sigma))
    red = [(58738, 79640), (97543, 79640), (97543, 2117), (39335, 2117),
           (39335, 79640), (5290, 79640), (5290, 21497), (58738, 21497)]
    blue = [(19932, 40878), (19932, 60259), (78140, 60259), (78140, 21497),
            (116946, 21497), (116946, 40878)]
    anchors = {"p2": (30678, 52963), "p1": (88927, 53007), "r": (108921, 27704)}
    arr = arrange([red, blue], labels={k: (F(x), F(y)) for k, (x, y) in anchors.items()})
    labels = transport_labels(arr.loop, printed)
    pins = sorted(labels)
    assert self_intersection(printed, pins) == 4
    assert self_intersection(printed, range(10)) == 8
    record("worked16", printed, labels,
           degree_multiset=sorted(printed.map.region_degrees()),
           sigma_labeled_pins=4, sigma_all=8)


def build_fig8():
    loop = as_multiloop(validate_map([[1, 2, -2, -1]]))
    labels = {}
    for r in loop.map.regions:
        labels[r.index] = "outer" if r.degree == 2 else f"lobe{r.index}"
    assert self_intersection(loop, [1, 2]) == 1
    record("fig8", loop, labels, pinning_number=2)


def build_two_circles():
    # Two embedded circles crossing twice on the sphere: fix one rotation and
    # search the other for chi = 2 with two length-2 strands.
    for perm in permutations([2, 4, -1, -3]):
        try:
            m = validate_map([[1, 3, -2, -4], list(perm)], multiloop=True)
        except Exception:
            continue
        if m.euler_characteristic() != 2:
            continue
        lens = sorted(len(s) for s in m.oriented_strands)
        if lens == [2, 2, 2, 2]:
            loop = as_multiloop(m)
            if loop.n_strands == 2:
                record("two_circles", loop, {})
                return
    raise AssertionError("no sphere embedding found for two circles")


def build_9_1_5():
    pts = [(31168, 51911), (31168, 5345), (54451, 5345), (54451, 121761),
           (124301, 121761), (124301, 75195), (7885, 75195), (7885, 28628),
           (77735, 28628), (77735, 98478), (101018, 98478), (101018, 51911)]
    anchors = {"4": (84449, 92281), "5": (85325, 68271), "6": (61416, 68339),
               "2": (61451, 44263), "3": (37409, 44279), "8": (13429, 68259),
               "1": (37092, 20579), "9": (61398, 20286), "7": (61312, 116298)}
    arr = arrange([pts], labels={k: (F(x), F(y)) for k, (x, y) in anchors.items()})
    loop = arr.loop
    assert len(loop.map.regions) == 9 and loop.n_double_points == 7
    record("9_1_5", loop, loop.map.labels,
           pinning_number=4, n_optimal=2, n_minimal=5,
           formula_clauses=[["1"], ["4"], ["2", "3"], ["3", "8"],
                            ["2", "6", "7"], ["5", "6", "8"]])


def build_10_2_16():
    red = [(66146, 82960), (104951, 82960), (104951, 5437), (46743, 5437),
           (46743, 82960), (7938, 82960), (7938, 24818), (66146, 24818)]
    blue = [(27340, 44199), (27340, 63579), (85549, 63579), (85549, 24818),
            (124354, 24818), (124354, 44199)]
    arr = arrange([red, blue])
    loop = arr.loop
    assert len(loop.map.regions) == 10 and loop.n_double_points == 8
    assert loop.n_strands == 2
    record("10_2_16", loop, {})


def build_trefoil():
    # Standard 3-crossing diagram sampled from the (2,3) torus knot curve.
    pts = [(0, -10), (223, -13), (26, 15), (10, 20), (-87, 5), (-123, -187),
           (0, -30), (123, -187), (87, 5), (-10, 20), (-26, 15), (-223, -13)]
    pts = [(F(x, 10), F(y, 10)) for x, y in pts]
    arr = arrange([pts])
    loop = arr.loop
    assert loop.n_double_points == 3 and len(loop.map.regions) == 5, (
        loop.n_double_points, len(loop.map.regions))
    # Thrice-punctured-sphere structure: find P of size 3 that pins and whose
    # strand class abelianizes to zero (a commutator).
    best = None
    from itertools import combinations
    for P in combinations(range(5), 3):
        if self_intersection(loop, P) != 3:
            continue
        pp = pinned_presentation_for(loop, P)
        from multiloop.presentation import winding_vector
        w = pp.strand_words[0]
        if w and all(v == 0 for v in winding_vector(w, pp)):
            best = P
            break
    assert best is not None, "no commutator-style pin set found"
    labels = {best[0]: "0", best[1]: "1", best[2]: "inf"}
    record("trefoil", loop, labels, commutator_pins=list(best))


def build_weak_bigon():
    # A loop with an embedded singular bigon (two-crossing fish curve).
    candidates = [
        [(-8, 0), (8, 0), (12, 6), (0, -6), (-12, 6)],
        [(-8, 0), (8, 0), (12, 8), (0, -8), (-12, 8)],
    ]
    for pts in candidates:
        try:
            arr = arrange([pts])
        except Exception:
            continue
        loop = arr.loop
        if loop.n_double_points == 2 and len(loop.map.regions) == 4 and loop.n_strands == 1:
            record("weak_bigon", loop, {})
            return
    raise AssertionError("no fish curve candidate worked")


def main():
    build_worked16()
    build_fig8()
    build_two_circles()
    build_9_1_5()
    build_10_2_16()
    build_trefoil()
    build_weak_bigon()
    header = '"""Embedded fixture catalog data (generated by tools/build_fixtures.py)."""\n\n'
    body = "FIXTURES = " + pprint.pformat(FIXTURES, width=100, sort_dicts=True) + "\n"
    with open("src/multiloop/_fixture_data.py", "w") as fh:
        fh.write(header + body)
    print("wrote src/multiloop/_fixture_data.py")


if __name__ == "__main__":
    main()
