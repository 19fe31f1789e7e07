"""Immersed monorbigons, mobidiscs, and the mobidisc formula of sphere loops.

A monorbigon of a one-strand multiloop is one or two strand intervals
delimited by one or two double points whose union is a closed subloop.
In the sphere punctured at one region everything is null-homotopic, so
enumeration is purely combinatorial.  A monorbigon bounds an immersed
disc in the plane exactly when the corner-smoothed subloop has turning
number +1 (for one of its two orientations) and its Blank word is
groupable; the regions covered by such a disc are those with nonzero
winding relative to the puncture, independent of the immersion.

The Blank word records the subloop's signed crossings with one ray per
bounded face of the subloop; rays run along the dual spanning tree to
the puncture's region and parallel rays over a tree edge are ordered by
their attachment rotation, so the construction needs no coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .combmap import Multiloop
from .presentation import DualSpanningTree, build_tree


class MobidiscError(ValueError):
    pass


class MultiStrand(MobidiscError):
    pass


class NotImmersed(MobidiscError):
    pass


MAX_BLANK_WORD = 600


@dataclass(frozen=True)
class Monorbigon:
    """One (monogon) or two (bigon) strand intervals with common endpoints.

    ``arcs`` holds index ranges into the strand's step sequence; the
    subloop is the closed curve tracing the first arc forward and, for
    bigons, the second arc in whichever direction closes up.  Steps are
    signed half-edges; a negative entry means the strand edge is run
    against its strand orientation.
    """

    kind: str
    arcs: tuple[tuple[int, int], ...]
    marked: tuple[int, ...]
    steps: tuple[int, ...]

    def edges(self) -> set[int]:
        return {abs(s) for s in self.steps}


def _strand_of(loop: Multiloop) -> tuple[int, ...]:
    if loop.n_strands != 1:
        raise MultiStrand("monorbigon theory applies to loops with one strand")
    return loop.strands[0]


def _arc_steps(strand: Sequence[int], i: int, j: int) -> tuple[int, ...]:
    """Steps strictly after visit i up to visit j (cyclically)."""
    m = len(strand)
    out = []
    k = (i + 1) % m
    while True:
        out.append(strand[k])
        if k == j:
            break
        k = (k + 1) % m
    return tuple(out)


def singular_monorbigons(loop: Multiloop, infinity: int | None = None) -> list[Monorbigon]:
    """All singular monorbigons of a sphere loop.

    Null-homotopy in the once-punctured sphere is automatic, so the list
    does not depend on which region is at infinity; the argument is kept
    for interface symmetry and range-checked when given.
    """
    strand = _strand_of(loop)
    m = loop.map
    if m.genus() != 0:
        raise MobidiscError("monorbigon enumeration expects a sphere loop")
    if infinity is not None and not 0 <= infinity < len(m.regions):
        raise MobidiscError(f"infinity region {infinity} out of range")
    visits: dict[int, list[int]] = {}
    for idx, h in enumerate(strand):
        visits.setdefault(m.vertex_of[h], []).append(idx)
    out: list[Monorbigon] = []
    verts = sorted(visits)
    for x in verts:
        i, j = visits[x]
        for a, b in ((i, j), (j, i)):
            out.append(Monorbigon(kind="monogon", arcs=((a, b),), marked=(x,),
                                  steps=_arc_steps(strand, a, b)))
    for xi in range(len(verts)):
        for yi in range(xi + 1, len(verts)):
            x, y = verts[xi], verts[yi]
            i1, i2 = visits[x]
            j1, j2 = visits[y]
            pts = sorted([(i1, "x"), (i2, "x"), (j1, "y"), (j2, "y")])
            ring = [p for p, _ in pts]
            tags = [t for _, t in pts]
            # Disjoint interval pairs use opposite gaps of the 4 marked
            # visits; valid pairs pair an x with a y in each interval.
            for k in range(2):
                a0, a1 = ring[k], ring[k + 1]
                b0, b1 = ring[k + 2], ring[(k + 3) % 4]
                if tags[k] == tags[k + 1]:
                    continue
                arc1 = _arc_steps(strand, a0, a1)
                arc2 = _arc_steps(strand, b0, b1)
                # Close up: arc1 runs p->q; arc2 runs r->s with {p,q} and
                # {r,s} both one x-visit and one y-visit.  If arc2 starts
                # at the same letter arc1 ended on, traverse it forward,
                # else reversed.
                end1 = tags[k + 1]
                start2 = tags[k + 2]
                if start2 == end1:
                    steps = arc1 + arc2
                else:
                    steps = arc1 + tuple(-s for s in reversed(arc2))
                out.append(Monorbigon(kind="bigon",
                                      arcs=((a0, a1), (b0, b1)),
                                      marked=(x, y), steps=steps))
    seen = set()
    unique = []
    for b in out:
        key = (b.kind, b.arcs)
        if key not in seen:
            seen.add(key)
            unique.append(b)
    return unique


# -- subloop analysis -----------------------------------------------------

def _subloop_faces(loop: Multiloop, steps: Sequence[int]) -> dict[int, int]:
    """Merge map regions across edges unused by the subloop: the subloop's faces."""
    m = loop.map
    used = {abs(s) for s in steps}
    parent = list(range(len(m.regions)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for k in range(1, m.n_edges + 1):
        if k in used:
            continue
        a, b = find(m.region_of[k]), find(m.region_of[-k])
        if a != b:
            parent[a] = b
    return {r: find(r) for r in range(len(m.regions))}


def subloop_winding(loop: Multiloop, steps: Sequence[int], tree: DualSpanningTree) -> list[int]:
    """Winding of the subloop around each region, relative to the tree root.

    Crossing a tree edge towards the child adds the sign of the crossing
    to every region in the child's subtree; this is the abelianized
    cutting sequence.
    """
    m = loop.map
    n = len(m.regions)
    delta = {c: 0 for c in tree.parent_half}
    for s in steps:
        r_right = m.region_of[s]
        r_left = m.region_of[-s]
        if tree.parent_half.get(r_right) == s:
            delta[r_right] -= 1
        elif tree.parent_half.get(r_left) == -s:
            delta[r_left] += 1
    # winding(region) = sum of deltas along the path from the root
    w = [0] * n
    children: dict[int, list[int]] = {}
    for c, h in tree.parent_half.items():
        parent = m.region_of[-h]
        children.setdefault(parent, []).append(c)
    stack = [(tree.root, 0)]
    while stack:
        r, acc = stack.pop()
        w[r] = acc
        for c in children.get(r, ()):
            stack.append((c, acc + delta[c]))
    return w


def turning_number(loop: Multiloop, steps: Sequence[int], infinity: int,
                   faces: dict[int, int] | None = None) -> int | None:
    """Whitney turning number of the corner-smoothed subloop, or None.

    mu + sum of double-point signs, with the base point on the outer
    face's boundary; None when no step borders the outer face (cannot
    happen for valid subloops).
    """
    m = loop.map
    faces = faces or _subloop_faces(loop, steps)
    outer = faces[infinity]
    base = None
    for idx, s in enumerate(steps):
        if faces[m.region_of[s]] == outer:
            base, mu = idx, 1
            break
        if faces[m.region_of[-s]] == outer:
            base, mu = idx, -1
            break
    if base is None:
        return None
    order = tuple(steps[base:]) + tuple(steps[:base])
    m2 = len(order)
    # A visit passes straight through its vertex when the subloop leaves
    # along the continuing strand direction; corners (marked points) do
    # not, and only vertices with two straight visits are double points.
    visits: dict[int, list[int]] = {}
    for idx, s in enumerate(order):
        straight = order[(idx + 1) % m2] == m.delta(s)
        visits.setdefault(m.vertex_of[s], []).append(s if straight else 0)
    total = mu
    for v, ends in visits.items():
        if len(ends) == 2 and 0 not in ends:
            a1, a2 = ends
            if a2 == m.sigma[a1]:
                total += 1
            elif a1 == m.sigma[a2]:
                total -= 1
            else:
                raise MobidiscError(f"non-transverse double point at vertex {v}")
    return total


def _reverse_steps(steps: Sequence[int]) -> tuple[int, ...]:
    return tuple(-s for s in reversed(steps))


# -- Blank words ----------------------------------------------------------

def _ray_bundles(loop: Multiloop, tree: DualSpanningTree,
                 faces: dict[int, int], outer: int) -> dict[int, tuple[int, ...]]:
    """Ordered face-ray bundles over each tree edge.

    Every bounded face gets one ray: the dual-tree path from its
    lowest-index region to the root.  Rays sharing a tree edge run in a
    parallel bundle whose cross-section order (left to right, looking
    towards the root) merges each region's own ray before the bundles
    arriving from its child edges, children taken in rotation order
    after the incoming edge.
    """
    m = loop.map
    reps: dict[int, int] = {}
    for r in sorted(faces):
        f = faces[r]
        if f != outer and f not in reps.values() or False:
            pass
    rep_of_face: dict[int, int] = {}
    for r in sorted(range(len(m.regions))):
        f = faces[r]
        if f == outer:
            continue
        rep_of_face.setdefault(f, r)
    starts: dict[int, list[int]] = {}
    for f, r in rep_of_face.items():
        starts.setdefault(r, []).append(f)

    children: dict[int, list[int]] = {}
    for c, h in tree.parent_half.items():
        children.setdefault(m.region_of[-h], []).append(c)

    bundles: dict[int, tuple[int, ...]] = {}

    def order_up(r: int) -> tuple[int, ...]:
        out: list[int] = list(starts.get(r, ()))
        orb = m.regions[r].orbit
        if r == tree.root:
            seq = orb
        else:
            h0 = tree.parent_half[r]
            k = orb.index(h0)
            seq = orb[k + 1:] + orb[:k]
        for h in seq:
            c = m.region_of[-h]
            if tree.parent_half.get(c) == -h:
                out.extend(bundles[abs(h)])
        return tuple(out)

    # process regions deepest-first so child bundles exist
    for r in reversed(tree.dfs_order):
        if r == tree.root:
            continue
        bundles[abs(tree.parent_half[r])] = order_up(r)
    return bundles


def blank_word(loop: Multiloop, steps: Sequence[int], infinity: int,
               tree: DualSpanningTree | None = None,
               faces: dict[int, int] | None = None) -> tuple[tuple[int, int], ...]:
    """Cyclic word of signed face letters read along the subloop.

    Letters are face ids (union-find representatives); the sign is the
    crossing sign of the subloop with the rays, which all flow towards
    the root region at infinity.
    """
    m = loop.map
    tree = tree or build_tree(loop, infinity)
    faces = faces or _subloop_faces(loop, steps)
    outer = faces[infinity]
    bundles = _ray_bundles(loop, tree, faces, outer)
    word: list[tuple[int, int]] = []
    for s in steps:
        e = abs(s)
        bundle = bundles.get(e)
        if not bundle:
            continue
        right, left = m.region_of[s], m.region_of[-s]
        if tree.parent_half.get(right) == s:
            word.extend((f, 1) for f in bundle)
        elif tree.parent_half.get(left) == -s:
            word.extend((f, -1) for f in reversed(bundle))
        else:
            raise MobidiscError(f"tree edge {e} lacks a child side")
    if len(word) > MAX_BLANK_WORD:
        raise MobidiscError(f"blank word of length {len(word)} exceeds the bound")
    return tuple(word)


def groupable(word: Sequence[tuple[int, int]]) -> bool:
    """Blank groupability of a cyclic signed word.

    Every negative letter must match a later positive letter of the same
    face, pairs nest without crossing, and each pair's interior deletes
    completely; leftover positive letters may remain outside all pairs.
    """
    mlen = len(word)
    if mlen == 0:
        return True
    negs = [i for i, (_, s) in enumerate(word) if s < 0]
    if not negs:
        return True
    from collections import Counter
    pos_count: Counter = Counter(f for f, s in word if s > 0)
    neg_count: Counter = Counter(f for f, s in word if s < 0)
    for f, c in neg_count.items():
        if pos_count.get(f, 0) < c:
            return False

    w = tuple(word) + tuple(word)

    @lru_cache(maxsize=None)
    def full(i: int, j: int) -> bool:
        """Word slice w[i:j] deletable entirely by nested adjacent pairs."""
        if i == j:
            return True
        if (j - i) % 2:
            return False
        fi, si = w[i]
        if si > 0:
            return False
        for k in range(i + 1, j, 2):
            fk, sk = w[k]
            if fk == fi and sk > 0 and full(i + 1, k) and full(k + 1, j):
                return True
        return False

    def reducible(lo: int, hi: int) -> bool:
        """Slice reduces to positive letters only."""
        memo = {hi: True}

        def red(i: int) -> bool:
            if i in memo:
                return memo[i]
            fi, si = w[i]
            ok = False
            if si > 0:
                ok = red(i + 1)
            else:
                for k in range(i + 1, hi):
                    fk, sk = w[k]
                    if fk == fi and sk > 0 and full(i + 1, k) and red(k + 1):
                        ok = True
                        break
            memo[i] = ok
            return ok

        return red(lo)

    for rot in range(mlen):
        if reducible(rot, rot + mlen):
            full.cache_clear() if False else None
            return True
    return False
