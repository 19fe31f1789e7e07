"""From a multiloop and a pin set to words in a cyclically ordered free group.

Rooting a spanning tree of the dual map at a region of P provides free
generators for the fundamental group of the fully punctured sphere: the
generator of a non-root region is the positively oriented loop around the
subtree hanging below its incoming tree edge.  Strand words are the
cutting sequences of the strands with the tree; filling a region turns
its relator into a rewriting rule; the cyclic order on the symmetric
generating set is the boundary walk of the thickened tree.

Generator letters are region-indexed: region j contributes letter j + 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .combmap import CombinatorialMap, GenusUnsupported, Multiloop
from .freewords import (
    CyclicOrder,
    TrivialWord,
    Word,
    canonical_rotation,
    cyclic_reduce,
    free_reduce,
    intersection_number,
    inverse,
    self_intersection_word,
)


class PresentationError(ValueError):
    pass


class EmptyPinSetUnsupported(PresentationError):
    pass


def _letter(region_index: int) -> int:
    return region_index + 1


def _region_of_letter(letter: int) -> int:
    return abs(letter) - 1


@dataclass(frozen=True)
class DualSpanningTree:
    """Spanning tree of the dual map, rooted at a region index.

    ``parent_half[c]`` is the half-edge h with region-on-the-right c; the
    map edge |h| is crossed by the dual tree edge joining c to its parent
    region (on the right of -h).  ``dfs_order`` lists the regions in
    preorder, children in rotation order, starting at the root.
    """

    root: int
    parent_half: dict[int, int]
    dfs_order: tuple[int, ...]

    @property
    def tree_edges(self) -> set[int]:
        return {abs(h) for h in self.parent_half.values()}

    def children(self, m: CombinatorialMap, region: int) -> list[int]:
        side = m.region_of
        out = []
        for h in m.regions[region].orbit:
            k = abs(h)
            if k in self.tree_edges:
                other = side[-h]
                if other != region and self.parent_half.get(other) == -h:
                    out.append(other)
        return out


def build_tree(loop: Multiloop, root: int) -> DualSpanningTree:
    """Breadth-first spanning tree of the dual map, deterministic in (map, root)."""
    m = loop.map
    n_regions = len(m.regions)
    if not 0 <= root < n_regions:
        raise PresentationError(f"root region {root} out of range")
    side = m.region_of
    parent_half: dict[int, int] = {}
    seen = {root}
    queue = [root]
    while queue:
        r = queue.pop(0)
        for h in m.regions[r].orbit:
            other = side[-h]
            if other not in seen:
                seen.add(other)
                parent_half[other] = -h
                queue.append(other)
    if len(seen) != n_regions:
        raise PresentationError("dual map is disconnected")
    # DFS preorder with children in the rotation order of each region.
    tree_edges = {abs(h) for h in parent_half.values()}
    order: list[int] = []
    stack = [root]
    while stack:
        r = stack.pop()
        order.append(r)
        kids = []
        for h in m.regions[r].orbit:
            if abs(h) in tree_edges:
                other = side[-h]
                if parent_half.get(other) == -h:
                    kids.append(other)
        stack.extend(reversed(kids))
    return DualSpanningTree(root=root, parent_half=parent_half, dfs_order=tuple(order))


@dataclass(frozen=True)
class FullPresentation:
    """Free presentation of the fully punctured sphere group."""

    loop: Multiloop
    tree: DualSpanningTree
    order: CyclicOrder
    strand_words: tuple[Word, ...]

    @property
    def generators(self) -> tuple[int, ...]:
        return tuple(sorted(_letter(c) for c in self.tree.parent_half))


def _tree_walk_order(m: CombinatorialMap, tree: DualSpanningTree) -> CyclicOrder:
    """Cyclic order on the symmetric generators: boundary walk of the tree.

    Darts are half-edges h of tree edges, based at the region on their
    right; the walk turns around each dual vertex following the region's
    boundary cycle.  A dart pointing to the parent region reads the
    child's generator positively.
    """
    side = m.region_of
    tree_edges = tree.tree_edges
    phi_next: dict[int, int] = {}
    for r in m.regions:
        orb = r.orbit
        for i, h in enumerate(orb):
            phi_next[h] = orb[(i + 1) % len(orb)]

    def next_dart(h: int) -> int:
        x = phi_next[-h]
        while abs(x) not in tree_edges:
            x = phi_next[x]
        return x

    start = next(iter(sorted(tree.parent_half.values(), key=abs)))
    seq = []
    h = start
    while True:
        right, left = side[h], side[-h]
        if tree.parent_half.get(right) == h:
            seq.append(_letter(right))  # based at the child, pointing at the parent
        elif tree.parent_half.get(left) == -h:
            seq.append(-_letter(left))  # based at the parent, pointing at the child
        else:
            raise PresentationError(f"dart {h} is not on a tree edge")
        h = next_dart(h)
        if h == start:
            break
    if len(seq) != 2 * len(tree.parent_half):
        raise PresentationError("tree boundary walk did not close up correctly")
    return CyclicOrder(tuple(seq))


def _strand_word(m: CombinatorialMap, tree: DualSpanningTree, orbit: Sequence[int]) -> Word:
    side = m.region_of
    out = []
    for h in orbit:
        k = abs(h)
        if k not in tree.tree_edges:
            continue
        right, left = side[h], side[-h]
        if tree.parent_half.get(right) == h:
            out.append(-_letter(right))
        elif tree.parent_half.get(left) == -h:
            out.append(_letter(left))
        else:
            raise PresentationError(f"tree edge {k} lacks a consistent child side")
    return free_reduce(out)


def full_presentation(loop: Multiloop, tree: DualSpanningTree) -> FullPresentation:
    m = loop.map
    words = tuple(_strand_word(m, tree, s) for s in loop.strands)
    return FullPresentation(loop=loop, tree=tree, order=_tree_walk_order(m, tree),
                            strand_words=words)


def region_relator(full: FullPresentation, region: int) -> Word:
    """Cutting sequence of a positively oriented loop around a non-root region.

    Starts at the incoming tree edge; the letters are the region's own
    generator and its tree children's generators, pairwise distinct up to
    inversion.
    """
    tree = full.tree
    m = full.loop.map
    if region == tree.root:
        raise PresentationError("the root region has no relator")
    h0 = tree.parent_half[region]
    orb = m.regions[region].orbit
    pos = {h: i for i, h in enumerate(orb)}
    d = len(orb)
    side = m.region_of
    # The boundary cycle keeps the region on its left, so reading it forward
    # winds positively around the region; start at the incoming tree edge.
    seq = [orb[(pos[h0] + i) % d] for i in range(d)]
    word = []
    for h in seq:
        k = abs(h)
        if k not in tree.tree_edges:
            continue
        if h == h0:
            word.append(_letter(region))
        else:
            child = side[-h]
            if tree.parent_half.get(child) == -h:
                word.append(-_letter(child))
    return tuple(word)


def rewriting_rule(full: FullPresentation, region: int) -> Word:
    """Solve the region's relator for its own generator."""
    rel = region_relator(full, region)
    if not rel or abs(rel[0]) != _letter(region):
        raise PresentationError(f"relator of region {region} does not start at its generator")
    rest = rel[1:]
    return inverse(rest) if rel[0] > 0 else tuple(rest)


@dataclass(frozen=True)
class PinnedPresentation:
    """Presentation of the P-punctured sphere group with rewritten strands."""

    loop: Multiloop
    tree: DualSpanningTree
    pins: frozenset[int]
    order: CyclicOrder
    rules: tuple[tuple[int, Word], ...]
    strand_words: tuple[Word, ...]

    @property
    def surviving_generators(self) -> tuple[int, ...]:
        return tuple(sorted(_letter(c) for c in self.pins if c != self.tree.root))

    @cached_property
    def subtree_members(self) -> dict[int, frozenset[int]]:
        kids: dict[int, list[int]] = {}
        for c, h in self.tree.parent_half.items():
            parent = self.loop.map.region_of[-h]
            kids.setdefault(parent, []).append(c)
        out: dict[int, frozenset[int]] = {}
        for r in reversed(self.tree.dfs_order):
            members = {r}
            for c in kids.get(r, ()):
                members |= out[c]
            out[r] = frozenset(members)
        return out


def _apply_rule(word: Sequence[int], letter: int, replacement: Word) -> Word:
    inv = inverse(replacement)
    out: list[int] = []
    for x in word:
        if x == letter:
            out.extend(replacement)
        elif x == -letter:
            out.extend(inv)
        else:
            out.append(x)
    return free_reduce(out)


def pin_presentation(full: FullPresentation, pins: Iterable[int]) -> PinnedPresentation:
    """Fill the regions outside P, rewriting strand words in DFS order."""
    tree = full.tree
    m = full.loop.map
    pin_set = frozenset(pins)
    if tree.root not in pin_set:
        raise PresentationError("the tree root must belong to the pin set")
    bad = [p for p in pin_set if not 0 <= p < len(m.regions)]
    if bad:
        raise PresentationError(f"pin indices out of range: {bad}")
    filled = [r for r in tree.dfs_order if r not in pin_set]
    rules = []
    words = list(full.strand_words)
    for j in filled:
        rule = rewriting_rule(full, j)
        rules.append((j, rule))
        lead = _letter(j)
        words = [_apply_rule(w, lead, rule) for w in words]
        rules = [(r, _apply_rule(rw, lead, rule)) for r, rw in rules[:-1]] + [rules[-1]]
    dead = {_letter(j) for j in filled}
    for w in words:
        if any(abs(x) in dead for x in w):
            raise PresentationError("rewriting left a filled generator alive")
    live = {_letter(p) for p in pin_set if p != tree.root}
    reduced = tuple(canonical_rotation(cyclic_reduce(w)[0]) for w in words)
    return PinnedPresentation(
        loop=full.loop, tree=tree, pins=pin_set,
        order=full.order.restrict(live),
        rules=tuple(rules), strand_words=reduced,
    )


# -- winding numbers ------------------------------------------------------

@dataclass(frozen=True)
class WindingTable:
    """Rows: surviving generators; columns: punctures of P minus the root."""

    punctures: tuple[int, ...]
    rows: dict[int, tuple[int, ...]]

    def vector(self, word: Sequence[int]) -> tuple[int, ...]:
        acc = [0] * len(self.punctures)
        for x in word:
            row = self.rows.get(abs(x))
            if row is None:
                raise PresentationError(f"letter {x} has no winding row")
            s = 1 if x > 0 else -1
            for i, v in enumerate(row):
                acc[i] += s * v
        return tuple(acc)


def winding_table(pinned: PinnedPresentation) -> WindingTable:
    """Generator windings around the pinned punctures, relative to the root.

    The generator of region c winds once around every puncture in the
    subtree below c and not at all around the others; this is the
    abelianization of the pinned presentation.
    """
    punctures = tuple(sorted(p for p in pinned.pins if p != pinned.tree.root))
    members = pinned.subtree_members
    rows = {}
    for g in pinned.surviving_generators:
        region = _region_of_letter(g)
        sub = members[region]
        rows[g] = tuple(1 if p in sub else 0 for p in punctures)
    return WindingTable(punctures=punctures, rows=rows)


def winding_vector(word: Sequence[int], pinned: PinnedPresentation) -> tuple[int, ...]:
    return winding_table(pinned).vector(word)


# -- self-intersection ----------------------------------------------------

def pinned_presentation_for(loop: Multiloop, pins: Iterable[int]) -> PinnedPresentation:
    """Build the presentation rooted at the lowest-index pinned region."""
    pin_set = sorted(set(pins))
    if not pin_set:
        raise PresentationError("need at least one pin to build a presentation")
    tree = build_tree(loop, pin_set[0])
    return pin_presentation(full_presentation(loop, tree), pin_set)


def self_intersection(loop: Multiloop, pins: Iterable[int], root: int | None = None) -> int:
    """Minimal double-point count of the multiloop in the P-punctured sphere.

    Sum of strand self-intersections plus pairwise intersections over
    unordered strand pairs; null-homotopic strands contribute nothing.
    An explicit ``root`` (which must lie in P) overrides the default
    lowest-index choice, which is useful for invariance checks.
    """
    pin_set = sorted(set(pins))
    genus = loop.map.genus()
    if genus > 0:
        if not pin_set:
            raise EmptyPinSetUnsupported(
                "closed surfaces of positive genus are out of scope")
        raise GenusUnsupported("self-intersection is implemented for sphere multiloops")
    if not pin_set:
        return 0
    if root is None:
        root = pin_set[0]
    elif root not in pin_set:
        raise PresentationError("root must belong to the pin set")
    tree = build_tree(loop, root)
    pinned = pin_presentation(full_presentation(loop, tree), pin_set)
    return pinned_self_intersection(pinned)


def pinned_self_intersection(pinned: PinnedPresentation) -> int:
    words = [w for w in pinned.strand_words if w]
    order = pinned.order
    total = sum(self_intersection_word(w, order) for w in words)
    for i in range(len(words)):
        for j in range(i + 1, len(words)):
            try:
                total += intersection_number(words[i], words[j], order)
            except TrivialWord:
                continue
    return total
