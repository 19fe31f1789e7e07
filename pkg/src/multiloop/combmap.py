"""Multiloops on surfaces encoded as combinatorial maps.

A map with n edges is a pair of permutations on the signed half-edge set
{±1, ..., ±n}: the edge involution is fixed to be negation, and ``sigma``
rotates the half-edges around each vertex.  Derived permutations:

    phi(h)   = sigma^-1(-h)     orbits = regions
    delta(h) = -sigma^2(h)      orbits = oriented strands (4-regular maps)

Conventions are anchored on a worked 16-edge example whose printed orbits
force phi(-1) = -9 and delta(1) = 2.  With vertex rotations read
counterclockwise, the region phi-orbit of h lies on the right of the
directed step h (a step travels along edge |h| and arrives at the vertex
holding the end h).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence


class MapError(ValueError):
    """Base class for malformed or unsupported map encodings."""


class MalformedPermutation(MapError):
    pass


class NotFourRegular(MapError):
    pass


class OddEulerCharacteristic(MapError):
    pass


class GenusUnsupported(MapError):
    pass


def _orbits(perm: Mapping[int, int], domain: Iterable[int]) -> list[list[int]]:
    seen = set()
    out = []
    for start in domain:
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        h = perm[start]
        while h != start:
            cyc.append(h)
            seen.add(h)
            h = perm[h]
        out.append(cyc)
    return out


def _orbit_key(orbit: Sequence[int]) -> tuple[int, int]:
    # Deterministic region indexing: smallest |h|, positive sign first.
    return min((abs(h), 0 if h > 0 else 1) for h in orbit)


def _canonical_rotation(cyc: Sequence[int]) -> tuple[int, ...]:
    k = cyc.index(min(cyc, key=lambda h: (abs(h), 0 if h > 0 else 1)))
    return tuple(cyc[k:]) + tuple(cyc[:k])


@dataclass(frozen=True)
class Region:
    index: int
    orbit: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.orbit)


@dataclass(frozen=True)
class CombinatorialMap:
    """A validated map: negation involution plus vertex rotation sigma."""

    n_edges: int
    sigma: Mapping[int, int]
    labels: Mapping[int, str] = field(default_factory=dict)

    @property
    def half_edges(self) -> list[int]:
        n = self.n_edges
        return [h for k in range(1, n + 1) for h in (k, -k)]

    def phi(self, h: int) -> int:
        return self.sigma_inv[-h]

    def delta(self, h: int) -> int:
        return -self.sigma[self.sigma[h]]

    @cached_property
    def sigma_inv(self) -> dict[int, int]:
        return {v: k for k, v in self.sigma.items()}

    @cached_property
    def vertices(self) -> list[tuple[int, ...]]:
        cycles = _orbits(self.sigma, self.half_edges)
        cycles.sort(key=_orbit_key)
        return [_canonical_rotation(c) for c in cycles]

    @cached_property
    def vertex_of(self) -> dict[int, int]:
        return {h: i for i, cyc in enumerate(self.vertices) for h in cyc}

    @cached_property
    def regions(self) -> list[Region]:
        phi = {h: self.sigma_inv[-h] for h in self.half_edges}
        cycles = _orbits(phi, self.half_edges)
        cycles.sort(key=_orbit_key)
        return [Region(i, _canonical_rotation(c)) for i, c in enumerate(cycles)]

    @cached_property
    def region_of(self) -> dict[int, int]:
        """Region index on the right of each directed step h."""
        return {h: r.index for r in self.regions for h in r.orbit}

    @cached_property
    def oriented_strands(self) -> list[tuple[int, ...]]:
        delta = {h: -self.sigma[self.sigma[h]] for h in self.half_edges}
        cycles = _orbits(delta, self.half_edges)
        cycles.sort(key=_orbit_key)
        return [_canonical_rotation(c) for c in cycles]

    def euler_characteristic(self) -> int:
        return len(self.vertices) - self.n_edges + len(self.regions)

    def genus(self) -> int:
        chi = self.euler_characteristic()
        if chi % 2:
            raise OddEulerCharacteristic(f"chi = {chi} is odd; corrupted encoding")
        return (2 - chi) // 2

    def region_degrees(self) -> list[int]:
        return [r.degree for r in self.regions]


def validate_map(raw_cycles: Sequence[Sequence[int]], labels: Mapping | None = None,
                 multiloop: bool = False) -> CombinatorialMap:
    """Check a cycle-list encoding of sigma and build the map.

    Raises MalformedPermutation when the cycles are not a permutation of a
    full half-edge set {±1..±n}, and NotFourRegular when ``multiloop`` is
    requested but some sigma-orbit has size != 4.
    """
    support = [h for cyc in raw_cycles for h in cyc]
    seen = set()
    for h in support:
        if not isinstance(h, int) or h == 0:
            raise MalformedPermutation(f"half-edge ids must be nonzero integers, got {h!r}")
        if h in seen:
            raise MalformedPermutation(f"half-edge {h} appears twice in sigma")
        seen.add(h)
    if not seen:
        raise MalformedPermutation("empty permutation")
    n = max(abs(h) for h in seen)
    expected = {h for k in range(1, n + 1) for h in (k, -k)}
    if seen != expected:
        missing = sorted(expected - seen, key=abs)
        raise MalformedPermutation(f"support is not {{±1..±{n}}}; missing {missing[:6]}")
    if multiloop:
        bad = [cyc for cyc in raw_cycles if len(cyc) != 4]
        if bad:
            raise NotFourRegular(f"sigma-orbit of size {len(bad[0])}: {tuple(bad[0])}")
    sigma = {}
    for cyc in raw_cycles:
        for a, b in zip(cyc, cyc[1:] + list(cyc[:1])):
            sigma[a] = b
    lab = {int(k): str(v) for k, v in (labels or {}).items()}
    return CombinatorialMap(n_edges=n, sigma=sigma, labels=lab)


@dataclass(frozen=True)
class Multiloop:
    """A 4-regular map with an orientation choice per strand."""

    map: CombinatorialMap
    strand_orientations: tuple[int, ...]

    @cached_property
    def strands(self) -> list[tuple[int, ...]]:
        """One delta-orbit per unoriented strand, as chosen by the orientation."""
        orbits = self.map.oriented_strands
        member = {h: i for i, orb in enumerate(orbits) for h in orb}
        chosen = []
        for rep in self.strand_orientations:
            orb = orbits[member[rep]]
            k = orb.index(rep)
            chosen.append(tuple(orb[k:]) + tuple(orb[:k]))
        return chosen

    @property
    def n_strands(self) -> int:
        return len(self.strand_orientations)

    @property
    def n_double_points(self) -> int:
        return len(self.map.vertices)

    @property
    def regions(self) -> list[Region]:
        return self.map.regions

    def degree_identity_check(self) -> bool:
        chi = self.map.euler_characteristic()
        return sum(d - 4 for d in self.map.region_degrees()) == -4 * chi


def as_multiloop(m: CombinatorialMap, orientation: Sequence[int] | None = None) -> Multiloop:
    """Pair the delta-orbits by negation and pick one per pair."""
    if any(len(v) != 4 for v in m.vertices):
        raise NotFourRegular("every sigma-orbit must have size 4")
    orbits = m.oriented_strands
    member = {h: i for i, orb in enumerate(orbits) for h in orb}
    pairs: dict[int, int] = {}
    for i, orb in enumerate(orbits):
        j = member[-orb[0]]
        if j == i:
            raise MapError("delta-orbit is its own negation; not a strand pairing")
        pairs.setdefault(min(i, j), max(i, j))
    if orientation is None:
        reps = [orbits[i][0] for i in sorted(pairs)]
    else:
        reps = []
        used = set()
        for h in orientation:
            if h not in member:
                raise MapError(f"orientation half-edge {h} not in the map")
            i = member[h]
            key = min(i, member[-orbits[i][0]])
            if key in used:
                raise MapError(f"two orientation picks on one strand (half-edge {h})")
            used.add(key)
            reps.append(h)
        if len(reps) != len(pairs):
            raise MapError(f"orientation must pick one half-edge per strand "
                           f"({len(pairs)} strands, got {len(reps)})")
    return Multiloop(map=m, strand_orientations=tuple(reps))


def subsurface_profile(loop: Multiloop, region_indices: Iterable[int]):
    """Topology of the closed union of the given regions.

    Returns a list of (region index set, genus, boundary count), one per
    connected component, computed by gluing each region's boundary disc
    along shared edges and counting Euler characteristic and boundary
    circles of the resulting surface.
    """
    m = loop.map
    chosen = sorted(set(region_indices))
    if not chosen:
        return []
    chosen_set = set(chosen)
    side = m.region_of

    # Components of the union: regions glued across edges bordering two
    # chosen regions.
    parent = {i: i for i in chosen}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    shared_edges = set()
    for k in range(1, m.n_edges + 1):
        a, b = side[k], side[-k]
        if a in chosen_set and b in chosen_set:
            union(a, b)
            shared_edges.add(k)

    comps: dict[int, list[int]] = {}
    for i in chosen:
        comps.setdefault(find(i), []).append(i)

    out = []
    for members in sorted(comps.values()):
        mem = set(members)
        # CW structure of the closed union: faces = regions; edges and
        # vertices of the map that lie on those regions' boundaries, with
        # identifications induced by the gluing.
        edges_here = set()
        for i in members:
            for h in m.regions[i].orbit:
                edges_here.add(abs(h))
        interior = {k for k in edges_here if k in shared_edges
                    and side[k] in mem and side[-k] in mem}
        # Boundary arcs: half-edges h with region(h) in the union but the
        # edge not interior; boundary circles follow phi within the union.
        boundary_halves = {h for i in members for h in m.regions[i].orbit
                           if abs(h) not in interior}
        n_boundary = 0
        seen = set()
        for h0 in sorted(boundary_halves, key=lambda x: (abs(x), x < 0)):
            if h0 in seen:
                continue
            n_boundary += 1
            h = h0
            while h not in seen:
                seen.add(h)
                # Walk the region boundary; at interior edges jump across.
                nxt = m.phi(h)
                while abs(nxt) in interior:
                    nxt = m.phi(-nxt)
                h = nxt
        # Vertex count of the union complex: map vertices incident to the
        # union, identified as in the surface.
        verts = set()
        for i in members:
            for h in m.regions[i].orbit:
                verts.add(m.vertex_of[h])
        v = len(verts)
        e = len(edges_here)
        f = len(members)
        chi = v - e + f
        genus = (2 - chi - n_boundary) // 2
        out.append((frozenset(members), genus, n_boundary))
    return out


def _graph_adjacency(m: CombinatorialMap) -> dict[int, list[tuple[int, int]]]:
    """Vertex adjacency of the underlying multigraph (edge k joins vertex_of[k], vertex_of[-k])."""
    adj: dict[int, list[tuple[int, int]]] = {i: [] for i in range(len(m.vertices))}
    for k in range(1, m.n_edges + 1):
        u, v = m.vertex_of[k], m.vertex_of[-k]
        adj[u].append((v, k))
        adj[v].append((u, k))
    return adj


def _connected(adj, skip_vertex=None, skip_edges=()) -> bool:
    verts = [v for v in adj if v != skip_vertex]
    if not verts:
        return True
    skip = set(skip_edges)
    stack = [verts[0]]
    seen = {verts[0]}
    while stack:
        u = stack.pop()
        for v, k in adj[u]:
            if v == skip_vertex or k in skip:
                continue
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == len(verts)


def connectivity_flags(loop: Multiloop) -> tuple[bool, bool]:
    """(is_irreducible, is_indecomposible) for plane multiloops.

    Irreducible: the 4-valent graph has no cut vertex.  Indecomposible:
    no pair of distinct edges disconnects the graph.
    """
    m = loop.map
    if m.genus() != 0:
        raise GenusUnsupported("connectivity flags are defined for plane multiloops")
    adj = _graph_adjacency(m)
    nv = len(m.vertices)
    irreducible = True
    if nv > 1:
        for v in range(nv):
            if not _connected(adj, skip_vertex=v):
                irreducible = False
                break
    else:
        # A single 4-valent vertex with two loop edges is always a cut vertex
        # of the loop's image.
        irreducible = False
    indecomposible = True
    edges = list(range(1, m.n_edges + 1))
    for i in range(len(edges)):
        for j in range(i + 1, len(edges)):
            if not _connected(adj, skip_edges=(edges[i], edges[j])):
                indecomposible = False
                break
        if not indecomposible:
            break
    return irreducible, indecomposible


def map_isomorphism(m1: CombinatorialMap, m2: CombinatorialMap,
                    allow_reflection: bool = True) -> dict[int, int] | None:
    """Half-edge bijection with psi(-h) = -psi(h) conjugating sigma1 to sigma2.

    With ``allow_reflection`` the mirror image (sigma2 inverted) is also
    tried.  Connected maps are determined by the image of one half-edge,
    so the search is linear per anchor.
    """
    if m1.n_edges != m2.n_edges:
        return None
    h1 = m1.half_edges
    variants = [m2.sigma]
    if allow_reflection:
        variants.append(m2.sigma_inv)
    for sigma2 in variants:
        for target in m2.half_edges:
            psi = {h1[0]: target}
            stack = [h1[0]]
            ok = True
            while stack and ok:
                h = stack.pop()
                for g1, g2 in ((m1.sigma, sigma2), ):
                    img = g2[psi[h]]
                    if g1[h] in psi:
                        if psi[g1[h]] != img:
                            ok = False
                            break
                    else:
                        psi[g1[h]] = img
                        stack.append(g1[h])
                if not ok:
                    break
                img = -psi[h]
                if -h in psi:
                    if psi[-h] != img:
                        ok = False
                else:
                    psi[-h] = img
                    stack.append(-h)
            if ok and len(psi) == 2 * m1.n_edges and len(set(psi.values())) == len(psi):
                good = all(psi[m1.sigma[h]] == sigma2[psi[h]] for h in h1)
                if good:
                    return psi
    return None


# -- JSON codec ---------------------------------------------------------

def map_from_json(obj_or_text) -> Multiloop:
    """Parse the external JSON format into a validated Multiloop."""
    obj = json.loads(obj_or_text) if isinstance(obj_or_text, (str, bytes)) else obj_or_text
    if "sigma" not in obj:
        raise MapError("missing 'sigma' field")
    m = validate_map(obj["sigma"], labels=obj.get("labels"), multiloop=True)
    return as_multiloop(m, orientation=obj.get("orientation"))


def map_to_json(loop: Multiloop, derived: bool = True) -> dict:
    m = loop.map
    obj = {
        "sigma": [list(v) for v in m.vertices],
        "orientation": list(loop.strand_orientations),
    }
    if m.labels:
        obj["labels"] = {str(k): v for k, v in sorted(m.labels.items())}
    if derived:
        obj["derived"] = {
            "n_edges": m.n_edges,
            "n_double_points": loop.n_double_points,
            "chi": m.euler_characteristic(),
            "genus": m.genus(),
            "regions": [{"index": r.index, "orbit": list(r.orbit), "degree": r.degree}
                        for r in m.regions],
            "strands": [list(s) for s in loop.strands],
        }
    return obj
