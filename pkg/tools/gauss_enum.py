"""Enumerate single-strand sphere multiloops from double-occurrence codes.

A code is a sequence of vertex ids (each appearing twice) giving the order
in which the strand visits its double points; a chirality bit per vertex
fixes how the two passages cross.  Kept maps are 4-regular, single strand,
and spherical (chi = 2).
"""

import sys

sys.path.insert(0, "src")

from multiloop.combmap import as_multiloop, validate_map


def maps_from_code(code):
    """Yield Multiloops realizing the code on the sphere, over all chiralities."""
    n2 = len(code)
    n = n2 // 2
    verts = sorted(set(code))
    if len(verts) != n or any(code.count(v) != 2 for v in verts):
        raise ValueError("not a double occurrence code")
    pos = {v: [] for v in verts}
    for i, v in enumerate(code):
        pos[v].append(i)
    # edge k (1-based, k = 1..2n) runs from position k-1 to position k % 2n;
    # its head half-edge +k sits at vertex code[k % 2n], tail -k at code[k-1].
    def in_out(p):
        # arrival edge at position p, departure edge leaving position p
        arrive = p if p > 0 else n2
        depart = p + 1
        return arrive, -depart if depart <= n2 else -(depart - n2)

    for bits in range(1 << n):
        cycles = []
        for vi, v in enumerate(verts):
            p, q = pos[v]
            in1, out1 = in_out(p)
            in2, out2 = in_out(q)
            if (bits >> vi) & 1:
                cycles.append([in1, in2, out1, out2])
            else:
                cycles.append([in1, out2, out1, in2])
        try:
            m = validate_map(cycles, multiloop=True)
        except Exception:
            continue
        if m.euler_characteristic() != 2:
            continue
        orbits = m.oriented_strands
        if len(orbits) != 2:
            continue
        loop = as_multiloop(m)
        yield loop


def all_codes(n):
    """All double occurrence sequences on n symbols starting 0, first visits increasing."""
    def rec(seq, remaining_open, next_new):
        if len(seq) == 2 * n:
            yield tuple(seq)
            return
        if next_new < n:
            yield from rec(seq + [next_new], remaining_open | {next_new}, next_new + 1)
        for v in sorted(remaining_open):
            yield from rec(seq + [v], remaining_open - {v}, next_new)
    yield from rec([0], {0}, 1)


if __name__ == "__main__":
    import itertools
    from multiloop.presentation import pinned_presentation_for, self_intersection, winding_vector

    n = int(sys.argv[1]) if len(sys.argv) > 1 else 2
    found = 0
    for code in all_codes(n):
        for loop in maps_from_code(code):
            found += 1
            R = len(loop.map.regions)
            tag = None
            for P in itertools.combinations(range(R), 3):
                if self_intersection(loop, P) != n:
                    continue
                pp = pinned_presentation_for(loop, P)
                w = pp.strand_words[0]
                if w and all(v == 0 for v in winding_vector(w, pp)):
                    tag = P
                    break
            print(code, "regions:", R, "commutator-pins:", tag)
    print("maps:", found)
