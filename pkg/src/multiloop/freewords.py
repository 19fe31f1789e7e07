"""Words in a free group whose symmetric generating set carries a cyclic order.

Letters are nonzero integers: +k and -k are the two signs of generator k
(generators are 1-based; callers that index generators by regions use
region_index + 1).  A cyclic order on the 2p signed letters induces a
circular order on the ends of the Cayley tree; crossing and contact data
of axes read off that order compute intersection numbers of conjugacy
classes.

Rays (tree ends) are eventually periodic reduced letter sequences stored
as (prefix, period) pairs, never materialized.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class WordError(ValueError):
    pass


class TrivialWord(WordError):
    pass


class EmptyWord(WordError):
    pass


class NotPrimitive(WordError):
    pass


Word = tuple[int, ...]


def word(letters: Iterable[int]) -> Word:
    w = tuple(letters)
    if any(not isinstance(x, int) or x == 0 for x in w):
        raise WordError(f"letters must be nonzero integers: {w}")
    return w


def inverse(w: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(w))


def free_reduce(w: Sequence[int]) -> Word:
    out: list[int] = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def is_reduced(w: Sequence[int]) -> bool:
    return all(w[i] != -w[i + 1] for i in range(len(w) - 1))


def is_cyclically_reduced(w: Sequence[int]) -> bool:
    if not w:
        return True
    return is_reduced(w) and w[-1] != -w[0]


def cyclic_reduce(w: Sequence[int]) -> tuple[Word, Word]:
    """Return (core, conjugator) with w = conjugator * core * conjugator^-1."""
    v = free_reduce(w)
    i, j = 0, len(v)
    while j - i >= 2 and v[i] == -v[j - 1]:
        i += 1
        j -= 1
    return tuple(v[i:j]), tuple(v[:i])


def _letter_key(x: int) -> tuple[int, int]:
    return (abs(x), 0 if x > 0 else 1)


def canonical_rotation(w: Sequence[int]) -> Word:
    """Lexicographically least rotation under the fixed letter order."""
    if not w:
        return ()
    n = len(w)
    keyed = [_letter_key(x) for x in w] * 2
    best = min(range(n), key=lambda i: keyed[i:i + n])
    return tuple(w[best:]) + tuple(w[:best])


def rotations(w: Sequence[int]) -> list[Word]:
    return [tuple(w[i:]) + tuple(w[:i]) for i in range(len(w))]


def primitive_root(w: Sequence[int]) -> tuple[Word, int]:
    """Smallest cyclic word r and exponent e with w = r^e.

    Standard string periodicity via the failure function; the input must
    be cyclically reduced and nonempty.
    """
    if not w:
        raise EmptyWord("primitive root of the empty word")
    if not is_cyclically_reduced(w):
        raise WordError("primitive_root expects a cyclically reduced word")
    n = len(w)
    fail = [0] * n
    k = 0
    for i in range(1, n):
        while k and w[i] != w[k]:
            k = fail[k - 1]
        if w[i] == w[k]:
            k += 1
        fail[i] = k
    period = n - fail[-1]
    if n % period == 0 and period < n:
        return tuple(w[:period]), n // period
    return tuple(w), 1


# -- cyclic order on the symmetric generating set ------------------------

@dataclass(frozen=True)
class CyclicOrder:
    """Circular arrangement of all signed generators, e.g. (1, -1, -2, 2)."""

    arrangement: tuple[int, ...]

    def __post_init__(self):
        arr = self.arrangement
        gens = {abs(x) for x in arr}
        if len(arr) != 2 * len(gens) or len(set(arr)) != len(arr):
            raise WordError(f"arrangement must list each generator once per sign: {arr}")
        for g in gens:
            if g not in arr or -g not in arr:
                raise WordError(f"generator {g} missing a sign in {arr}")

    @property
    def rank(self) -> int:
        return len(self.arrangement) // 2

    @property
    def generators(self) -> tuple[int, ...]:
        return tuple(sorted({abs(x) for x in self.arrangement}))

    def position(self, letter: int) -> int:
        try:
            return self.arrangement.index(letter)
        except ValueError:
            raise WordError(f"letter {letter} not in cyclic order {self.arrangement}")

    def orient(self, a: int, b: int, c: int) -> int:
        """+1 if going positively from a we meet b before c, else -1."""
        m = len(self.arrangement)
        i, j, k = self.position(a), self.position(b), self.position(c)
        if i == j or j == k or i == k:
            raise WordError("orient needs three distinct letters")
        return 1 if (j - i) % m < (k - i) % m else -1

    def restrict(self, live_generators: Iterable[int]) -> "CyclicOrder":
        live = set(live_generators)
        return CyclicOrder(tuple(x for x in self.arrangement if abs(x) in live))


# -- boundary rays -------------------------------------------------------

@dataclass(frozen=True)
class Ray:
    """Eventually periodic reduced infinite word prefix * period^infinity."""

    prefix: Word
    period: Word

    def __post_init__(self):
        if not self.period:
            raise EmptyWord("a ray needs a nonempty period")

    def __getitem__(self, i: int) -> int:
        if i < len(self.prefix):
            return self.prefix[i]
        return self.period[(i - len(self.prefix)) % len(self.period)]

    def equality_bound(self, other: "Ray") -> int:
        return (max(len(self.prefix), len(other.prefix))
                + len(self.period) + len(other.period))


def axis_rays(w: Sequence[int]) -> tuple[Ray, Ray]:
    """Attracting and repelling fixed points of w acting on the tree."""
    core, conj = cyclic_reduce(w)
    if not core:
        raise TrivialWord("trivial words have no axis")
    return Ray(conj, core), Ray(conj, inverse(core))


def _lcp(x: Ray, y: Ray, cap: int) -> int:
    """Length of the longest common prefix, clamped to cap."""
    for i in range(cap):
        if x[i] != y[i]:
            return i
    return cap


def cord(x: Ray, y: Ray, z: Ray, order: CyclicOrder) -> int:
    """Orientation in {-1, 0, +1} of an end triple on the tree boundary.

    Zero iff two rays coincide.  Distinct rays diverge at their pairwise
    longest common prefixes; two of the three divergence depths agree and
    the formula reduces to the circular orientation of three letters, one
    of which may be the inverse of the last letter before the deepest
    divergence (the direction back towards the shallower ray).
    """
    cap_xy = x.equality_bound(y)
    cap_xz = x.equality_bound(z)
    cap_yz = y.equality_bound(z)
    dxy = _lcp(x, y, cap_xy)
    dxz = _lcp(x, z, cap_xz)
    dyz = _lcp(y, z, cap_yz)
    if dxy >= cap_xy or dxz >= cap_xz or dyz >= cap_yz:
        return 0
    if dxy > dxz and dxy > dyz:
        return order.orient(x[dxy], y[dxy], -x[dxy - 1])
    if dxz > dxy and dxz > dyz:
        return -order.orient(x[dxz], z[dxz], -x[dxz - 1])
    if dyz > dxy and dyz > dxz:
        return order.orient(y[dyz], z[dyz], -y[dyz - 1])
    return order.orient(x[dxy], y[dxy], z[dxy])


def cross(alpha: Sequence[int], beta: Sequence[int], order: CyclicOrder) -> int:
    """Axis crossing indicator: ½(cord(a+,b+,a-) - cord(a+,b-,a-))."""
    ap, am = axis_rays(alpha)
    bp, bm = axis_rays(beta)
    return (cord(ap, bp, am, order) - cord(ap, bm, am, order)) // 2


def val(alpha: Sequence[int], beta: Sequence[int]) -> int | None:
    """Contact order of two primitive cyclically reduced words; None = infinite.

    Counts the tree vertices traversed by both axes: 1 for the base vertex
    plus the overlap in each direction of the alpha-axis.  The beta-axis
    may cover a direction with either of its rays (an axis is unoriented),
    so each direction takes the longer of the two ray agreements; a common
    prefix can reach len(alpha)+len(beta) only when the axes coincide,
    i.e. beta is alpha or a rotation of its inverse.
    """
    for w in (alpha, beta):
        if not w:
            raise EmptyWord("val of a trivial word")
        if not is_cyclically_reduced(w):
            raise WordError("val expects cyclically reduced words")
        if primitive_root(w)[1] != 1:
            raise NotPrimitive(f"val expects primitive words, got {tuple(w)}")
    cap = len(alpha) + len(beta)
    ap = Ray((), tuple(alpha))
    am = Ray((), inverse(alpha))
    bp = Ray((), tuple(beta))
    bm = Ray((), inverse(beta))
    l_pp = _lcp(ap, bp, cap)
    l_pm = _lcp(ap, bm, cap)
    l_mm = _lcp(am, bm, cap)
    l_mp = _lcp(am, bp, cap)
    if max(l_pp, l_pm, l_mm, l_mp) >= cap:
        return None
    return 1 + max(l_pp, l_pm) + max(l_mm, l_mp)


def _ti_primitive(a: Word, b: Word, order: CyclicOrder) -> int:
    """Double sum of |cross|/val over rotation pairs of primitive words."""
    total = Fraction(0)
    rot_a = rotations(a)
    rot_b = rotations(b)
    for ra in rot_a:
        for rb in rot_b:
            v = val(ra, rb)
            if v is None:
                continue
            c = cross(ra, rb, order)
            if c:
                total += Fraction(abs(c), v)
    if total.denominator != 1:
        raise WordError(f"non-integral intersection sum {total} for {a}, {b}")
    return int(total)


def intersection_number(alpha: Sequence[int], beta: Sequence[int],
                        order: CyclicOrder) -> int:
    """ti of two conjugacy classes; powers factor out multiplicatively."""
    a, _ = cyclic_reduce(alpha)
    b, _ = cyclic_reduce(beta)
    if not a or not b:
        raise TrivialWord("intersection number of a null-homotopic class")
    ra, ea = primitive_root(a)
    rb, eb = primitive_root(b)
    return ea * eb * _ti_primitive(ra, rb, order)


def self_intersection_word(alpha: Sequence[int], order: CyclicOrder) -> int:
    """si of one conjugacy class: si(root^n) = n² si(root) + (n - 1)."""
    a, _ = cyclic_reduce(alpha)
    if not a:
        return 0
    root, n = primitive_root(a)
    ti_rr = _ti_primitive(root, root, order)
    if ti_rr % 2:
        raise WordError(f"odd ti(root, root) = {ti_rr} for {root}")
    return n * n * (ti_rr // 2) + (n - 1)


# -- serialization -------------------------------------------------------

_ABC = "abcdefghijklmnopqrstuvwxyz"


def word_to_str(w: Sequence[int]) -> str:
    """Letters as a/A pairs for ranks up to 26 (a = generator 1)."""
    if any(abs(x) > 26 for x in w):
        return "[" + ",".join(str(x) for x in w) + "]"
    return "".join(_ABC[x - 1] if x > 0 else _ABC[-x - 1].upper() for x in w)


def word_from_str(s: str) -> Word:
    s = s.strip()
    if s.startswith("["):
        inner = s.strip("[]").strip()
        return word(int(t) for t in inner.split(",")) if inner else ()
    out = []
    for ch in s:
        if ch.islower():
            out.append(_ABC.index(ch) + 1)
        elif ch.isupper():
            out.append(-(_ABC.index(ch.lower()) + 1))
        elif not ch.isspace():
            raise WordError(f"bad letter {ch!r}")
    return tuple(out)


def order_from_str(s: str) -> CyclicOrder:
    return CyclicOrder(word_from_str(s))
