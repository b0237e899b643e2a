"""Order-preserving integer codec for (size, bit, offset) triples.

encode(n, b, z) = (n - 1)(n + 4) + b(n + 2) + z packs, for each size n >= 1,
a block of 2n + 4 consecutive codes: first the b = 0 half with offsets
0..n+1, then the b = 1 half.  Restricted to the valid domain (offsets in
[0, n + 1]) the map is an order-preserving bijection onto the nonnegative
integers, where triples are ordered lexicographically.  `decode` inverts it
by exact integer search over the block bases; no floating point anywhere.

`encode_point` / `decode_point` apply the codec coordinatewise to finite
prefixes of sequence triples.
"""

from __future__ import annotations

import threading
from bisect import bisect_right
from dataclasses import dataclass
from typing import Sequence

__all__ = [
    "CodedTriple",
    "PointPrefix",
    "encode",
    "decode",
    "encode_point",
    "decode_point",
    "separation_gap",
]


def _check_size(n: int) -> int:
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValueError(f"size must be an integer >= 1, got {n!r}")
    return n


def _check_bit(b: int) -> int:
    if b not in (0, 1) or isinstance(b, bool):
        raise ValueError(f"bit must be 0 or 1, got {b!r}")
    return b


@dataclass(frozen=True)
class CodedTriple:
    """A (size, bit, offset) triple.

    The encoding formula is total in the offset z; membership in the codec's
    domain (z in [0, n + 1]) is a separate predicate, as is the tighter
    support-box condition (z in [0, n]) that encoded graph data satisfy.
    """

    n: int
    b: int
    z: int

    def __post_init__(self):
        _check_size(self.n)
        _check_bit(self.b)
        if not isinstance(self.z, int) or isinstance(self.z, bool):
            raise ValueError(f"offset must be an integer, got {self.z!r}")

    @property
    def in_domain(self) -> bool:
        return 0 <= self.z <= self.n + 1

    @property
    def in_support_box(self) -> bool:
        return 0 <= self.z <= self.n

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.n, self.b, self.z)


def encode(n: int, b: int, z: int) -> int:
    """Evaluate (n - 1)(n + 4) + b(n + 2) + z.  Requires n >= 1, b in {0, 1}."""
    _check_size(n)
    _check_bit(b)
    if not isinstance(z, int) or isinstance(z, bool):
        raise ValueError(f"offset must be an integer, got {z!r}")
    return (n - 1) * (n + 4) + b * (n + 2) + z


def _block_base(n: int) -> int:
    return (n - 1) * (n + 4)


# _BASES[i] = _block_base(i + 1); grown on demand, append-only under a lock
# so lock-free readers always see a sorted prefix.
_BASES: list[int] = [0]
_BASES_LOCK = threading.Lock()


def _ensure_bases(m: int) -> None:
    if _BASES[-1] > m:
        return
    with _BASES_LOCK:
        while _BASES[-1] <= m:
            _BASES.append(_block_base(len(_BASES) + 1))


def decode(m: int) -> CodedTriple:
    """The unique domain triple with encode(n, b, z) = m.

    Finds the largest n with (n - 1)(n + 4) <= m by binary search over the
    cached block bases, then reads b and z off the remainder.
    """
    if not isinstance(m, int) or isinstance(m, bool) or m < 0:
        raise ValueError(f"code must be an integer >= 0, got {m!r}")
    _ensure_bases(m)
    n = bisect_right(_BASES, m)
    r = m - _BASES[n - 1]
    if r <= n + 1:
        return CodedTriple(n, 0, r)
    return CodedTriple(n, 1, r - (n + 2))


@dataclass(frozen=True)
class PointPrefix:
    """A depth-d prefix of a sequence triple: sizes a, bits x, offsets g."""

    a: tuple[int, ...]
    x: tuple[int, ...]
    g: tuple[int, ...]

    def __post_init__(self):
        a = tuple(_check_size(v) for v in self.a)
        x = tuple(_check_bit(v) for v in self.x)
        g = tuple(self.g)
        for v in g:
            if not isinstance(v, int) or isinstance(v, bool):
                raise ValueError(f"offset must be an integer, got {v!r}")
        if not (len(a) == len(x) == len(g)):
            raise ValueError(
                f"component lengths differ: {len(a)}, {len(x)}, {len(g)}"
            )
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "g", g)

    @property
    def depth(self) -> int:
        return len(self.a)

    @property
    def in_domain(self) -> bool:
        """All offsets within the codec domain: g(k) in [0, a(k) + 1]."""
        return all(0 <= gk <= ak + 1 for ak, gk in zip(self.a, self.g))

    @property
    def in_support_box(self) -> bool:
        """All offsets within the support box: g(k) in [0, a(k)]."""
        return all(0 <= gk <= ak for ak, gk in zip(self.a, self.g))

    def triple(self, k: int) -> CodedTriple:
        return CodedTriple(self.a[k], self.x[k], self.g[k])


def encode_point(p: PointPrefix) -> tuple[int, ...]:
    """Coordinatewise encode.  For fixed sizes and bits this is a translation:
    encode_point(a, x, g) = encode_point(a, x, 0) + g coordinatewise."""
    return tuple(encode(ak, xk, gk) for ak, xk, gk in zip(p.a, p.x, p.g))


def decode_point(s: Sequence[int]) -> PointPrefix:
    """Coordinatewise decode of a tuple of nonnegative codes.

    Inverse of `encode_point` on prefixes inside the codec domain;
    encode_point(decode_point(s)) = s holds for every nonnegative s.
    """
    triples = [decode(m) for m in s]
    return PointPrefix(
        tuple(t.n for t in triples),
        tuple(t.b for t in triples),
        tuple(t.z for t in triples),
    )


def separation_gap(p: CodedTriple, q: CodedTriple) -> int:
    """Code distance between two support-box triples with different (n, b).

    Both triples must satisfy z in [0, n].  Whenever the (n, b) pairs differ,
    the codes of the lexicographically larger cell exceed those of the
    smaller by at least 2; the returned gap is that positive difference.
    """
    for t in (p, q):
        if not t.in_support_box:
            raise ValueError(f"triple {t.as_tuple()} has offset outside [0, n]")
    if (p.n, p.b) == (q.n, q.b):
        raise ValueError(
            f"triples share the cell (n={p.n}, b={p.b}); no gap is guaranteed"
        )
    lo, hi = sorted((p, q), key=lambda t: (t.n, t.b))
    return encode(*hi.as_tuple()) - encode(*lo.as_tuple())
