"""Encoded graph sets and their two separation checkers.

A graph datum is a depth-d prefix of (sizes a, bits x, offsets g) with each
offset in the codec domain [0, a(k) + 1].  Encoding it coordinatewise gives
one point of an `EncodedSet`.  Two properties of such sets are checked
here, exactly and deterministically:

  pairwise gap    every two points differ by at least 2 in some coordinate
  coin-flip bound no integer translate of the set meets {0, 1}^d twice

The gap property is what makes the coin-flip bound work, and the bound is
what makes translates of the encoded set small under every product of
fair coin measures.  Both checkers return `VerificationReport` values; the
coin-flip search carries a node budget and reports exhaustion instead of
running away.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .codec import PointPrefix, decode_point, encode_point
from .report import BUDGET_EXCEEDED, FAIL, PASS, VerificationReport

__all__ = [
    "GraphDataParseError",
    "GraphDatum",
    "EncodedSet",
    "build_encoded_set",
    "check_pairwise_gap",
    "coinflip_bound",
    "load_graph_data",
    "graph_datum_to_dict",
    "graph_datum_from_dict",
    "encoded_set_to_dict",
    "encoded_set_from_dict",
    "DEFAULT_BUDGET",
]

# Default cap on search-tree nodes for the coin-flip scan.
DEFAULT_BUDGET = 10**7


class GraphDataParseError(ValueError):
    """A dataset line that is not even shaped like a graph datum.

    Raised for JSON syntax errors and wrong-shape objects.  Violations of
    value-level constraints (offsets out of domain, repeated arguments,
    mixed depths) stay plain `ValueError`s so callers can tell ill-formed
    files apart from well-formed files with bad data.
    """


@dataclass(frozen=True)
class GraphDatum:
    """One sample of a graph: sizes a, bits x, and offsets g, all depth d.

    Constructor-level constraints are the codec's: a(k) >= 1, x(k) in
    {0, 1}, g(k) in [0, a(k) + 1].  The tighter support-box condition
    g(k) <= a(k) is a predicate, not a constructor constraint, so boundary
    data (used as negative controls for the checkers) remain expressible.
    """

    a: tuple[int, ...]
    x: tuple[int, ...]
    g: tuple[int, ...]

    def __post_init__(self):
        prefix = PointPrefix(tuple(self.a), tuple(self.x), tuple(self.g))
        if not prefix.in_domain:
            raise ValueError(
                f"offsets {prefix.g} leave the codec domain for sizes {prefix.a}"
            )
        object.__setattr__(self, "a", prefix.a)
        object.__setattr__(self, "x", prefix.x)
        object.__setattr__(self, "g", prefix.g)

    @property
    def depth(self) -> int:
        return len(self.a)

    @property
    def in_support_box(self) -> bool:
        return all(gk <= ak for ak, gk in zip(self.a, self.g))

    def point_prefix(self) -> PointPrefix:
        return PointPrefix(self.a, self.x, self.g)

    def encoded(self) -> tuple[int, ...]:
        return encode_point(self.point_prefix())


@dataclass(frozen=True)
class EncodedSet:
    """A finite set of depth-d encoded points, sorted and deduplicated.

    Points are tuples of nonnegative codes; the constructor checks only
    that structure, so sets loaded from raw point lists (not just built
    from graph data) are representable.
    """

    depth: int
    points: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not isinstance(self.depth, int) or isinstance(self.depth, bool):
            raise ValueError(f"depth must be an integer, got {self.depth!r}")
        if self.depth < 0:
            raise ValueError(f"depth must be >= 0, got {self.depth}")
        canon = set()
        for p in self.points:
            t = tuple(p)
            if len(t) != self.depth:
                raise ValueError(
                    f"point {t} has length {len(t)}, expected depth {self.depth}"
                )
            for v in t:
                if not isinstance(v, int) or isinstance(v, bool):
                    raise ValueError(f"code must be an integer, got {v!r}")
                if v < 0:
                    raise ValueError(f"code must be >= 0, got {v}")
            canon.add(t)
        object.__setattr__(self, "points", tuple(sorted(canon)))

    @property
    def size(self) -> int:
        return len(self.points)

    def decoded(self) -> tuple[PointPrefix, ...]:
        return tuple(decode_point(p) for p in self.points)


def build_encoded_set(
    data: Sequence[GraphDatum],
    allow_boundary: bool = False,
    labels: Optional[Sequence[str]] = None,
) -> EncodedSet:
    """Encode a family of graph data into an `EncodedSet`.

    All data must share one depth and have pairwise distinct (a, x)
    arguments (two values for one argument is not a graph).  Offsets must
    stay inside the support box unless `allow_boundary` is set.  `labels`
    customizes how data are named in error messages; the default is their
    1-based position.
    """
    if not data:
        raise ValueError("cannot build an encoded set from no data")
    names = (
        list(labels)
        if labels is not None
        else [f"datum {i + 1}" for i in range(len(data))]
    )
    if len(names) != len(data):
        raise ValueError(f"{len(names)} labels for {len(data)} data")
    depth = data[0].depth
    seen: dict[tuple, int] = {}
    for i, gd in enumerate(data):
        if gd.depth != depth:
            raise ValueError(
                f"{names[i]} has depth {gd.depth}, expected {depth}"
            )
        if not allow_boundary and not gd.in_support_box:
            raise ValueError(
                f"{names[i]} has an offset at a size + 1 boundary; "
                "boundary offsets must be allowed explicitly"
            )
        arg = (gd.a, gd.x)
        if arg in seen:
            raise ValueError(
                f"{names[i]} repeats the argument (a, x) of {names[seen[arg]]}"
            )
        seen[arg] = i
    return EncodedSet(depth, tuple(gd.encoded() for gd in data))


def check_pairwise_gap(es: EncodedSet) -> VerificationReport:
    """Check that every pair of points is 2-separated in some coordinate.

    A pair whose coordinates all differ by at most 1 cannot be separated at
    this depth.  If its decoded (a, x) arguments also agree at every
    coordinate, deeper coordinates of the underlying sequences could still
    separate it, so the pair is reported as undecidable rather than failed;
    if the arguments differ somewhere, the separation was supposed to
    appear at such a coordinate, and the pair is a counterexample.
    """
    decoded = es.decoded()
    undecidable = []
    decided = 0
    failure = None
    for i in range(es.size):
        for j in range(i + 1, es.size):
            p, q = es.points[i], es.points[j]
            if any(abs(pv - qv) >= 2 for pv, qv in zip(p, q)):
                decided += 1
                continue
            dp, dq = decoded[i], decoded[j]
            same_arg = dp.a == dq.a and dp.x == dq.x
            if same_arg:
                undecidable.append({"points": [p, q]})
            elif failure is None:
                failure = {
                    "points": [p, q],
                    "arguments": [
                        {"a": dp.a, "x": dp.x},
                        {"a": dq.a, "x": dq.x},
                    ],
                    "max_coordinate_gap": max(
                        (abs(pv - qv) for pv, qv in zip(p, q)), default=0
                    ),
                }
    return VerificationReport(
        claim="pairwise-gap",
        status=FAIL if failure else PASS,
        depth=es.depth,
        lhs=failure["max_coordinate_gap"] if failure else None,
        rhs=2 if failure else None,
        counterexample=failure,
        parameters={
            "points": es.size,
            "decided_pairs": decided,
            "undecidable_pairs": undecidable,
        },
    )


class _BudgetExhausted(Exception):
    pass


def coinflip_bound(es: EncodedSet, budget: int = DEFAULT_BUDGET) -> VerificationReport:
    """Check that no translate of the point set hits {0, 1}^d twice.

    Searches translates r coordinate by coordinate, keeping only the points
    still landing in {0, 1} on every chosen coordinate and pruning once
    fewer than two survive.  Candidate values at coordinate k are the
    finitely many r(k) that keep some survivor in {0, 1}, visited in
    increasing order, so a reported counterexample is the lexicographically
    least translate with two or more hits.  Each candidate visit costs one
    unit of budget; exhaustion yields a budget-exceeded report.
    """
    if budget < 1:
        raise ValueError(f"budget must be >= 1, got {budget}")
    d = es.depth
    if es.size < 2:
        return VerificationReport(
            claim="coinflip-bound",
            status=PASS,
            depth=d,
            parameters={"points": es.size, "budget": budget, "nodes_visited": 0},
        )
    visited = 0

    def scan(k: int, alive: tuple[int, ...], r: tuple[int, ...]):
        nonlocal visited
        if k == d:
            return r, alive
        candidates = sorted(
            {v for i in alive for v in (-es.points[i][k], 1 - es.points[i][k])}
        )
        for rk in candidates:
            visited += 1
            if visited > budget:
                raise _BudgetExhausted
            survivors = tuple(
                i for i in alive if 0 <= es.points[i][k] + rk <= 1
            )
            if len(survivors) < 2:
                continue
            found = scan(k + 1, survivors, r + (rk,))
            if found is not None:
                return found
        return None

    try:
        found = scan(0, tuple(range(es.size)), ())
    except _BudgetExhausted:
        return VerificationReport(
            claim="coinflip-bound",
            status=BUDGET_EXCEEDED,
            depth=d,
            parameters={
                "points": es.size,
                "budget": budget,
                "nodes_visited": visited,
            },
        )
    if found is None:
        return VerificationReport(
            claim="coinflip-bound",
            status=PASS,
            depth=d,
            parameters={
                "points": es.size,
                "budget": budget,
                "nodes_visited": visited,
            },
        )
    r, alive = found
    hits = [es.points[i] for i in alive]
    return VerificationReport(
        claim="coinflip-bound",
        status=FAIL,
        depth=d,
        lhs=len(hits),
        rhs=1,
        counterexample={"r": r, "hits": hits},
        parameters={
            "points": es.size,
            "budget": budget,
            "nodes_visited": visited,
        },
    )


def load_graph_data(lines: Iterable[str]) -> list[tuple[int, GraphDatum]]:
    """Parse JSON-lines graph data into (line number, datum) pairs.

    Each nonblank line must be an object with integer-list fields "a", "x",
    and "g".  Errors carry the 1-based line number of the offending line;
    syntax and shape problems raise `GraphDataParseError`, value-level
    problems a plain `ValueError`.
    """
    out = []
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            raw = json.loads(line)
        except json.JSONDecodeError as exc:
            raise GraphDataParseError(
                f"line {lineno}: invalid JSON: {exc}"
            ) from exc
        try:
            out.append((lineno, graph_datum_from_dict(raw)))
        except GraphDataParseError as exc:
            raise GraphDataParseError(f"line {lineno}: {exc}") from exc
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from exc
    return out


def graph_datum_from_dict(d: dict) -> GraphDatum:
    if not isinstance(d, dict):
        raise GraphDataParseError(f"expected an object, got {d!r}")
    missing = [key for key in ("a", "x", "g") if key not in d]
    if missing:
        raise GraphDataParseError(f"missing fields: {', '.join(missing)}")
    extra = sorted(set(d) - {"a", "x", "g"})
    if extra:
        raise GraphDataParseError(f"unknown fields: {', '.join(extra)}")
    fields = []
    for key in ("a", "x", "g"):
        value = d[key]
        if not isinstance(value, list):
            raise GraphDataParseError(f'field "{key}" must be a list, got {value!r}')
        fields.append(tuple(value))
    return GraphDatum(*fields)


def graph_datum_to_dict(gd: GraphDatum) -> dict:
    return {"a": list(gd.a), "x": list(gd.x), "g": list(gd.g)}


def encoded_set_to_dict(es: EncodedSet) -> dict:
    return {"depth": es.depth, "points": [list(p) for p in es.points]}


def encoded_set_from_dict(d: dict) -> EncodedSet:
    if not isinstance(d, dict) or set(d) != {"depth", "points"}:
        raise ValueError('expected an object with fields "depth" and "points"')
    if not isinstance(d["points"], list):
        raise ValueError('field "points" must be a list of point lists')
    return EncodedSet(d["depth"], tuple(tuple(p) for p in d["points"]))
