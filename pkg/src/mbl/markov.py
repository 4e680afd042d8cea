"""Markov triples: the equation a^2 + b^2 + c^2 = 3abc, its mutations and tree.

Triples are kept sorted (a >= b >= c >= 1).  Fixing two entries turns the
equation into a quadratic in the third, so each triple has three neighbours
("mutations"); all solutions form a trivalent tree rooted at (1,1,1), which is
degenerate at its first two levels (repeated triples are deduplicated here by
keying on the sorted tuple).
"""

from __future__ import annotations

import enum
import math
from collections import deque
from dataclasses import dataclass


class MutationKind(enum.Enum):
    """Which entry of the sorted triple gets replaced by the other root."""

    ELIMINATE_MIN = "min"
    ELIMINATE_MID = "mid"
    ELIMINATE_MAX = "max"

    def __repr__(self) -> str:
        return f"MutationKind.{self.name}"


@dataclass(frozen=True, order=True)
class MarkovTriple:
    """A solution of a^2 + b^2 + c^2 = 3abc, stored with a >= b >= c >= 1."""

    a: int
    b: int
    c: int

    def __post_init__(self):
        if not (self.a >= self.b >= self.c >= 1):
            raise ValueError(f"triple must be sorted and positive: {self}")
        if not is_markov(self.a, self.b, self.c):
            raise ValueError(f"{self} does not solve the Markov equation")

    @classmethod
    def from_values(cls, x: int, y: int, z: int) -> "MarkovTriple":
        a, b, c = sorted((x, y, z), reverse=True)
        return cls(a, b, c)

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def __iter__(self):
        return iter((self.a, self.b, self.c))

    def __contains__(self, value: int) -> bool:
        return value in (self.a, self.b, self.c)

    def __str__(self) -> str:
        return f"({self.a},{self.b},{self.c})"

    def to_json(self) -> dict:
        # decimal strings: entries outgrow doubles quickly
        return {"a": str(self.a), "b": str(self.b), "c": str(self.c)}

    @classmethod
    def from_json(cls, obj: dict) -> "MarkovTriple":
        return cls(int(obj["a"]), int(obj["b"]), int(obj["c"]))


@dataclass(frozen=True)
class TreeNode:
    """A triple together with its position in the tree rooted at (1,1,1)."""

    triple: MarkovTriple
    depth: int
    path: tuple[MutationKind, ...]

    def __post_init__(self):
        if self.depth != len(self.path):
            raise ValueError("depth must equal the path length")


@dataclass(frozen=True)
class SubtreeSpec:
    """Root data for the bivalent subtree of mutations preserving one entry.

    The apex is the unique triple of the subtree in which the preserved
    number is maximal.
    """

    apex: MarkovTriple
    preserved: int

    def __post_init__(self):
        if self.preserved != self.apex.a:
            raise ValueError(
                f"{self.preserved} is not the maximal entry of apex {self.apex}"
            )

    @classmethod
    def rooted(cls, p: int, triple: MarkovTriple) -> "SubtreeSpec":
        """Spec for the subtree through `triple` preserving p."""
        return cls(apex_for(p, triple), p)


def is_markov(a: int, b: int, c: int) -> bool:
    """Whether (a, b, c) solves the Markov equation.  Entries must be >= 1."""
    if a < 1 or b < 1 or c < 1:
        raise ValueError(f"entries must be positive, got ({a},{b},{c})")
    return a * a + b * b + c * c == 3 * a * b * c


def mutate(t: MarkovTriple, kind: MutationKind) -> MarkovTriple:
    """Replace one entry by the other root of the induced quadratic.

    Slots refer to positions of the sorted triple; for the degenerate triples
    (1,1,1) and (2,1,1) equal entries are resolved by position.
    """
    a, b, c = t
    if kind is MutationKind.ELIMINATE_MAX:
        return MarkovTriple.from_values(3 * b * c - a, b, c)
    if kind is MutationKind.ELIMINATE_MID:
        return MarkovTriple.from_values(a, 3 * a * c - b, c)
    return MarkovTriple.from_values(a, b, 3 * a * b - c)


def replay_path(path: tuple[MutationKind, ...]) -> MarkovTriple:
    """Apply a mutation path starting from the root (1,1,1)."""
    t = MarkovTriple(1, 1, 1)
    for kind in path:
        t = mutate(t, kind)
    return t


_KINDS = (MutationKind.ELIMINATE_MIN, MutationKind.ELIMINATE_MID, MutationKind.ELIMINATE_MAX)


def enumerate_triples(max_bound: int) -> list[TreeNode]:
    """All tree nodes whose triple has maximal entry <= max_bound.

    Breadth-first from (1,1,1), following only mutations that increase the
    maximal entry (every non-root triple has exactly one neighbour with a
    smaller maximum, so this reaches each triple once; the degenerate root
    levels are deduplicated).  Result sorted by (max, mid, min).
    """
    if max_bound < 1:
        raise ValueError("max_bound must be >= 1")
    root = TreeNode(MarkovTriple(1, 1, 1), 0, ())
    seen = {root.triple.as_tuple()}
    out = [root]
    queue = deque([root])
    while queue:
        node = queue.popleft()
        for kind in _KINDS:
            child = mutate(node.triple, kind)
            key = child.as_tuple()
            if child.a <= node.triple.a or child.a > max_bound or key in seen:
                continue
            seen.add(key)
            child_node = TreeNode(child, node.depth + 1, node.path + (kind,))
            out.append(child_node)
            queue.append(child_node)
    out.sort(key=lambda n: n.triple.as_tuple())
    return out


def markov_numbers(n: int) -> list[int]:
    """The first n Markov numbers in increasing order.

    Every Markov number is the maximal entry of its apex triple, so the
    distinct maxima of an enumeration up to a sufficient bound give the
    sequence; the bound grows geometrically until n maxima are found.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    bound = 512
    while True:
        maxima = sorted({node.triple.a for node in enumerate_triples(bound)})
        if len(maxima) >= n:
            return maxima[:n]
        bound *= 4


def is_markov_number(p: int) -> bool:
    if p < 1:
        return False
    return any(node.triple.a == p for node in enumerate_triples(p))


def apex_of_number(p: int) -> MarkovTriple:
    """The triple in which p is the maximal entry (root of its subtree)."""
    for node in enumerate_triples(max(p, 1)):
        if node.triple.a == p:
            return node.triple
    raise ValueError(f"{p} is not a Markov number")


def apex_for(p: int, triple: MarkovTriple) -> MarkovTriple:
    """Walk max-decreasing mutations until p is the maximal entry.

    This is well defined: eliminating the maximum strictly decreases it
    (except at the root levels, where p is already maximal), and the other
    two mutations strictly increase it.
    """
    if p not in triple:
        raise ValueError(f"{p} does not appear in {triple}")
    t = triple
    while t.a != p:
        t = mutate(t, MutationKind.ELIMINATE_MAX)
    return t


def _kind_from_parent(parent: MarkovTriple, child: MarkovTriple) -> MutationKind:
    for kind in _KINDS:
        if mutate(parent, kind) == child:
            return kind
    raise ValueError(f"{child} is not a mutation of {parent}")


def _path_from_root(triple: MarkovTriple) -> tuple[MutationKind, ...]:
    chain = [triple]
    t = triple
    while t != MarkovTriple(1, 1, 1):
        t = mutate(t, MutationKind.ELIMINATE_MAX)
        chain.append(t)
    chain.reverse()
    return tuple(
        _kind_from_parent(chain[i], chain[i + 1]) for i in range(len(chain) - 1)
    )


def _preserving_child(t: MarkovTriple, p: int) -> MarkovTriple:
    """The unique max-increasing mutation of t that keeps p in the triple."""
    candidates = []
    for kind in (MutationKind.ELIMINATE_MID, MutationKind.ELIMINATE_MIN,
                 MutationKind.ELIMINATE_MAX):
        child = mutate(t, kind)
        if p in child and child.a > t.a:
            candidates.append(child)
    # distinct candidates only coincide at the degenerate root levels
    return candidates[0]


def wedge(spec: SubtreeSpec, depth: int) -> list[TreeNode]:
    """The bivalent subtree preserving `spec.preserved`, to the given depth.

    Level 0 is the apex; at the apex the left branch eliminates the middle
    entry and the right branch the minimal one, and each branch then
    continues as a chain.  For the degenerate apexes (1,1,1) and (2,1,1) the
    two branches coincide and a single chain is returned (one node per
    level).  Nodes carry absolute depths and paths from (1,1,1).
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    p = spec.preserved
    apex_path = _path_from_root(spec.apex)
    apex_node = TreeNode(spec.apex, len(apex_path), apex_path)
    out = [apex_node]
    if depth == 0:
        return out
    left = mutate(spec.apex, MutationKind.ELIMINATE_MID)
    right = mutate(spec.apex, MutationKind.ELIMINATE_MIN)
    chains = [left] if left == right else [left, right]
    columns = []
    for start in chains:
        kind = _kind_from_parent(spec.apex, start)
        node = TreeNode(start, apex_node.depth + 1, apex_path + (kind,))
        column = [node]
        t = start
        for _ in range(depth - 1):
            child = _preserving_child(t, p)
            kind = _kind_from_parent(t, child)
            node = TreeNode(child, node.depth + 1, node.path + (kind,))
            column.append(node)
            t = child
        columns.append(column)
    for level in range(depth):
        for column in columns:
            out.append(column[level])
    return out


def essential_subtree(p: int, depth: int) -> list[MarkovTriple]:
    """Triples of the subtree preserving p whose minimal entry is p.

    For p = 1 this is the whole branch starting at (1,1,1); for p = 2 the
    branch with (2,1,1) and (5,2,1) removed; for p >= 5 the subtree with the
    apex and its two children removed.  `depth` counts remaining levels (two
    triples per level for p >= 5, one for p in {1, 2}).
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    apex = apex_of_number(p)  # raises for non-Markov p
    spec = SubtreeSpec(apex, p)
    if p == 1:
        return [node.triple for node in wedge(spec, depth - 1)]
    skip = 2 if p == 2 else 3  # (2,1,1)+(5,2,1), or apex and its two children
    nodes = wedge(spec, depth + 1)
    return [node.triple for node in nodes[skip:]]


def fibonacci(n: int) -> int:
    """F_n with F_0 = 0, F_1 = 1."""
    if n < 0:
        raise ValueError("n must be >= 0")
    x, y = 0, 1
    for _ in range(n):
        x, y = y, x + y
    return x


def pell(n: int) -> int:
    """P_n with P_0 = 0, P_1 = 1, P_{n+1} = 2 P_n + P_{n-1}."""
    if n < 0:
        raise ValueError("n must be >= 0")
    x, y = 0, 1
    for _ in range(n):
        x, y = y, 2 * y + x
    return x


def branch_triple(kind: str, n: int) -> MarkovTriple:
    """The n-th triple of an extreme branch of the tree.

    kind "fibonacci": (F_{2n+1}, F_{2n-1}, 1); kind "pell":
    (P_{2n+1}, P_{2n-1}, 2); n >= 1, result sorted.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    key = kind.lower()
    if key == "fibonacci":
        return MarkovTriple.from_values(fibonacci(2 * n + 1), fibonacci(2 * n - 1), 1)
    if key == "pell":
        return MarkovTriple.from_values(pell(2 * n + 1), pell(2 * n - 1), 2)
    raise ValueError(f"unknown branch kind {kind!r}")


def complete_triple(p1: int, p2: int) -> MarkovTriple:
    """The unique triple containing p1 > p2 with p1 maximal.

    Solves c^2 - 3 p1 p2 c + p1^2 + p2^2 = 0 for the smaller root and
    verifies it is a positive integer below p1.
    """
    if not p1 > p2 >= 1:
        raise ValueError("need p1 > p2 >= 1")
    disc = 9 * p1 * p1 * p2 * p2 - 4 * (p1 * p1 + p2 * p2)
    if disc < 0:
        raise ValueError(f"{p1} and {p2} do not co-occur in a Markov triple")
    s = math.isqrt(disc)
    if s * s != disc or (3 * p1 * p2 - s) % 2 != 0:
        raise ValueError(f"{p1} and {p2} do not co-occur in a Markov triple")
    c = (3 * p1 * p2 - s) // 2
    if c < 1 or c >= p1 or not is_markov(p1, p2, c):
        raise ValueError(f"{p1} and {p2} do not co-occur in a Markov triple")
    return MarkovTriple.from_values(p1, p2, c)


def uniqueness_check(max_bound: int) -> bool:
    """Whether no two triples with max <= max_bound share a maximal entry."""
    maxima = [node.triple.a for node in enumerate_triples(max_bound)]
    return len(maxima) == len(set(maxima))


def brute_force_triples(max_bound: int) -> list[tuple[int, int, int]]:
    """Independent enumeration: scan pairs (b, c) and solve for the third entry.

    Used as the oracle for `enumerate_triples`; it never applies mutations.
    """
    if max_bound < 1:
        raise ValueError("max_bound must be >= 1")
    found = set()
    for c in range(1, max_bound + 1):
        for b in range(c, max_bound + 1):
            disc = 9 * b * b * c * c - 4 * (b * b + c * c)
            if disc < 0:
                continue
            s = math.isqrt(disc)
            if s * s != disc:
                continue
            for a2 in (3 * b * c - s, 3 * b * c + s):
                if a2 % 2 == 0 and b <= a2 // 2 <= max_bound:
                    found.add((a2 // 2, b, c))
    return sorted(found)
