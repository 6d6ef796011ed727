"""Incidence structures and 2-design verification.

Blocks are stored as a lexicographically sorted tuple of sorted point tuples,
with multiset semantics (coset geometries can repeat a point set; orbit
constructions never do).  verify_2design counts every point pair exactly; the
refutation witness is the lexicographically first pair whose count differs
from the majority count (ties broken toward the smaller count value).
"""

from __future__ import annotations

import itertools
from collections import Counter, deque
from dataclasses import dataclass

from .errors import (BlockSizeInvalid, BoundExceeded, NotASubgroup,
                     UnequalBlockSizes)
from .perm import GenGroup, Perm, identity, pinv, pmul


@dataclass(frozen=True)
class IncidenceStructure:
    v: int
    blocks: tuple[tuple[int, ...], ...]

    @staticmethod
    def make(v: int, blocks) -> "IncidenceStructure":
        normalized = tuple(sorted(tuple(sorted(b)) for b in blocks))
        for b in normalized:
            if b and not (0 <= b[0] and b[-1] < v):
                raise ValueError(f"block {b} out of range for v={v}")
            if len(set(b)) != len(b):
                raise ValueError(f"block {b} has repeated points")
        return IncidenceStructure(v, normalized)

    @property
    def b(self) -> int:
        return len(self.blocks)

    def block_multiset(self) -> Counter:
        return Counter(self.blocks)

    def to_json(self) -> dict:
        return {"v": self.v, "blocks": [list(b) for b in self.blocks]}

    @staticmethod
    def from_json(data: dict) -> "IncidenceStructure":
        return IncidenceStructure.make(data["v"], data["blocks"])


@dataclass(frozen=True)
class DesignParams:
    v: int
    b: int
    r: int
    k: int
    lmbda: int

    def __post_init__(self):
        assert self.r * (self.k - 1) == self.lmbda * (self.v - 1), self
        assert self.b * self.k == self.v * self.r, self

    @property
    def is_trivial(self) -> bool:
        return not (2 < self.k < self.v - 1)

    @property
    def is_symmetric(self) -> bool:
        return self.b == self.v

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return (self.v, self.b, self.r, self.k, self.lmbda)

    def __str__(self):
        return f"2-({self.v},{self.k},{self.lmbda}) [b={self.b}, r={self.r}]"


@dataclass(frozen=True)
class NotTwoDesign:
    """Refutation: a point pair covered the wrong number of times."""
    pair: tuple[int, int]
    count: int
    expected: int


def verify_2design(D: IncidenceStructure) -> DesignParams | NotTwoDesign:
    """Exact pair count over all C(v,2) pairs.

    Returns the parameter tuple, or the refutation witness described in the
    module docstring.  Blocks must share a common size k (multiplicities
    count).
    """
    if not D.blocks:
        raise UnequalBlockSizes("no blocks")
    sizes = {len(b) for b in D.blocks}
    if len(sizes) != 1:
        raise UnequalBlockSizes(f"block sizes {sorted(sizes)}")
    k = sizes.pop()
    counts: Counter = Counter()
    for block in D.blocks:
        for pair in itertools.combinations(block, 2):
            counts[pair] += 1
    npairs = D.v * (D.v - 1) // 2
    histogram = Counter(counts.values())
    histogram[0] += npairs - len(counts)
    lam, _ = max(histogram.items(), key=lambda kv: (kv[1], -kv[0]))
    for pair in itertools.combinations(range(D.v), 2):
        c = counts.get(pair, 0)
        if c != lam:
            return NotTwoDesign(pair, c, lam)
    if lam == 0:
        return NotTwoDesign((0, 1), 0, 0)
    # uniform positive pair count forces uniform replication, so the
    # standard identities hold (asserted by DesignParams)
    b = len(D.blocks)
    r, rem = divmod(b * k, D.v)
    assert rem == 0
    return DesignParams(D.v, b, r, k, lam)


def orbit_design(G: GenGroup, base_block) -> IncidenceStructure:
    """The incidence structure whose blocks are the G-orbit of base_block."""
    base = frozenset(base_block)
    v = G.degree
    if not 2 < len(base) < v - 1:
        raise BlockSizeInvalid(f"block size {len(base)} not in (2, {v - 1})")
    seen = {base}
    queue = deque([base])
    while queue:
        blk = queue.popleft()
        for s in G.generators:
            img = frozenset(s[x] for x in blk)
            if img not in seen:
                seen.add(img)
                queue.append(img)
    return IncidenceStructure.make(v, seen)


@dataclass(frozen=True)
class FlagCertificate:
    flag: tuple[int, tuple[int, ...]]
    orbit_size: int
    flag_count: int

    @property
    def transitive(self) -> bool:
        return self.orbit_size == self.flag_count


def is_flag_transitive(G: GenGroup, D: IncidenceStructure) -> FlagCertificate:
    """Orbit of one flag under the induced action on (point, block) pairs.

    With repeated blocks, transitivity additionally requires uniform
    multiplicities; the orbit then lives on distinct block supports and must
    cover all of them.
    """
    if G.degree != D.v:
        raise ValueError(f"group degree {G.degree} != v = {D.v}")
    mult = D.block_multiset()
    if len(set(mult.values())) > 1:
        some_block = D.blocks[0]
        return FlagCertificate((some_block[0], some_block), 0,
                               sum(len(b) for b in D.blocks))
    distinct = set(mult)
    flag_count = sum(len(b) for b in distinct)
    block0 = D.blocks[0]
    start = (block0[0], block0)
    seen = {start}
    queue = deque([start])
    while queue:
        x, blk = queue.popleft()
        for s in G.generators:
            img = (s[x], tuple(sorted(s[y] for y in blk)))
            if img not in seen:
                seen.add(img)
                queue.append(img)
    orbit_size = len(seen)
    if any(blk not in distinct for _, blk in seen):
        orbit_size = 0  # G does not even preserve the block set
    return FlagCertificate(start, orbit_size, flag_count)


def complement(D: IncidenceStructure) -> IncidenceStructure:
    full = tuple(range(D.v))
    return IncidenceStructure.make(
        D.v, (tuple(x for x in full if x not in set(b)) for b in D.blocks))


def coset_geometry(G: GenGroup, P: GenGroup, Q: GenGroup, *,
                   element_bound: int = 20_000) -> IncidenceStructure:
    """Points = right cosets of P, blocks = right cosets of Q, incidence =
    nonempty intersection (so Px meets Qy iff x y^-1 is in PQ)."""
    if G.order() > element_bound:
        raise BoundExceeded(f"|G| = {G.order()} exceeds {element_bound}")
    for H in (P, Q):
        if not all(G.contains(g) for g in H.generators):
            raise NotASubgroup("P, Q must be subgroups of G")
    p_elems = list(P.elements())
    p_reps = _coset_reps(G, P)
    q_reps = _coset_reps(G, Q)
    blocks = []
    for y in q_reps:
        incident = []
        for i, x in enumerate(p_reps):
            w = pmul(x, pinv(y))
            if any(Q.contains(pmul(pe, w)) for pe in p_elems):
                incident.append(i)
        blocks.append(tuple(incident))
    sizes = {len(b) for b in blocks}
    assert len(sizes) == 1, f"nonuniform coset geometry block sizes {sizes}"
    return IncidenceStructure.make(len(p_reps), blocks)


def _coset_reps(G: GenGroup, H: GenGroup) -> list[Perm]:
    rep0 = H.min_coset_rep(identity(G.degree))
    reps = [rep0]
    seen = {rep0}
    queue = deque([rep0])
    while queue:
        r = queue.popleft()
        for s in G.generators:
            nxt = H.min_coset_rep(pmul(r, s))
            if nxt not in seen:
                seen.add(nxt)
                reps.append(nxt)
                queue.append(nxt)
    assert len(reps) == G.order() // H.order()
    return reps


def intersection_order(G: GenGroup, P: GenGroup, Q: GenGroup,
                       element_bound: int = 20_000) -> int:
    """|P meet Q| by filtering P's elements through Q's membership test."""
    count = 0
    for g in P.enumerate_elements(element_bound):
        if Q.contains(g):
            count += 1
    return count
