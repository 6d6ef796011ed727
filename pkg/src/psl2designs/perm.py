"""Deterministic permutation-group engine.

Permutations on {0..n-1} are tuples t with t[i] the image of i; p * q means
"apply p, then q", i.e. (p*q)[i] = q[p[i]].

Stabilizer chains use the full base (0, 1, ..., n-1): level b is the
pointwise stabilizer of {0..b-1}.  That costs a little memory but buys three
things: element enumeration comes out in lexicographic order of the image
tuples, every coset H*g has a cheap canonical (lex-least) representative, and
base points are trivially "in increasing natural order".  Everything here is
deterministic: no randomized Schreier-Sims, BFS queues are FIFO, generator
lists keep their given order.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from math import gcd

from .errors import (BoundExceeded, DegreeMismatch, IndexBoundExceeded,
                     NotASubgroup, NotFaithful, NotTransitive)

Perm = tuple[int, ...]

DEFAULT_ELEMENT_BOUND = 200_000
DEFAULT_INDEX_BOUND = 100_000


def identity(n: int) -> Perm:
    return tuple(range(n))


def pmul(p: Perm, q: Perm) -> Perm:
    """Apply p, then q."""
    return tuple(map(q.__getitem__, p))


def pinv(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def ppow(p: Perm, e: int) -> Perm:
    n = len(p)
    if e < 0:
        return ppow(pinv(p), -e)
    out = identity(n)
    base = p
    while e:
        if e & 1:
            out = pmul(out, base)
        base = pmul(base, base)
        e >>= 1
    return out


def conj(p: Perm, g: Perm) -> Perm:
    """g^-1 p g."""
    return pmul(pmul(pinv(g), p), g)


def perm_order(p: Perm) -> int:
    n = len(p)
    seen = [False] * n
    order = 1
    for i in range(n):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        order = order * length // gcd(order, length)
    return order


def is_identity(p: Perm) -> bool:
    return all(i == j for i, j in enumerate(p))


def check_perm(p) -> Perm:
    p = tuple(p)
    if sorted(p) != list(range(len(p))):
        raise ValueError("not a permutation")
    return p


class _Level:
    __slots__ = ("base", "gens", "orbit", "_done")

    def __init__(self, base: int, n: int):
        self.base = base
        # every strong generator fixing all points < base (in install order)
        self.gens: list[Perm] = []
        self.orbit: dict[int, Perm] = {base: identity(n)}
        self._done: set = set()  # processed (point, gen index) pairs


class GenGroup:
    """A permutation group given by generators, with a lazily built chain."""

    def __init__(self, degree: int, generators, name: str | None = None):
        self.degree = degree
        gens = []
        for g in generators:
            g = tuple(g)
            if len(g) != degree:
                raise DegreeMismatch(f"generator degree {len(g)} != {degree}")
            if not is_identity(g) and g not in gens:
                gens.append(g)
        self.generators: list[Perm] = gens
        self.name = name
        self._levels: list[_Level] | None = None
        self._order: int | None = None

    def __repr__(self):
        tag = self.name or f"degree-{self.degree} group"
        return f"<{tag} with {len(self.generators)} generators>"

    # -- stabilizer chain ----------------------------------------------------

    def _chain(self) -> list[_Level]:
        if self._levels is None:
            self._levels = [_Level(b, self.degree) for b in range(self.degree)]
            pending = deque(self.generators)
            while pending:
                self._install(pending.popleft(), pending)
        return self._levels

    def _install(self, g: Perm, pending: deque):
        levels = self._levels
        for b in range(self.degree):
            x = g[b]
            if x == b:
                continue
            lvl = levels[b]
            u = lvl.orbit.get(x)
            if u is None:
                # new strong generator whose first moved point is >= b: it
                # acts at every level up to b
                for i in range(b + 1):
                    levels[i].gens.append(g)
                    self._extend_orbit(levels[i], pending)
                return
            g = pmul(g, pinv(u))
        # sifted to identity: nothing to do

    def _absorb(self, g: Perm):
        """Extend this group in place by a new generator (internal use)."""
        self._chain()
        pending = deque([g])
        while pending:
            self._install(pending.popleft(), pending)
        self.generators.append(tuple(g))
        self._order = None

    def _extend_orbit(self, lvl: _Level, pending: deque):
        # recompute the orbit closure, then queue unprocessed Schreier pairs
        frontier = deque(lvl.orbit)
        while frontier:
            x = frontier.popleft()
            ux = lvl.orbit[x]
            for s in lvl.gens:
                y = s[x]
                if y not in lvl.orbit:
                    lvl.orbit[y] = pmul(ux, s)
                    frontier.append(y)
        for x in list(lvl.orbit):
            ux = lvl.orbit[x]
            for i, s in enumerate(lvl.gens):
                if (x, i) in lvl._done:
                    continue
                lvl._done.add((x, i))
                schreier = pmul(pmul(ux, s), pinv(lvl.orbit[s[x]]))
                if not is_identity(schreier):
                    pending.append(schreier)

    def order(self) -> int:
        if self._order is None:
            out = 1
            for lvl in self._chain():
                out *= len(lvl.orbit)
            self._order = out
        return self._order

    def sift(self, g: Perm) -> Perm:
        """Residue of g after sifting; identity iff g is a member."""
        if len(g) != self.degree:
            raise DegreeMismatch(f"degree {len(g)} != {self.degree}")
        for lvl in self._chain():
            x = g[lvl.base]
            if x == lvl.base:
                continue
            u = lvl.orbit.get(x)
            if u is None:
                return g
            g = pmul(g, pinv(u))
        return g

    def contains(self, g: Perm) -> bool:
        return is_identity(self.sift(g))

    def is_subgroup(self, other: "GenGroup") -> bool:
        """True iff every generator of self lies in other."""
        return all(other.contains(g) for g in self.generators) or not self.generators

    # -- element access --------------------------------------------------------

    def elements(self):
        """All elements, lexicographically ordered by image tuple."""
        levels = [lvl for lvl in self._chain() if len(lvl.orbit) > 1]

        def rec(i, rel):
            if i == len(levels):
                yield rel
                return
            lvl = levels[i]
            for y in sorted(lvl.orbit, key=rel.__getitem__):
                yield from rec(i + 1, pmul(lvl.orbit[y], rel))

        yield from rec(0, identity(self.degree))

    def enumerate_elements(self, bound: int = DEFAULT_ELEMENT_BOUND):
        if self.order() > bound:
            raise BoundExceeded(
                f"group order {self.order()} exceeds enumeration bound {bound}")
        return self.elements()

    def min_coset_rep(self, g: Perm) -> Perm:
        """The lexicographically least element of the right coset self * g."""
        w = tuple(g)
        for lvl in self._chain():
            orb = lvl.orbit
            if len(orb) == 1:
                continue
            y = min(orb, key=w.__getitem__)
            if y != lvl.base:
                w = pmul(orb[y], w)
        return w

    # -- orbits and stabilizers ------------------------------------------------

    def orbit(self, x: int) -> list[int]:
        """BFS orbit of x, in deterministic discovery order."""
        seen = {x}
        out = [x]
        queue = deque([x])
        while queue:
            y = queue.popleft()
            for s in self.generators:
                z = s[y]
                if z not in seen:
                    seen.add(z)
                    out.append(z)
                    queue.append(z)
        return out

    def orbits(self) -> list[list[int]]:
        seen = set()
        out = []
        for x in range(self.degree):
            if x not in seen:
                orb = self.orbit(x)
                seen.update(orb)
                out.append(sorted(orb))
        return out

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.degree if self.degree else True

    def point_stabilizer(self, x: int) -> "GenGroup":
        """Stabilizer of x, from sift-reduced Schreier generators."""
        if not 0 <= x < self.degree:
            raise ValueError(f"point {x} out of range")
        transversal = {x: identity(self.degree)}
        order_list = [x]
        queue = deque([x])
        while queue:
            y = queue.popleft()
            uy = transversal[y]
            for s in self.generators:
                z = s[y]
                if z not in transversal:
                    transversal[z] = pmul(uy, s)
                    order_list.append(z)
                    queue.append(z)
        stab = GenGroup(self.degree, [])
        for y in order_list:
            uy = transversal[y]
            for s in self.generators:
                schreier = pmul(pmul(uy, s), pinv(transversal[s[y]]))
                if not is_identity(schreier) and not stab.contains(schreier):
                    stab._absorb(schreier)
        expected, rem = divmod(self.order(), len(transversal))
        assert rem == 0 and stab.order() == expected, "orbit-stabilizer mismatch"
        return stab

    def subdegrees(self) -> "SubdegreeReport":
        if not self.is_transitive():
            raise NotTransitive("subdegrees need a transitive group")
        stab = self.point_stabilizer(0)
        lengths = sorted(len(o) for o in stab.orbits())
        return SubdegreeReport(self.degree, tuple(lengths))

    # -- primitivity -------------------------------------------------------------

    def is_primitive(self) -> bool:
        return self.block_system_witness() is None

    def block_system_witness(self) -> list[list[int]] | None:
        """None if primitive, else a nontrivial block system (sorted blocks)."""
        if not self.is_transitive():
            raise NotTransitive("primitivity needs a transitive group")
        n = self.degree
        if n <= 2:
            return None
        for beta in range(1, n):
            blocks = self._min_block(0, beta)
            size = len(blocks[0])
            if 1 < size < n:
                return blocks
        return None

    def _min_block(self, alpha: int, beta: int) -> list[list[int]]:
        """Finest block system in which alpha and beta share a block."""
        n = self.degree
        parent = list(range(n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra == rb:
                return None
            if ra > rb:
                ra, rb = rb, ra
            parent[rb] = ra
            return ra, rb

        queue = deque()
        if union(alpha, beta):
            queue.append((alpha, beta))
        while queue:
            a, b = queue.popleft()
            for s in self.generators:
                merged = union(s[a], s[b])
                if merged:
                    queue.append((s[a], s[b]))
        classes: dict[int, list[int]] = {}
        for x in range(n):
            classes.setdefault(find(x), []).append(x)
        return sorted(classes.values())


@dataclass(frozen=True)
class SubdegreeReport:
    degree: int
    lengths: tuple[int, ...]  # sorted, includes the trivial 1

    def __post_init__(self):
        assert sum(self.lengths) == self.degree

    def multiset(self) -> dict[int, int]:
        return dict(Counter(self.lengths))

    def __str__(self):
        parts = []
        for length, mult in sorted(Counter(self.lengths).items()):
            parts.append(f"{length}^{mult}" if mult > 1 else f"{length}")
        return ", ".join(parts)


def fixed_points(gens, n: int) -> list[int]:
    """Points fixed by every permutation in gens."""
    if isinstance(gens, GenGroup):
        gens = gens.generators
    return [x for x in range(n) if all(g[x] == x for g in gens)]


# ---------------------------------------------------------------------------
# coset actions


@dataclass
class CosetAction:
    group: GenGroup
    subgroup: GenGroup
    image: GenGroup
    reps: list[Perm]              # lex-least coset representatives; index = label
    _index: dict[Perm, int]

    def index_of(self, g: Perm) -> int:
        """Label of the coset H*g."""
        return self._index[self.subgroup.min_coset_rep(g)]

    def relabel(self, g: Perm) -> Perm:
        """The permutation induced by g on the coset labels."""
        return tuple(self.index_of(pmul(r, g)) for r in self.reps)

    def relabel_group(self, H: GenGroup, name: str | None = None) -> GenGroup:
        return GenGroup(len(self.reps), [self.relabel(g) for g in H.generators],
                        name=name)


def coset_action(G: GenGroup, H: GenGroup, *,
                 max_index: int = DEFAULT_INDEX_BOUND,
                 require_faithful: bool = True) -> CosetAction:
    """The action of G on right cosets of H, labeled breadth-first.

    Coset labels are assigned in BFS discovery order starting from H itself;
    each coset is identified by its lexicographically least element, which is
    also the stored representative.  Raises NotFaithful if the image order
    drops (the kernel is never silently quotiented out).
    """
    if not all(G.contains(g) for g in H.generators):
        raise NotASubgroup("H is not a subgroup of G")
    index, rem = divmod(G.order(), H.order())
    assert rem == 0
    if index > max_index:
        raise IndexBoundExceeded(f"index {index} exceeds bound {max_index}")
    rep0 = H.min_coset_rep(identity(G.degree))
    reps = [rep0]
    labels = {rep0: 0}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for s in G.generators:
            rep = H.min_coset_rep(pmul(reps[i], s))
            if rep not in labels:
                labels[rep] = len(reps)
                reps.append(rep)
                queue.append(len(reps) - 1)
    assert len(reps) == index, "coset BFS did not reach every coset"
    image_gens = []
    for s in G.generators:
        image_gens.append(tuple(labels[H.min_coset_rep(pmul(r, s))] for r in reps))
    image = GenGroup(index, image_gens, name=f"{G.name or 'G'} on {index} cosets")
    action = CosetAction(G, H, image, reps, labels)
    if require_faithful and image.order() != G.order():
        raise NotFaithful(
            f"coset action has kernel: image order {image.order()} < {G.order()}")
    return action


# ---------------------------------------------------------------------------
# stabilizers of arbitrary hashable objects (setwise stabilizers, normalizers)


@dataclass
class ObjectOrbit:
    stabilizer: GenGroup
    orbit_size: int
    transporter: dict          # object -> group element mapping start to it


def object_stabilizer(G: GenGroup, obj, act, *,
                      max_orbit: int = DEFAULT_INDEX_BOUND) -> ObjectOrbit:
    """Stabilizer of obj under the action act(g, obj), by Schreier generators.

    act must be a genuine group action of G on hashable objects.  The orbit
    is explored breadth-first; the stabilizer generators are sift-reduced.
    """
    transversal = {obj: identity(G.degree)}
    order_list = [obj]
    queue = deque([obj])
    while queue:
        o = queue.popleft()
        uo = transversal[o]
        for s in G.generators:
            o2 = act(s, o)
            if o2 not in transversal:
                if len(transversal) >= max_orbit:
                    raise BoundExceeded(f"object orbit exceeds bound {max_orbit}")
                transversal[o2] = pmul(uo, s)
                order_list.append(o2)
                queue.append(o2)
    stab = GenGroup(G.degree, [])
    for o in order_list:
        uo = transversal[o]
        for s in G.generators:
            schreier = pmul(pmul(uo, s), pinv(transversal[act(s, o)]))
            if not is_identity(schreier) and not stab.contains(schreier):
                stab._absorb(schreier)
    expected, rem = divmod(G.order(), len(transversal))
    assert rem == 0 and stab.order() == expected
    return ObjectOrbit(stab, len(transversal), transversal)


def act_on_point_set(g: Perm, points: frozenset) -> frozenset:
    return frozenset(g[x] for x in points)


def act_by_conjugation(g: Perm, elems: frozenset) -> frozenset:
    gi = pinv(g)
    return frozenset(pmul(pmul(gi, e), g) for e in elems)


def setwise_stabilizer(G: GenGroup, points, *,
                       max_orbit: int = DEFAULT_INDEX_BOUND) -> GenGroup:
    return object_stabilizer(G, frozenset(points), act_on_point_set,
                             max_orbit=max_orbit).stabilizer


def subgroup_element_set(S: GenGroup, bound: int = DEFAULT_ELEMENT_BOUND) -> frozenset:
    return frozenset(S.enumerate_elements(bound))


def normalizer(G: GenGroup, S: GenGroup, *,
               max_orbit: int = DEFAULT_INDEX_BOUND,
               element_bound: int = DEFAULT_ELEMENT_BOUND) -> GenGroup:
    """N_G(S), via the conjugation orbit of S's element set.

    Needs S small enough to enumerate; the orbit of conjugate subgroups is
    bounded by max_orbit, so this works even when G itself is too large to
    enumerate (the usual case: S cyclic of small order inside a big G).
    """
    elems = subgroup_element_set(S, element_bound)
    return object_stabilizer(G, elems, act_by_conjugation,
                             max_orbit=max_orbit).stabilizer
