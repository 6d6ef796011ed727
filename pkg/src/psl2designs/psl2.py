"""Constructors for PSL/PGL/PSigmaL/PGammaL(2,q) on the projective line,
the groups between PSL and PGammaL, and a catalog of subgroup representatives
(tori, dihedral groups, A4/S4/A5, subfield copies, Sylow p-subgroups) with
reproducible generator choices.

Generator conventions for the Mobius part: x -> x+1, x -> m*x with m a
generator of the squares (PSL) or of the full multiplicative group (PGL),
and x -> -1/x; semilinear kinds add the Frobenius x -> x^p.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache

from .errors import UnsupportedQ
from .gf import GF, factor_prime_power, field
from .perm import (GenGroup, Perm, normalizer, perm_order, pmul, ppow,
                   setwise_stabilizer)
from .projline import INF, ProjLine, SemilinearMap

FAMILIES = ("PSL", "PGL", "PSigmaL", "PGammaL")


@dataclass(frozen=True)
class GroupSpec:
    family: str
    q: int

    def __str__(self):
        return f"{self.family}(2,{self.q})"


_SPEC_RE = re.compile(r"^(PSL|PGL|PSigmaL|PGammaL)\(2,\s*(\d+)\)$")


def parse_group_spec(text: str) -> GroupSpec:
    m = _SPEC_RE.match(text.strip())
    if not m:
        raise ValueError(f"cannot parse group spec {text!r}")
    return GroupSpec(m.group(1), int(m.group(2)))


class LineGroup(GenGroup):
    """A group between PSL(2,q) and PGammaL(2,q) acting on PG(1,q)."""

    def __init__(self, line: ProjLine, generators, name: str,
                 outer: frozenset = frozenset()):
        super().__init__(line.npoints, generators, name=name)
        self.line = line
        self.gf = line.gf
        self.q = line.gf.q
        self.outer = outer  # subgroup of (Z_{gcd} x Z_f) this extends PSL by


def _gcd2(q: int) -> int:
    return 2 if q % 2 else 1


def psl_order(q: int) -> int:
    return q * (q * q - 1) // _gcd2(q)


def mobius_perm(line: ProjLine, a, b, c, d, frob=0) -> Perm:
    return SemilinearMap(line, a, b, c, d, frob).as_perm()


def _psl_base_gens(line: ProjLine) -> list[Perm]:
    K = line.gf
    g = K.generator
    m = K.mul(g, g) if K.q % 2 else g  # generator of the squares
    one = 1
    return [
        mobius_perm(line, one, one, 0, one),        # x -> x + 1
        mobius_perm(line, m, 0, 0, one),            # x -> m x
        mobius_perm(line, 0, K.neg(one), one, 0),   # x -> -1/x
    ]


def outer_lift(line: ProjLine, i: int, j: int) -> Perm:
    """The permutation x -> g^i * x^(p^j): diagonal part i, field part j."""
    K = line.gf
    return mobius_perm(line, K.pow(K.generator, i) if i else 1, 0, 0, 1, frob=j)


@lru_cache(maxsize=None)
def build_group(family: str, q: int) -> LineGroup:
    """Build one of PSL/PGL/PSigmaL/PGammaL(2,q) on PG(1,q)."""
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    if q < 4:
        raise UnsupportedQ(f"q = {q} < 4 (the Mobius group is not simple)")
    K = field(q)
    line = ProjLine(K)
    gens = _psl_base_gens(line)
    d0 = _gcd2(q)
    order = psl_order(q)
    outer = set()
    if family in ("PGL", "PGammaL") and d0 == 2:
        gens.append(outer_lift(line, 1, 0))
        outer.add((1, 0))
        order *= 2
    if family in ("PSigmaL", "PGammaL") and K.f > 1:
        gens.append(outer_lift(line, 0, 1))
        outer.add((0, 1))
        order *= K.f
    G = LineGroup(line, gens, f"{family}(2,{q})", frozenset(outer))
    assert G.order() == order, f"{family}(2,{q}): got order {G.order()}, want {order}"
    return G


def build_from_spec(spec: GroupSpec | str) -> LineGroup:
    if isinstance(spec, str):
        spec = parse_group_spec(spec)
    return build_group(spec.family, spec.q)


@lru_cache(maxsize=None)
def socle(q: int) -> LineGroup:
    return build_group("PSL", q)


# ---------------------------------------------------------------------------
# the lattice of groups between PSL(2,q) and PGammaL(2,q)


def _outer_group_elements(q: int) -> list[tuple[int, int]]:
    p, f = factor_prime_power(q)
    d0 = _gcd2(q)
    return [(i, j) for i in range(d0) for j in range(f)]


def _outer_closure(q: int, gens) -> frozenset:
    p, f = factor_prime_power(q)
    d0 = _gcd2(q)
    out = {(0, 0)}
    frontier = list(out)
    while frontier:
        nxt = []
        for (a, b) in frontier:
            for (c, d) in gens:
                e = ((a + c) % d0, (b + d) % f)
                if e not in out:
                    out.add(e)
                    nxt.append(e)
        frontier = nxt
    return frozenset(out)


def outer_subgroups(q: int) -> list[frozenset]:
    """All subgroups of Out(PSL(2,q)) = Z_gcd(2,q-1) x Z_f, deterministically ordered."""
    elems = _outer_group_elements(q)
    subs = {_outer_closure(q, [])}
    for a in elems:
        subs.add(_outer_closure(q, [a]))
        for b in elems:
            subs.add(_outer_closure(q, [a, b]))
    return sorted(subs, key=lambda s: (len(s), sorted(s)))


def outer_name(q: int, sub: frozenset) -> str:
    p, f = factor_prime_power(q)
    d0 = _gcd2(q)
    full = frozenset(_outer_group_elements(q))
    if len(sub) == 1:
        return f"PSL(2,{q})"
    if sub == full:
        return f"PGammaL(2,{q})"
    if sub == frozenset({(0, 0), (1, 0)}):
        return f"PGL(2,{q})"
    if sub == frozenset((0, j) for j in range(f)):
        return f"PSigmaL(2,{q})"
    labels = []
    for (i, j) in sorted(sub - {(0, 0)}):
        lbl = ("d" if i else "") + (f"f{j}" if j > 1 else "f" if j == 1 else "")
        labels.append(lbl)
    return f"PSL(2,{q}).<{','.join(labels)}>"


@lru_cache(maxsize=None)
def groups_between(q: int) -> list[LineGroup]:
    """Every G with PSL(2,q) <= G <= PGammaL(2,q), as groups on PG(1,q)."""
    line = socle(q).line
    out = []
    for sub in outer_subgroups(q):
        gens = list(socle(q).generators)
        for (i, j) in sorted(sub - {(0, 0)}):
            gens.append(outer_lift(line, i, j))
        G = LineGroup(line, gens, outer_name(q, sub), sub)
        expected = psl_order(q) * len(sub)
        assert G.order() == expected, (G.name, G.order(), expected)
        out.append(G)
    return out


def outer_lift_perms(q: int) -> list[Perm]:
    """Raw permutations for every outer element (used to fuse conjugacy classes)."""
    line = socle(q).line
    return [outer_lift(line, i, j) for (i, j) in _outer_group_elements(q)
            if (i, j) != (0, 0)]


# ---------------------------------------------------------------------------
# subgroup catalog (Dickson-style representatives inside PSL(2,q))


@dataclass(frozen=True)
class SubgroupTag:
    kind: str          # Borel, D-, D+, A4, S4, A5, PSL, PGL, C, SylowP, E, Frob
    n: int = 0         # subfield order / cyclic order / p-rank, as applicable

    def __str__(self):
        if self.kind in ("PSL", "PGL"):
            return f"{self.kind}(2,{self.n})"
        if self.kind == "C":
            return f"C{self.n}"
        if self.kind in ("E", "Frob"):
            return f"{self.kind}{self.n}"
        return self.kind


def a4_exists(q: int) -> bool:
    p, f = factor_prime_power(q)
    return (q % 2 == 1 and q > 3) or (q % 2 == 0 and f % 2 == 0)


def s4_exists(q: int) -> bool:
    return q % 2 == 1 and q % 8 in (1, 7)


def a5_exists(q: int) -> bool:
    return q >= 4 and q % 5 in (0, 1, 4)


def _closure(degree: int, gens: list[Perm], cap: int) -> set[Perm] | None:
    """Element set of <gens>, or None once it exceeds cap."""
    ident = tuple(range(degree))
    elems = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = pmul(x, g)
                if y not in elems:
                    if len(elems) >= cap:
                        return None
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    return elems


def scan_element_of_order(X: GenGroup, n: int) -> Perm:
    """First element of order n in lexicographic enumeration order."""
    for g in X.elements():
        if perm_order(g) == n:
            return g
    raise ValueError(f"no element of order {n}")


def _elements_of_orders(X: GenGroup, wanted: set[int]) -> dict[int, list[Perm]]:
    out: dict[int, list[Perm]] = {n: [] for n in wanted}
    for g in X.elements():
        o = perm_order(g)
        if o in out:
            out[o].append(g)
    return out


def _scan_two_three_subgroup(X: GenGroup, target: int, order_set: set[int],
                             must_contain: set[int]) -> GenGroup:
    """First pair (a, b) with |a|=2, |b|=3 whose closure has the target order
    and element-order profile.  Deterministic: elements in enumeration order."""
    tables = _elements_of_orders(X, {2, 3})
    for a in tables[2]:
        for b in tables[3]:
            elems = _closure(X.degree, [a, b], target + 1)
            if elems is None or len(elems) != target:
                continue
            orders = {perm_order(e) for e in elems}
            if orders <= order_set | {1} and must_contain <= orders:
                H = GenGroup(X.degree, [a, b])
                assert H.order() == target
                return H
    raise ValueError(f"no subgroup of order {target} found by (2,3)-scan")


class Catalog:
    """Subgroup representatives of X = PSL(2,q), built on demand and cached."""

    def __init__(self, X: LineGroup):
        assert not X.outer, "catalog wants the socle PSL(2,q)"
        self.X = X
        self.q = X.q
        K = X.gf
        self.p, self.f = K.p, K.f
        self.d0 = _gcd2(self.q)
        self._cache: dict[SubgroupTag, GenGroup] = {}

    # order formulas -------------------------------------------------------

    def order_of(self, tag: SubgroupTag) -> int:
        q, d0 = self.q, self.d0
        if tag.kind == "Borel":
            return q * (q - 1) // d0
        if tag.kind == "D-":
            return 2 * (q - 1) // d0
        if tag.kind == "D+":
            return 2 * (q + 1) // d0
        if tag.kind == "A4":
            return 12
        if tag.kind == "S4":
            return 24
        if tag.kind == "A5":
            return 60
        if tag.kind == "PSL":
            return psl_order(tag.n)
        if tag.kind == "PGL":
            return tag.n * (tag.n ** 2 - 1)
        if tag.kind == "C":
            return tag.n
        if tag.kind == "SylowP":
            return self.p ** self.f
        raise ValueError(tag)

    def subfield_tags(self) -> list[SubgroupTag]:
        tags = []
        for s in range(1, self.f):
            if self.f % s:
                continue
            q0 = self.p ** s
            if q0 >= 3 and self.q % 2 == 1:
                tags.append(SubgroupTag("PSL", q0))
                if (self.f // s) % 2 == 0:
                    tags.append(SubgroupTag("PGL", q0))
            elif q0 >= 4 and self.q % 2 == 0:
                tags.append(SubgroupTag("PSL", q0))  # = PGL(2,q0) for even q0
        return tags

    # builders ---------------------------------------------------------------

    def build(self, tag: SubgroupTag) -> GenGroup:
        if tag not in self._cache:
            self._cache[tag] = self._build(tag)
        return self._cache[tag]

    def _build(self, tag: SubgroupTag) -> GenGroup:
        X, K, line = self.X, self.X.gf, self.X.line
        q, d0 = self.q, self.d0
        if tag.kind == "Borel":
            H = X.point_stabilizer(INF)
        elif tag.kind == "D-":
            H = setwise_stabilizer(X, {INF, 1})  # {infinity, 0}
        elif tag.kind == "D+":
            c = scan_element_of_order(X, (q + 1) // d0)
            H = normalizer(X, GenGroup(X.degree, [c]))
        elif tag.kind == "A4":
            H = _scan_two_three_subgroup(X, 12, {2, 3}, {2, 3})
        elif tag.kind == "S4":
            H = _scan_two_three_subgroup(X, 24, {2, 3, 4}, {3, 4})
        elif tag.kind == "A5":
            H = _scan_two_three_subgroup(X, 60, {2, 3, 5}, {3, 5})
        elif tag.kind in ("PSL", "PGL"):
            sub = field(tag.n)
            emb = sub.embed_into(K)
            g0 = sub.generator
            mult = sub.mul(g0, g0) if (tag.kind == "PSL" and tag.n % 2) else g0
            gens = [
                mobius_perm(line, 1, emb[1], 0, 1),
                mobius_perm(line, emb[mult], 0, 0, 1),
                mobius_perm(line, 0, K.neg(emb[1]), emb[1], 0),
            ]
            H = GenGroup(X.degree, gens)
        elif tag.kind == "C":
            H = GenGroup(X.degree, [self._cyclic_gen(tag.n)])
        elif tag.kind == "SylowP":
            gens = [mobius_perm(line, 1, self.p ** i, 0, 1) for i in range(self.f)]
            H = GenGroup(X.degree, gens)
        else:
            raise ValueError(tag)
        want = self.order_of(tag)
        assert H.order() == want, (str(tag), H.order(), want)
        assert all(X.contains(g) for g in H.generators)
        H.name = f"{tag} in {X.name}"
        return H

    def _cyclic_gen(self, n: int) -> Perm:
        q, d0, K, line = self.q, self.d0, self.X.gf, self.X.line
        if n == 1:
            return tuple(range(self.X.degree))
        if (q - 1) // d0 % n == 0:
            m = K.pow(K.generator, d0)  # split torus generator, order (q-1)/d0
            c = mobius_perm(line, m, 0, 0, 1)
            return ppow(c, (q - 1) // d0 // n)
        if (q + 1) // d0 % n == 0:
            c = scan_element_of_order(self.X, (q + 1) // d0)
            return ppow(c, (q + 1) // d0 // n)
        if n == self.p:
            return mobius_perm(line, 1, 1, 0, 1)
        return scan_element_of_order(self.X, n)

    def dihedral(self, z: int) -> GenGroup:
        """A dihedral subgroup of order 2z (z >= 2), torus flavor chosen by z."""
        X, K, line = self.X, self.X.gf, self.X.line
        q, d0 = self.q, self.d0
        if z >= 2 and (q - 1) // d0 % z == 0:
            c = self._cyclic_gen(z)
            w = mobius_perm(line, 0, K.neg(1), 1, 0)  # inverts the split torus
            H = GenGroup(X.degree, [c, w])
        elif z >= 2 and (q + 1) // d0 % z == 0:
            big = self.build(SubgroupTag("D+"))
            c = self._cyclic_gen(z)
            w = next(g for g in big.elements()
                     if perm_order(g) == 2 and pmul(pmul(g, c), g) == ppow(c, z - 1))
            H = GenGroup(X.degree, [c, w])
        else:
            raise ValueError(f"no dihedral of order {2 * z} in {X.name}")
        assert H.order() == 2 * z, (z, H.order())
        return H

    def of_order(self, m: int) -> list[tuple[SubgroupTag, GenGroup]]:
        """One representative per catalog type of order m, in tag-enum order."""
        q, d0, p, f = self.q, self.d0, self.p, self.f
        found = []
        candidates: list[SubgroupTag] = [SubgroupTag("Borel"), SubgroupTag("D-"),
                                         SubgroupTag("D+")]
        if a4_exists(q):
            candidates.append(SubgroupTag("A4"))
        if s4_exists(q):
            candidates.append(SubgroupTag("S4"))
        if a5_exists(q):
            candidates.append(SubgroupTag("A5"))
        candidates.extend(self.subfield_tags())
        for tag in candidates:
            if self.order_of(tag) == m:
                found.append((tag, self.build(tag)))
        if m > 1 and (m == p or (q - 1) // d0 % m == 0 or (q + 1) // d0 % m == 0):
            tag = SubgroupTag("C", m)
            found.append((tag, self.build(tag)))
        if m == p ** f and f > 1:
            tag = SubgroupTag("SylowP")
            found.append((tag, self.build(tag)))
        return found


@lru_cache(maxsize=None)
def catalog(q: int) -> Catalog:
    return Catalog(socle(q))


def dickson_subgroups(X: LineGroup, target_order: int) -> list[GenGroup]:
    """One representative per catalog subgroup type of the given order."""
    return [H for _, H in catalog(X.q).of_order(target_order)]
