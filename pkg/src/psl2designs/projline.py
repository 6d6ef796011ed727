"""The projective line PG(1,q): points, semilinear maps, Baer sublines.

Points are indexed 0..q: index 0 is the point at infinity (1:0), index
1 + a is the affine point (a:1) for a field element a.  The index is the
serialized form of a point.  Canonical homogeneous pairs normalize the last
nonzero coordinate to 1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import NotASquare
from .gf import GF, field

INF = 0  # index of the point at infinity


@dataclass(frozen=True)
class ProjLine:
    gf: GF

    @property
    def q(self) -> int:
        return self.gf.q

    @property
    def npoints(self) -> int:
        return self.gf.q + 1

    def points(self) -> range:
        """All point indices: infinity first, then affine points in field order."""
        return range(self.npoints)

    def pair(self, i: int) -> tuple[int, int]:
        """Canonical homogeneous pair (x0, x1) for point index i."""
        return (1, 0) if i == INF else (i - 1, 1)

    def index(self, x0: int, x1: int) -> int:
        """Point index of the homogeneous pair (x0, x1), not both zero."""
        K = self.gf
        if x1 == 0:
            if x0 == 0:
                raise ValueError("(0, 0) is not a projective point")
            return INF
        return 1 + K.mul(x0, K.inv(x1))


@dataclass(frozen=True)
class SemilinearMap:
    """x -> (a x^s + b) / (c x^s + d) with s = p^frob; det = ad - bc != 0."""

    line: ProjLine
    a: int
    b: int
    c: int
    d: int
    frob: int = 0

    def __post_init__(self):
        K = self.line.gf
        det = K.sub(K.mul(self.a, self.d), K.mul(self.b, self.c))
        if det == 0:
            raise ValueError("singular matrix")
        object.__setattr__(self, "frob", self.frob % K.f)

    def apply(self, i: int) -> int:
        K = self.line.gf
        x0, x1 = self.line.pair(i)
        if self.frob:
            x0 = K.frob(x0, self.frob)
            x1 = K.frob(x1, self.frob)
        y0 = K.add(K.mul(self.a, x0), K.mul(self.b, x1))
        y1 = K.add(K.mul(self.c, x0), K.mul(self.d, x1))
        return self.line.index(y0, y1)

    def compose(self, other: "SemilinearMap") -> "SemilinearMap":
        """The map 'apply other, then self': matrix A . B^(p^e_self)."""
        K = self.line.gf
        e = self.frob
        oa, ob, oc, od = (K.frob(t, e) for t in (other.a, other.b, other.c, other.d))
        return SemilinearMap(
            self.line,
            K.add(K.mul(self.a, oa), K.mul(self.b, oc)),
            K.add(K.mul(self.a, ob), K.mul(self.b, od)),
            K.add(K.mul(self.c, oa), K.mul(self.d, oc)),
            K.add(K.mul(self.c, ob), K.mul(self.d, od)),
            (self.frob + other.frob) % K.f,
        )

    def as_perm(self) -> tuple[int, ...]:
        return tuple(self.apply(i) for i in self.line.points())


def mobius_through(line: ProjLine, a: int, b: int, c: int) -> SemilinearMap:
    """The unique Mobius map sending (infinity, 0, 1) to points (a, b, c)."""
    K = line.gf
    a0, a1 = line.pair(a)
    b0, b1 = line.pair(b)
    c0, c1 = line.pair(c)
    # columns lam*(a0,a1), mu*(b0,b1) with lam*A + mu*B = C
    det = K.sub(K.mul(a0, b1), K.mul(a1, b0))
    lam = K.div(K.sub(K.mul(c0, b1), K.mul(c1, b0)), det)
    mu = K.div(K.sub(K.mul(a0, c1), K.mul(a1, c0)), det)
    return SemilinearMap(line, K.mul(lam, a0), K.mul(mu, b0),
                         K.mul(lam, a1), K.mul(mu, b1))


def standard_baer_subline(line: ProjLine) -> tuple[int, ...]:
    """PG(1, sqrt(q)) inside PG(1, q): infinity plus the subfield, as indices."""
    K = line.gf
    if K.f % 2:
        raise NotASquare(f"q = {K.q} is not a square")
    sub = field(int(round(K.q ** 0.5)))
    emb = sub.embed_into(K)
    pts = [INF] + sorted(1 + emb[a] for a in sub.elements())
    return tuple(sorted(pts))


def baer_subline_through(line: ProjLine, a: int, b: int, c: int) -> frozenset[int]:
    """The unique Baer subline through three distinct points."""
    if len({a, b, c}) != 3:
        raise ValueError("points must be pairwise distinct")
    base = standard_baer_subline(line)
    m = mobius_through(line, a, b, c)
    return frozenset(m.apply(i) for i in base)


def all_baer_sublines(line: ProjLine) -> list[tuple[int, ...]]:
    """Every Baer subline of PG(1,q), deduplicated, in lexicographic order."""
    seen = set()
    for a, b, c in itertools.combinations(line.points(), 3):
        seen.add(tuple(sorted(baer_subline_through(line, a, b, c))))
    return sorted(seen)
