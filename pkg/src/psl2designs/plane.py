"""PG(2,q) for even q: conic, nucleus, regular hyperoval, line classes.

Points and lines are canonical homogeneous triples over GF(q) (last nonzero
coordinate scaled to 1); incidence is a zero dot product.  The conic is the
standard one, C = {(1, t, t^2)} + {(0,0,1)}, whose nucleus for even q is
N = (0,1,0); J = C + {N} is the regular hyperoval.

The Mobius group acts on the plane through the induced maps on conic
parameters: in characteristic 2 the matrix [[a,b],[c,d]] acting by
t -> (at+b)/(ct+d) induces on (X0, X1, X2) = (v^2, uv, u^2) the matrix with
rows (d^2, 0, c^2), (bd, ad+bc, ac), (b^2, 0, a^2).  This fixes J, which is
how the external-line action of PSL(2,q) is realized without searching
PGL(3,q).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .errors import BoundExceeded, PointOnHyperoval, UnsupportedQ
from .gf import GF, field
from .perm import GenGroup, Perm

Triple = tuple[int, int, int]


def canonical(K: GF, t: Triple) -> Triple:
    if not any(t):
        raise ValueError("zero triple")
    last = max(i for i in range(3) if t[i])
    inv = K.inv(t[last])
    return tuple(K.mul(x, inv) for x in t)


@lru_cache(maxsize=None)
def plane_points(q: int) -> tuple[Triple, ...]:
    K = field(q)
    pts = [(1, 0, 0)]
    pts += [(x0, 1, 0) for x0 in K.elements()]
    pts += [(x0, x1, 1) for x0 in K.elements() for x1 in K.elements()]
    assert len(pts) == q * q + q + 1
    return tuple(sorted(pts))


plane_lines = plane_points  # self-dual coordinates: same canonical triples


def incident(K: GF, point: Triple, line: Triple) -> bool:
    s = 0
    for a, b in zip(point, line):
        s = K.add(s, K.mul(a, b))
    return s == 0


@dataclass(frozen=True)
class HyperovalModel:
    K: GF

    @property
    def q(self) -> int:
        return self.K.q

    @property
    def conic(self) -> frozenset[Triple]:
        return frozenset([(0, 0, 1)] + [canonical(self.K, (1, t, self.K.mul(t, t)))
                                        for t in self.K.elements()])

    @property
    def nucleus(self) -> Triple:
        return (0, 1, 0)

    @property
    def hyperoval(self) -> frozenset[Triple]:
        return self.conic | {self.nucleus}


def hyperoval_model(q: int) -> HyperovalModel:
    K = field(q)
    if K.p != 2:
        raise UnsupportedQ(f"q = {q} is odd; this construction wants even q")
    return HyperovalModel(K)


def conic_meet_count(model: HyperovalModel, line: Triple) -> int:
    """How many points of the conic lie on the line, by exact root counting."""
    K = model.K
    a, b, c = line  # a x0 + b x1 + c x2 = 0
    count = 0
    if c == 0:
        count += 1  # the conic point (0,0,1)
    # affine conic points (1, t, t^2): c t^2 + b t + a = 0
    if c == 0 and b == 0:
        pass  # a != 0: no affine solutions
    elif c == 0:
        count += 1  # single root t = a/b
    elif b == 0:
        count += 1  # t^2 = a/c has exactly one root (Frobenius is bijective)
    else:
        # substitute t = (b/c)s: s^2 + s = a c / b^2; solvable iff trace 0
        d = K.mul(K.mul(a, c), K.inv(K.mul(b, b)))
        if d == 0:
            count += 2  # roots 0 and b/c
        elif K.trace(d) == 0:
            count += 2
    return count


def classify_line(model: HyperovalModel, line: Triple) -> tuple[str, str]:
    """(class vs conic, class vs hyperoval): secant / tangent / external."""
    n = conic_meet_count(model, line)
    conic_class = {2: "secant", 1: "tangent", 0: "external"}[n]
    on_nucleus = line[1] == 0  # <(0,1,0), line> = line[1]
    m = n + (1 if on_nucleus else 0)
    assert m in (0, 2), f"line meets hyperoval in {m} points"
    return conic_class, ("secant" if m == 2 else "external")


def external_lines(model: HyperovalModel) -> list[Triple]:
    out = [ln for ln in plane_lines(model.q)
           if classify_line(model, ln)[1] == "external"]
    assert len(out) == model.q * (model.q - 1) // 2
    return out


def external_pencil(model: HyperovalModel, point: Triple) -> list[Triple]:
    """The q/2 external lines through a point off the hyperoval."""
    if point in model.hyperoval:
        raise PointOnHyperoval(f"{point} lies on the hyperoval")
    K = model.K
    out = [ln for ln in external_lines(model) if incident(K, point, ln)]
    assert len(out) == model.q // 2
    return out


def lines_through(model: HyperovalModel, point: Triple) -> list[Triple]:
    K = model.K
    return [ln for ln in plane_lines(model.q) if incident(K, point, ln)]


# ---------------------------------------------------------------------------
# the induced action on external lines


def induced_point_matrix(K: GF, a: int, b: int, c: int, d: int):
    """3x3 matrix on plane points induced by the Mobius map (a,b;c,d), char 2."""
    m = K.mul
    ad_bc = K.add(m(a, d), m(b, c))
    return (
        (m(d, d), 0, m(c, c)),
        (m(b, d), ad_bc, m(a, c)),
        (m(b, b), 0, m(a, a)),
    )


def _mat_vec(K: GF, M, v: Triple) -> Triple:
    return tuple(
        K.add(K.add(K.mul(row[0], v[0]), K.mul(row[1], v[1])), K.mul(row[2], v[2]))
        for row in M)


def _mat_inv3(K: GF, M):
    """Adjugate-based inverse of a 3x3 matrix over GF(q)."""
    m = K.mul
    a, b, c = M[0]
    d, e, f = M[1]
    g, h, i = M[2]
    A = K.sub(m(e, i), m(f, h))
    B = K.sub(m(f, g), m(d, i))
    C = K.sub(m(d, h), m(e, g))
    det = K.add(K.add(m(a, A), m(b, B)), m(c, C))
    di = K.inv(det)
    adj = (
        (A, K.sub(m(c, h), m(b, i)), K.sub(m(b, f), m(c, e))),
        (B, K.sub(m(a, i), m(c, g)), K.sub(m(c, d), m(a, f))),
        (C, K.sub(m(b, g), m(a, h)), K.sub(m(a, e), m(b, d))),
    )
    return tuple(tuple(m(x, di) for x in row) for row in adj)


def line_image_linear(K: GF, M, line: Triple) -> Triple:
    """Image of a line under the point map M: l -> l . M^-1, canonicalized."""
    Minv = _mat_inv3(K, M)
    out = tuple(
        K.add(K.add(K.mul(line[0], Minv[0][j]), K.mul(line[1], Minv[1][j])),
              K.mul(line[2], Minv[2][j]))
        for j in range(3))
    return canonical(K, out)


def line_image_frobenius(K: GF, line: Triple, e: int = 1) -> Triple:
    return canonical(K, tuple(K.frob(x, e) for x in line))


def external_line_action(q: int, *, max_q: int = 16) -> tuple[GenGroup, list[Triple]]:
    """PSL(2,q) acting on external lines of the hyperoval; degree q(q-1)/2.

    Only built in full for small q; for large q use
    frobenius_fixed_external_lines, which never builds the group.
    """
    if q > max_q:
        raise BoundExceeded(f"q = {q} exceeds external-action bound {max_q}")
    model = hyperoval_model(q)
    K = model.K
    ext = external_lines(model)
    index = {ln: i for i, ln in enumerate(ext)}
    g = K.generator
    mats = [
        induced_point_matrix(K, 1, 1, 0, 1),   # t -> t + 1
        induced_point_matrix(K, g, 0, 0, 1),   # t -> g t
        induced_point_matrix(K, 0, 1, 1, 0),   # t -> 1/t
    ]
    for M in mats:  # the induced maps must fix the hyperoval
        assert {canonical(K, _mat_vec(K, M, P)) for P in model.hyperoval} \
            == model.hyperoval
    gens = []
    for M in mats:
        gens.append(tuple(index[line_image_linear(K, M, ln)] for ln in ext))
    G = GenGroup(len(ext), gens, name=f"PSL(2,{q}) on external lines")
    from .psl2 import psl_order
    assert G.order() == psl_order(q)
    return G, ext


def frobenius_fixed_external_lines(q: int) -> int:
    """Number of external lines fixed by the Frobenius collineation x -> x^2."""
    model = hyperoval_model(q)
    K = model.K
    count = 0
    for ln in external_lines(model):
        if line_image_frobenius(K, ln) == ln:
            count += 1
    return count
