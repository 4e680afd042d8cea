"""Rational convex polygons, lattice width, and the base triangles.

The lattice width of a compact set is the minimum over nonzero integer
directions xi of the spread max <x' - x, xi>.  For each Markov triple the
associated base triangle has area 1/2, integral affine perimeter 3 (this is
the Markov equation in disguise), edges of affine length a^2/(abc),
b^2/(abc), c^2/(abc), and lattice width bc/a realized by xi = (0, 1) in the
normal form used here.  All geometry is exact over Fraction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .capacity import Capacity, width
from .errors import VerificationError
from .markov import MarkovTriple


@dataclass(frozen=True)
class RationalPoint:
    x: Fraction
    y: Fraction

    def __init__(self, x, y):
        object.__setattr__(self, "x", Fraction(x))
        object.__setattr__(self, "y", Fraction(y))

    def __iter__(self):
        return iter((self.x, self.y))

    def __str__(self) -> str:
        return f"({self.x}, {self.y})"


def _cross(o: RationalPoint, p: RationalPoint, q: RationalPoint) -> Fraction:
    return (p.x - o.x) * (q.y - o.y) - (q.x - o.x) * (p.y - o.y)


@dataclass(frozen=True)
class LatticePolygon:
    """Convex polygon with rational vertices, counterclockwise, no three
    collinear."""

    vertices: tuple[RationalPoint, ...]

    def __init__(self, vertices):
        pts = tuple(
            v if isinstance(v, RationalPoint) else RationalPoint(*v)
            for v in vertices
        )
        object.__setattr__(self, "vertices", pts)
        n = len(pts)
        if n < 3:
            raise ValueError("a polygon needs at least 3 vertices")
        if len({(p.x, p.y) for p in pts}) != n:
            raise ValueError("duplicate vertices")
        for i in range(n):
            turn = _cross(pts[i], pts[(i + 1) % n], pts[(i + 2) % n])
            if turn <= 0:
                raise ValueError(
                    "vertices must be strictly convex counterclockwise"
                )

    def signed_area(self) -> Fraction:
        total = Fraction(0)
        pts = self.vertices
        for i in range(len(pts)):
            p, q = pts[i], pts[(i + 1) % len(pts)]
            total += p.x * q.y - q.x * p.y
        return total / 2

    def edges(self) -> list[tuple[RationalPoint, RationalPoint]]:
        pts = self.vertices
        return [(pts[i], pts[(i + 1) % len(pts)]) for i in range(len(pts))]

    def to_json(self) -> list:
        return [[str(p.x), str(p.y)] for p in self.vertices]

    @classmethod
    def from_json(cls, obj) -> "LatticePolygon":
        return cls([RationalPoint(Fraction(x), Fraction(y)) for x, y in obj])


@dataclass(frozen=True)
class UnimodularMap:
    """x -> M x + v with M an integer matrix of determinant +-1."""

    m00: int
    m01: int
    m10: int
    m11: int
    tx: Fraction = Fraction(0)
    ty: Fraction = Fraction(0)

    def __post_init__(self):
        if abs(self.m00 * self.m11 - self.m01 * self.m10) != 1:
            raise ValueError("matrix must have determinant +-1")

    @classmethod
    def shear(cls, k: int) -> "UnimodularMap":
        return cls(1, k, 0, 1)

    def apply_point(self, p: RationalPoint) -> RationalPoint:
        return RationalPoint(
            self.m00 * p.x + self.m01 * p.y + self.tx,
            self.m10 * p.x + self.m11 * p.y + self.ty,
        )

    def apply(self, polygon: LatticePolygon) -> LatticePolygon:
        pts = [self.apply_point(p) for p in polygon.vertices]
        if self.m00 * self.m11 - self.m01 * self.m10 < 0:
            pts.reverse()  # keep counterclockwise orientation
        return LatticePolygon(pts)


def _primitive(vx: Fraction, vy: Fraction) -> tuple[int, int, Fraction]:
    """Write (vx, vy) = s * d with d a primitive integer vector, s > 0."""
    den = vx.denominator * vy.denominator // math.gcd(
        vx.denominator, vy.denominator
    )
    nx = int(vx * den)
    ny = int(vy * den)
    g = math.gcd(abs(nx), abs(ny))
    if g == 0:
        raise ValueError("zero segment has no direction")
    return nx // g, ny // g, Fraction(g, den)


def affine_length(p: RationalPoint, q: RationalPoint) -> Capacity:
    """Scale factor of q - p against the primitive integer vector in its
    direction."""
    _, _, s = _primitive(q.x - p.x, q.y - p.y)
    return s


def width_along(polygon: LatticePolygon, xi: tuple[int, int]) -> Capacity:
    """Support-function spread max <x' - x, xi>; symmetric in xi -> -xi."""
    if xi == (0, 0):
        raise ValueError("direction must be nonzero")
    values = [p.x * xi[0] + p.y * xi[1] for p in polygon.vertices]
    return max(values) - min(values)


def _euclidean_min_width_sq(polygon: LatticePolygon) -> Fraction:
    # the Euclidean width of a convex polygon is minimized at an edge normal
    best = None
    for p, q in polygon.edges():
        nx, ny = -(q.y - p.y), q.x - p.x
        values = [v.x * nx + v.y * ny for v in polygon.vertices]
        spread = max(values) - min(values)
        wsq = spread * spread / (nx * nx + ny * ny)
        if best is None or wsq < best:
            best = wsq
    return best


def lattice_width(polygon: LatticePolygon) -> tuple[Capacity, tuple[int, int]]:
    """Exact lattice width and a minimizing primitive direction.

    Any direction xi satisfies width_along(xi) >= |xi| * W with W the minimal
    Euclidean width, so directions with |xi|^2 W^2 > best^2 cannot improve on
    the current best and the search over primitive xi in the upper half-plane
    is finite.  Ties are broken lexicographically.
    """
    best = width_along(polygon, (1, 0))
    best_xi = (1, 0)
    w01 = width_along(polygon, (0, 1))
    if w01 < best or (w01 == best and (0, 1) < best_xi):
        best, best_xi = w01, (0, 1)
    wsq = _euclidean_min_width_sq(polygon)
    if wsq == 0:
        raise ValueError("degenerate polygon")
    q = 1
    while Fraction(q * q) * wsq <= best * best:
        p_limit = math.isqrt(int(best * best / wsq)) + 1
        for p in range(-p_limit, p_limit + 1):
            if math.gcd(abs(p), q) != 1:
                continue
            if Fraction(p * p + q * q) * wsq > best * best:
                continue
            w = width_along(polygon, (p, q))
            if w < best or (w == best and (p, q) < best_xi):
                best, best_xi = w, (p, q)
        q += 1
    return best, best_xi


@dataclass(frozen=True)
class EdgeData:
    direction: tuple[int, int]
    length: Fraction


@dataclass(frozen=True)
class ViannaTriangle:
    """Base triangle of a Markov triple in the normal form with its longest
    edge on the x-axis from (0,0) to (ell, 0) and apex at (t, h).

    Always has area 1/2, affine perimeter 3, h * ell = 1, and edge lengths
    lam*a^2, lam*b^2, lam*c^2 with lam = 1/(abc).
    """

    triple: MarkovTriple
    vertices: tuple[RationalPoint, RationalPoint, RationalPoint]
    ell: Fraction
    h: Fraction
    t: Fraction
    lam: Fraction
    u: int
    edge_data: tuple[EdgeData, EdgeData, EdgeData]

    def __post_init__(self):
        a, b, c = self.triple
        lam = Fraction(1, a * b * c)
        if self.lam != lam:
            raise ValueError("lam must equal 1/(abc)")
        if self.t != Fraction(self.u * c, a * b):
            raise ValueError("apex abscissa must equal u*c/(ab)")
        if self.h * self.ell != 1:
            raise VerificationError(f"h*ell != 1 for {self.triple}")
        if self.polygon().signed_area() != Fraction(1, 2):
            raise VerificationError(f"area != 1/2 for {self.triple}")
        lengths = sorted(e.length for e in self.edge_data)
        expected = sorted((lam * a * a, lam * b * b, lam * c * c))
        if lengths != expected:
            raise VerificationError(f"edge lengths off for {self.triple}")
        if sum(lengths) != 3:
            raise VerificationError(f"perimeter != 3 for {self.triple}")

    def polygon(self) -> LatticePolygon:
        return LatticePolygon(self.vertices)

    def apex(self) -> RationalPoint:
        return self.vertices[2]


def _edge_data(vertices) -> tuple[EdgeData, ...]:
    out = []
    for i in range(len(vertices)):
        p = vertices[i]
        q = vertices[(i + 1) % len(vertices)]
        dx, dy, s = _primitive(q.x - p.x, q.y - p.y)
        out.append(EdgeData((dx, dy), s))
    return tuple(out)


def _build_triangle(triple: MarkovTriple, t: Fraction, u: int) -> ViannaTriangle:
    a, b, c = triple
    ell = Fraction(a, b * c)
    h = Fraction(b * c, a)
    vertices = (
        RationalPoint(0, 0),
        RationalPoint(ell, 0),
        RationalPoint(t, h),
    )
    return ViannaTriangle(
        triple=triple,
        vertices=vertices,
        ell=ell,
        h=h,
        t=t,
        lam=Fraction(1, a * b * c),
        u=u,
        edge_data=_edge_data(vertices),
    )


def vianna_triangle(triple: MarkovTriple) -> ViannaTriangle:
    """Normal-form base triangle for a Markov triple.

    The origin-side slant edge is lam*c^2 times the primitive vector
    (u, b^2), which forces u*c^2 = a^2 (mod b^2); the least nonnegative
    residue is taken.  Any residue gives a unimodularly equivalent triangle,
    so every verified quantity is independent of this choice.
    """
    a, b, c = triple
    if b == 1:
        u = 0
    else:
        u = (a * a * pow(c, -2, b * b)) % (b * b)
    t = Fraction(u * c, a * b)
    return _build_triangle(triple, t, u)


def _inner_normals(polygon: LatticePolygon) -> list[tuple[int, int, Fraction]]:
    """Primitive inner normal and support value min <n, .> per edge."""
    out = []
    for p, q in polygon.edges():
        nx, ny, _ = _primitive(-(q.y - p.y), q.x - p.x)
        support = min(v.x * nx + v.y * ny for v in polygon.vertices)
        out.append((nx, ny, support))
    return out


def central_point(tri: ViannaTriangle) -> RationalPoint:
    """The point at integral affine distance 1/3 from all three edges.

    Affine distance to an edge is <n, x> - min <n, .> for the primitive
    inner normal n.  Two edges determine the point; the third equation is
    verified by substitution and can never fail for a valid base triangle.
    """
    normals = _inner_normals(tri.polygon())
    third = Fraction(1, 3)
    (a0, b0, s0), (a1, b1, s1), (a2, b2, s2) = normals
    det = a0 * b1 - a1 * b0
    r0, r1 = s0 + third, s1 + third
    x = Fraction(r0 * b1 - r1 * b0, det)
    y = Fraction(a0 * r1 - a1 * r0, det)
    if a2 * x + b2 * y - s2 != third:
        raise VerificationError(
            f"no point at affine distance 1/3 from all edges of {tri.triple}"
        )
    return RationalPoint(x, y)


def shear_normalize(tri: ViannaTriangle) -> tuple[ViannaTriangle, UnimodularMap]:
    """Shear by the smallest |k| placing the apex strictly over the base.

    Rejects the triple (1,1,1), whose apex can never move strictly inside
    (its width equals its base).  The lattice width is unchanged.
    """
    if tri.triple == MarkovTriple(1, 1, 1):
        raise ValueError("(1,1,1) cannot be shear-normalized")
    for k in range(0, 2 * int(tri.ell / tri.h) + 3):
        for signed in ((k,) if k == 0 else (k, -k)):
            t_new = tri.t + signed * tri.h
            if 0 < t_new < tri.ell:
                shear = UnimodularMap.shear(signed)
                return _build_triangle(
                    tri.triple, t_new, tri.u + signed * tri.triple.b ** 2
                ), shear
    raise VerificationError(f"no shear normalizes {tri.triple}")


def inscribed_right_triangle(tri: ViannaTriangle, eps: Fraction) -> bool:
    """Whether an axis-aligned isoceles right triangle with legs h - eps/2
    fits strictly inside a shear-normalized base triangle.

    The horizontal leg sits on y = eps/4 starting at the foot of the apex,
    extending away from the nearer base corner (mirrored when the apex lies
    over the right half); containment is decided by exact half-plane tests.
    """
    eps = Fraction(eps)
    if not 0 < tri.t < tri.ell:
        raise ValueError("triangle must be shear-normalized first")
    if not 0 < eps < tri.h:
        raise ValueError("need 0 < eps < h")
    leg = tri.h - eps / 2
    y0 = eps / 4
    sign = 1 if tri.t <= tri.ell / 2 else -1
    corners = (
        RationalPoint(tri.t, y0),
        RationalPoint(tri.t + sign * leg, y0),
        RationalPoint(tri.t, y0 + leg),
    )
    normals = _inner_normals(tri.polygon())
    return all(
        nx * p.x + ny * p.y > s for (nx, ny, s) in normals for p in corners
    )


def check_alg_lemma(t: MarkovTriple) -> bool:
    """Exact form of ell > 2h for the base triangle: a^2 > 2 b^2 c^2.

    False exactly at (1,1,1)."""
    return t.a * t.a > 2 * t.b * t.b * t.c * t.c


def check_width_inequality_failure(t: MarkovTriple) -> bool:
    """Whether the base triangle's lattice width drops below 1.

    The ambient width is 1, so a value < 1 shows the toric width bound does
    not survive on these triangles; true for every triple except (1,1,1),
    which is rejected."""
    if t == MarkovTriple(1, 1, 1):
        raise ValueError("(1,1,1) is the equality case; compare others")
    value, _ = lattice_width(vianna_triangle(t).polygon())
    return value < 1


def lattice_width_equals_capacity(t: MarkovTriple) -> bool:
    """lattice_width of the base triangle == bc/a, with minimizer (0, 1)."""
    value, xi = lattice_width(vianna_triangle(t).polygon())
    return value == width(t) and xi == (0, 1)
