"""Picard-lattice bookkeeping for blow-ups of the plane, plus small
projective-plane point configurations up to PGL_3.

Classes live in Pic = Z H + Z E_1 + ... + Z E_r with H^2 = 1, E_i^2 = -1,
everything else orthogonal, and K = -3H + E_1 + ... + E_r.  The blow-up of
the seven F_2-points of the plane is the motivating configuration: its seven
coordinate-triple lines give seven pairwise disjoint (-2)-classes, and the
only exceptional classes meeting all of them nonnegatively are the E_i
themselves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .smallfields import GF, UnsupportedFieldSizeError


@dataclass(frozen=True)
class LatticeClass:
    """d*H - sum m_i E_i, stored as (d, (m_1, ..., m_r))."""

    d: int
    m: tuple

    def __post_init__(self):
        object.__setattr__(self, "m", tuple(self.m))

    def dot(self, other: "LatticeClass") -> int:
        if len(self.m) != len(other.m):
            raise ValueError("classes live in different lattices")
        return self.d * other.d - sum(a * b for a, b in zip(self.m, other.m))

    @property
    def self_intersection(self) -> int:
        return self.d * self.d - sum(a * a for a in self.m)

    @property
    def k_degree(self) -> int:
        """Pairing with the canonical class -3H + sum E_i."""
        return -3 * self.d + sum(self.m)


@dataclass(frozen=True)
class PicLattice:
    """Pic of the plane blown up in r points, 1 <= r <= 8."""

    r: int

    def __post_init__(self):
        if not (1 <= self.r <= 8):
            raise ValueError("rank parameter r must be in 1..8")

    @property
    def canonical(self) -> LatticeClass:
        return LatticeClass(-3, (-1,) * self.r)

    def exceptional_basis(self) -> list:
        out = []
        for i in range(self.r):
            m = tuple(-1 if j == i else 0 for j in range(self.r))
            out.append(LatticeClass(0, m))
        return out


def enumerate_classes(lattice: PicLattice, self_int: int, k_deg: int,
                      d_max: int) -> list:
    """All classes with the given self-intersection and K-degree, 0 <= d <= d_max.

    Entries m_i >= -1 (a single negative blow-down multiplicity at most),
    which covers exceptional and (-2)-class searches.  Sorted by (d, m).
    """
    r = lattice.r
    out = []
    for d in range(0, d_max + 1):
        target_sum = k_deg + 3 * d          # sum m_i
        target_sq = d * d - self_int        # sum m_i^2
        if target_sq < 0:
            continue
        hi = math.isqrt(target_sq)

        def rec(i: int, remaining_sum: int, remaining_sq: int, acc: list):
            if i == r:
                if remaining_sum == 0 and remaining_sq == 0:
                    out.append(LatticeClass(d, tuple(acc)))
                return
            slots = r - i
            for v in range(-1, hi + 1):
                sq = remaining_sq - v * v
                if sq < 0:
                    continue
                s = remaining_sum - v
                # each later slot contributes at least -1 and at most hi
                if s < -slots + 1 or s > (slots - 1) * hi:
                    continue
                acc.append(v)
                rec(i + 1, s, sq, acc)
                acc.pop()

        rec(0, target_sum, target_sq, [])
    out.sort(key=lambda c: (c.d, c.m))
    return out


# ---------------------------------------------------------------------------
# the seven F_2-points of the plane
# ---------------------------------------------------------------------------

# fixed ordering of the F_2-rational points used everywhere downstream
FANO_POINTS = (
    (1, 0, 0), (0, 1, 0), (0, 0, 1),
    (1, 1, 0), (1, 0, 1), (0, 1, 1),
    (1, 1, 1),
)


def fano_lines() -> list:
    """Index triples of collinear F_2-points, sorted."""
    lines = []
    pts = FANO_POINTS
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            for k in range(j + 1, len(pts)):
                a, b, c = pts[i], pts[j], pts[k]
                det = (a[0] * (b[1] * c[2] - b[2] * c[1])
                       - a[1] * (b[0] * c[2] - b[2] * c[0])
                       + a[2] * (b[0] * c[1] - b[1] * c[0]))
                if det % 2 == 0:
                    lines.append((i, j, k))
    return sorted(lines)


def langer_neg2_classes() -> list:
    """(-2)-classes H - E_i - E_j - E_k, one per line of the 7-point plane."""
    out = []
    for line in fano_lines():
        m = tuple(1 if i in line else 0 for i in range(7))
        out.append(LatticeClass(1, m))
    return out


def count_compatible_exceptionals(neg2_classes: Sequence, d_max: int = 3) -> int:
    """Exceptional classes meeting every given (-2)-class nonnegatively."""
    lattice = PicLattice(7)
    count = 0
    for cls in enumerate_classes(lattice, -1, -1, d_max):
        if all(cls.dot(n) >= 0 for n in neg2_classes):
            count += 1
    return count


# ---------------------------------------------------------------------------
# point configurations modulo PGL_3
# ---------------------------------------------------------------------------

_PGL_MAX_Q = 8


def _normalize(point, gf: GF):
    """Scale so the first nonzero coordinate becomes 1."""
    for c in point:
        if c:
            inv = gf.inv(c)
            return tuple(gf.mul(inv, x) for x in point)
    raise ValueError("zero vector is not a projective point")


def plane_points(q: int) -> list:
    """All q^2 + q + 1 points of P^2(F_q), normalized, sorted."""
    gf = GF(q)
    pts = set()
    for a in gf.elements:
        for b in gf.elements:
            for c in gf.elements:
                if a or b or c:
                    pts.add(_normalize((a, b, c), gf))
    return sorted(pts)


@dataclass(frozen=True)
class PointConfig:
    """A set of plane points over F_q, held in normalized sorted form."""

    q: int
    points: tuple

    @classmethod
    def from_points(cls, q: int, points: Iterable) -> "PointConfig":
        gf = GF(q)
        normalized = {_normalize(tuple(p), gf) for p in points}
        return cls(q, tuple(sorted(normalized)))

    def __len__(self):
        return len(self.points)


def _span2(u, v, gf: GF):
    """All linear combinations a*u + b*v over GF."""
    out = set()
    for a in gf.elements:
        au = tuple(gf.mul(a, x) for x in u)
        for b in gf.elements:
            out.add(tuple(gf.add(x, gf.mul(b, y)) for x, y in zip(au, v)))
    return out


@lru_cache(maxsize=None)
def pgl3_elements(q: int) -> tuple:
    """One matrix per element of PGL_3(F_q), first nonzero entry scaled to 1.

    Rows are built left to right avoiding the span of earlier rows, and the
    first row is taken projectively, which hits each coset exactly once.
    """
    if q > _PGL_MAX_Q:
        raise UnsupportedFieldSizeError(
            f"PGL enumeration supports q <= {_PGL_MAX_Q}, got {q}")
    gf = GF(q)
    zero = (0, 0, 0)
    vectors = [(a, b, c) for a in gf.elements for b in gf.elements
               for c in gf.elements if (a, b, c) != zero]
    first_rows = sorted({_normalize(v, gf) for v in vectors})
    out = []
    for r1 in first_rows:
        span1 = {tuple(gf.mul(a, x) for x in r1) for a in gf.elements}
        for r2 in vectors:
            if r2 in span1:
                continue
            span2 = _span2(r1, r2, gf)
            for r3 in vectors:
                if r3 not in span2:
                    out.append((r1, r2, r3))
    return tuple(out)


def _apply(matrix, point, gf: GF):
    return _normalize(
        tuple(
            gf.add(gf.add(gf.mul(row[0], point[0]), gf.mul(row[1], point[1])),
                   gf.mul(row[2], point[2]))
            for row in matrix
        ),
        gf,
    )


def pgl_orbit_canonical(config: PointConfig):
    """Lexicographically least PGL_3 image of the configuration and orbit size."""
    gf = GF(config.q)
    images = set()
    for matrix in pgl3_elements(config.q):
        images.add(tuple(sorted(_apply(matrix, pt, gf) for pt in config.points)))
    best = min(images)
    return PointConfig(config.q, best), len(images)


def is_full_plane_config(config: PointConfig) -> bool:
    return list(config.points) == plane_points(config.q)
