"""Exact volumes of clipped parallelepipeds in dimension <= 3.

Supports the exact evaluation path of cone measures: the pullback of an
axis-aligned box under an invertible linear map is a parallelepiped, whose
intersection with the nonnegative orthant is computed with rational
arithmetic (Sutherland-Hodgman clipping; in 3D a cap face is rebuilt on
each cutting plane and the volume comes from a tetrahedral fan around the
vertex centroid).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product


def mat_inverse(m: list) -> list:
    """Inverse of a small square matrix of Fractions (Gauss-Jordan)."""
    n = len(m)
    a = [[Fraction(m[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
         for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        a[col], a[pivot] = a[pivot], a[col]
        pv = a[col][col]
        a[col] = [x / pv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def mat_det(m: list) -> Fraction:
    n = len(m)
    if n == 1:
        return Fraction(m[0][0])
    if n == 2:
        return Fraction(m[0][0]) * m[1][1] - Fraction(m[0][1]) * m[1][0]
    if n == 3:
        return (
            Fraction(m[0][0]) * (Fraction(m[1][1]) * m[2][2] - Fraction(m[1][2]) * m[2][1])
            - Fraction(m[0][1]) * (Fraction(m[1][0]) * m[2][2] - Fraction(m[1][2]) * m[2][0])
            + Fraction(m[0][2]) * (Fraction(m[1][0]) * m[2][1] - Fraction(m[1][1]) * m[2][0])
        )
    raise ValueError("determinant supported for dimension <= 3 only")


def mat_apply(m: list, v: tuple) -> tuple:
    return tuple(sum(Fraction(m[i][j]) * v[j] for j in range(len(v))) for i in range(len(m)))


def _clip_polygon(points: list, axis: int) -> list:
    """Clip a polygon (2D, Fractions) against coordinate >= 0."""
    out = []
    n = len(points)
    for i in range(n):
        cur, nxt = points[i], points[(i + 1) % n]
        c_in = cur[axis] >= 0
        n_in = nxt[axis] >= 0
        if c_in:
            out.append(cur)
        if c_in != n_in:
            s = cur[axis] / (cur[axis] - nxt[axis])
            out.append(tuple(c + s * (d - c) for c, d in zip(cur, nxt)))
    dedup = []
    for p in out:
        if not dedup or p != dedup[-1]:
            dedup.append(p)
    if len(dedup) > 1 and dedup[0] == dedup[-1]:
        dedup.pop()
    return dedup


def _polygon_area(points: list) -> Fraction:
    if len(points) < 3:
        return Fraction(0)
    total = Fraction(0)
    n = len(points)
    for i in range(n):
        x1, y1 = points[i]
        x2, y2 = points[(i + 1) % n]
        total += x1 * y2 - x2 * y1
    return abs(total) / 2


def _convex_order_2d(points: list) -> list:
    """Vertices of the convex hull in traversal order (monotone chain)."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _clip_polyhedron(faces: list, axis: int) -> list:
    """Clip a convex polyhedron (list of polygon faces) against x[axis] >= 0."""
    new_faces = []
    cap_points = set()
    cut_anything = False
    for face in faces:
        clipped = []
        n = len(face)
        for i in range(n):
            cur, nxt = face[i], face[(i + 1) % n]
            c_in = cur[axis] >= 0
            n_in = nxt[axis] >= 0
            if not c_in:
                cut_anything = True
            if c_in:
                clipped.append(cur)
                if cur[axis] == 0:
                    cap_points.add(cur)
            if c_in != n_in:
                s = cur[axis] / (cur[axis] - nxt[axis])
                pt = tuple(c + s * (d - c) for c, d in zip(cur, nxt))
                clipped.append(pt)
                cap_points.add(pt)
        dedup = []
        for p in clipped:
            if not dedup or p != dedup[-1]:
                dedup.append(p)
        if len(dedup) > 1 and dedup[0] == dedup[-1]:
            dedup.pop()
        if len(dedup) >= 3:
            new_faces.append(dedup)
    if cut_anything and len(cap_points) >= 3:
        other = [i for i in range(3) if i != axis]
        flat = {(p[other[0]], p[other[1]]): p for p in cap_points}
        ordered = _convex_order_2d(list(flat))
        if len(ordered) >= 3:
            new_faces.append([flat[q] for q in ordered])
    return new_faces


def _polyhedron_volume(faces: list) -> Fraction:
    verts = {p for face in faces for p in face}
    if not verts or not faces:
        return Fraction(0)
    n = len(verts)
    g = tuple(sum(p[i] for p in verts) / n for i in range(3))
    total = Fraction(0)
    for face in faces:
        a = face[0]
        for i in range(1, len(face) - 1):
            b, c = face[i], face[i + 1]
            u = tuple(x - y for x, y in zip(a, g))
            v = tuple(x - y for x, y in zip(b, g))
            w = tuple(x - y for x, y in zip(c, g))
            det = (
                u[0] * (v[1] * w[2] - v[2] * w[1])
                - u[1] * (v[0] * w[2] - v[2] * w[0])
                + u[2] * (v[0] * w[1] - v[1] * w[0])
            )
            total += abs(det)
    return total / 6


# corner index = 4*bx + 2*by + bz over (lo, hi) choices per coordinate
_BOX_FACES_3D = [
    (0, 1, 3, 2), (4, 6, 7, 5),  # x lo, x hi
    (0, 4, 5, 1), (2, 3, 7, 6),  # y lo, y hi
    (0, 2, 6, 4), (1, 5, 7, 3),  # z lo, z hi
]


def orthant_clipped_pullback_volume(a_inv: list, box: list) -> Fraction:
    """Volume of {lam >= 0 : lam in a_inv(box)} for an exact inverse map.

    ``box`` is a list of (lo, hi) Fractions per output coordinate; the
    pullback of its corners spans a parallelepiped which is clipped against
    the nonnegative orthant.  Dimension 1, 2 or 3.
    """
    k = len(box)
    for lo, hi in box:
        if hi <= lo:
            return Fraction(0)
    corners = [
        mat_apply(a_inv, pt)
        for pt in product(*[(Fraction(lo), Fraction(hi)) for lo, hi in box])
    ]
    if k == 1:
        lo = min(c[0] for c in corners)
        hi = max(c[0] for c in corners)
        lo = max(lo, Fraction(0))
        return hi - lo if hi > lo else Fraction(0)
    if k == 2:
        # corners arrive in lexicographic (lo/hi) order: reorder to a cycle
        poly = [corners[0], corners[1], corners[3], corners[2]]
        for axis in range(2):
            poly = _clip_polygon(poly, axis)
            if len(poly) < 3:
                return Fraction(0)
        return _polygon_area(poly)
    if k == 3:
        faces = [[corners[i] for i in face] for face in _BOX_FACES_3D]
        for axis in range(3):
            faces = _clip_polyhedron(faces, axis)
            if not faces:
                return Fraction(0)
        return _polyhedron_volume(faces)
    raise ValueError("exact volumes support dimension <= 3 only")
