"""Structured triangulations of the unit disc and rectangles.

Disc meshes are built from concentric rings (ring k carries 6k vertices), a
deterministic construction with quasi-uniform aspect ratios: a mesh with m
rings has 1 + 3m(m+1) vertices and 6m^2 triangles.  Meshes of image domains
are obtained by pushing disc meshes through a map family; straight edges then
inscribe the curved boundary, which is what gives the FEM eigenvalues their
one-sided (from above) convergence on convex images.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DegenerateTriangleError, InvalidParameterError
from .maps import MapFamily, evaluate_map

_AREA_FLOOR = 1e-16


@dataclass
class Mesh:
    """Triangle mesh: vertex coordinates, CCW vertex-index triples, boundary flags."""

    vertices: np.ndarray  # (V, 2) float
    triangles: np.ndarray  # (T, 3) int
    boundary: np.ndarray  # (V,) bool

    @property
    def num_vertices(self) -> int:
        return self.vertices.shape[0]

    @property
    def num_triangles(self) -> int:
        return self.triangles.shape[0]

    def signed_areas(self) -> np.ndarray:
        p0 = self.vertices[self.triangles[:, 0]]
        p1 = self.vertices[self.triangles[:, 1]]
        p2 = self.vertices[self.triangles[:, 2]]
        return 0.5 * ((p1[:, 0] - p0[:, 0]) * (p2[:, 1] - p0[:, 1]) - (p2[:, 0] - p0[:, 0]) * (p1[:, 1] - p0[:, 1]))

    def total_area(self) -> float:
        return float(np.sum(self.signed_areas()))

    def edge_counts(self) -> dict[tuple[int, int], int]:
        counts: dict[tuple[int, int], int] = {}
        for i, j, k in self.triangles:
            for a, b in ((i, j), (j, k), (k, i)):
                key = (int(a), int(b)) if a < b else (int(b), int(a))
                counts[key] = counts.get(key, 0) + 1
        return counts

    def validate(self) -> None:
        """Check orientation, edge-manifoldness, and boundary-flag consistency."""
        if np.any(self.signed_areas() <= 0):
            raise DegenerateTriangleError("mesh contains a non-positively-oriented triangle")
        counts = self.edge_counts()
        if any(c > 2 for c in counts.values()):
            raise InvalidParameterError("mesh edge shared by more than two triangles")
        on_rim = np.zeros(self.num_vertices, dtype=bool)
        for (a, b), c in counts.items():
            if c == 1:
                on_rim[a] = on_rim[b] = True
        if not np.array_equal(on_rim, self.boundary):
            raise InvalidParameterError("boundary flags do not match the mesh rim")

    def to_text(self) -> str:
        """Plain-text form: `V T`, then V lines `x y flag`, then T lines `i j k`."""
        lines = [f"{self.num_vertices} {self.num_triangles}"]
        for (x, y), flag in zip(self.vertices, self.boundary):
            lines.append(f"{float(x)!r} {float(y)!r} {int(flag)}")
        for i, j, k in self.triangles:
            lines.append(f"{i} {j} {k}")
        return "\n".join(lines) + "\n"

    def save_text(self, path) -> None:
        Path(path).write_text(self.to_text())

    @classmethod
    def from_text(cls, text: str) -> "Mesh":
        rows = text.strip().splitlines()
        nv, nt = (int(s) for s in rows[0].split())
        verts = np.empty((nv, 2))
        flags = np.empty(nv, dtype=bool)
        for i in range(nv):
            x, y, f = rows[1 + i].split()
            verts[i] = (float(x), float(y))
            flags[i] = bool(int(f))
        tris = np.array([[int(s) for s in rows[1 + nv + t].split()] for t in range(nt)], dtype=np.int64)
        return cls(vertices=verts, triangles=tris, boundary=flags)


def unit_disc_mesh(rings: int) -> Mesh:
    """Concentric-ring triangulation of the unit disc.

    Ring k (1 <= k <= rings) sits at radius k/rings and carries 6k equally
    spaced vertices; the outermost ring is flagged as boundary.
    """
    if rings < 2:
        raise InvalidParameterError(f"rings must be >= 2, got {rings}")
    m = int(rings)
    offsets = [0] + [1 + 3 * k * (k - 1) for k in range(1, m + 2)]
    verts = np.zeros((1 + 3 * m * (m + 1), 2))
    for k in range(1, m + 1):
        angles = 2.0 * math.pi * np.arange(6 * k) / (6 * k)
        r = k / m
        verts[offsets[k] : offsets[k + 1], 0] = r * np.cos(angles)
        verts[offsets[k] : offsets[k + 1], 1] = r * np.sin(angles)
    tris: list[tuple[int, int, int]] = []
    for j in range(6):  # innermost fan around the center
        tris.append((0, offsets[1] + j, offsets[1] + (j + 1) % 6))
    for k in range(2, m + 1):
        n_in, n_out = 6 * (k - 1), 6 * k
        for s in range(6):
            inner = [offsets[k - 1] + (s * (k - 1) + p) % n_in for p in range(k)]
            outer = [offsets[k] + (s * k + q) % n_out for q in range(k + 1)]
            for q in range(k):
                tris.append((outer[q], outer[q + 1], inner[q]))
            for p in range(k - 1):
                tris.append((inner[p + 1], inner[p], outer[p + 1]))
    flags = np.zeros(verts.shape[0], dtype=bool)
    flags[offsets[m] :] = True
    mesh = Mesh(vertices=verts, triangles=np.array(tris, dtype=np.int64), boundary=flags)
    mesh.validate()
    return mesh


def rectangle_mesh(a: float, b: float, nx: int, ny: int) -> Mesh:
    """Rectangle (0,a) x (0,b) split into 2*nx*ny right triangles."""
    if not (a > 0 and b > 0):
        raise InvalidParameterError(f"rectangle sides must be positive, got {a} x {b}")
    if nx < 2 or ny < 2:
        raise InvalidParameterError(f"subdivision counts must be >= 2, got {nx} x {ny}")
    xs = np.linspace(0.0, a, nx + 1)
    ys = np.linspace(0.0, b, ny + 1)
    gx, gy = np.meshgrid(xs, ys)
    verts = np.column_stack([gx.ravel(), gy.ravel()])

    def vid(i: int, j: int) -> int:
        return j * (nx + 1) + i

    tris = []
    for j in range(ny):
        for i in range(nx):
            v00, v10 = vid(i, j), vid(i + 1, j)
            v01, v11 = vid(i, j + 1), vid(i + 1, j + 1)
            tris.append((v00, v10, v11))
            tris.append((v00, v11, v01))
    flags = np.zeros(verts.shape[0], dtype=bool)
    for j in range(ny + 1):
        for i in range(nx + 1):
            if i in (0, nx) or j in (0, ny):
                flags[vid(i, j)] = True
    mesh = Mesh(vertices=verts, triangles=np.array(tris, dtype=np.int64), boundary=flags)
    mesh.validate()
    return mesh


def pushforward_mesh(mesh: Mesh, family: MapFamily) -> Mesh:
    """Map mesh vertices through the family; connectivity and flags unchanged.

    Fails loudly if any image triangle degenerates (area <= 1e-16), which
    signals a mesh far too coarse near a boundary cusp.
    """
    z = mesh.vertices[:, 0] + 1j * mesh.vertices[:, 1]
    w = evaluate_map(family, z)
    out = Mesh(
        vertices=np.column_stack([np.real(w), np.imag(w)]),
        triangles=mesh.triangles.copy(),
        boundary=mesh.boundary.copy(),
    )
    if np.any(out.signed_areas() <= _AREA_FLOOR):
        raise DegenerateTriangleError("pushforward produced a (near-)degenerate triangle")
    return out
