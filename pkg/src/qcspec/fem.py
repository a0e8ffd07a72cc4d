"""P1 finite-element reference solver for the principal Dirichlet eigenvalue.

Discretizes the weak eigenvalue problem (grad u, grad v) = lambda (u, v) on a
triangle mesh with piecewise-linear elements, imposes the Dirichlet condition
by eliminating boundary rows/columns, and solves the generalized pencil
K u = lambda M u by inverse power iteration with conjugate-gradient inner
solves.  Everything is deterministic: the start vector is the M-normalized
all-ones vector, never random.

On inscribed polygonal approximations of convex domains the computed lambda
approaches the true eigenvalue from above, which the acceptance checks use
as a one-sided certificate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .errors import ConvergenceError, DegenerateTriangleError, InvalidParameterError
from .maps import MapFamily
from .mesh import Mesh, pushforward_mesh, unit_disc_mesh

_AREA_FLOOR = 1e-16


@dataclass
class SparseMatrix:
    """Symmetric CSR matrix over interior degrees of freedom."""

    csr: sp.csr_matrix

    @classmethod
    def from_coo(cls, n: int, rows, cols, values) -> "SparseMatrix":
        mat = sp.coo_matrix((values, (rows, cols)), shape=(n, n)).tocsr()
        mat.sum_duplicates()
        mat.eliminate_zeros()
        return cls(mat)

    @property
    def rows(self) -> int:
        return self.csr.shape[0]

    @property
    def cols(self) -> int:
        return self.csr.shape[1]

    @property
    def indptr(self) -> np.ndarray:
        return self.csr.indptr

    @property
    def indices(self) -> np.ndarray:
        return self.csr.indices

    @property
    def data(self) -> np.ndarray:
        return self.csr.data

    def matvec(self, x: np.ndarray) -> np.ndarray:
        return self.csr @ x

    def diagonal(self) -> np.ndarray:
        return self.csr.diagonal()

    def toarray(self) -> np.ndarray:
        return self.csr.toarray()


def assemble_p1(mesh: Mesh) -> tuple[SparseMatrix, SparseMatrix]:
    """Assemble stiffness and consistent-mass matrices over interior vertices.

    Per triangle with opposite-edge vectors e_i the local stiffness is
    (e_i . e_j)/(4A) and the local mass is A/12 * (2 on the diagonal, 1 off).
    Boundary vertices are eliminated, enforcing u = 0 there.
    """
    p0 = mesh.vertices[mesh.triangles[:, 0]]
    p1 = mesh.vertices[mesh.triangles[:, 1]]
    p2 = mesh.vertices[mesh.triangles[:, 2]]
    e = np.stack([p2 - p1, p0 - p2, p1 - p0], axis=1)  # (T, 3, 2)
    area = 0.5 * (e[:, 2, 0] * (-e[:, 1, 1]) - (-e[:, 1, 0]) * e[:, 2, 1])
    if np.any(area <= _AREA_FLOOR):
        raise DegenerateTriangleError("triangle area at or below 1e-16 during assembly")

    k_local = np.einsum("tid,tjd->tij", e, e) / (4.0 * area)[:, None, None]
    m_local = (area / 12.0)[:, None, None] * (np.ones((3, 3)) + np.eye(3))

    interior = ~mesh.boundary
    index_map = -np.ones(mesh.num_vertices, dtype=np.int64)
    index_map[interior] = np.arange(int(interior.sum()))
    n = int(interior.sum())

    tri_dofs = index_map[mesh.triangles]  # (T, 3), -1 for boundary
    ii = np.repeat(tri_dofs, 3, axis=1).ravel()
    jj = np.tile(tri_dofs, (1, 3)).ravel()
    keep = (ii >= 0) & (jj >= 0)
    stiffness = SparseMatrix.from_coo(n, ii[keep], jj[keep], k_local.reshape(-1, 9).ravel()[keep.nonzero()])
    mass = SparseMatrix.from_coo(n, ii[keep], jj[keep], m_local.reshape(-1, 9).ravel()[keep.nonzero()])
    return stiffness, mass


@dataclass
class EigenResult:
    """Smallest eigenpair of the pencil (K, M), with u normalized so u'Mu = 1."""

    lam: float
    eigenvector: np.ndarray
    residual: float
    iterations: int


def _cg(A: SparseMatrix, b: np.ndarray, x0: np.ndarray, rtol: float, max_iter: int) -> np.ndarray:
    """Jacobi-preconditioned conjugate gradients for SPD systems."""
    inv_diag = 1.0 / A.diagonal()
    x = x0.copy()
    r = b - A.matvec(x)
    b_norm = float(np.linalg.norm(b))
    if b_norm == 0.0:
        return np.zeros_like(b)
    z = inv_diag * r
    p = z.copy()
    rz = float(r @ z)
    best = float(np.linalg.norm(r))
    since_best = 0
    for _ in range(max_iter):
        if np.linalg.norm(r) <= rtol * b_norm:
            return x
        Ap = A.matvec(p)
        pAp = float(p @ Ap)
        if pAp <= 0.0:
            raise ConvergenceError("conjugate gradient hit a non-positive curvature direction (singular system?)")
        alpha = rz / pAp
        x += alpha * p
        r -= alpha * Ap
        r_norm = float(np.linalg.norm(r))
        if r_norm < best:
            best, since_best = r_norm, 0
        else:
            since_best += 1
            if since_best > 250:
                raise ConvergenceError("conjugate gradient stagnated (singular system?)")
        z = inv_diag * r
        rz_new = float(r @ z)
        p = z + (rz_new / rz) * p
        rz = rz_new
    raise ConvergenceError(f"conjugate gradient did not reach rtol={rtol} in {max_iter} iterations")


def smallest_eigenpair(K: SparseMatrix, M: SparseMatrix, tol: float = 1e-10) -> EigenResult:
    """Smallest eigenvalue of K u = lambda M u by inverse power iteration.

    Each step solves K w = M u by CG to relative tolerance tol/100 and
    M-normalizes; iteration stops once the eigenvalue is stationary to a
    relative tol AND the residual ||K u - lambda M u||_2 (with u'Mu = 1) has
    fallen below tol * max(1, lambda).  Raises ConvergenceError after 10000
    outer iterations.
    """
    n = K.rows
    if n < 1 or M.rows != n:
        raise InvalidParameterError("pencil matrices must be square of equal dimension >= 1")
    u = np.ones(n)
    m_norm = float(u @ M.matvec(u))
    if m_norm <= 0.0:
        raise InvalidParameterError("mass matrix is not positive definite on the start vector")
    u /= np.sqrt(m_norm)
    lam = float(u @ K.matvec(u))
    if lam <= 0.0:
        raise InvalidParameterError("stiffness matrix is not positive definite on the start vector")
    cg_max = max(10 * n, 200)
    for it in range(1, 10001):
        w = _cg(K, M.matvec(u), x0=u / lam, rtol=tol / 100.0, max_iter=cg_max)
        norm = np.sqrt(float(w @ M.matvec(w)))
        if norm == 0.0:
            raise ConvergenceError("inverse power iteration produced a null vector")
        u = w / norm
        ku = K.matvec(u)
        lam_new = float(u @ ku)
        residual = float(np.linalg.norm(ku - lam_new * M.matvec(u)))
        if abs(lam_new - lam) < tol * lam_new and residual <= tol * max(1.0, lam_new):
            return EigenResult(lam=lam_new, eigenvector=u, residual=residual, iterations=it)
        lam = lam_new
    raise ConvergenceError("inverse power iteration did not converge in 10000 iterations")


@dataclass
class PrincipalEigenvalue:
    """FEM approximation of lambda_1 for the image of the disc under a family."""

    eig: EigenResult
    rings: int
    num_vertices: int
    num_triangles: int
    num_interior: int

    @property
    def lam(self) -> float:
        return self.eig.lam


def principal_eigenvalue(family: MapFamily, rings: int = 64, tol: float = 1e-10) -> PrincipalEigenvalue:
    """Mesh the disc, push it through the family, assemble, and solve."""
    if rings < 8:
        raise InvalidParameterError(f"rings must be >= 8 for a meaningful eigenvalue, got {rings}")
    mesh = pushforward_mesh(unit_disc_mesh(rings), family)
    K, M = assemble_p1(mesh)
    eig = smallest_eigenpair(K, M, tol)
    return PrincipalEigenvalue(
        eig=eig,
        rings=rings,
        num_vertices=mesh.num_vertices,
        num_triangles=mesh.num_triangles,
        num_interior=K.rows,
    )
