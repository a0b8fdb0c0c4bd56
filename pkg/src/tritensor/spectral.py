"""Kernel tensor, L-eigenvalues, L-inverse and eigenvector decompositions.

The three L-eigenvalues of a tensor are the square roots of the
eigenvalues of its kernel ``U = A A^T``, a symmetric positive
semi-definite Gram matrix of the 3x9 unfolding.  Everything here goes
through that 3x3 route with a hand-rolled Jacobi solver; the squaring
costs accuracy when sigma_1/sigma_3 approaches ~1e8, which is accepted as
a documented limitation for a desk-scale library.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import core
from .errors import NotPartiallySymmetric, NotSymmetric, SingularTensor
from .symmetry import classify

__all__ = [
    "LEigenSystem",
    "KernelTriple",
    "EigDecomposition3",
    "sym_eig3",
    "kernel",
    "kernel_triple",
    "unfold",
    "fold",
    "l_eigen",
    "rank_and_nullspace",
    "l_inverse",
    "recover",
    "is_orthogonal_tensor",
    "eig_decompose_partial",
]

# Relative cutoff below which an L-eigenvalue is treated as zero when
# building eigentensors.
_SIGMA_FLOOR = 1e-12
# Kernel eigenvalues below this (relative to the largest) are Gram-route
# noise: squaring puts exact zeros at ~1e-15 * lambda_1, i.e. ~1e-8 * sigma_1
# after the square root, so they must be zeroed before it.
_LAMBDA_FLOOR = 1e-13


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class LEigenSystem:
    """Three L-eigenvalues with paired L-eigenvectors and L-eigentensors.

    ``sigma`` is descending and nonnegative, ``x[j]`` is the j-th unit
    L-eigenvector and ``V[j]`` the j-th unit L-eigentensor, satisfying
    A V_j = sigma_j x_j and A^T x_j = sigma_j V_j.  Eigentensors at
    (numerically) zero L-eigenvalues are completed deterministically from
    a canonical matrix basis, orthonormal to the rest; they satisfy
    A V_j = 0 but are otherwise arbitrary.
    """

    sigma: np.ndarray  # (3,)
    x: np.ndarray  # (3, 3), rows are eigenvectors
    V: np.ndarray  # (3, 3, 3), V[j] is a Mat3

    def as_dict(self) -> dict:
        return {
            "sigma": self.sigma.tolist(),
            "x": self.x.tolist(),
            "V": self.V.tolist(),
        }


@dataclass(frozen=True)
class KernelTriple:
    """Kernel tensors of A, A^T and (A^T)^T (the three mode Grams)."""

    u: np.ndarray
    u_bar: np.ndarray
    u_hat: np.ndarray


@dataclass(frozen=True)
class EigDecomposition3:
    """Eigenvector decomposition of a partially symmetric tensor.

    For side "right" the reconstruction is
    sum_jk sigma_j lambda_jk x_j (x) y_jk (x) y_jk, with the factors
    permuted cyclically for the "left" and "central" sides.
    """

    side: str
    sigma: np.ndarray  # (3,)
    lam: np.ndarray  # (3, 3), lam[j, k]
    x: np.ndarray  # (3, 3), rows
    y: np.ndarray  # (3, 3, 3), y[j, k] is a Vec3

    def reconstruct(self) -> core.Hyper3:
        if self.side == "right":
            return np.einsum("j,jk,ja,jkb,jkc->abc", self.sigma, self.lam, self.x, self.y, self.y)
        if self.side == "left":
            return np.einsum("j,jk,jka,jkb,jc->abc", self.sigma, self.lam, self.y, self.y, self.x)
        return np.einsum("j,jk,jka,jb,jkc->abc", self.sigma, self.lam, self.y, self.x, self.y)

    def as_dict(self) -> dict:
        return {
            "side": self.side,
            "sigma": self.sigma.tolist(),
            "lambda": self.lam.tolist(),
            "x": self.x.tolist(),
            "y": self.y.tolist(),
        }


def sym_eig3(u: core.Mat3, tol: float = 1e-8):
    """Eigendecomposition of a symmetric 3x3 matrix by cyclic Jacobi sweeps.

    Returns (eigenvalues descending, eigenvector matrix with matching
    columns).  Jacobi is used instead of the closed-form cubic because its
    eigenvectors stay orthonormal under near-degenerate spectra.  Signs
    are fixed so each eigenvector's largest-magnitude component is
    positive, and ties keep the sweep output order under a stable sort,
    making the output deterministic.
    """
    u = np.asarray(u, dtype=float)
    scale = max(1.0, float(np.linalg.norm(u)))
    if float(np.abs(u - u.T).max()) > tol * scale:
        raise NotSymmetric(f"matrix asymmetry exceeds {tol:.1e} * max(1, ||U||)")
    s = 0.5 * (u + u.T)
    target = 1e-14 * float(np.linalg.norm(s))
    vecs = np.eye(3)
    for _ in range(50):
        off = math.sqrt(2.0 * (s[0, 1] ** 2 + s[0, 2] ** 2 + s[1, 2] ** 2))
        if off <= target:
            break
        for p, q in ((0, 1), (0, 2), (1, 2)):
            apq = s[p, q]
            if apq == 0.0:
                continue
            theta = (s[q, q] - s[p, p]) / (2.0 * apq)
            t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
            c = 1.0 / math.sqrt(t * t + 1.0)
            sn = t * c
            rot = np.eye(3)
            rot[p, p] = rot[q, q] = c
            rot[p, q] = sn
            rot[q, p] = -sn
            s = rot.T @ s @ rot
            vecs = vecs @ rot
    vals = np.diag(s).copy()
    order = np.argsort(-vals, kind="stable")
    vals = vals[order]
    vecs = vecs[:, order].copy()
    for j in range(3):
        lead = int(np.argmax(np.abs(vecs[:, j])))
        if vecs[lead, j] < 0.0:
            vecs[:, j] = -vecs[:, j]
    return vals, vecs


def kernel(a: core.Hyper3) -> core.Mat3:
    """Kernel tensor U = A A^T, symmetric positive semi-definite."""
    return core.prod2(a, core.transpose(a))


def kernel_triple(a: core.Hyper3) -> KernelTriple:
    """Kernels of A, A^T and (A^T)^T; all three share trace A . A."""
    at = core.transpose(a)
    att = core.transpose(at)
    return KernelTriple(
        u=_frozen(core.prod2(a, at)),
        u_bar=_frozen(core.prod2(at, att)),
        u_hat=_frozen(core.prod2(att, a)),
    )


def unfold(a: core.Hyper3) -> np.ndarray:
    """3x9 matrix with row i and columns (j,k) in order (1,1),(1,2),...,(3,3)."""
    return np.asarray(a, dtype=float).reshape(3, 9).copy()


def fold(m: np.ndarray) -> core.Hyper3:
    """Inverse of :func:`unfold`; exact (a pure reindexing)."""
    m = np.asarray(m, dtype=float)
    if m.shape != (3, 9):
        raise ValueError(f"expected a 3x9 matrix, got shape {m.shape}")
    return m.reshape(3, 3, 3).copy()


# Canonical 9-vector basis used to complete eigentensor and null-space
# bases at zero L-eigenvalues; enumeration matches the unfold column order.
_CANONICAL_9 = np.eye(9)


def _complete_orthonormal(known: list[np.ndarray], count: int) -> list[np.ndarray]:
    """Extend ``known`` (orthonormal 9-vectors) by ``count`` more, deterministically."""
    added: list[np.ndarray] = []
    basis = list(known)
    for cand in _CANONICAL_9:
        if len(added) == count:
            break
        w = cand.copy()
        for _ in range(2):  # re-orthogonalize for safety near 1e-6 residuals
            for b in basis:
                w -= (b @ w) * b
        n = float(np.linalg.norm(w))
        if n > 1e-6:
            w /= n
            basis.append(w)
            added.append(w)
    if len(added) != count:
        raise RuntimeError("canonical basis completion failed")  # unreachable
    return added


def l_eigen(a: core.Hyper3) -> LEigenSystem:
    """L-eigenvalue decomposition A = sum_j sigma_j x_j (x) V_j.

    The sigma_j are the square roots of the kernel eigenvalues (clamped at
    zero); x_j are the kernel eigenvectors, and V_j = A^T x_j / sigma_j
    for sigma_j above 1e-12 * sigma_1.  Below that floor V_j is completed
    from the canonical matrix basis.
    """
    lam, xcols = sym_eig3(kernel(a), tol=1e-8)
    lam = np.clip(lam, 0.0, None)
    lam[lam <= _LAMBDA_FLOOR * lam[0]] = 0.0
    sigma = np.sqrt(lam)
    m = unfold(a)
    floor = _SIGMA_FLOOR * sigma[0]
    vrows: list[np.ndarray | None] = []
    known: list[np.ndarray] = []
    for j in range(3):
        if sigma[j] > floor and sigma[j] > 0.0:
            v = (m.T @ xcols[:, j]) / sigma[j]
            vrows.append(v)
            known.append(v)
        else:
            vrows.append(None)
    missing = [j for j in range(3) if vrows[j] is None]
    if missing:
        for j, v in zip(missing, _complete_orthonormal(known, len(missing))):
            vrows[j] = v
    vmat = np.stack([v.reshape(3, 3) for v in vrows])
    return LEigenSystem(sigma=_frozen(sigma), x=_frozen(xcols.T), V=_frozen(vmat))


def rank_and_nullspace(a: core.Hyper3, tol: float = 1e-10):
    """Rank of ``a`` and an orthonormal basis of its null space.

    The null space is the set of matrices V with A V = 0; its dimension is
    9 - rank, never below 6.  Each basis element N satisfies
    ||contract_mat(a, N, "right")|| <= tol * ||a||.
    """
    sys = l_eigen(a)
    if sys.sigma[0] <= 0.0:
        rank = 0
    else:
        rank = int(np.sum(sys.sigma > tol * sys.sigma[0]))
    known = [sys.V[j].reshape(9) for j in range(rank)]
    basis = _complete_orthonormal(known, 9 - rank)
    return rank, [v.reshape(3, 3).copy() for v in basis]


def l_inverse(a: core.Hyper3, tol: float = 1e-10) -> core.Hyper3:
    """L-inverse B = sum_j V_j (x) x_j / sigma_j of a nonsingular tensor.

    Satisfies prod2(a, B) = I together with the fourth-order product
    identity B (+) A = A^T (+) (B^T)^T; those two conditions pin B
    uniquely as the first-two-index fold of the Moore-Penrose inverse of
    unfold(a).  Raises SingularTensor when sigma_3 <= tol * sigma_1.

    Because the product contracts the left factor's last two indices
    against the right factor's first two, inversion swaps which unfolding
    carries the Moore-Penrose structure; applying this function twice is
    therefore not the identity.  The original tensor is recovered from
    B = l_inverse(a) by the transpose-conjugated mirror
    transpose(transpose(l_inverse(transpose(transpose(B))))).
    """
    sys = l_eigen(a)
    s1, s3 = float(sys.sigma[0]), float(sys.sigma[2])
    if s1 <= 0.0 or s3 <= tol * s1:
        ratio = s3 / s1 if s1 > 0.0 else 0.0
        raise SingularTensor(
            f"tensor is singular: sigma3/sigma1 = {ratio:.3e} <= {tol:.1e}"
        )
    return np.einsum("n,nij,nk->ijk", 1.0 / sys.sigma, sys.V, sys.x)


def recover(v: core.Mat3, a_inv: core.Hyper3) -> core.Vec3:
    """Recover x from V = x A given the L-inverse of A (x = V A^-1)."""
    return core.contract_mat(a_inv, v, "left")


def is_orthogonal_tensor(a: core.Hyper3, tol: float = 1e-10) -> bool:
    """True when the kernel A A^T is the identity within tol."""
    return float(np.linalg.norm(kernel(a) - np.eye(3))) <= tol


_SIDE_FLAGS = {
    "right": "right_symmetric",
    "left": "left_symmetric",
    "central": "centrally_symmetric",
}


def eig_decompose_partial(
    a: core.Hyper3, side: str = "right", tol: float = 1e-8
) -> EigDecomposition3:
    """Eigenvector decomposition of a partially symmetric tensor.

    For the "right" side the eigentensors at positive L-eigenvalues are
    symmetric, so each splits into an orthonormal eigenframe y_jk with
    weights lambda_jk.  The "left" and "central" sides reuse the right
    procedure on (A^T)^T and A^T respectively and permute the factors.
    Eigentensor asymmetry above 1e-6 raises, since it signals that the
    claimed symmetry does not actually hold.
    """
    if side not in _SIDE_FLAGS:
        raise ValueError(f"side must be one of {sorted(_SIDE_FLAGS)}, got {side!r}")
    report = classify(a, tol)
    if not getattr(report, _SIDE_FLAGS[side]):
        raise NotPartiallySymmetric(f"tensor is not {_SIDE_FLAGS[side]} within {tol:.1e}")
    if side == "right":
        work = np.asarray(a, dtype=float)
    elif side == "left":
        work = core.transpose(core.transpose(a))
    else:
        work = core.transpose(a)
    sys = l_eigen(work)
    floor = _SIGMA_FLOOR * sys.sigma[0]
    lam = np.zeros((3, 3))
    yvecs = np.zeros((3, 3, 3))
    for j in range(3):
        v = sys.V[j]
        if sys.sigma[j] > floor:
            asym = float(np.abs(v - v.T).max())
            if asym > 1e-6:
                raise NotPartiallySymmetric(
                    f"eigentensor {j + 1} asymmetry {asym:.3e} exceeds 1e-6; "
                    f"input is not {_SIDE_FLAGS[side]} enough"
                )
        vals, cols = sym_eig3(0.5 * (v + v.T))
        lam[j] = vals
        yvecs[j] = cols.T
    return EigDecomposition3(
        side=side,
        sigma=sys.sigma,
        lam=_frozen(lam),
        x=sys.x,
        y=_frozen(yvecs),
    )
