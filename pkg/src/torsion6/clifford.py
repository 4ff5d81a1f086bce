"""Real Clifford algebra of R^6, the spinor module, and spinor counts.

Generators square to -1.  The spinor representation is built from Pauli
matrices; all spectral tests downstream are basis independent.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .forms import DIM, Form, SkewEndo
from .scalars import is_zero


class CliffordElement:
    """Element of Cl(R^6) as a map from increasing index tuples to scalars."""

    def __init__(self, coeffs=None):
        self.coeffs = {}
        for idx, c in (coeffs or {}).items():
            idx = tuple(idx)
            if any(not 1 <= i <= DIM for i in idx) or list(idx) != sorted(set(idx)):
                raise ValueError(f"bad Clifford index {idx}")
            if not is_zero(c):
                self.coeffs[idx] = c

    @classmethod
    def scalar(cls, c):
        return cls({(): c})

    @classmethod
    def generator(cls, i):
        return cls({(i,): Fraction(1)})

    def __add__(self, other):
        out = dict(self.coeffs)
        for idx, c in other.coeffs.items():
            out[idx] = out.get(idx, 0) + c
        return CliffordElement(out)

    def __sub__(self, other):
        return self + (-1) * other

    def __rmul__(self, c):
        return CliffordElement({i: c * v for i, v in self.coeffs.items()})

    def __eq__(self, other):
        keys = set(self.coeffs) | set(other.coeffs)
        return all(is_zero(self.coeffs.get(k, 0) - other.coeffs.get(k, 0))
                   for k in keys)

    def is_scalar(self, tol=None):
        return all(is_zero(c, tol) for idx, c in self.coeffs.items() if idx)

    def scalar_part(self):
        return self.coeffs.get((), 0)

    def __repr__(self):
        if not self.coeffs:
            return "Cl(0)"
        terms = [f"{c}*e{''.join(map(str, i))}" if i else str(c)
                 for i, c in sorted(self.coeffs.items())]
        return "Cl(" + " + ".join(terms) + ")"


def _mul_monomials(a, b):
    """Product of two generator monomials: (sign, index tuple)."""
    seq = list(a) + list(b)
    sign = 1
    # bubble to sorted order, one transposition of distinct generators
    # flips the sign, adjacent equal generators contract to -1
    changed = True
    while changed:
        changed = False
        k = 0
        while k < len(seq) - 1:
            if seq[k] == seq[k + 1]:
                del seq[k:k + 2]
                sign = -sign
                changed = True
            elif seq[k] > seq[k + 1]:
                seq[k], seq[k + 1] = seq[k + 1], seq[k]
                sign = -sign
                changed = True
            else:
                k += 1
    return sign, tuple(seq)


def cl_mul(a: CliffordElement, b: CliffordElement) -> CliffordElement:
    out = {}
    for ia, ca in a.coeffs.items():
        for ib, cb in b.coeffs.items():
            sign, idx = _mul_monomials(ia, ib)
            out[idx] = out.get(idx, 0) + sign * ca * cb
    return CliffordElement(out)


def embed_form(a: Form) -> CliffordElement:
    return CliffordElement(dict(a.coeffs))


def is_scalar_square(t: Form, tol=None):
    """Whether T * T is a real scalar in the Clifford algebra."""
    if t.degree != 3:
        raise ValueError("is_scalar_square needs a 3-form")
    sq = cl_mul(embed_form(t), embed_form(t))
    if sq.is_scalar(tol):
        return True, sq.scalar_part()
    return False, None


# --- spinor module ---

_S1 = np.array([[0, 1], [1, 0]], dtype=complex)
_S2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
_S3 = np.array([[1, 0], [0, -1]], dtype=complex)
_ID = np.eye(2, dtype=complex)


def _kron3(a, b, c):
    return np.kron(np.kron(a, b), c)


def gammas():
    """Six 8x8 skew-Hermitian matrices with gamma_i gamma_j + gamma_j
    gamma_i = -2 delta_ij."""
    herm = [
        _kron3(_S1, _ID, _ID),
        _kron3(_S2, _ID, _ID),
        _kron3(_S3, _S1, _ID),
        _kron3(_S3, _S2, _ID),
        _kron3(_S3, _S3, _S1),
        _kron3(_S3, _S3, _S2),
    ]
    return [1j * h for h in herm]


_GAMMAS = gammas()


def spin_lift(a: SkewEndo) -> np.ndarray:
    """1/2 sum_{i<j} A_ji gamma_i gamma_j, a Lie algebra homomorphism."""
    out = np.zeros((8, 8), dtype=complex)
    for i in range(DIM):
        for j in range(i + 1, DIM):
            c = float(a.mat[j][i])
            if c:
                out += 0.5 * c * (_GAMMAS[i] @ _GAMMAS[j])
    return out


def clifford_action(t: Form) -> np.ndarray:
    """Clifford multiplication by a form on the spinor module."""
    out = np.zeros((8, 8), dtype=complex)
    for idx, c in t.coeffs.items():
        m = np.eye(8, dtype=complex)
        for i in idx:
            m = m @ _GAMMAS[i - 1]
        out += float(c) * m
    return out


def _joint_kernel(mats, tol=1e-9):
    if not mats:
        return np.eye(8, dtype=complex)
    stacked = np.vstack(mats)
    _, s, vh = np.linalg.svd(stacked)
    # rows of vh beyond the numerical rank span the kernel
    rank = int(np.sum(s > tol))
    return vh[rank:].conj().T


def parallel_spinors(hol, tol=1e-9):
    """Complex dimension and basis of the spinors killed by the spin lift
    of every element of hol."""
    mats = [spin_lift(a) for a in hol]
    basis = _joint_kernel(mats, tol)
    return basis.shape[1], basis


def torsion_spinor_spectrum(t: Form, hol, tol=1e-7):
    """Eigenvalues of Clifford multiplication by T on the parallel-spinor
    subspace of hol, sorted with multiplicities."""
    dim, basis = parallel_spinors(hol)
    if dim == 0:
        return []
    act = clifford_action(t)
    proj = basis.conj().T @ act @ basis
    # T must preserve the subspace when hol annihilates it
    residual = act @ basis - basis @ proj
    if np.max(np.abs(residual)) > 1e-6:
        raise RuntimeError("torsion does not preserve the parallel subspace")
    if np.max(np.abs(proj - proj.conj().T)) > 1e-6:
        raise RuntimeError("restricted torsion action is not Hermitian")
    vals = np.linalg.eigvalsh(proj)
    out = []
    for v in sorted(vals):
        if out and abs(v - out[-1][-1]) <= tol:
            out[-1].append(v)
        else:
            out.append([v])
    flat = []
    for cluster in out:
        mean = sum(cluster) / len(cluster)
        flat.extend([mean] * len(cluster))
    return flat
