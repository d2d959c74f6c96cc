"""Vectorized exact linear algebra over F_p on numpy int64 arrays.

Every function takes and returns arrays of canonical residues in [0, p) for a prime p < 2^31, so that a product of
two residues always fits in a signed 64-bit integer.
"""
import numpy as np


FLOAT_EXACT_BOUND: int = 2 ** 53
"""Integers below this bound are represented exactly in float64, which lets BLAS compute exact modular products
whenever the dot-product sums stay under it.
"""


def _float_chunk(p: int) -> int:
    return (FLOAT_EXACT_BOUND - 1) // max(1, (p - 1) ** 2)


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Exact (a @ b) mod p.

    Uses float64 BLAS on slices of the inner dimension short enough for the sums to stay exact, and falls back to
    int64 products, reduced after every inner index, for primes too large for that.
    """
    inner = a.shape[1]
    out_shape = (a.shape[0], b.shape[1])
    if inner == 0 or 0 in out_shape:
        return np.zeros(out_shape, dtype=np.int64)
    chunk = _float_chunk(p)
    if chunk >= 1:
        acc = np.zeros(out_shape, dtype=np.int64)
        for start in range(0, inner, chunk):
            stop = min(inner, start + chunk)
            part = a[:, start:stop].astype(np.float64) @ b[start:stop].astype(np.float64)
            acc = (acc + np.remainder(part, p).astype(np.int64)) % p
        return acc
    acc = np.zeros(out_shape, dtype=np.int64)
    a64 = a.astype(np.int64)
    b64 = b.astype(np.int64)
    for t in range(inner):
        acc = (acc + np.outer(a64[:, t], b64[t]) % p) % p
    return acc


def rref_mod(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form. The pivot of each row is its leftmost nonzero column, and among candidate rows the
    first in scan order is swapped up, so the result is the unique RREF of the row space.

    :return: The RREF (same shape as a, zero rows last) and the list of pivot columns.
    """
    m = np.array(a, dtype=np.int64) % p
    rows, cols = m.shape
    pivots: list[int] = []
    r = c = 0
    while r < rows and c < cols:
        live = np.flatnonzero(m[r:, c:].any(axis=0))
        if live.size == 0:
            break
        c += int(live[0])
        i = r + int(np.flatnonzero(m[r:, c])[0])
        if i != r:
            m[[r, i]] = m[[i, r]]
        inv = pow(int(m[r, c]), -1, p)
        m[r] = (m[r] * inv) % p
        col = m[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            m[hit] = (m[hit] - np.outer(col[hit], m[r]) % p) % p
        pivots.append(c)
        r += 1
        c += 1
    return m, pivots


def det_mod(a: np.ndarray, p: int) -> int:
    """Determinant of a square matrix by Gaussian elimination.
    """
    m = np.array(a, dtype=np.int64) % p
    n = m.shape[0]
    det = 1
    for c in range(n):
        nz = np.flatnonzero(m[c:, c])
        if nz.size == 0:
            return 0
        i = c + int(nz[0])
        if i != c:
            m[[c, i]] = m[[i, c]]
            det = -det
        pivot = int(m[c, c])
        det = (det * pivot) % p
        if c + 1 < n:
            factors = (m[c + 1:, c] * pow(pivot, -1, p)) % p
            m[c + 1:] = (m[c + 1:] - np.outer(factors, m[c]) % p) % p
    return det % p


def pfaffian_mod(a: np.ndarray, p: int) -> int:
    """Pfaffian of a skew-symmetric matrix with zero diagonal, by skew-symmetric elimination with simultaneous row and
    column pivoting. Each step factors out the 2x2 block in rows and columns (k, k+1) and continues with the
    skew-symmetric complement ``D + (C1^T C0 - C0^T C1) / a``.
    """
    m = np.array(a, dtype=np.int64) % p
    n = m.shape[0]
    if n % 2:
        return 0
    pf = 1
    for k in range(0, n, 2):
        nz = np.flatnonzero(m[k + 1:, k])
        if nz.size == 0:
            return 0
        i = k + 1 + int(nz[0])
        if i != k + 1:
            m[[k + 1, i]] = m[[i, k + 1]]
            m[:, [k + 1, i]] = m[:, [i, k + 1]]
            pf = -pf
        piv = int(m[k, k + 1])
        pf = (pf * piv) % p
        if k + 2 < n:
            inv = pow(piv, -1, p)
            c0 = m[k, k + 2:]
            c1 = m[k + 1, k + 2:]
            upd = (np.outer(c1, c0) % p - np.outer(c0, c1) % p) % p
            m[k + 2:, k + 2:] = (m[k + 2:, k + 2:] + (upd * inv) % p) % p
    return pf % p
