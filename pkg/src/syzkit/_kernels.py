"""Row reduction over GF(p) on int64 arrays.

Two interchangeable implementations: an ``@njit`` loop kernel and a
vectorised numpy kernel. ``rref_modp`` picks the numba one unless
``SYZKIT_NUMBA=0`` or numba is missing. Primes must be below 2**31 so that
a product of two residues fits in int64.
"""

from __future__ import annotations

import numpy as np

from ._config import numba_requested

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAS_NUMBA = False


def _inv_mod_py(x: int, p: int) -> int:
    return pow(int(x), -1, p)


def rref_modp_numpy(a: np.ndarray, p: int) -> tuple[np.ndarray, int]:
    """Reduced row-echelon form of ``a`` mod ``p``; returns (reduced, rank)."""
    m = np.array(a, dtype=np.int64) % p
    rows, cols = m.shape
    r = 0
    for col in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, col])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        m[r] = (m[r] * _inv_mod_py(m[r, col], p)) % p
        factors = m[:, col].copy()
        factors[r] = 0
        hit = np.nonzero(factors)[0]
        if hit.size:
            m[hit] = (m[hit] - (factors[hit, None] * m[r][None, :]) % p) % p
        r += 1
    return m, r


if HAS_NUMBA:

    @njit(cache=True)
    def _inv_mod_nb(x, p):
        t, new_t = 0, 1
        r, new_r = p, x % p
        while new_r != 0:
            q = r // new_r
            t, new_t = new_t, t - q * new_t
            r, new_r = new_r, r - q * new_r
        if t < 0:
            t += p
        return t

    @njit(cache=True)
    def _rref_modp_nb(m, p):
        rows, cols = m.shape
        for i in range(rows):
            for j in range(cols):
                m[i, j] %= p
        r = 0
        for col in range(cols):
            if r == rows:
                break
            piv = -1
            for i in range(r, rows):
                if m[i, col] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(cols):
                    tmp = m[r, j]
                    m[r, j] = m[piv, j]
                    m[piv, j] = tmp
            inv = _inv_mod_nb(m[r, col], p)
            for j in range(col, cols):
                m[r, j] = (m[r, j] * inv) % p
            for i in range(rows):
                if i == r:
                    continue
                f = m[i, col]
                if f == 0:
                    continue
                for j in range(col, cols):
                    m[i, j] = (m[i, j] - f * m[r, j]) % p
            r += 1
        return r


def rref_modp_numba(a: np.ndarray, p: int) -> tuple[np.ndarray, int]:
    if not HAS_NUMBA:
        raise RuntimeError("numba is not available")
    m = np.array(a, dtype=np.int64)
    r = _rref_modp_nb(m, np.int64(p))
    return m, int(r)


def using_numba() -> bool:
    return HAS_NUMBA and numba_requested()


def rref_modp(a: np.ndarray, p: int) -> tuple[np.ndarray, int]:
    if using_numba():
        return rref_modp_numba(a, p)
    return rref_modp_numpy(a, p)


def rank_modp(a: np.ndarray, p: int) -> int:
    if a.size == 0:
        return 0
    return rref_modp(a, p)[1]
