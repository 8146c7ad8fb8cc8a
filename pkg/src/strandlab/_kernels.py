"""Tensor-word kernels: Koszul-signed permutations and signed derivations.

A batch of sparse tensors is three parallel arrays: ``ids`` (which vector a
term belongs to), ``words`` (N x d letter indices) and ``coeffs`` (int64).
Every kernel expands a batch term-by-term; :func:`merge` then collapses equal
(id, word) pairs. Coefficients stay integral, so int64 is exact as long as
callers keep magnitudes small (checked in :func:`check_headroom`).

Set ``STRAND_JIT=0`` to force the pure-numpy path.
"""

from __future__ import annotations

import os

import numpy as np

_COEFF_LIMIT = 1 << 52


def _want_jit() -> bool:
    return os.environ.get("STRAND_JIT", "1").strip().lower() not in ("0", "false", "no", "off")


try:  # pragma: no cover - exercised implicitly
    import numba
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    numba = None
    HAVE_NUMBA = False


# ---------------------------------------------------------------- numpy path

def _perms_numpy(ids, words, coeffs, perms, psigns, parity):
    n, d = words.shape
    p = perms.shape[0]
    if n == 0 or p == 0:
        return ids[:0], words[:0], coeffs[:0]
    odd = parity[words]                               # n x d
    out_words = np.empty((n, p, d), dtype=np.int64)
    rows = np.arange(n)[:, None]
    sign = np.empty((n, p), dtype=np.int64)
    for t in range(p):
        sigma = perms[t]
        out_words[rows, t, sigma[None, :]] = words
        inv = np.zeros(n, dtype=np.int64)
        for k in range(d):
            for l in range(k + 1, d):
                if sigma[k] > sigma[l]:
                    inv += odd[:, k] & odd[:, l]
        sign[:, t] = psigns[t] * (1 - 2 * (inv & 1))
    out_coeffs = (coeffs[:, None] * sign).reshape(-1)
    return np.repeat(ids, p), out_words.reshape(-1, d), out_coeffs


def _derive_numpy(ids, words, coeffs, ptr, dst, val, op_parity, parity):
    n, d = words.shape
    if n == 0:
        return ids[:0], words[:0], coeffs[:0]
    odd_before = np.zeros(n, dtype=np.int64)
    out_i, out_w, out_c = [], [], []
    nletters = len(ptr) - 1
    for k in range(d):
        col = words[:, k]
        for src in range(nletters):
            lo, hi = ptr[src], ptr[src + 1]
            if lo == hi:
                continue
            mask = col == src
            if not mask.any():
                continue
            sgn = np.ones(mask.sum(), dtype=np.int64)
            if op_parity:
                sgn = 1 - 2 * (odd_before[mask] & 1)
            base_w = words[mask]
            base_c = coeffs[mask] * sgn
            base_i = ids[mask]
            for e in range(lo, hi):
                w2 = base_w.copy()
                w2[:, k] = dst[e]
                out_w.append(w2)
                out_c.append(base_c * val[e])
                out_i.append(base_i)
        odd_before = odd_before + parity[col]
    if not out_w:
        return ids[:0], words[:0], coeffs[:0]
    return np.concatenate(out_i), np.concatenate(out_w), np.concatenate(out_c)


# ---------------------------------------------------------------- numba path

if HAVE_NUMBA:
    @numba.njit(cache=True)
    def _perms_jit(ids, words, coeffs, perms, psigns, parity):
        n, d = words.shape
        p = perms.shape[0]
        out_i = np.empty(n * p, dtype=np.int64)
        out_w = np.empty((n * p, d), dtype=np.int64)
        out_c = np.empty(n * p, dtype=np.int64)
        for a in range(n):
            for t in range(p):
                row = a * p + t
                inv = 0
                for k in range(d):
                    out_w[row, perms[t, k]] = words[a, k]
                    if parity[words[a, k]]:
                        for l in range(k + 1, d):
                            if parity[words[a, l]] and perms[t, k] > perms[t, l]:
                                inv += 1
                out_c[row] = coeffs[a] * psigns[t] * (1 - 2 * (inv & 1))
                out_i[row] = ids[a]
        return out_i, out_w, out_c

    @numba.njit(cache=True)
    def _derive_jit(ids, words, coeffs, ptr, dst, val, op_parity, parity):
        n, d = words.shape
        total = 0
        for a in range(n):
            for k in range(d):
                src = words[a, k]
                total += ptr[src + 1] - ptr[src]
        out_i = np.empty(total, dtype=np.int64)
        out_w = np.empty((total, d), dtype=np.int64)
        out_c = np.empty(total, dtype=np.int64)
        row = 0
        for a in range(n):
            odd = 0
            for k in range(d):
                src = words[a, k]
                sgn = 1
                if op_parity and (odd & 1):
                    sgn = -1
                for e in range(ptr[src], ptr[src + 1]):
                    for j in range(d):
                        out_w[row, j] = words[a, j]
                    out_w[row, k] = dst[e]
                    out_c[row] = coeffs[a] * val[e] * sgn
                    out_i[row] = ids[a]
                    row += 1
                odd += parity[src]
        return out_i, out_w, out_c


def use_jit() -> bool:
    return HAVE_NUMBA and _want_jit()


def apply_perms(ids, words, coeffs, perms, psigns, parity):
    """Expand every term by every permutation (with its sign and Koszul sign).

    The permutation sends slot k to slot ``perms[t, k]``.
    """
    check_headroom(coeffs, np.abs(psigns).max() if len(psigns) else 1)
    if use_jit():
        return _perms_jit(ids, words, coeffs, perms, psigns, parity)
    return _perms_numpy(ids, words, coeffs, perms, psigns, parity)


def apply_letter_op(ids, words, coeffs, ptr, dst, val, op_parity, parity):
    """Derivation extension of a letter operator given in CSR form.

    Odd operators pick up (-1)^(number of odd letters before the slot).
    """
    check_headroom(coeffs, np.abs(val).max() if len(val) else 1)
    if use_jit():
        return _derive_jit(ids, words, coeffs, ptr, dst, val, int(op_parity), parity)
    return _derive_numpy(ids, words, coeffs, ptr, dst, val, int(op_parity), parity)


def encode(words, base: int):
    d = words.shape[1]
    key = np.zeros(words.shape[0], dtype=np.int64)
    for k in range(d):
        key = key * base + words[:, k]
    return key


def decode(keys, base: int, d: int):
    keys = np.asarray(keys, dtype=np.int64)
    out = np.empty((len(keys), d), dtype=np.int64)
    k = keys.copy()
    for j in range(d - 1, -1, -1):
        out[:, j] = k % base
        k //= base
    return out


def merge(ids, words, coeffs, base: int):
    """Sum coefficients of equal (id, word) terms; drop zeros.

    Returns (ids, keys, coeffs) with keys the base-``base`` word encoding.
    """
    if len(coeffs) == 0:
        e = np.zeros(0, dtype=np.int64)
        return e, e, e
    keys = encode(words, base)
    nwords = base ** words.shape[1]
    combo = ids * nwords + keys if nwords < (1 << 40) else None
    if combo is not None:
        uniq, inv = np.unique(combo, return_inverse=True)
        sums = np.zeros(len(uniq), dtype=np.int64)
        np.add.at(sums, inv, coeffs)
        nz = sums != 0
        uniq, sums = uniq[nz], sums[nz]
        return uniq // nwords, uniq % nwords, sums
    order = np.lexsort((keys, ids))
    ids, keys, coeffs = ids[order], keys[order], coeffs[order]
    out_i, out_k, out_c = [], [], []
    for a, k, c in zip(ids.tolist(), keys.tolist(), coeffs.tolist()):
        if out_i and out_i[-1] == a and out_k[-1] == k:
            out_c[-1] += c
        else:
            out_i.append(a); out_k.append(k); out_c.append(c)
    arr = np.array([x for x in zip(out_i, out_k, out_c) if x[2]], dtype=np.int64).reshape(-1, 3)
    return arr[:, 0], arr[:, 1], arr[:, 2]


def check_headroom(coeffs, factor):
    if len(coeffs) and int(np.abs(coeffs).max()) * int(factor) > _COEFF_LIMIT:
        raise OverflowError("tensor coefficients too large for the int64 kernels")
