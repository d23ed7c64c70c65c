"""Numpy implementation of the basis-tuple sweep (fallback for the compiled
kernel).  Same signatures and results as ``_ckernel``; vectorized over tuple
codes instead of looping per tuple.
"""

import numpy as np


def _digits(codes, d, m):
    out = np.empty((m, codes.shape[0]), dtype=np.int64)
    c = codes.copy()
    for i in range(m - 1, -1, -1):
        out[i] = c % d
        c //= d
    return out


def _red(x, mod):
    return x % mod if mod else x


def eval_codes(ops, offsets, coeffs, table, pidx, pcoef, monomial_mode, d, m, mod, codes):
    codes = np.ascontiguousarray(codes, dtype=np.int64)
    n = codes.shape[0]
    digits = _digits(codes, d, m)
    ops = np.asarray(ops)
    offsets = np.asarray(offsets)
    coeffs = np.asarray(coeffs, dtype=np.int64)
    if monomial_mode:
        # sentinel index d stands for a zero product
        pidx_ext = np.full((d + 1, d + 1), d, dtype=np.int64)
        pidx_ext[:d, :d] = np.where(np.asarray(pidx) < 0, d, pidx)
        pcoef_ext = np.zeros((d + 1, d + 1), dtype=np.int64)
        pcoef_ext[:d, :d] = pcoef
        out = np.zeros(n * (d + 1), dtype=np.int64)
        rows = np.arange(n, dtype=np.int64) * (d + 1)
        for i in range(coeffs.shape[0]):
            stack = []
            for op in ops[offsets[i]:offsets[i + 1]]:
                if op >= 0:
                    stack.append((digits[op], None))
                else:
                    ib, cb = stack.pop()
                    ia, ca = stack.pop()
                    k = pidx_ext[ia, ib]
                    c = pcoef_ext[ia, ib]
                    if ca is not None:
                        c = _red(c * ca, mod)
                    if cb is not None:
                        c = _red(c * cb, mod)
                    stack.append((k, c))
            k, c = stack[0]
            contrib = np.full(n, coeffs[i], dtype=np.int64) if c is None else _red(coeffs[i] * c, mod)
            np.add.at(out, rows + k, contrib)
            if mod:
                out %= mod
        return out.reshape(n, d + 1)[:, :d].copy()
    table = np.asarray(table, dtype=np.int64)
    flat = table.reshape(d * d, d)
    eye = np.eye(d, dtype=np.int64)
    out = np.zeros((n, d), dtype=np.int64)
    for i in range(coeffs.shape[0]):
        stack = []
        for op in ops[offsets[i]:offsets[i + 1]]:
            if op >= 0:
                stack.append(eye[digits[op]])
            else:
                b = stack.pop()
                a = stack.pop()
                outer = _red(a[:, :, None] * b[:, None, :], mod).reshape(n, d * d)
                stack.append(_red(outer @ flat, mod))
        out = _red(out + coeffs[i] * stack[0], mod)
    return out


def first_nonzero(ops, offsets, coeffs, table, pidx, pcoef, monomial_mode, d, m, mod, start, stop, chunk=1 << 18):
    for lo in range(start, stop, chunk):
        hi = min(stop, lo + chunk)
        vals = eval_codes(ops, offsets, coeffs, table, pidx, pcoef, monomial_mode, d, m, mod,
                          np.arange(lo, hi, dtype=np.int64))
        nz = np.flatnonzero(vals.any(axis=1))
        if nz.size:
            return int(lo + nz[0])
    return -1
