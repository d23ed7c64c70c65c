# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled basis-tuple sweep.

Evaluates a compiled polynomial program on basis tuples given by their
odometer codes (variable 0 is the most significant digit).  Arithmetic is in
int64, either exact (modulus 0, caller guarantees no overflow) or mod p.

Programs are postfix: an op >= 0 pushes that variable, -1 multiplies the top
two stack entries.
"""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free

cnp.import_array()

ctypedef long long i64


cdef inline i64 _red(i64 x, i64 mod) noexcept nogil:
    if mod == 0:
        return x
    x = x % mod
    if x < 0:
        x += mod
    return x


cdef void _eval_one(
    i64 code,
    const int* ops,
    const i64* offsets,
    const i64* coeffs,
    Py_ssize_t nmono,
    const i64* table,
    const i64* pidx,
    const i64* pcoef,
    int monomial_mode,
    int d,
    int m,
    i64 mod,
    int* digits,
    i64* stack,
    int* sidx,
    i64* out,
) noexcept nogil:
    cdef int i, k, sp, op, ia, ib, ik
    cdef i64 a, b, c, t, ci
    cdef Py_ssize_t pos
    for i in range(m - 1, -1, -1):
        digits[i] = <int>(code % d)
        code //= d
    for k in range(d):
        out[k] = 0
    if monomial_mode:
        for i in range(nmono):
            sp = 0
            for pos in range(offsets[i], offsets[i + 1]):
                op = ops[pos]
                if op >= 0:
                    sidx[sp] = digits[op]
                    stack[sp] = 1
                    sp += 1
                    continue
                sp -= 1
                ia = sidx[sp - 1]
                ib = sidx[sp]
                ik = -1
                if ia >= 0 and ib >= 0:
                    ik = <int>pidx[ia * d + ib]
                if ik < 0:
                    sidx[sp - 1] = -1
                    stack[sp - 1] = 0
                else:
                    c = pcoef[ia * d + ib]
                    t = stack[sp - 1] * stack[sp]
                    if mod:
                        t = _red(t, mod)
                    if c != 1:
                        t = _red(t * c, mod)
                    stack[sp - 1] = t
                    sidx[sp - 1] = ik
            if sidx[0] >= 0:
                out[sidx[0]] = _red(out[sidx[0]] + coeffs[i] * stack[0], mod)
        return
    for i in range(nmono):
        sp = 0
        for pos in range(offsets[i], offsets[i + 1]):
            op = ops[pos]
            if op >= 0:
                for k in range(d):
                    stack[sp * d + k] = 0
                stack[sp * d + digits[op]] = 1
                sp += 1
                continue
            sp -= 1
            # product goes to scratch slot sp + 1, then back to sp - 1
            for k in range(d):
                stack[(sp + 1) * d + k] = 0
            for ia in range(d):
                a = stack[(sp - 1) * d + ia]
                if a == 0:
                    continue
                for ib in range(d):
                    b = stack[sp * d + ib]
                    if b == 0:
                        continue
                    t = _red(a * b, mod)
                    for k in range(d):
                        c = table[(ia * d + ib) * d + k]
                        if c != 0:
                            stack[(sp + 1) * d + k] = _red(stack[(sp + 1) * d + k] + t * c, mod)
            for k in range(d):
                stack[(sp - 1) * d + k] = stack[(sp + 1) * d + k]
        ci = coeffs[i]
        for k in range(d):
            if stack[k] != 0:
                out[k] = _red(out[k] + ci * stack[k], mod)


def _max_depth(const int[::1] ops):
    cdef Py_ssize_t i
    cdef int sp = 0, best = 0
    for i in range(ops.shape[0]):
        if ops[i] >= 0:
            sp += 1
            if sp > best:
                best = sp
        else:
            sp -= 1
    return best


def eval_codes(ops, offsets, coeffs, table, pidx, pcoef, int monomial_mode, int d, int m, i64 mod, codes):
    """Values (n x d int64) of the program at each tuple code."""
    cdef const int[::1] ops_v = np.ascontiguousarray(ops, dtype=np.int32)
    cdef const i64[::1] off_v = np.ascontiguousarray(offsets, dtype=np.int64)
    cdef const i64[::1] co_v = np.ascontiguousarray(coeffs, dtype=np.int64)
    cdef const i64[:, :, ::1] tab_v = np.ascontiguousarray(table, dtype=np.int64)
    cdef const i64[:, ::1] pidx_v = np.ascontiguousarray(pidx, dtype=np.int64)
    cdef const i64[:, ::1] pcoef_v = np.ascontiguousarray(pcoef, dtype=np.int64)
    cdef const i64[::1] codes_v = np.ascontiguousarray(codes, dtype=np.int64)
    cdef Py_ssize_t n = codes_v.shape[0], r
    result = np.zeros((n, d), dtype=np.int64)
    cdef i64[:, ::1] res_v = result
    cdef int depth = _max_depth(ops_v) + 2
    cdef int* digits = <int*>malloc(m * sizeof(int))
    cdef i64* stack = <i64*>malloc(depth * d * sizeof(i64))
    cdef int* sidx = <int*>malloc(depth * sizeof(int))
    if digits == NULL or stack == NULL or sidx == NULL:
        free(digits); free(stack); free(sidx)
        raise MemoryError()
    try:
        with nogil:
            for r in range(n):
                _eval_one(codes_v[r], &ops_v[0], &off_v[0], &co_v[0], co_v.shape[0], &tab_v[0, 0, 0],
                          &pidx_v[0, 0], &pcoef_v[0, 0], monomial_mode, d, m, mod,
                          digits, stack, sidx, &res_v[r, 0])
    finally:
        free(digits); free(stack); free(sidx)
    return result


def first_nonzero(ops, offsets, coeffs, table, pidx, pcoef, int monomial_mode, int d, int m, i64 mod, i64 start, i64 stop):
    """Smallest code in [start, stop) with a nonzero value, or -1."""
    cdef const int[::1] ops_v = np.ascontiguousarray(ops, dtype=np.int32)
    cdef const i64[::1] off_v = np.ascontiguousarray(offsets, dtype=np.int64)
    cdef const i64[::1] co_v = np.ascontiguousarray(coeffs, dtype=np.int64)
    cdef const i64[:, :, ::1] tab_v = np.ascontiguousarray(table, dtype=np.int64)
    cdef const i64[:, ::1] pidx_v = np.ascontiguousarray(pidx, dtype=np.int64)
    cdef const i64[:, ::1] pcoef_v = np.ascontiguousarray(pcoef, dtype=np.int64)
    cdef int depth = _max_depth(ops_v) + 2
    cdef int* digits = <int*>malloc(m * sizeof(int))
    cdef i64* stack = <i64*>malloc(depth * d * sizeof(i64))
    cdef int* sidx = <int*>malloc(depth * sizeof(int))
    cdef i64* out = <i64*>malloc(d * sizeof(i64))
    cdef i64 code, found = -1
    cdef int k, nz
    if digits == NULL or stack == NULL or sidx == NULL or out == NULL:
        free(digits); free(stack); free(sidx); free(out)
        raise MemoryError()
    try:
        with nogil:
            code = start
            while code < stop:
                _eval_one(code, &ops_v[0], &off_v[0], &co_v[0], co_v.shape[0], &tab_v[0, 0, 0],
                          &pidx_v[0, 0], &pcoef_v[0, 0], monomial_mode, d, m, mod,
                          digits, stack, sidx, out)
                nz = 0
                for k in range(d):
                    if out[k] != 0:
                        nz = 1
                        break
                if nz:
                    found = code
                    break
                code += 1
    finally:
        free(digits); free(stack); free(sidx); free(out)
    return found
