"""Basis-tuple sweeps: evaluate a multilinear polynomial on every tuple of
basis elements (or a chosen subset of tuples).

Tuples are addressed by odometer codes: the digits of ``code`` in base ``d``,
most significant first, are the basis indices of x1, ..., xm.

Two engines exist.  ``IntSweep`` handles polynomials with integer
coefficients on algebras with integer structure constants, over Q (exact
int64, after an overflow bound check) or F_p (int64 mod p).  It runs on the
compiled extension ``_ckernel`` when it was built, else on the numpy
implementation in ``_kernel_py``; set ``RPSALG_PURE_PYTHON=1`` to force the
latter.  Everything else goes through ``GenericSweep``, which works on raw
field values.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _kernel_py
from .algebra import MonadAlgebra
from .field import PrimeField, Rationals
from .poly import Monomial, Polynomial

_backend = _kernel_py
BACKEND = "numpy"
if not os.environ.get("RPSALG_PURE_PYTHON"):
    try:
        from . import _ckernel as _backend  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on the build
        pass

_INT_LIMIT = 1 << 62
# F_p sweeps keep every intermediate below 2**62 for d <= 16
_MAX_KERNEL_MODULUS = 1 << 24
_MAX_KERNEL_DIM = 16
DEFAULT_CHUNK = 1 << 18


def backends() -> dict:
    """Available kernel implementations by name."""
    out = {"numpy": _kernel_py}
    try:
        from . import _ckernel

        out["cython"] = _ckernel
    except ImportError:  # pragma: no cover
        pass
    return out


def compile_program(p: Polynomial):
    """Postfix encoding of each monomial: var index, or -1 for a product."""
    ops: list[int] = []
    offsets = [0]

    def emit(t: Monomial):
        if t.is_leaf:
            ops.append(t.var)
        else:
            emit(t.left)
            emit(t.right)
            ops.append(-1)

    monos = p.monomials()
    for mono in monos:
        emit(mono)
        offsets.append(len(ops))
    return np.array(ops, dtype=np.int32), np.array(offsets, dtype=np.int64), monos


def decode(code: int, d: int, m: int) -> tuple[int, ...]:
    digits = []
    for _ in range(m):
        code, r = divmod(code, d)
        digits.append(r)
    return tuple(reversed(digits))


def encode(indices, d: int) -> int:
    code = 0
    for i in indices:
        code = code * d + i
    return code


class GenericSweep:
    """Pure-Python sweep over arbitrary fields."""

    engine = "generic"

    def __init__(self, p: Polynomial, A: MonadAlgebra):
        self.p = p
        self.A = A
        self.d = A.dim
        self.m = p.arity
        self.total = self.d**self.m
        self.modulus = None
        self._basis = [e.coords for e in A.basis()]
        self._mono = A.monomial_table()
        self._terms = list(p.items())

    def value(self, code: int) -> tuple:
        """Raw coordinates of p at the basis tuple ``code``."""
        digits = decode(code, self.d, self.m)
        A, F = self.A, self.A.field
        if self._mono is None:
            from .poly import eval_raw

            return eval_raw(self.p, A, [self._basis[i] for i in digits])
        pidx, pcoef = self._mono
        acc = [F.zero] * self.d
        memo = {}

        def ev(t):
            v = memo.get(t.key)
            if v is None:
                if t.is_leaf:
                    v = (digits[t.var], F.one)
                else:
                    ia, ca = ev(t.left)
                    ib, cb = ev(t.right)
                    if ia < 0 or ib < 0 or pidx[ia][ib] < 0:
                        v = (-1, F.zero)
                    else:
                        v = (pidx[ia][ib], F.mul(F.mul(ca, cb), pcoef[ia][ib]))
                memo[t.key] = v
            return v

        for mono, c in self._terms:
            k, v = ev(mono)
            if k >= 0:
                acc[k] = F.add(acc[k], F.mul(c, v))
        return tuple(acc)

    def values(self, codes):
        return [self.value(int(c)) for c in codes]

    def first_nonzero(self, start=0, stop=None, workers=1):
        stop = self.total if stop is None else stop
        F = self.A.field
        for code in range(start, stop):
            if any(not F.is_zero(x) for x in self.value(code)):
                return code
        return -1


@dataclass
class _IntProgram:
    ops: np.ndarray
    offsets: np.ndarray
    coeffs: np.ndarray
    table: np.ndarray
    pidx: np.ndarray
    pcoef: np.ndarray
    monomial_mode: int


class IntSweep:
    """Sweep in int64 arithmetic (exact over Z, or modulo a prime)."""

    def __init__(self, p: Polynomial, A: MonadAlgebra, backend=None):
        F = A.field
        if p.field != F:
            raise ValueError("field mismatch")
        itab = A.integer_table()
        if itab is None:
            raise ValueError("structure constants are not integers")
        coeffs = [F.as_int(c) for _, c in p.items()]
        if any(c is None for c in coeffs):
            raise ValueError("coefficients are not integers")
        d = A.dim
        if d > _MAX_KERNEL_DIM:
            raise ValueError("dimension too large for the kernel")
        if isinstance(F, PrimeField):
            mod = F.p
            if mod >= _MAX_KERNEL_MODULUS:
                raise ValueError("modulus too large for the kernel")
        elif isinstance(F, Rationals):
            mod = 0
            B = max(sum(abs(c) for c in vec) for row in itab for vec in row)
            bound = sum(abs(c) for c in coeffs) * max(B, 1) ** max(p.degree() - 1, 0)
            if bound >= _INT_LIMIT:
                raise ValueError("values could overflow int64")
        else:
            raise ValueError(f"no integer kernel for {F}")
        ops, offsets, _ = compile_program(p)
        table = np.array(itab, dtype=np.int64).reshape(d, d, d)
        if mod:
            table %= mod
            coeffs = [c % mod for c in coeffs]
        mono = A.monomial_table()
        if mono is not None:
            pidx = np.array(mono[0], dtype=np.int64)
            pcoef = np.array([[F.as_int(c) for c in row] for row in mono[1]], dtype=np.int64)
            if mod:
                pcoef %= mod
        else:
            pidx = np.full((d, d), -1, dtype=np.int64)
            pcoef = np.zeros((d, d), dtype=np.int64)
        self.p = p
        self.A = A
        self.d = d
        self.m = p.arity
        self.total = d**self.m
        self.modulus = mod
        self.engine = "int" if mod == 0 else f"mod {mod}"
        self.backend = backend if backend is not None else _backend
        self.program = _IntProgram(
            ops, offsets, np.array(coeffs, dtype=np.int64), table, pidx, pcoef, int(mono is not None)
        )

    def _args(self):
        g = self.program
        return (g.ops, g.offsets, g.coeffs, g.table, g.pidx, g.pcoef, g.monomial_mode, self.d, self.m, self.modulus)

    def eval_codes(self, codes) -> np.ndarray:
        """int64 array (n, d) of values at the given codes."""
        return self.backend.eval_codes(*self._args(), np.asarray(codes, dtype=np.int64))

    def to_raw(self, vec) -> tuple:
        F = self.A.field
        return tuple(F.from_int(int(x)) for x in vec)

    def value(self, code: int) -> tuple:
        return self.to_raw(self.eval_codes([code])[0])

    def values(self, codes):
        return [self.to_raw(v) for v in self.eval_codes(codes)]

    def first_nonzero(self, start=0, stop=None, workers=1, chunk=DEFAULT_CHUNK):
        """Smallest code in [start, stop) with a nonzero value, or -1.

        With ``workers > 1`` chunks are evaluated on a thread pool in waves;
        the answer is still the smallest such code.
        """
        stop = self.total if stop is None else stop
        args = self._args()
        chunks = [(lo, min(stop, lo + chunk)) for lo in range(start, stop, chunk)]
        if workers <= 1:
            for lo, hi in chunks:
                found = self.backend.first_nonzero(*args, lo, hi)
                if found >= 0:
                    return int(found)
            return -1
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for w in range(0, len(chunks), workers):
                wave = chunks[w : w + workers]
                results = list(pool.map(lambda c: self.backend.first_nonzero(*args, c[0], c[1]), wave))
                hits = [r for r in results if r >= 0]
                if hits:
                    return int(min(hits))
        return -1

    def iter_chunks(self, start=0, stop=None, chunk=DEFAULT_CHUNK):
        """Yield ``(codes, values)`` blocks over [start, stop)."""
        stop = self.total if stop is None else stop
        for lo in range(start, stop, chunk):
            codes = np.arange(lo, min(stop, lo + chunk), dtype=np.int64)
            yield codes, self.eval_codes(codes)


def make_sweep(p: Polynomial, A: MonadAlgebra, prefer_int: bool = True):
    """The fastest engine that can evaluate ``p`` on ``A`` exactly."""
    if prefer_int:
        try:
            return IntSweep(p, A)
        except ValueError:
            pass
    return GenericSweep(p, A)
