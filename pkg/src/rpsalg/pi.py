"""Polynomial identities of finite-dimensional algebras.

A multilinear polynomial vanishes on an algebra iff it vanishes on every
tuple of basis elements, so checking is a finite sweep and finding all
multilinear identities of degree m is a nullspace computation with one
unknown per multilinear monomial and ``d**(m+1)`` equations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import AlgebraElement, MonadAlgebra
from .errors import CapExceeded, NotMultilinear
from .field import Rationals
from .kernel import GenericSweep, IntSweep, decode, make_sweep
from .linalg import RowEchelon
from .poly import (
    Monomial,
    Polynomial,
    count_formula,
    enumerate_multilinear_monomials,
)

DEFAULT_PI_CAP = 1 << 24


@dataclass
class PIReport:
    polynomial: Polynomial
    algebra: MonadAlgebra
    is_pi: bool
    counterexample: tuple[tuple[int, ...], AlgebraElement] | None
    tuples_checked: int
    integer_certified: bool
    engine: str = ""
    exceptional_primes: tuple[int, ...] = ()
    sampled: bool = False

    def counterexample_args(self) -> tuple[AlgebraElement, ...] | None:
        if self.counterexample is None:
            return None
        basis = self.algebra.basis()
        return tuple(basis[i] for i in self.counterexample[0])

    def to_json(self) -> dict:
        A = self.algebra
        ce = None
        if self.counterexample is not None:
            idx, val = self.counterexample
            ce = {"tuple": [A.labels[i] for i in idx], "value": str(val)}
        return {
            "polynomial": str(self.polynomial),
            "algebra": A.name,
            "field": str(A.field),
            "is_pi": self.is_pi,
            "counterexample": ce,
            "tuples_checked": self.tuples_checked,
            "integer_certified": self.integer_certified,
            "exceptional_primes": list(self.exceptional_primes),
            "sampled": self.sampled,
        }


def _certifiable(sweep, A: MonadAlgebra) -> bool:
    return isinstance(sweep, IntSweep) and sweep.modulus == 0 and isinstance(A.field, Rationals)


def _prime_divisors(vec) -> tuple[int, ...]:
    from math import gcd

    from sympy import primefactors

    g = 0
    for x in vec:
        g = gcd(g, int(x))
    return tuple(primefactors(g)) if g else ()


def _report_hit(p, A, sweep, code, checked, sampled=False) -> PIReport:
    d, m = A.dim, p.arity
    raw = sweep.value(code)
    val = AlgebraElement(A, raw)
    primes: tuple[int, ...] = ()
    if _certifiable(sweep, A):
        primes = _prime_divisors(sweep.eval_codes([code])[0])
    return PIReport(p, A, False, (decode(code, d, m), val), checked, _certifiable(sweep, A),
                    sweep.engine, primes, sampled)


def is_pi(
    p: Polynomial,
    A: MonadAlgebra,
    cap: int = DEFAULT_PI_CAP,
    exhaustive: bool = False,
    workers: int = 1,
) -> PIReport:
    """Sweep all ``d**m`` basis tuples in odometer order.

    Over Q with integer coefficients and integer structure constants the
    sweep runs in exact integers and ``integer_certified`` is set: a zero
    result then holds over every field with the same structure constants, and
    a nonzero value fails everywhere except over F_q for the primes q listed
    in ``exceptional_primes``.
    """
    if not p.is_multilinear():
        raise NotMultilinear(f"{p} is not multilinear; the basis-tuple criterion does not apply")
    total = A.dim**p.arity
    if total > cap and not exhaustive:
        raise CapExceeded(f"{total} basis tuples exceed the cap {cap}; pass exhaustive=True")
    sweep = make_sweep(p, A)
    code = sweep.first_nonzero(0, total, workers=workers)
    if code >= 0:
        return _report_hit(p, A, sweep, code, code + 1)
    return PIReport(p, A, True, None, total, _certifiable(sweep, A), sweep.engine)


def random_pi_check(p: Polynomial, A: MonadAlgebra, samples: int = 100_000, seed: int = 0) -> PIReport:
    """Evaluate ``samples`` basis tuples drawn by ``numpy.random.default_rng(seed)``.

    A pass is evidence, not proof; ``sampled`` is set on the report.
    """
    if not p.is_multilinear():
        raise NotMultilinear(f"{p} is not multilinear")
    total = A.dim**p.arity
    rng = np.random.default_rng(seed)
    codes = rng.integers(0, total, size=samples, dtype=np.int64)
    sweep = make_sweep(p, A)
    if isinstance(sweep, IntSweep):
        vals = sweep.eval_codes(codes)
        nz = np.flatnonzero(vals.any(axis=1))
        if nz.size:
            return _report_hit(p, A, sweep, int(codes[nz[0]]), int(nz[0]) + 1, sampled=True)
    else:
        F = A.field
        for i, c in enumerate(codes):
            if any(not F.is_zero(x) for x in sweep.value(int(c))):
                return _report_hit(p, A, sweep, int(c), i + 1, sampled=True)
    return PIReport(p, A, True, None, samples, False, sweep.engine, sampled=True)


@dataclass
class NullspaceBasis:
    """All multilinear identities of degree ``m``: coefficient vectors over
    ``monomials`` spanning the solution space of the evaluation system."""

    degree: int
    algebra: MonadAlgebra
    monomials: list[Monomial]
    vectors: list[list]
    shape: tuple[int, int]
    rank: int

    @property
    def dimension(self) -> int:
        return len(self.vectors)

    def polynomials(self) -> list[Polynomial]:
        F = self.algebra.field
        return [Polynomial(F, self.degree, list(zip(self.monomials, v))) for v in self.vectors]

    def coefficient_vector(self, p: Polynomial) -> list:
        F = self.algebra.field
        index = {m: i for i, m in enumerate(self.monomials)}
        v = [F.zero] * len(self.monomials)
        for mono, c in p.terms.items():
            if mono not in index:
                raise NotMultilinear(f"{mono} is not a degree-{self.degree} multilinear monomial")
            v[index[mono]] = c
        return v

    def contains(self, p: Polynomial) -> bool:
        """Exact membership of ``p``'s coefficient vector in the span."""
        ech = RowEchelon(self.algebra.field, len(self.monomials))
        for v in self.vectors:
            ech.add(v)
        return ech.contains(self.coefficient_vector(p))


def find_multilinear_pis(m: int, A: MonadAlgebra, cap: int = DEFAULT_PI_CAP) -> NullspaceBasis:
    """Nullspace of the ``d**(m+1) x N`` evaluation system, N the number of
    commutative non-associative multilinear monomials of degree m.

    Rows are generated tuple block by tuple block and fed into an incremental
    row reduction; the full system is never stored.
    """
    d = A.dim
    total = d**m
    if total * d > cap:
        raise CapExceeded(f"{total * d} equations exceed the cap {cap}")
    monos = enumerate_multilinear_monomials(m)
    N = len(monos)
    F = A.field
    ech = RowEchelon(F, N)
    single = [Polynomial(F, m, [(mono, F.one)]) for mono in monos]
    sweeps = [make_sweep(q, A) for q in single]
    if all(isinstance(s, IntSweep) for s in sweeps):
        chunk = max(1, (1 << 16) // N)
        for lo in range(0, total, chunk):
            codes = np.arange(lo, min(total, lo + chunk), dtype=np.int64)
            # block[t, k, j] = coordinate k of monomial j at tuple t
            block = np.stack([s.eval_codes(codes) for s in sweeps], axis=2)
            rows = block.reshape(-1, N)
            rows = rows[rows.any(axis=1)]
            if rows.size:
                rows = np.unique(rows, axis=0)
                for r in rows:
                    ech.add(tuple(F.from_int(int(x)) for x in r))
                    if ech.rank == N:
                        break
            if ech.rank == N:
                break
    else:
        for code in range(total):
            vals = [s.value(code) for s in sweeps]
            for k in range(d):
                ech.add(tuple(v[k] for v in vals))
            if ech.rank == N:
                break
    return NullspaceBasis(m, A, monos, ech.nullspace(), (total * d, N), ech.rank)


def pi_existence_threshold(d: int, kind: str = "nonassoc_comm") -> int:
    """Smallest m whose monomial count exceeds ``d**(m+1)``; at that degree
    a d-dimensional algebra must have a nonzero multilinear identity."""
    if d < 1:
        raise ValueError("d must be positive")
    m = 1
    while count_formula(m, kind) <= d ** (m + 1):
        m += 1
    return m


__all__ = [
    "PIReport",
    "NullspaceBasis",
    "is_pi",
    "random_pi_check",
    "find_multilinear_pis",
    "pi_existence_threshold",
    "GenericSweep",
]
