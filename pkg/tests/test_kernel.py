import random

import numpy as np
import pytest

from conftest import F7, Q, QW
from rpsalg import kernel
from rpsalg.algebra import MonadAlgebra, m0_subalgebra, mtilde_subalgebra, rps_algebra
from rpsalg.field import PrimeField
from rpsalg.kernel import GenericSweep, IntSweep, decode, encode, make_sweep
from rpsalg.poly import Polynomial, Leaf, parse, random_multilinear

BACKENDS = kernel.backends()


def test_backend_selection():
    assert kernel.BACKEND in BACKENDS
    assert "numpy" in BACKENDS


def test_codes_round_trip():
    for code in range(4**3):
        assert encode(decode(code, 4, 3), 4) == code
    assert decode(1, 4, 3) == (0, 0, 1)  # x1 is the most significant digit


def dense_algebra(F):
    # structure constants that are not monomial: e_i e_j = e_i + e_j (i != j), e_i^2 = e_i
    d = 3
    table = []
    for i in range(d):
        row = []
        for j in range(d):
            v = [0] * d
            v[i] += 1
            if i != j:
                v[j] += 1
            row.append(tuple(F.from_int(c) for c in v))
        table.append(row)
    return MonadAlgebra(F, ("a", "b", "c"), table, name="D")


ALGEBRAS = [
    ("M/Q", lambda: rps_algebra(Q)),
    ("M/F7", lambda: rps_algebra(F7)),
    ("M0/Q", lambda: m0_subalgebra(Q)),
    ("M0/F7", lambda: m0_subalgebra(F7)),
    ("Mt/F7", lambda: mtilde_subalgebra(F7)),
    ("D/Q", lambda: dense_algebra(Q)),
    ("D/F7", lambda: dense_algebra(F7)),
]


@pytest.mark.parametrize("name, make", ALGEBRAS, ids=[a[0] for a in ALGEBRAS])
def test_backends_agree_with_generic(name, make):
    A = make()
    F = A.field
    rng = random.Random(11)
    for _ in range(15):
        m = rng.randint(1, 4)
        p = random_multilinear(m, F, rng)
        # integer coefficients so the int engine applies
        p = Polynomial(F, m, [(mono, F.from_int(rng.randint(-4, 4))) for mono, _ in p.items()])
        gen = GenericSweep(p, A)
        codes = np.arange(gen.total, dtype=np.int64)
        expect = gen.values(codes)
        for bname, be in BACKENDS.items():
            try:
                s = IntSweep(p, A, backend=be)
            except ValueError:
                continue
            assert s.values(codes) == expect, bname
            fn = s.first_nonzero()
            assert fn == gen.first_nonzero(), bname


def test_first_nonzero_respects_window_and_workers():
    M = rps_algebra(Q)
    p = parse("(x1*x2)*(x3*x4) - (x1*x3)*(x2*x4)")
    s = IntSweep(p, M)
    first = s.first_nonzero()
    assert first >= 0
    assert s.first_nonzero(first + 1) > first
    assert s.first_nonzero(0, first) == -1
    assert s.first_nonzero(workers=3, chunk=7) == first


def test_generic_engine_for_omega_field():
    M = rps_algebra(QW)
    p = parse("(1+w)*x1*x2", field=QW)
    assert isinstance(make_sweep(p, M), GenericSweep)


def test_overflow_guard_falls_back():
    # coefficient size forces the bound past int64
    M = rps_algebra(Q)
    p = Polynomial(Q, 2, [(parse("x1*x2").monomials()[0], 2**62)])
    assert isinstance(make_sweep(p, M), GenericSweep)
    with pytest.raises(ValueError):
        IntSweep(p, M)


def test_large_prime_uses_generic():
    F = PrimeField(2**31 - 1)
    M = rps_algebra(F)
    p = Polynomial(F, 1, [(Leaf(0), 1)])
    assert isinstance(make_sweep(p, M), GenericSweep)


def test_modular_reduction_negative_coefficients():
    M = rps_algebra(F7)
    p = parse("-3*x1*x2 + 10*x2*x2", field=F7)
    gen = GenericSweep(p, M)
    s = IntSweep(p, M)
    codes = np.arange(16)
    assert s.values(codes) == gen.values(codes)


@pytest.mark.skipif("cython" not in BACKENDS, reason="compiled kernel not built")
def test_cython_matches_numpy_on_twelve_variable_prefix():
    from rpsalg.verify import composed_identity

    M = rps_algebra(Q)
    p = composed_identity()
    codes = np.random.default_rng(0).integers(0, 4**12, size=20000, dtype=np.int64)
    a = IntSweep(p, M, backend=BACKENDS["cython"]).eval_codes(codes)
    b = IntSweep(p, M, backend=BACKENDS["numpy"]).eval_codes(codes)
    assert np.array_equal(a, b) and not a.any()


def test_env_forces_numpy_fallback():
    import os
    import subprocess
    import sys

    env = dict(os.environ, RPSALG_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "from rpsalg import kernel; print(kernel.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "numpy"
