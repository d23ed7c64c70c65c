import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import F3, F7, F25, Q, QW
from rpsalg import classify as cl
from rpsalg.algebra import MonadAlgebra, good_basis, m0_subalgebra, mtilde_subalgebra, rps_algebra, sc, trace
from rpsalg.errors import CapExceeded, NotMultilinear, SmallCharacteristic, TheoremViolation
from rpsalg.poly import parse, random_multilinear

G = "(x1*x2)*x3 - (x1*x3)*x2"
F_PI = "(x1*x2)*(x3*x4) - (x1*x3)*(x2*x4)"


@pytest.mark.parametrize("F", [Q, QW, F7], ids=str)
def test_g_is_m0_everywhere(F):
    g = parse(G, 3, F)
    assert cl.classify_image(g, rps_algebra(F)).theorem_label == cl.LABEL_M0
    assert cl.classify_image(g, m0_subalgebra(F)).theorem_label == cl.LABEL_M0
    r = cl.classify_image(g, mtilde_subalgebra(F))
    assert r.tag == "Plane"
    if F.has_omega:
        assert r.theorem_label == cl.LABEL_UV


def test_full_span_witnesses():
    M = rps_algebra(Q)
    p = parse("2*(x1*x2)*x3 - (x1*x3)*x2")
    r = cl.classify_image(p, M)
    assert r.theorem_label == cl.LABEL_M and r.coefficient_sum == 1
    assert r.verify_witnesses(p) and len(r.witnesses) == 4
    Mt = mtilde_subalgebra(QW)
    r = cl.classify_image(parse("x1*x2", 2, QW), Mt)
    assert r.theorem_label == cl.LABEL_DENSE and r.verify_witnesses(parse("x1*x2", 2, QW))


def test_zero_image():
    r = cl.classify_image(parse(F_PI), m0_subalgebra(Q))
    assert r.tag == "Zero" and r.theorem_label == cl.LABEL_ZERO and r.dimension == 0


def test_char3_line():
    p = parse("x1*(x2*x3) + x2*(x1*x3) + x3*(x1*x2)", 3, F3)
    r = cl.classify_image(p, rps_algebra(F3))
    assert r.theorem_label == cl.LABEL_LINE_PRS
    assert cl.classify_image(p, m0_subalgebra(F3)).theorem_label in cl.OUTCOMES["M0"]


def test_line_labels():
    M = rps_algebra(QW)
    U, V, _ = good_basis(QW)
    assert cl._line_label_m(None, M, cl.normalize(U), []) == cl.LABEL_LINE_W
    assert cl._line_label_m(None, M, cl.normalize(V), []) == cl.LABEL_LINE_W2
    with pytest.raises(TheoremViolation):
        cl._line_label_m(None, M, M.parse("P-R"), [])


def test_no_omega_mtilde_is_unlabelled():
    r = cl.classify_image(parse(G), mtilde_subalgebra(Q))
    assert r.theorem_label is None and r.dimension == 2


def test_generic_algebra_gets_span_only():
    z, o = Q.zero, Q.one
    A = MonadAlgebra(Q, ("a", "b"), [[(o, z), (z, o)], [(z, o), (z, z)]], name="A")
    r = cl.classify_image(parse(G), A)
    assert r.theorem_label is None and "generic" in r.notes[0]


def test_violation_on_corrupted_table():
    # P*P = 2P breaks idempotency and g then leaves M0
    M = rps_algebra(Q)
    table = [list(row) for row in M.table]
    table[1][1] = (Q.zero, Q.from_int(2), Q.zero, Q.zero)
    bad = MonadAlgebra(Q, M.labels, table, unit_index=0, name="M", kind="M")
    with pytest.raises(TheoremViolation) as info:
        cl.classify_image(parse(G), bad)
    assert info.value.witnesses


def test_span_cap_and_partial_report():
    with pytest.raises(CapExceeded) as info:
        cl.basis_span(parse(F_PI), m0_subalgebra(Q), cap=4)
    assert info.value.partial is not None and info.value.partial.tuples_visited == 4
    rep = cl.basis_span(parse("x1*x2"), rps_algebra(Q), cap=4**2)
    assert rep.exhausted and rep.dimension == 4
    part = cl.basis_span(parse(F_PI), m0_subalgebra(Q), cap=4, allow_partial=True)
    assert not part.exhausted


def test_early_stop_when_span_is_full():
    # sweeps go chunk by chunk, so stopping shows up once 4**10 exceeds one chunk
    p = parse("*".join(f"x{i}" for i in range(1, 11)), assoc="left")
    rep = cl.basis_span(p, rps_algebra(Q))
    assert rep.dimension == 4 and rep.exhausted and rep.tuples_visited < 4**10


def test_not_multilinear():
    with pytest.raises(NotMultilinear):
        cl.classify_image(parse("x1*x1"), rps_algebra(Q))


@pytest.mark.parametrize("F", [F7, QW], ids=str)
def test_witness_integrity(F):
    algs = [rps_algebra(F), m0_subalgebra(F), mtilde_subalgebra(F)]

    @settings(max_examples=40)
    @given(st.integers(1, 3), st.booleans(), st.randoms(use_true_random=False))
    def check(m, zero_sum, rnd):
        p = random_multilinear(m, F, rnd, coefficient_sum_zero=zero_sum)
        for A in algs:
            r = cl.classify_image(p, A)
            assert r.verify_witnesses(p)
            assert r.theorem_label in cl.OUTCOMES[A.kind]
            if r.coefficient_sum.is_zero():
                for b in r.basis:
                    x = A.embedding(b) if A.embedding is not None else b
                    assert sc(x) == 0 and trace(x) == 0

    check()


def test_json_is_deterministic():
    p = parse(G, 3, QW)
    M = rps_algebra(QW)
    a = json.dumps(cl.classify_image(p, M).to_json(p, M), sort_keys=True, ensure_ascii=False)
    b = json.dumps(cl.classify_image(p, M).to_json(p, M), sort_keys=True, ensure_ascii=False)
    assert a == b
    data = json.loads(a)
    assert data["class"] == "Plane" and data["theorem_label"] == cl.LABEL_M0 and data["span_dim"] == 2


def test_estimate_dimension():
    M = rps_algebra(Q)
    assert cl.estimate_dimension(parse(G), M) == 2
    assert cl.estimate_dimension(parse("x1"), M) == 4
    assert cl.estimate_dimension(parse("(x1*x1)*(x1*x1) - x1*(x1*(x1*x1))"), M) <= 2
    assert cl.estimate_dimension(parse("x1*x2 - x2*x1"), M) == 0
    with pytest.raises(SmallCharacteristic):
        cl.estimate_dimension(parse("(x1*x2)*x3"), rps_algebra(F3))
    assert cl.estimate_dimension(parse("x1*x2", 2, F25), rps_algebra(F25)) == 4
