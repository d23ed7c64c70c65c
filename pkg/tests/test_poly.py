import random
from fractions import Fraction
from itertools import permutations
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import F7, Q, QW
from rpsalg.algebra import m0_subalgebra, rps_algebra
from rpsalg.errors import AmbiguousProduct, ArityMismatch, CapExceeded, PolySyntaxError, UnknownVariable
from rpsalg.field import PrimeField
from rpsalg.poly import (
    Leaf,
    Polynomial,
    Product,
    canonicalize,
    count_formula,
    enumerate_multilinear_monomials,
    evaluate,
    evaluate_dual,
    jacobian_columns,
    one_variable_monomials,
    parse,
    random_multilinear,
    substitute,
)

# --- independent tree oracle (nested tuples) -------------------------------


def bracketings(items):
    """All full binary bracketings of an ordered sequence."""
    if len(items) == 1:
        yield items[0]
        return
    for k in range(1, len(items)):
        for a in bracketings(items[:k]):
            for b in bracketings(items[k:]):
                yield (a, b)


def oracle_canon(t):
    if isinstance(t, int):
        return t
    a, b = sorted((oracle_canon(t[0]), oracle_canon(t[1])), key=repr)
    return (a, b)


def as_tuple(mono):
    return mono.var if mono.is_leaf else (as_tuple(mono.left), as_tuple(mono.right))


@pytest.mark.parametrize("m", range(1, 7))
def test_enumeration_matches_brute_force(m):
    brute = set()
    for perm in permutations(range(m)):
        for t in bracketings(list(perm)):
            brute.add(oracle_canon(t))
    lib = enumerate_multilinear_monomials(m)
    assert len(lib) == len(brute) == count_formula(m)
    assert {oracle_canon(as_tuple(x)) for x in lib} == brute
    assert all(x.is_canonical() for x in lib)
    assert [x.sort_key() for x in lib] == sorted(x.sort_key() for x in lib)


def test_counts():
    assert [count_formula(m) for m in range(1, 8)] == [1, 1, 3, 15, 105, 945, 10395]
    assert [count_formula(m, "assoc_noncomm") for m in range(1, 6)] == [factorial(m) for m in range(1, 6)]
    assert count_formula(4, "nonassoc_noncomm") == 24 * 5
    with pytest.raises(ValueError):
        count_formula(3, "lie")
    with pytest.raises(CapExceeded):
        enumerate_multilinear_monomials(11)


def wedderburn_etherington(n):
    a = [0, 1]
    for k in range(2, n + 1):
        if k % 2:
            s = sum(a[i] * a[k - i] for i in range(1, (k + 1) // 2))
        else:
            h = k // 2
            s = sum(a[i] * a[k - i] for i in range(1, h)) + a[h] * (a[h] + 1) // 2
        a.append(s)
    return a[n]


@pytest.mark.parametrize("d", range(1, 9))
def test_one_variable_counts(d):
    assert len(one_variable_monomials(d)) == wedderburn_etherington(d)


# --- canonicalization soundness -------------------------------------------


@st.composite
def raw_trees(draw, m=4):
    leaves = draw(st.permutations(list(range(m))))
    leaves = leaves[: draw(st.integers(1, m))]

    def build(items):
        if len(items) == 1:
            return Leaf(items[0])
        k = draw(st.integers(1, len(items) - 1))
        return Product(build(items[:k]), build(items[k:]))

    return build(leaves)


@settings(max_examples=1000)
@given(raw_trees(), st.randoms(use_true_random=False))
def test_canonicalization_sound_over_f7(tree, rnd):
    # the raw tree and its canonical form agree on random elements of a commutative algebra
    M = rps_algebra(F7)
    args = [M.random(rnd) for _ in range(4)]

    def raw_eval(t):
        return args[t.var] if t.is_leaf else raw_eval(t.left) * raw_eval(t.right)

    c = canonicalize(tree)
    assert c.is_canonical()
    assert raw_eval(tree) == raw_eval(c)
    assert canonicalize(c) == c


# --- parsing ----------------------------------------------------------------


def test_parse_basics():
    g = parse("(x1*x2)*x3 - (x1*x3)*x2")
    assert g.arity == 3 and len(g) == 2 and g.is_multilinear()
    assert g.coefficient_sum() == 0
    assert parse("x2*x1") == parse("x1*x2")
    assert parse("x1*x2 - x2*x1").is_zero()
    assert parse("x1*x2*x3", assoc="left") == parse("(x1*x2)*x3")
    assert parse("x1 # a comment\n + x1").coefficient(Leaf(0)) == 2
    assert parse("2/3*x1", field=F7).coefficient(Leaf(0)) == F7("2/3")
    assert parse("(1+w)*x1", field=QW).coefficient_sum() == QW("1+w")


def test_parse_unicode():
    assert parse("x1·x2 − x2·x1").is_zero()
    assert parse("ω*x1", field=QW) == parse("w*x1", field=QW)


@pytest.mark.parametrize(
    "text, exc",
    [
        ("x1*x2*x3", AmbiguousProduct),
        ("x1 + 1", PolySyntaxError),
        ("x1 + ", PolySyntaxError),
        ("x1 * (x2", PolySyntaxError),
        ("y1", UnknownVariable),
        ("x0", UnknownVariable),
        ("x1/x2", PolySyntaxError),
    ],
)
def test_parse_errors(text, exc):
    with pytest.raises(exc):
        parse(text)


def test_arity_checks():
    with pytest.raises(UnknownVariable):
        parse("x3", arity=2)
    assert parse("x1", arity=3).arity == 3
    p = parse("x1*x2")
    M = rps_algebra(Q)
    with pytest.raises(ArityMismatch):
        evaluate(p, [M.e("P")])


def test_w_rejected_without_omega():
    with pytest.raises(Exception):
        parse("w*x1", field=Q)


@pytest.mark.parametrize("F", [Q, F7, QW], ids=str)
def test_print_parse_round_trip(F):
    @settings(max_examples=150)
    @given(st.integers(1, 5), st.randoms(use_true_random=False))
    def check(m, rnd):
        p = random_multilinear(m, F, rnd)
        assert parse(str(p), m, F) == p

    check()


def test_non_multilinear_round_trip():
    p = parse("3*(x1*x1)*(x1*x1) - x1*(x1*(x1*x1))")
    assert not p.is_multilinear() and p.degree() == 4
    assert parse(str(p), 1) == p


# --- evaluation ---------------------------------------------------------------


def test_evaluation_examples():
    M = rps_algebra(Q)
    x = M.parse("P+R-2*S")
    assert evaluate(parse("x1*x1"), [x]) == M.parse("3*P-3*R")
    assert evaluate(parse("(x1*x1)*(x1*x1)"), [x]) == M.parse("9*R-9*P")
    g = parse("(x1*x2)*x3 - (x1*x3)*x2")
    assert evaluate(g, [M.e("P"), M.e("R"), M.e("S")]) == M.parse("S-R")
    ga = parse("(x1*x2)*x3 - x1*(x2*x3)")
    assert evaluate(ga, [M.e("P"), M.e("R"), M.e("S")]) == M.parse("S-P")


def test_composed_identity_shape():
    g = parse("(x1*x2)*x3 - (x1*x3)*x2")
    f = parse("(x1*x2)*(x3*x4) - (x1*x3)*(x2*x4)")
    F12 = substitute(f, [g] * 4)
    assert F12.arity == 12 and F12.is_multilinear() and F12.degree() == 12
    assert len(F12) == 32


@settings(max_examples=60)
@given(st.randoms(use_true_random=False))
def test_substitute_evaluate_compatible(rnd):
    M = rps_algebra(F7)
    outer = random_multilinear(rnd.randint(1, 3), F7, rnd)
    inner = [random_multilinear(rnd.randint(1, 2), F7, rnd) for _ in range(outer.arity)]
    comp = substitute(outer, inner)
    blocks, args = [], []
    for q in inner:
        b = [M.random(rnd) for _ in range(q.arity)]
        blocks.append(evaluate(q, b))
        args += b
    assert evaluate(comp, args) == evaluate(outer, blocks)
    shared = substitute(outer, [q.with_arity(2) for q in inner], disjoint=False)
    xs = [M.random(rnd) for _ in range(2)]
    assert evaluate(shared, xs) == evaluate(outer, [evaluate(q.with_arity(2), xs) for q in inner])


def test_dual_matches_two_point_difference_f31():
    # multilinear: p(.., x_i + d, ..) - p(..) is exactly the directional derivative
    F = PrimeField(31)
    M = rps_algebra(F)
    rng = random.Random(5)
    for _ in range(100):
        p = random_multilinear(rng.randint(1, 4), F, rng)
        args = [M.random(rng) for _ in range(p.arity)]
        i = rng.randrange(p.arity)
        d = M.random(rng)
        moved = list(args)
        moved[i] = args[i] + d
        val, der = evaluate_dual(p, args, i, d)
        assert val == evaluate(p, args)
        assert der == evaluate(p, moved) - evaluate(p, args)


def lagrange_derivative_at_zero(values):
    """d/dt at t=0 of the interpolant through (k, values[k]), k = 0..n."""
    n = len(values) - 1
    total = None
    for k, v in enumerate(values):
        # L_k'(0) for nodes 0..n
        if k == 0:
            w = sum(Fraction(-1, j) for j in range(1, n + 1))
        else:
            num = 1
            for j in range(1, n + 1):
                if j != k:
                    num *= -j
            den = 1
            for j in range(n + 1):
                if j != k:
                    den *= k - j
            w = Fraction(num, den)
        term = v.scale(Q(w))
        total = term if total is None else total + term
    return total


def test_dual_matches_finite_differences_one_variable():
    M = rps_algebra(Q)
    rng = random.Random(2)
    for deg in (2, 3, 4, 5):
        for mono in one_variable_monomials(deg):
            p = Polynomial(Q, 1, [(mono, 1)])
            x, d = M.random(rng), M.random(rng)
            vals = [evaluate(p, [x + d.scale(Q(t))]) for t in range(deg + 1)]
            assert evaluate_dual(p, [x], 0, d)[1] == lagrange_derivative_at_zero(vals)


@settings(max_examples=100)
@given(st.randoms(use_true_random=False))
def test_dual_is_additive_in_direction(rnd):
    M = rps_algebra(QW)
    p = random_multilinear(rnd.randint(1, 3), QW, rnd)
    args = [M.random(rnd) for _ in range(p.arity)]
    i = rnd.randrange(p.arity)
    d1, d2 = M.random(rnd), M.random(rnd)
    a = evaluate_dual(p, args, i, d1)[1]
    b = evaluate_dual(p, args, i, d2)[1]
    assert evaluate_dual(p, args, i, d1 + d2)[1] == a + b


def test_jacobian_shape():
    M0 = m0_subalgebra(Q)
    p = parse("x1*x2")
    cols = jacobian_columns(p, [M0.e("PmR"), M0.e("RmS")])
    assert len(cols) == 4 and all(len(c) == 2 for c in cols)


def test_polynomial_algebra_ops():
    a, b = parse("x1*x2"), parse("x1")
    assert (a - a).is_zero()
    assert (a.scale(Q(2)) + a).coefficient(next(iter(a.terms))) == 3
    prod = a * b
    assert prod.degree() == 3 and not prod.is_multilinear()
    with pytest.raises(TypeError):
        a.terms[next(iter(a.terms))] = 5
