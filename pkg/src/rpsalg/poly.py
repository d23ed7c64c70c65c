"""Commutative non-associative polynomials.

A monomial is a binary tree whose leaves are variables.  Bracketing is part
of the monomial: ``(x1*x2)*x3`` and ``x1*(x2*x3)`` are different.  Because
the algebras are commutative, each tree is kept in a canonical form where at
every product node the smaller child (by degree, then by serialization)
comes first.
"""

from __future__ import annotations

import math
import random
from collections.abc import Iterable, Mapping, Sequence
from types import MappingProxyType

from .algebra import AlgebraElement, MonadAlgebra
from .errors import (
    AlgebraError,
    ArityMismatch,
    CapExceeded,
    FieldMismatch,
    PolySyntaxError,
    UnknownVariable,
)
from .field import FieldElement, FieldSpec, Rationals
from .syntax import Interpreter, Scalar, parse_ast

DEFAULT_ENUM_CAP = 10


class Monomial:
    """Immutable binary tree.  Leaves carry a 0-based variable index."""

    __slots__ = ("var", "left", "right", "degree", "key", "vars", "_hash")

    def __init__(self, var=None, left=None, right=None):
        self.var = var
        self.left = left
        self.right = right
        if var is not None:
            self.degree = 1
            self.key = f"x{var + 1}"
            self.vars = (var,)
        else:
            self.degree = left.degree + right.degree
            self.key = f"({left.key}*{right.key})"
            self.vars = tuple(sorted(left.vars + right.vars))
        self._hash = hash(self.key)

    @property
    def is_leaf(self) -> bool:
        return self.var is not None

    def sort_key(self):
        return (self.degree, self.key)

    def variables(self) -> tuple[int, ...]:
        """Sorted multiset of variable indices."""
        return self.vars

    def is_canonical(self) -> bool:
        if self.is_leaf:
            return True
        return (
            self.left.sort_key() <= self.right.sort_key()
            and self.left.is_canonical()
            and self.right.is_canonical()
        )

    def __eq__(self, other):
        return isinstance(other, Monomial) and self.key == other.key

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __hash__(self):
        return self._hash

    def __str__(self):
        k = self.key
        return k[1:-1] if not self.is_leaf else k

    def __repr__(self):
        return f"Monomial({self})"


def Leaf(var: int) -> Monomial:
    if var < 0:
        raise ValueError("variable index must be non-negative")
    return Monomial(var=var)


def Product(left: Monomial, right: Monomial) -> Monomial:
    """Raw (not canonicalized) product node."""
    return Monomial(left=left, right=right)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    """Canonical product of two canonical monomials."""
    if b.sort_key() < a.sort_key():
        a, b = b, a
    return Monomial(left=a, right=b)


def canonicalize(tree: Monomial) -> Monomial:
    if tree.is_leaf:
        return tree
    return mono_mul(canonicalize(tree.left), canonicalize(tree.right))


def relabel(tree: Monomial, mapping) -> Monomial:
    """Rename variables via ``mapping(index) -> index`` and re-canonicalize."""
    if tree.is_leaf:
        return Leaf(mapping(tree.var))
    return mono_mul(relabel(tree.left, mapping), relabel(tree.right, mapping))


# --- polynomials -----------------------------------------------------------


class Polynomial:
    """Sparse linear combination of canonical monomials with nonzero coefficients."""

    __slots__ = ("field", "arity", "_terms")

    def __init__(self, field: FieldSpec, arity: int, terms: Mapping | Iterable = ()):
        self.field = field
        self.arity = arity
        acc: dict[Monomial, object] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        F = field
        for mono, c in items:
            if isinstance(c, FieldElement):
                c = c.value
            mono = mono if mono.is_canonical() else canonicalize(mono)
            if mono.variables()[-1] >= arity:
                raise UnknownVariable(f"{mono} uses a variable beyond arity {arity}")
            if mono in acc:
                acc[mono] = F.add(acc[mono], c)
            else:
                acc[mono] = c
        self._terms = {m: c for m, c in acc.items() if not F.is_zero(c)}

    @classmethod
    def variable(cls, field: FieldSpec, index: int, arity: int | None = None) -> Polynomial:
        return cls(field, arity if arity is not None else index + 1, {Leaf(index): field.one})

    @property
    def terms(self) -> Mapping[Monomial, object]:
        return MappingProxyType(self._terms)

    def monomials(self) -> list[Monomial]:
        return sorted(self._terms, key=Monomial.sort_key)

    def items(self):
        return [(m, self._terms[m]) for m in self.monomials()]

    def coefficient(self, mono: Monomial) -> FieldElement:
        return FieldElement(self.field, self._terms.get(canonicalize(mono), self.field.zero))

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def degree(self) -> int:
        return max((m.degree for m in self._terms), default=0)

    def is_multilinear(self) -> bool:
        """Every monomial contains each of x1..xm exactly once."""
        want = tuple(range(self.arity))
        return all(m.variables() == want for m in self._terms)

    def is_homogeneous(self, d: int | None = None) -> bool:
        degs = {m.degree for m in self._terms}
        if d is None:
            return len(degs) <= 1
        return degs <= {d}

    def coefficient_sum(self) -> FieldElement:
        F = self.field
        total = F.zero
        for c in self._terms.values():
            total = F.add(total, c)
        return FieldElement(F, total)

    def with_arity(self, arity: int) -> Polynomial:
        return Polynomial(self.field, arity, self._terms)

    def _check(self, other: Polynomial):
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        arity = max(self.arity, other.arity)
        return Polynomial(self.field, arity, list(self._terms.items()) + list(other._terms.items()))

    def __neg__(self):
        F = self.field
        return Polynomial(F, self.arity, {m: F.neg(c) for m, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> Polynomial:
        F = self.field
        raw = c.value if isinstance(c, FieldElement) else F(c).value
        return Polynomial(F, self.arity, {m: F.mul(raw, v) for m, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            F = self.field
            out = []
            for m1, c1 in self._terms.items():
                for m2, c2 in other._terms.items():
                    out.append((mono_mul(m1, m2), F.mul(c1, c2)))
            return Polynomial(F, max(self.arity, other.arity), out)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.field == other.field and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({self.field}, arity={self.arity}, {self})"


def format_polynomial(p: Polynomial) -> str:
    """Canonical text in the input grammar; ``parse`` reads it back."""
    F = p.field
    if p.is_zero():
        return "0"
    out = []
    for m, c in p.items():
        s = F.format(c)
        neg = False
        if s.startswith("-") and not any(ch in s[1:] for ch in "+-"):
            neg, s = True, s[1:]
        if any(ch in s for ch in "+-"):
            s = f"({s})"
        term = str(m) if s == "1" else f"{s}*{m}"
        if out:
            out.append(("- " if neg else "+ ") + term)
        else:
            out.append(("-" if neg else "") + term)
    return " ".join(out)


class _PolyInterpreter(Interpreter):
    def __init__(self, field, arity, assoc):
        super().__init__(field, assoc)
        self.arity = arity
        self.max_var = 0

    def name(self, name, pos):
        if len(name) > 1 and name[0] == "x" and name[1:].isdigit():
            k = int(name[1:])
            if k < 1 or (self.arity is not None and k > self.arity):
                raise UnknownVariable(f"variable {name} outside x1..x{self.arity}", pos)
            self.max_var = max(self.max_var, k)
            return Polynomial.variable(self.field, k - 1)
        return super().name(name, pos)

    def add(self, a, b, pos):
        raise PolySyntaxError("constant terms are not allowed in a polynomial", pos)

    def mul(self, a, b):
        return a * b

    def scale(self, a, raw):
        return a.scale(FieldElement(self.field, raw))


def _strip_comments(text: str) -> str:
    return "\n".join(line.split("#", 1)[0] for line in text.splitlines())


def parse(text: str, arity: int | None = None, field: FieldSpec | None = None, assoc: str | None = None) -> Polynomial:
    """Parse a polynomial in x1..x<arity>.

    Products of three or more unbracketed factors raise AmbiguousProduct
    unless ``assoc="left"``.  ``arity`` defaults to the largest variable used.
    ``#`` starts a comment.
    """
    field = field if field is not None else Rationals()
    if assoc not in (None, "left"):
        raise ValueError("assoc must be None or 'left'")
    interp = _PolyInterpreter(field, arity, assoc)
    v = interp.run(parse_ast(_strip_comments(text)))
    if arity is None:
        arity = max(interp.max_var, 1)
    if isinstance(v, Scalar):
        if not field.is_zero(v.raw):
            raise PolySyntaxError("constant terms are not allowed in a polynomial", 0)
        return Polynomial(field, arity)
    return v.with_arity(arity)


# --- enumeration and counting -----------------------------------------------


def _trees_on(vars_: tuple[int, ...], memo) -> list[Monomial]:
    if vars_ in memo:
        return memo[vars_]
    if len(vars_) == 1:
        out = [Leaf(vars_[0])]
    else:
        out = []
        first, rest = vars_[0], vars_[1:]
        n = len(rest)
        # split into (A, B) with vars_[0] in A and B non-empty
        for mask in range(1 << n):
            a = (first,) + tuple(rest[i] for i in range(n) if mask >> i & 1)
            b = tuple(rest[i] for i in range(n) if not mask >> i & 1)
            if not b:
                continue
            for ta in _trees_on(a, memo):
                for tb in _trees_on(b, memo):
                    out.append(mono_mul(ta, tb))
    memo[vars_] = out
    return out


def enumerate_multilinear_monomials(m: int, cap: int = DEFAULT_ENUM_CAP) -> list[Monomial]:
    """All canonical multilinear monomials on x1..xm, sorted by (degree, text)."""
    if m < 1:
        raise ValueError("m must be positive")
    if m > cap:
        raise CapExceeded(f"m = {m} exceeds the enumeration cap {cap}")
    return sorted(_trees_on(tuple(range(m)), {}), key=Monomial.sort_key)


def one_variable_monomials(d: int) -> list[Monomial]:
    """All canonical monomials of degree ``d`` in the single variable x1."""
    memo: dict[int, list[Monomial]] = {1: [Leaf(0)]}
    for n in range(2, d + 1):
        seen = {}
        for a in range(1, n // 2 + 1):
            for ta in memo[a]:
                for tb in memo[n - a]:
                    t = mono_mul(ta, tb)
                    seen[t.key] = t
        memo[n] = sorted(seen.values(), key=Monomial.sort_key)
    return memo[d]


def catalan(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


COUNT_KINDS = ("assoc_noncomm", "nonassoc_noncomm", "nonassoc_comm")


def count_formula(m: int, kind: str = "nonassoc_comm") -> int:
    """Number of multilinear monomials of degree ``m``:
    ``m!``, ``m! C_{m-1}`` or ``m! C_{m-1} / 2^{m-1}``."""
    if m < 1:
        raise ValueError("m must be positive")
    f = math.factorial(m)
    if kind == "assoc_noncomm":
        return f
    c = math.comb(2 * m - 2, m - 1) // m
    if kind == "nonassoc_noncomm":
        return f * c
    if kind == "nonassoc_comm":
        q, r = divmod(f * c, 2 ** (m - 1))
        assert r == 0
        return q
    raise ValueError(f"unknown kind {kind!r}; expected one of {COUNT_KINDS}")


def random_multilinear(
    m: int,
    field: FieldSpec,
    rng: random.Random,
    max_terms: int = 6,
    coefficient_sum_zero: bool | None = None,
) -> Polynomial:
    """Random multilinear polynomial of degree ``m``.

    With ``coefficient_sum_zero=True`` the last coefficient is adjusted so the
    coefficients sum to zero.
    """
    monos = enumerate_multilinear_monomials(m)
    k = rng.randint(1, min(max_terms, len(monos)))
    chosen = rng.sample(monos, k)
    F = field
    coeffs = [F.random_raw(rng, 5) for _ in chosen]
    if coefficient_sum_zero and k > 1:
        s = F.zero
        for c in coeffs[:-1]:
            s = F.add(s, c)
        coeffs[-1] = F.neg(s)
    return Polynomial(F, m, list(zip(chosen, coeffs)))


# --- evaluation --------------------------------------------------------------


def _check_args(p: Polynomial, args: Sequence[AlgebraElement]) -> MonadAlgebra:
    if len(args) != p.arity:
        raise ArityMismatch(f"polynomial has arity {p.arity}, got {len(args)} arguments")
    if not args:
        raise ArityMismatch("no arguments")
    A = args[0].algebra
    for a in args:
        if a.algebra != A:
            raise AlgebraError("arguments come from different algebras")
    if A.field != p.field:
        raise FieldMismatch(f"polynomial over {p.field}, algebra over {A.field}")
    if not A.commutative:
        raise AlgebraError(f"{A.name} is not commutative; canonical monomials would be unsound")
    return A


def eval_raw(p: Polynomial, A: MonadAlgebra, args: Sequence[tuple]) -> tuple:
    """Evaluate on raw coordinate tuples (no checks)."""
    F = A.field
    memo: dict[str, tuple] = {}
    mul = A.mul_raw

    def ev(t: Monomial):
        v = memo.get(t.key)
        if v is None:
            v = args[t.var] if t.is_leaf else mul(ev(t.left), ev(t.right))
            memo[t.key] = v
        return v

    acc = [F.zero] * A.dim
    for mono, c in p._terms.items():
        v = ev(mono)
        for k, x in enumerate(v):
            if not F.is_zero(x):
                acc[k] = F.add(acc[k], F.mul(c, x))
    return tuple(acc)


def evaluate(p: Polynomial, args: Sequence[AlgebraElement]) -> AlgebraElement:
    A = _check_args(p, args)
    return AlgebraElement(A, eval_raw(p, A, [a.coords for a in args]))


def substitute(outer: Polynomial, inner: Sequence[Polynomial], disjoint: bool = True) -> Polynomial:
    """Formal composition ``outer(inner[0], ..., inner[m-1])``.

    With ``disjoint`` (the default) the variables of ``inner[i]`` are shifted
    into a fresh block after those of ``inner[:i]``; otherwise they are shared.
    """
    if len(inner) != outer.arity:
        raise ArityMismatch(f"outer arity {outer.arity}, got {len(inner)} substitutions")
    F = outer.field
    for q in inner:
        if q.field != F:
            raise FieldMismatch(f"{q.field} vs {F}")
    if disjoint:
        shifted = []
        offset = 0
        for q in inner:
            off = offset
            shifted.append(
                Polynomial(F, off + q.arity, [(relabel(m, lambda v, off=off: v + off), c) for m, c in q._terms.items()])
            )
            offset += q.arity
        arity = offset
    else:
        shifted = list(inner)
        arity = max(q.arity for q in inner)
    memo: dict[str, Polynomial] = {}

    def ev(t: Monomial) -> Polynomial:
        v = memo.get(t.key)
        if v is None:
            v = shifted[t.var] if t.is_leaf else ev(t.left) * ev(t.right)
            memo[t.key] = v
        return v

    out = []
    for mono, c in outer._terms.items():
        for m2, c2 in ev(mono)._terms.items():
            out.append((m2, F.mul(c, c2)))
    return Polynomial(F, arity, out)


def evaluate_dual(
    p: Polynomial,
    args: Sequence[AlgebraElement],
    index: int,
    direction: AlgebraElement,
) -> tuple[AlgebraElement, AlgebraElement]:
    """Value and directional derivative of ``p`` when ``args[index]`` moves
    along ``direction`` (evaluation over dual numbers F[e]/(e^2))."""
    A = _check_args(p, args)
    if not 0 <= index < p.arity:
        raise ArityMismatch(f"direction index {index} outside 0..{p.arity - 1}")
    if direction.algebra != A:
        raise AlgebraError("direction must lie in the same algebra")
    F = A.field
    zero = (F.zero,) * A.dim
    mul = A.mul_raw

    def add(u, v):
        return tuple(F.add(a, b) for a, b in zip(u, v))

    memo: dict[str, tuple] = {}

    def ev(t: Monomial):
        v = memo.get(t.key)
        if v is None:
            if t.is_leaf:
                v = (args[t.var].coords, direction.coords if t.var == index else zero)
            else:
                a, da = ev(t.left)
                b, db = ev(t.right)
                v = (mul(a, b), add(mul(a, db), mul(da, b)))
            memo[t.key] = v
        return v

    val = [F.zero] * A.dim
    der = [F.zero] * A.dim
    for mono, c in p._terms.items():
        v, dv = ev(mono)
        for k in range(A.dim):
            val[k] = F.add(val[k], F.mul(c, v[k]))
            der[k] = F.add(der[k], F.mul(c, dv[k]))
    return AlgebraElement(A, tuple(val)), AlgebraElement(A, tuple(der))


def jacobian_columns(p: Polynomial, args: Sequence[AlgebraElement]) -> list[tuple]:
    """Derivatives along every coordinate direction of every argument."""
    A = args[0].algebra
    cols = []
    for i in range(p.arity):
        for e in A.basis():
            cols.append(evaluate_dual(p, args, i, e)[1].coords)
    return cols
