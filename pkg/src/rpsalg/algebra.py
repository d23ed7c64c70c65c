"""Finite-dimensional monad algebras given by structure constants.

The rock-paper-scissors algebra M has basis (1, P, R, S): 1 is the unit,
every basis element is idempotent and a product of two distinct moves is the
winner (R.P = P, P.S = S, S.R = R).  Its subalgebras M0 (trace and scalar
part both zero) and Mtilde (no unit component) are built as standalone
algebras carrying an embedding into M.
"""

from __future__ import annotations

import json
import random
from collections.abc import Sequence
from dataclasses import dataclass, field as dc_field

from .errors import (
    AlgebraError,
    CharThree,
    FieldMismatch,
    NoOmega,
    NotApplicable,
    NotASubalgebra,
    ParseError,
    UnknownVariable,
)
from .field import FieldElement, FieldSpec
from .linalg import rank, solve
from .syntax import Interpreter, Scalar, parse_ast

RPS_LABELS = ("1", "P", "R", "S")

# winner of each unordered pair of distinct moves
_RPS_WINNER = {
    frozenset("PR"): "P",
    frozenset("PS"): "S",
    frozenset("RS"): "R",
}


class MonadAlgebra:
    """Algebra over ``field`` with basis ``labels`` and ``table[i][j]`` equal to
    the coordinates of ``E_i * E_j``.

    ``kind`` tags the named algebras ("M", "M0", "Mtilde"); user-supplied
    algebras leave it as None.  ``embedding`` is an ``AlgebraMap`` into a parent
    algebra for subalgebras.
    """

    def __init__(
        self,
        field: FieldSpec,
        labels: Sequence[str],
        table: Sequence[Sequence[Sequence]],
        unit_index: int | None = None,
        *,
        name: str | None = None,
        kind: str | None = None,
        embedding: AlgebraMap | None = None,
    ):
        d = len(labels)
        if d == 0:
            raise AlgebraError("algebra must have positive dimension")
        if len(set(labels)) != d:
            raise AlgebraError(f"basis labels must be distinct: {labels}")
        if len(table) != d or any(len(row) != d for row in table):
            raise AlgebraError("structure table must be d x d")
        if any(len(c) != d for row in table for c in row):
            raise AlgebraError("every structure constant vector must have length d")
        self.field = field
        self.labels = tuple(labels)
        self.dim = d
        self.table = tuple(tuple(tuple(c) for c in row) for row in table)
        self.unit_index = unit_index
        self.name = name or "A"
        self.kind = kind
        self.embedding = embedding
        F = field
        self.commutative = all(
            self.table[i][j] == self.table[j][i] for i in range(d) for j in range(i + 1, d)
        )
        if unit_index is not None:
            for j in range(d):
                e = self._unit_vector(j)
                if self.table[unit_index][j] != e or self.table[j][unit_index] != e:
                    raise AlgebraError(f"{labels[unit_index]} is not a two-sided unit")
        self._sparse = tuple(
            tuple(
                tuple((k, c) for k, c in enumerate(self.table[i][j]) if not F.is_zero(c))
                for j in range(d)
            )
            for i in range(d)
        )
        self._index = {lab: i for i, lab in enumerate(self.labels)}

    def _unit_vector(self, j):
        F = self.field
        return tuple(F.one if k == j else F.zero for k in range(self.dim))

    # --- elements ---------------------------------------------------------
    def element(self, coords) -> AlgebraElement:
        F = self.field
        raw = []
        for c in coords:
            if isinstance(c, FieldElement):
                if c.spec != F:
                    raise FieldMismatch(f"{c.spec} vs {F}")
                raw.append(c.value)
            else:
                raw.append(F(c).value)
        if len(raw) != self.dim:
            raise AlgebraError(f"expected {self.dim} coordinates, got {len(raw)}")
        return AlgebraElement(self, tuple(raw))

    def zero(self) -> AlgebraElement:
        return AlgebraElement(self, (self.field.zero,) * self.dim)

    def one(self) -> AlgebraElement:
        if self.unit_index is None:
            raise NotApplicable(f"{self.name} has no unit")
        return self.basis()[self.unit_index]

    def basis(self) -> list[AlgebraElement]:
        return [AlgebraElement(self, self._unit_vector(j)) for j in range(self.dim)]

    def e(self, label: str) -> AlgebraElement:
        try:
            return AlgebraElement(self, self._unit_vector(self._index[label]))
        except KeyError:
            raise NotApplicable(f"{self.name} has no basis element {label!r}") from None

    def index(self, label: str) -> int:
        return self._index[label]

    def parse(self, text: str) -> AlgebraElement:
        return parse_element(text, self)

    def random(self, rng: random.Random, bound: int = 9) -> AlgebraElement:
        F = self.field
        return AlgebraElement(self, tuple(F.random_raw(rng, bound) for _ in range(self.dim)))

    # --- raw multiplication ---------------------------------------------
    def mul_raw(self, x: Sequence, y: Sequence) -> tuple:
        F = self.field
        acc = [F.zero] * self.dim
        sparse = self._sparse
        for i, a in enumerate(x):
            if F.is_zero(a):
                continue
            row = sparse[i]
            for j, b in enumerate(y):
                if F.is_zero(b):
                    continue
                ab = F.mul(a, b)
                for k, c in row[j]:
                    acc[k] = F.add(acc[k], F.mul(ab, c))
        return tuple(acc)

    # --- structure queries ----------------------------------------------
    def monomial_table(self):
        """If every basis product is ``c * E_k`` or 0, return ``(index, coeff)``
        tables (index -1 for a zero product); otherwise None."""
        d = self.dim
        idx = [[-1] * d for _ in range(d)]
        coef = [[self.field.zero] * d for _ in range(d)]
        for i in range(d):
            for j in range(d):
                entries = self._sparse[i][j]
                if len(entries) > 1:
                    return None
                if entries:
                    idx[i][j], coef[i][j] = entries[0]
        return idx, coef

    def integer_table(self):
        """Structure constants as Python ints, or None if some constant is not
        in the prime ring of the field."""
        F = self.field
        out = []
        for row in self.table:
            r = []
            for c in row:
                v = [F.as_int(x) for x in c]
                if any(x is None for x in v):
                    return None
                r.append(v)
            out.append(r)
        return out

    def root(self) -> tuple[MonadAlgebra, AlgebraMap | None]:
        """Top-level ancestor and the composite embedding into it."""
        if self.embedding is None:
            return self, None
        top, emb = self.embedding.target.root()
        return top, self.embedding if emb is None else emb.compose(self.embedding)

    def __eq__(self, other):
        return (
            isinstance(other, MonadAlgebra)
            and self.field == other.field
            and self.labels == other.labels
            and self.table == other.table
            and self.unit_index == other.unit_index
        )

    def __hash__(self):
        return hash((self.field, self.labels, self.table))

    def __repr__(self):
        return f"MonadAlgebra({self.name}, {self.field}, basis={list(self.labels)})"

    def __str__(self):
        return self.name


class AlgebraElement:
    """Immutable coordinate vector of a ``MonadAlgebra``."""

    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: MonadAlgebra, coords: tuple):
        self.algebra = algebra
        self.coords = coords

    @property
    def field(self) -> FieldSpec:
        return self.algebra.field

    def coordinates(self) -> list[FieldElement]:
        F = self.field
        return [FieldElement(F, c) for c in self.coords]

    def _check(self, other: AlgebraElement):
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise AlgebraError(f"elements of different algebras: {self.algebra} vs {other.algebra}")

    def _scalar(self, s):
        F = self.field
        if isinstance(s, FieldElement):
            if s.spec != F:
                raise FieldMismatch(f"{s.spec} vs {F}")
            return s.value
        return F(s).value

    def scale(self, s) -> AlgebraElement:
        F = self.field
        c = self._scalar(s)
        return AlgebraElement(self.algebra, tuple(F.mul(c, x) for x in self.coords))

    def __add__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        self._check(other)
        F = self.field
        return AlgebraElement(self.algebra, tuple(F.add(a, b) for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        self._check(other)
        F = self.field
        return AlgebraElement(self.algebra, tuple(F.sub(a, b) for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        F = self.field
        return AlgebraElement(self.algebra, tuple(F.neg(a) for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            self._check(other)
            return AlgebraElement(self.algebra, self.algebra.mul_raw(self.coords, other.coords))
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __truediv__(self, other):
        return self.scale(self.field.one_element() / self.field(other))

    def is_zero(self) -> bool:
        F = self.field
        return all(F.is_zero(c) for c in self.coords)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.algebra == other.algebra and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"<{self.algebra.name}: {self}>"


def format_element(x: AlgebraElement) -> str:
    F = x.field
    parts = []
    for lab, c in zip(x.algebra.labels, x.coords):
        if F.is_zero(c):
            continue
        s = F.format(c)
        neg = False
        if s.startswith("-") and not any(ch in s[1:] for ch in "+-"):
            neg, s = True, s[1:]
        if any(ch in s for ch in "+-"):
            s = f"({s})"
        if lab == "1":
            term = s
        elif s == "1":
            term = lab
        else:
            term = f"{s}*{lab}"
        parts.append(("-" if neg else "+", term))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, term in parts[1:]:
        out += f"{sign}{term}"
    return out


class _ElementInterpreter(Interpreter):
    def __init__(self, algebra: MonadAlgebra):
        super().__init__(algebra.field, assoc=None)
        self.algebra = algebra

    def name(self, name, pos):
        if name in self.algebra._index and name not in ("w", "w2"):
            return self.algebra.e(name)
        return super().name(name, pos)

    def add(self, a, b, pos):
        if isinstance(a, Scalar):
            a = self._lift(a, pos)
        if isinstance(b, Scalar):
            b = self._lift(b, pos)
        return a + b

    def _lift(self, s, pos):
        if self.algebra.unit_index is None:
            raise ParseError(f"{self.algebra.name} has no unit to absorb a scalar term", pos)
        return self.algebra.one().scale(FieldElement(self.field, s.raw))

    def mul(self, a, b):
        return a * b

    def scale(self, a, raw):
        return a.scale(FieldElement(self.field, raw))


def parse_element(text: str, algebra: MonadAlgebra) -> AlgebraElement:
    """Parse a linear combination of basis labels, e.g. ``P+R-2*S``.

    A bare scalar means a multiple of the unit.  For subalgebras the labels of
    the parent algebra are accepted too and the result is pulled back.
    """
    ast = parse_ast(text)
    try:
        v = _ElementInterpreter(algebra).run(ast)
    except UnknownVariable:
        if algebra.embedding is None:
            raise
        parent_value = parse_element(text, algebra.embedding.target)
        return algebra.embedding.preimage(parent_value)
    if isinstance(v, Scalar):
        if algebra.field.is_zero(v.raw):
            return algebra.zero()
        return _ElementInterpreter(algebra)._lift(v, 0)
    return v


def random_element(algebra: MonadAlgebra, rng: random.Random, bound: int = 9) -> AlgebraElement:
    return algebra.random(rng, bound)


# --- the named algebras --------------------------------------------------


def rps_algebra(field: FieldSpec, with_unit: bool = True) -> MonadAlgebra:
    """The rock-paper-scissors algebra M (basis 1, P, R, S), or Mtilde
    (basis P, R, S, embedded in M) when ``with_unit`` is false."""
    if not with_unit:
        return mtilde_subalgebra(field)
    F = field
    d = 4
    table = []
    for a in RPS_LABELS:
        row = []
        for b in RPS_LABELS:
            if a == "1":
                prod = b
            elif b == "1" or a == b:
                prod = a
            else:
                prod = _RPS_WINNER[frozenset((a, b))]
            k = RPS_LABELS.index(prod)
            row.append(tuple(F.one if i == k else F.zero for i in range(d)))
        table.append(row)
    return MonadAlgebra(F, RPS_LABELS, table, unit_index=0, name="M", kind="M")


def subalgebra(
    parent: MonadAlgebra,
    generators: Sequence[AlgebraElement],
    labels: Sequence[str],
    *,
    name: str | None = None,
    kind: str | None = None,
) -> MonadAlgebra:
    """The subalgebra of ``parent`` with the given (independent) basis.

    Raises NotASubalgebra if a product of two basis elements leaves their span.
    """
    F = parent.field
    cols = [g.coords for g in generators]
    if rank(F, cols, parent.dim) != len(cols):
        raise AlgebraError("subalgebra generators are linearly dependent")
    table = []
    for gi in generators:
        row = []
        for gj in generators:
            prod = parent.mul_raw(gi.coords, gj.coords)
            coords = solve(F, cols, prod)
            if coords is None:
                raise NotASubalgebra(f"{gi} * {gj} = {AlgebraElement(parent, prod)} leaves the span")
            row.append(tuple(coords))
        table.append(row)
    sub = MonadAlgebra(F, labels, table, name=name, kind=kind)
    sub.embedding = AlgebraMap(sub, parent, [g.coords for g in generators])
    return sub


def mtilde_subalgebra(field: FieldSpec) -> MonadAlgebra:
    """Mtilde: span of P, R, S (the kernel of the scalar part)."""
    M = rps_algebra(field)
    return subalgebra(M, [M.e("P"), M.e("R"), M.e("S")], ("P", "R", "S"), name="Mtilde", kind="Mtilde")


def good_basis(field: FieldSpec) -> tuple[AlgebraElement, AlgebraElement, AlgebraElement]:
    """U, V, W as elements of M.  Needs characteristic != 3 and omega in the field."""
    if field.characteristic == 3:
        raise CharThree("U and V are not defined in characteristic 3")
    if not field.has_omega:
        raise NoOmega(f"{field} has no primitive cube root of unity")
    M = rps_algebra(field)
    F = field
    w = F.omega_raw
    w2 = F.mul(w, w)
    one, two, third = F.one, F.from_int(2), F.inv(F.from_int(3))
    cu = F.mul(F.add(one, F.mul(two, w)), third)
    cv = F.mul(F.add(one, F.mul(two, w2)), third)
    P, R, S = M.e("P"), M.e("R"), M.e("S")

    def el(c):
        return FieldElement(F, c)

    U = (P + R.scale(el(w)) + S.scale(el(w2))).scale(el(cu))
    V = (P + R.scale(el(w2)) + S.scale(el(w))).scale(el(cv))
    W = (P + R + S).scale(el(third))
    return U, V, W


def m0_subalgebra(field: FieldSpec) -> MonadAlgebra:
    """M0 = {x : trace(x) = Sc(x) = 0}.

    Uses the good basis (U, V) when it exists, otherwise the basis
    PmR = P - R, RmS = R - S.
    """
    M = rps_algebra(field)
    if field.characteristic != 3 and field.has_omega:
        U, V, _ = good_basis(field)
        gens, labels = [U, V], ("U", "V")
    else:
        gens = [M.e("P") - M.e("R"), M.e("R") - M.e("S")]
        labels = ("PmR", "RmS")
    return subalgebra(M, gens, labels, name="M0", kind="M0")


def good_basis_in(algebra: MonadAlgebra) -> tuple[AlgebraElement, ...]:
    """U, V, W pulled back into ``algebra`` (only those that lie in it)."""
    U, V, W = good_basis(algebra.field)
    top, emb = algebra.root()
    if top.kind != "M":
        raise NotApplicable(f"{algebra.name} does not live inside M")
    out = []
    for x in (U, V, W):
        out.append(x if emb is None else emb.preimage(x, strict=False))
    return tuple(out)


# --- homomorphisms -------------------------------------------------------


def _to_root(x: AlgebraElement) -> AlgebraElement:
    top, emb = x.algebra.root()
    return x if emb is None else emb(x)


def sc(x: AlgebraElement) -> FieldElement:
    """Scalar part: the coefficient of 1."""
    y = _to_root(x)
    labels = y.algebra.labels
    if "1" not in labels or not set(labels) <= set(RPS_LABELS):
        raise NotApplicable(f"Sc is not defined on {x.algebra.name}")
    return FieldElement(y.field, y.coords[labels.index("1")])


def trace(x: AlgebraElement) -> FieldElement:
    """Sum of the coordinates in the basis 1, P, R, S."""
    y = _to_root(x)
    if not set(y.algebra.labels) <= set(RPS_LABELS):
        raise NotApplicable(f"trace is not defined on {x.algebra.name}")
    F = y.field
    total = F.zero
    for c in y.coords:
        total = F.add(total, c)
    return FieldElement(F, total)


@dataclass(frozen=True)
class Homomorphism:
    """A linear functional that is multiplicative on basis pairs."""

    algebra: MonadAlgebra
    functional: tuple

    def __post_init__(self):
        A, F = self.algebra, self.algebra.field
        f = self.functional
        for i in range(A.dim):
            for j in range(A.dim):
                lhs = self._apply_raw(A.table[i][j])
                if lhs != F.mul(f[i], f[j]):
                    raise AlgebraError(
                        f"functional is not multiplicative on ({A.labels[i]}, {A.labels[j]})"
                    )

    def _apply_raw(self, coords):
        F = self.algebra.field
        total = F.zero
        for a, b in zip(coords, self.functional):
            total = F.add(total, F.mul(a, b))
        return total

    def __call__(self, x: AlgebraElement) -> FieldElement:
        return FieldElement(self.algebra.field, self._apply_raw(x.coords))


def sc_homomorphism(algebra: MonadAlgebra) -> Homomorphism:
    return Homomorphism(algebra, tuple(sc(e).value for e in algebra.basis()))


def trace_homomorphism(algebra: MonadAlgebra) -> Homomorphism:
    return Homomorphism(algebra, tuple(trace(e).value for e in algebra.basis()))


# --- maps and automorphisms ---------------------------------------------


class AlgebraMap:
    """Additive map given by the target coordinates of the images of the
    source basis, optionally semi-linear with respect to the w-conjugation."""

    def __init__(self, source: MonadAlgebra, target: MonadAlgebra, images, conjugate: bool = False):
        if source.field != target.field:
            raise FieldMismatch("source and target must share a field")
        if conjugate and not source.field.has_conjugation:
            raise NotApplicable(f"{source.field} has no w-conjugation")
        if len(images) != source.dim or any(len(v) != target.dim for v in images):
            raise AlgebraError("image matrix has the wrong shape")
        self.source = source
        self.target = target
        self.images = tuple(tuple(v) for v in images)
        self.conjugate = conjugate

    def _apply_raw(self, coords):
        F = self.source.field
        if self.conjugate:
            coords = [F.conj(c) for c in coords]
        acc = [F.zero] * self.target.dim
        for c, img in zip(coords, self.images):
            if F.is_zero(c):
                continue
            for k, v in enumerate(img):
                if not F.is_zero(v):
                    acc[k] = F.add(acc[k], F.mul(c, v))
        return tuple(acc)

    def __call__(self, x: AlgebraElement) -> AlgebraElement:
        if x.algebra != self.source:
            raise AlgebraError(f"{x} is not in {self.source.name}")
        return AlgebraElement(self.target, self._apply_raw(x.coords))

    def preimage(self, y: AlgebraElement, strict: bool = True) -> AlgebraElement | None:
        """Solve ``self(x) == y`` for a linear (non-conjugating) injective map."""
        if self.conjugate:
            raise NotApplicable("preimage of a semi-linear map")
        coords = solve(self.source.field, self.images, y.coords)
        if coords is None:
            if strict:
                raise NotASubalgebra(f"{y} is not in the image of {self.source.name}")
            return None
        return AlgebraElement(self.source, tuple(coords))

    def compose(self, other: AlgebraMap) -> AlgebraMap:
        """``self o other``."""
        if other.target != self.source:
            raise AlgebraError("maps are not composable")
        images = [self._apply_raw(v) for v in other.images]
        return AlgebraMap(other.source, self.target, images, conjugate=self.conjugate != other.conjugate)

    def __pow__(self, n: int) -> AlgebraMap:
        if n < 1:
            raise ValueError("power must be positive")
        result = self
        for _ in range(n - 1):
            result = self.compose(result)
        return result

    def is_identity(self) -> bool:
        if self.source != self.target or self.conjugate:
            return False
        return all(self(e) == e for e in self.source.basis())

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraMap)
            and self.source == other.source
            and self.target == other.target
            and self.images == other.images
            and self.conjugate == other.conjugate
        )

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        imgs = ", ".join(
            f"{lab}->{AlgebraElement(self.target, v)}" for lab, v in zip(self.source.labels, self.images)
        )
        extra = ", w->w^2" if self.conjugate else ""
        return f"AlgebraMap({imgs}{extra})"


def linear_map_from_labels(algebra: MonadAlgebra, assignment: dict[str, str]) -> AlgebraMap:
    """Map sending each basis label to a parsed element (unlisted labels fixed)."""
    images = []
    for lab in algebra.labels:
        images.append(parse_element(assignment.get(lab, lab), algebra).coords)
    return AlgebraMap(algebra, algebra, images)


def _induced(algebra: MonadAlgebra, parent_map_fn) -> AlgebraMap:
    """Restrict an endomorphism of the root algebra to ``algebra``."""
    top, emb = algebra.root()
    pm = parent_map_fn(top)
    if emb is None:
        return pm
    images = []
    for e in algebra.basis():
        img = pm(emb(e))
        pre = emb.preimage(img, strict=False)
        if pre is None:
            raise NotApplicable(f"map does not preserve {algebra.name}")
        images.append(pre.coords)
    return AlgebraMap(algebra, algebra, images, conjugate=pm.conjugate)


def _phi_top(top: MonadAlgebra) -> AlgebraMap:
    if not {"P", "R", "S"} <= set(top.labels) or not set(top.labels) <= set(RPS_LABELS):
        raise NotApplicable(f"phi needs the basis P, R, S; {top.name} has {top.labels}")
    cycle = {"P": "R", "R": "S", "S": "P", "1": "1"}
    return AlgebraMap(top, top, [top.e(cycle[lab]).coords for lab in top.labels])


def phi(algebra: MonadAlgebra) -> AlgebraMap:
    """The order-3 automorphism 1->1, P->R, R->S, S->P (induced on subalgebras)."""
    return _induced(algebra, _phi_top)


def psi_m0(algebra: MonadAlgebra) -> AlgebraMap:
    """The automorphism U <-> V of M0 in its good basis."""
    if algebra.kind != "M0" or algebra.labels != ("U", "V"):
        raise NotApplicable("psi_m0 needs M0 in the good basis (U, V)")
    U, V = algebra.basis()
    return AlgebraMap(algebra, algebra, [V.coords, U.coords])


def psi_semilinear(algebra: MonadAlgebra) -> AlgebraMap:
    """Fix 1, P, R, S and conjugate coefficients (w <-> w^2).

    Only over fields presented as K[w] (``OmegaExtension``).  On M0 this
    swaps U and V.
    """
    if not algebra.field.has_conjugation:
        raise NotApplicable(f"{algebra.field} is not presented as K[w]")

    def top_map(top):
        if not set(top.labels) <= set(RPS_LABELS):
            raise NotApplicable(f"psi_semilinear needs an RPS algebra, got {top.name}")
        return AlgebraMap(top, top, [e.coords for e in top.basis()], conjugate=True)

    return _induced(algebra, top_map)


@dataclass
class AutomorphismCheck:
    ok: bool
    reason: str = ""
    failures: list = dc_field(default_factory=list)

    def __bool__(self):
        return self.ok


def verify_automorphism(f: AlgebraMap) -> AutomorphismCheck:
    """Check bijectivity and multiplicativity on every pair of basis elements.

    Failing pairs are collected as ``(label_i, label_j, f(E_i E_j), f(E_i) f(E_j))``.
    """
    A = f.source
    if f.target != A:
        return AutomorphismCheck(False, "source and target differ")
    F = A.field
    if f.conjugate and not F.has_conjugation:
        return AutomorphismCheck(False, "field has no conjugation")
    if rank(F, f.images, A.dim) < A.dim:
        return AutomorphismCheck(False, "map is not bijective")
    basis = A.basis()
    images = [f(e) for e in basis]
    failures = []
    for i in range(A.dim):
        for j in range(A.dim):
            lhs = f(basis[i] * basis[j])
            rhs = images[i] * images[j]
            if lhs != rhs:
                failures.append((A.labels[i], A.labels[j], lhs, rhs))
    if failures:
        return AutomorphismCheck(False, "not multiplicative", failures)
    return AutomorphismCheck(True)


# --- JSON structure-constant files ------------------------------------------


def algebra_from_json(data, field: FieldSpec, name: str | None = None) -> MonadAlgebra:
    """Build an algebra from ``{"basis": [...], "unit": i|null, "table": [[[...]]]}``.

    Coordinates are scalar strings (or integers) in the field syntax.
    """
    if isinstance(data, str):
        data = json.loads(data)
    try:
        labels = data["basis"]
        raw_table = data["table"]
    except (KeyError, TypeError):
        raise ParseError("algebra JSON needs 'basis' and 'table'") from None
    unit = data.get("unit")

    def conv(c):
        return field(str(c) if not isinstance(c, int) else c).value

    table = [[tuple(conv(c) for c in vec) for vec in row] for row in raw_table]
    return MonadAlgebra(field, labels, table, unit_index=unit, name=name or data.get("name", "A"))


def algebra_to_json(algebra: MonadAlgebra) -> dict:
    F = algebra.field
    return {
        "basis": list(algebra.labels),
        "unit": algebra.unit_index,
        "table": [[[F.format(c) for c in vec] for vec in row] for row in algebra.table],
    }


def algebra_by_name(spec: str, field: FieldSpec) -> MonadAlgebra:
    """Resolve ``M``, ``M0``, ``Mtilde`` or ``file:<path>``."""
    s = spec.strip()
    if s == "M":
        return rps_algebra(field)
    if s == "M0":
        return m0_subalgebra(field)
    if s in ("Mtilde", "M~", "Mt"):
        return mtilde_subalgebra(field)
    if s.startswith("file:"):
        path = s[5:]
        with open(path, encoding="utf-8") as fh:
            return algebra_from_json(json.load(fh), field, name=path)
    raise ParseError(f"unknown algebra {spec!r}; expected M, M0, Mtilde or file:<path>")
