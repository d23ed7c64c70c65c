"""Image classification for multilinear polynomials on M, M0 and Mtilde.

For a multilinear map the linear span of the image equals the span of its
values on basis tuples, so that span is computed exactly by a sweep.  The
image itself is identified with that span only where the theorems allow it
(dimension at most 2 inside M0, or a nonzero coefficient sum on M); the
3-dimensional case on Mtilde is labelled as Zariski dense, not certified.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

import numpy as np

from .algebra import (
    AlgebraElement,
    MonadAlgebra,
    good_basis_in,
    phi,
    sc,
    trace,
)
from .errors import (
    CapExceeded,
    NotMultilinear,
    SmallCharacteristic,
    TheoremViolation,
)
from .field import FieldElement
from .kernel import IntSweep, decode, make_sweep
from .linalg import RowEchelon, rank
from .poly import Polynomial, evaluate, jacobian_columns

DEFAULT_SPAN_CAP = 1 << 24

LABEL_ZERO = "{0}"
LABEL_M = "𝔐"
LABEL_M0 = "𝔐₀"
LABEL_LINE_W = "⟨P+Rω+Sω²⟩"
LABEL_LINE_W2 = "⟨P+Rω²+Sω⟩"
LABEL_LINE_PRS = "⟨P+R+S⟩"
LABEL_U = "⟨U⟩"
LABEL_V = "⟨V⟩"
LABEL_UV = "𝔐₀=⟨U,V⟩"
LABEL_DENSE = "Zariski dense in 𝔐̃"

# admissible theorem labels per algebra kind
OUTCOMES = {
    "M": {LABEL_ZERO, LABEL_LINE_W, LABEL_LINE_W2, LABEL_LINE_PRS, LABEL_M0, LABEL_M},
    "M0": {LABEL_ZERO, LABEL_M0, LABEL_LINE_PRS},
    "Mtilde": {LABEL_ZERO, LABEL_U, LABEL_V, LABEL_UV, LABEL_DENSE},
}

_CLASS_NAMES = {0: "Zero", 1: "Line", 2: "Plane"}


@dataclass
class Witness:
    args: tuple[AlgebraElement, ...]
    value: AlgebraElement

    def check(self, p: Polynomial) -> bool:
        return evaluate(p, list(self.args)) == self.value

    def to_json(self):
        return {"args": [str(a) for a in self.args], "value": str(self.value)}


@dataclass
class SpanReport:
    """Span of the values of ``p`` on basis tuples.

    ``exhausted`` is True when the span is certified: every tuple was visited,
    or the span already filled the algebra.
    """

    span_basis: list[AlgebraElement]
    dimension: int
    exhausted: bool
    witnesses: list[Witness]
    tuples_visited: int
    engine: str = ""


@dataclass
class ImageClass:
    tag: str  # Zero, Line, Plane, FullSpan
    theorem_label: str | None
    basis: list[AlgebraElement]
    witnesses: list[Witness]
    coefficient_sum: FieldElement
    span: SpanReport | None = None
    notes: list[str] = dc_field(default_factory=list)

    @property
    def direction(self) -> AlgebraElement | None:
        return self.basis[0] if self.tag == "Line" else None

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def verify_witnesses(self, p: Polynomial) -> bool:
        return all(w.check(p) for w in self.witnesses)

    def to_json(self, p: Polynomial, algebra: MonadAlgebra) -> dict:
        return {
            "polynomial": str(p),
            "algebra": algebra.name,
            "field": str(algebra.field),
            "coefficient_sum": str(self.coefficient_sum),
            "span_dim": self.dimension,
            "class": self.tag,
            "basis": [str(b) for b in self.basis],
            "witnesses": [w.to_json() for w in self.witnesses],
            "theorem_label": self.theorem_label,
            "notes": list(self.notes),
        }


def coefficient_sum(p: Polynomial) -> FieldElement:
    if not p.is_multilinear():
        raise NotMultilinear(f"{p} is not multilinear")
    return p.coefficient_sum()


def normalize(x: AlgebraElement) -> AlgebraElement:
    """Scale so the first nonzero coordinate is 1."""
    F = x.field
    for c in x.coords:
        if not F.is_zero(c):
            return x.scale(FieldElement(F, F.inv(c)))
    return x


def proportional(x: AlgebraElement, y: AlgebraElement) -> bool:
    return rank(x.field, [x.coords, y.coords], x.algebra.dim) <= 1


def _tuple_args(A: MonadAlgebra, indices) -> tuple[AlgebraElement, ...]:
    basis = A.basis()
    return tuple(basis[i] for i in indices)


def basis_span(
    p: Polynomial,
    A: MonadAlgebra,
    cap: int = DEFAULT_SPAN_CAP,
    allow_partial: bool = False,
) -> SpanReport:
    """Exact span of ``p`` over all ``d**m`` basis tuples.

    Raises CapExceeded (with the partial report attached) if ``d**m > cap``,
    unless ``allow_partial``.
    """
    if not p.is_multilinear():
        raise NotMultilinear(f"{p} is not multilinear")
    F = A.field
    d, m = A.dim, p.arity
    total = d**m
    limit = min(total, cap)
    ech = RowEchelon(F, d)
    witnesses: list[Witness] = []
    basis: list[AlgebraElement] = []
    sweep = make_sweep(p, A)
    visited = 0

    def offer(code, raw):
        if ech.add(raw):
            val = AlgebraElement(A, tuple(raw))
            basis.append(val)
            witnesses.append(Witness(_tuple_args(A, decode(code, d, m)), val))

    if isinstance(sweep, IntSweep):
        for codes, vals in sweep.iter_chunks(0, limit):
            nz = vals.any(axis=1)
            if nz.any():
                rows, first = np.unique(vals[nz], axis=0, return_index=True)
                nz_codes = codes[nz]
                for j in np.argsort(first, kind="stable"):
                    offer(int(nz_codes[first[j]]), sweep.to_raw(rows[j]))
                    if ech.rank == d:
                        break
            visited = int(codes[-1]) + 1
            if ech.rank == d:
                break
    else:
        for code in range(limit):
            raw = sweep.value(code)
            visited = code + 1
            if any(not F.is_zero(x) for x in raw):
                offer(code, raw)
                if ech.rank == d:
                    break
    exhausted = visited == total or ech.rank == d
    report = SpanReport(basis, ech.rank, exhausted, witnesses, visited, sweep.engine)
    if not exhausted and not allow_partial:
        raise CapExceeded(f"{total} basis tuples exceed the cap {cap}", partial=report)
    return report


def _violation(msg, p, A, witnesses):
    return TheoremViolation(msg, polynomial=p, algebra=A, witnesses=witnesses)


def _root_kind(A: MonadAlgebra) -> str | None:
    return A.kind if A.kind in OUTCOMES else None


def _line_label_m(p, A, direction, witnesses):
    """Theorem for M: a 1-dimensional image is a phi-invariant omega line."""
    F = A.field
    f = phi(A)
    if not proportional(f(direction), direction):
        raise _violation(f"line {direction} is not phi-invariant", p, A, witnesses)
    top_dir = direction
    top, emb = A.root()
    if emb is not None:
        top_dir = emb(direction)
    P, R, S = top.e("P"), top.e("R"), top.e("S")
    if F.characteristic == 3:
        if proportional(top_dir, P + R + S):
            return LABEL_LINE_PRS
        raise _violation(f"line {direction} in characteristic 3 is not <P+R+S>", p, A, witnesses)
    if not F.has_omega:
        raise _violation(f"{F} has no omega, so no 1-dimensional image is possible", p, A, witnesses)
    w = FieldElement(F, F.omega_raw)
    if proportional(top_dir, P + R.scale(w) + S.scale(w * w)):
        return LABEL_LINE_W
    if proportional(top_dir, P + R.scale(w * w) + S.scale(w)):
        return LABEL_LINE_W2
    raise _violation(f"line {direction} is neither omega line", p, A, witnesses)


def classify_image(p: Polynomial, A: MonadAlgebra, cap: int = DEFAULT_SPAN_CAP) -> ImageClass:
    """Classify the image of multilinear ``p`` on ``A``.

    On M, M0 and Mtilde the outcome carries the theorem label it matches and
    raises TheoremViolation if it matches none.  Other algebras get the span
    only (``theorem_label`` None).
    """
    c = coefficient_sum(p)
    F = A.field
    kind = _root_kind(A)
    m = p.arity

    if not c.is_zero() and kind == "M":
        cinv = c.inv()
        one = A.one()
        witnesses = []
        for e in A.basis():
            args = (e.scale(cinv),) + (one,) * (m - 1)
            witnesses.append(Witness(args, e))
        return ImageClass("FullSpan", LABEL_M, A.basis(), witnesses, c)

    if not c.is_zero() and kind == "Mtilde":
        # p(I, ..., I) = c I for each idempotent I in {P, R, S}
        witnesses = []
        for lab in ("P", "R", "S"):
            I = A.e(lab)
            witnesses.append(Witness((I,) * m, I.scale(c)))
        for wit in witnesses:
            if not wit.check(p):
                raise _violation("p(I,...,I) != cI for an idempotent I", p, A, [wit])
        return ImageClass("FullSpan", LABEL_DENSE, [w.value for w in witnesses], witnesses, c,
                          notes=["Zariski density is asserted by the theorem, not certified here"])

    span = basis_span(p, A, cap)
    dim = span.dimension
    wit = span.witnesses
    basis = span.span_basis
    tag = _CLASS_NAMES.get(dim, "FullSpan")
    if dim == A.dim and dim > 2:
        tag = "FullSpan"
    if kind is None:
        return ImageClass(tag, None, basis, wit, c, span, notes=["generic algebra: span only"])

    if dim == 0:
        return ImageClass("Zero", LABEL_ZERO, [], [], c, span)

    if kind == "M":
        for b in basis:
            if not (trace(b).is_zero() and sc(b).is_zero()):
                raise _violation(f"coefficient sum is 0 but {b} is outside M0", p, A, wit)
        if dim == 1:
            direction = normalize(basis[0])
            label = _line_label_m(p, A, direction, wit)
            return ImageClass("Line", label, [direction], wit, c, span)
        if dim == 2:
            return ImageClass("Plane", LABEL_M0, basis, wit, c, span)
        raise _violation(f"span of dimension {dim} with zero coefficient sum", p, A, wit)

    if kind == "M0":
        if dim == 2:
            return ImageClass("Plane", LABEL_M0, basis, wit, c, span)
        direction = normalize(basis[0])
        if F.characteristic == 3:
            label = _line_label_m(p, A, direction, wit)
            return ImageClass("Line", label, [direction], wit, c, span)
        raise _violation(f"1-dimensional image {direction} on M0", p, A, wit)

    # Mtilde with zero coefficient sum
    if F.characteristic == 3 or not F.has_omega:
        return ImageClass(tag, None, basis, wit, c, span,
                          notes=["no refined theorem without omega / in characteristic 3"])
    U, V, W = good_basis_in(A)
    if dim == 1:
        direction = normalize(basis[0])
        if proportional(direction, U):
            return ImageClass("Line", LABEL_U, [direction], wit, c, span)
        if proportional(direction, V):
            return ImageClass("Line", LABEL_V, [direction], wit, c, span)
        raise _violation(f"line {direction} on Mtilde is not <U> or <V>", p, A, wit)
    if dim == 2:
        plane = RowEchelon(F, A.dim)
        for b in basis:
            plane.add(b.coords)
        if plane.contains(U.coords) and plane.contains(V.coords):
            return ImageClass("Plane", LABEL_UV, basis, wit, c, span)
        raise _violation("2-dimensional image on Mtilde other than <U,V>", p, A, wit)
    return ImageClass("FullSpan", LABEL_DENSE, basis, wit, c, span,
                      notes=["Zariski density is asserted by the theorem, not certified here"])


def estimate_dimension(p: Polynomial, A: MonadAlgebra, samples: int = 20, seed: int = 0) -> int:
    """Largest Jacobian rank of the evaluation map over ``samples`` seeded
    random points: a lower bound on the dimension of the image's Zariski
    closure."""
    F = A.field
    if F.characteristic and F.characteristic <= p.degree():
        raise SmallCharacteristic(
            f"characteristic {F.characteristic} does not exceed degree {p.degree()}"
        )
    if p.is_zero():
        return 0
    rng = random.Random(seed)
    best = 0
    for _ in range(samples):
        args = [A.random(rng) for _ in range(p.arity)]
        r = rank(F, jacobian_columns(p, args), A.dim)
        best = max(best, r)
        if best == A.dim:
            break
    return best
