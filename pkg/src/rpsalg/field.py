"""Exact scalar fields: Q, prime fields F_p, and quadratic extensions by a
primitive cube root of unity (Q(w), F_{p^2}).

A ``FieldSpec`` does the arithmetic on *raw* values (``Fraction`` for Q, ``int``
residues for F_p, ``(a, b)`` pairs meaning ``a + b*w`` for extensions).  The
algebra and polynomial code works on raw values for speed; ``FieldElement``
wraps a raw value for the public API.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import cached_property

from .errors import (
    AlreadyHasOmega,
    DivisionByZero,
    FieldMismatch,
    NoOmega,
    NotPrime,
    ParseError,
)

# below this bound omega is found by scanning residues
_SCAN_LIMIT = 1 << 16


def _isprime(n: int) -> bool:
    if n < 2:
        return False
    if n < 1 << 20:
        i = 2
        while i * i <= n:
            if n % i == 0:
                return False
            i += 1
        return True
    from sympy import isprime

    return bool(isprime(n))


class FieldSpec:
    """Abstract scalar field.  Instances compare equal by value."""

    characteristic: int

    # --- raw arithmetic -------------------------------------------------
    zero: object
    one: object

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def from_int(self, n: int):
        raise NotImplementedError

    def is_zero(self, a) -> bool:
        return a == self.zero

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def from_fraction(self, q: Fraction):
        q = Fraction(q)
        return self.div(self.from_int(q.numerator), self.from_int(q.denominator))

    def pow(self, a, n: int):
        if n < 0:
            return self.pow(self.inv(a), -n)
        result = self.one
        while n:
            if n & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            n >>= 1
        return result

    def as_int(self, a):
        """Integer representative of ``a`` if it lies in the prime ring, else None."""
        return None

    def random_raw(self, rng: random.Random, bound: int = 9):
        raise NotImplementedError

    def format(self, a) -> str:
        raise NotImplementedError

    def conj(self, a):
        """Field automorphism swapping w and w^2 (identity where w is absent)."""
        return a

    @property
    def has_conjugation(self) -> bool:
        return False

    # --- element-level helpers -----------------------------------------
    def __call__(self, value) -> FieldElement:
        """Coerce ``value`` (int, Fraction, str or FieldElement) into this field."""
        if isinstance(value, FieldElement):
            if value.spec != self:
                raise FieldMismatch(f"{value.spec} vs {self}")
            return value
        if isinstance(value, bool):
            raise TypeError("bool is not a scalar")
        if isinstance(value, int):
            return FieldElement(self, self.from_int(value))
        if isinstance(value, Fraction):
            return FieldElement(self, self.from_fraction(value))
        if isinstance(value, str):
            from .syntax import parse_scalar

            return FieldElement(self, parse_scalar(value, self))
        raise TypeError(f"cannot coerce {value!r} into {self}")

    def element(self, raw) -> FieldElement:
        return FieldElement(self, raw)

    def zero_element(self) -> FieldElement:
        return FieldElement(self, self.zero)

    def one_element(self) -> FieldElement:
        return FieldElement(self, self.one)

    def random(self, rng: random.Random, bound: int = 9) -> FieldElement:
        return FieldElement(self, self.random_raw(rng, bound))

    @cached_property
    def omega_raw(self):
        """Raw omega: 1 in characteristic 3, else a primitive cube root of 1."""
        return self._find_omega()

    def _find_omega(self):
        raise NoOmega(f"{self} contains no primitive cube root of unity")

    @property
    def has_omega(self) -> bool:
        try:
            self.omega_raw
        except NoOmega:
            return False
        return True

    def _key(self):
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"{type(self).__name__}({', '.join(map(repr, self._key()[1:]))})"

    def __reduce__(self):
        return (type(self), self._key()[1:])


class Rationals(FieldSpec):
    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if not a:
            raise DivisionByZero("inverse of zero in Q")
        return 1 / a

    def from_int(self, n):
        return Fraction(n)

    def from_fraction(self, q):
        return Fraction(q)

    def is_zero(self, a):
        return not a

    def as_int(self, a):
        return a.numerator if a.denominator == 1 else None

    def random_raw(self, rng, bound=9):
        num = rng.randint(-bound, bound)
        den = rng.choice((1, 1, 1, 2, 3))
        return Fraction(num, den)

    def format(self, a):
        return str(a)

    def _key(self):
        return ("Q",)

    def __str__(self):
        return "Q"


class PrimeField(FieldSpec):
    def __init__(self, p: int):
        if not isinstance(p, int) or not _isprime(p):
            raise NotPrime(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.zero = 0
        self.one = 1 % p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a == 0:
            raise DivisionByZero(f"inverse of zero in F_{self.p}")
        return pow(a, -1, self.p)

    def from_int(self, n):
        return n % self.p

    def is_zero(self, a):
        return a == 0

    def as_int(self, a):
        return a

    def random_raw(self, rng, bound=9):
        return rng.randrange(self.p)

    def format(self, a):
        return str(a)

    def _find_omega(self):
        p = self.p
        if p == 3:
            return 1
        if p % 3 != 1:
            raise NoOmega(f"F_{p} has no primitive cube root of unity (p = 2 mod 3)")
        if p < _SCAN_LIMIT:
            for r in range(2, p):
                if (r * r + r + 1) % p == 0:
                    return r
        e = (p - 1) // 3
        for g in range(2, p):
            w = pow(g, e, p)
            if w != 1:
                return min(w, w * w % p)
        raise AssertionError("unreachable")  # pragma: no cover

    def _key(self):
        return ("Fp", self.p)

    def __str__(self):
        return f"Fp:{self.p}"


class OmegaExtension(FieldSpec):
    """``base[w]`` with w^2 = -w - 1, for a base field lacking a cube root of 1."""

    def __init__(self, base: FieldSpec):
        if isinstance(base, OmegaExtension):
            raise AlreadyHasOmega(f"{base} already contains omega")
        if base.has_omega:
            raise AlreadyHasOmega(f"{base} already has a root of x^2 + x + 1")
        self.base = base
        self.characteristic = base.characteristic
        z, o = base.zero, base.one
        self.zero = (z, z)
        self.one = (o, z)

    def add(self, a, b):
        B = self.base
        return (B.add(a[0], b[0]), B.add(a[1], b[1]))

    def sub(self, a, b):
        B = self.base
        return (B.sub(a[0], b[0]), B.sub(a[1], b[1]))

    def neg(self, a):
        B = self.base
        return (B.neg(a[0]), B.neg(a[1]))

    def mul(self, a, b):
        # (a0 + a1 w)(b0 + b1 w) = a0 b0 - a1 b1 + (a0 b1 + a1 b0 - a1 b1) w
        B = self.base
        bd = B.mul(a[1], b[1])
        return (
            B.sub(B.mul(a[0], b[0]), bd),
            B.sub(B.add(B.mul(a[0], b[1]), B.mul(a[1], b[0])), bd),
        )

    def conj(self, a):
        # a0 + a1 w^2 = (a0 - a1) - a1 w
        B = self.base
        return (B.sub(a[0], a[1]), B.neg(a[1]))

    @property
    def has_conjugation(self):
        return True

    def norm(self, a):
        B = self.base
        return B.add(B.sub(B.mul(a[0], a[0]), B.mul(a[0], a[1])), B.mul(a[1], a[1]))

    def inv(self, a):
        n = self.norm(a)
        if self.base.is_zero(n):
            raise DivisionByZero(f"inverse of zero in {self}")
        ninv = self.base.inv(n)
        c = self.conj(a)
        return (self.base.mul(c[0], ninv), self.base.mul(c[1], ninv))

    def from_int(self, n):
        return (self.base.from_int(n), self.base.zero)

    def from_fraction(self, q):
        return (self.base.from_fraction(q), self.base.zero)

    def is_zero(self, a):
        return self.base.is_zero(a[0]) and self.base.is_zero(a[1])

    def as_int(self, a):
        if not self.base.is_zero(a[1]):
            return None
        return self.base.as_int(a[0])

    def random_raw(self, rng, bound=9):
        return (self.base.random_raw(rng, bound), self.base.random_raw(rng, bound))

    def format(self, a):
        B = self.base
        re, im = a
        if B.is_zero(im):
            return B.format(re)
        if im == B.one:
            w = "w"
        elif im == B.neg(B.one):
            w = "-w"
        else:
            w = f"{B.format(im)}*w"
        if B.is_zero(re):
            return w
        if not w.startswith("-"):
            w = "+" + w
        return f"{B.format(re)}{w}"

    def _find_omega(self):
        return (self.base.zero, self.base.one)

    def _key(self):
        return ("W", self.base._key())

    def __reduce__(self):
        return (OmegaExtension, (self.base,))

    def __repr__(self):
        return f"OmegaExtension({self.base!r})"

    def __str__(self):
        if isinstance(self.base, PrimeField):
            return f"Fp2:{self.base.p}"
        return f"{self.base}(w)"


def parse_field(text: str) -> FieldSpec:
    """Parse a field selector: ``Q``, ``Fp:<p>``, ``Q(w)`` or ``Fp2:<p>``."""
    t = text.strip().replace(" ", "")
    if t in ("Q", "QQ"):
        return Rationals()
    if t in ("Q(w)", "Q[w]", "Qw"):
        return OmegaExtension(Rationals())
    for prefix, ext in (("Fp2:", True), ("Fp:", False), ("F", False)):
        if t.startswith(prefix):
            try:
                p = int(t[len(prefix):])
            except ValueError:
                break
            base = PrimeField(p)
            return OmegaExtension(base) if ext else base
    raise ParseError(f"unknown field {text!r}; expected Q, Fp:<p>, Q(w) or Fp2:<p>")


class FieldElement:
    """An immutable scalar tagged with its field."""

    __slots__ = ("spec", "value")

    def __init__(self, spec: FieldSpec, value):
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def _coerce(self, other) -> FieldElement | None:
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise FieldMismatch(f"{self.spec} vs {other.spec}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.spec(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.spec, self.spec.add(self.value, o.value))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.spec, self.spec.sub(self.value, o.value))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.spec, self.spec.mul(self.value, o.value))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.spec, self.spec.div(self.value, o.value))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return FieldElement(self.spec, self.spec.neg(self.value))

    def __pow__(self, n: int):
        return FieldElement(self.spec, self.spec.pow(self.value, n))

    def inv(self) -> FieldElement:
        return FieldElement(self.spec, self.spec.inv(self.value))

    def conj(self) -> FieldElement:
        return FieldElement(self.spec, self.spec.conj(self.value))

    def is_zero(self) -> bool:
        return self.spec.is_zero(self.value)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except FieldMismatch:
            return False
        if o is None:
            return NotImplemented
        return self.value == o.value

    def __hash__(self):
        return hash((self.spec, self.value))

    def __repr__(self):
        return f"FieldElement({self.spec}, {self})"

    def __str__(self):
        return self.spec.format(self.value)


def omega_of(spec: FieldSpec) -> FieldElement:
    """Return omega in ``spec``: 1 in characteristic 3, otherwise a primitive
    cube root of unity (the smallest residue for F_p).

    Raises NoOmega when the field has none; wrap it in ``OmegaExtension``.
    """
    return FieldElement(spec, spec.omega_raw)
