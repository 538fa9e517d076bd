"""
The torus algebra over Z/2 and its idempotent ring.

The algebra is eight-dimensional: two idempotents and six Reeb elements.
An element is stored as an 8-bit mask over the basis, so addition is XOR
and multiplication is read off a precomputed 8x8 table.

Basis order (bit index):

    0 i1   1 i2   2 r1   3 r2   4 r3   5 r12   6 r23   7 r123

Reeb elements are written as consecutive runs of the indices 1, 2, 3; two
runs compose only when the first ends right before the second begins.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

BASIS_NAMES = ("i1", "i2", "r1", "r2", "r3", "r12", "r23", "r123")
BASIS_INDEX = {name: k for k, name in enumerate(BASIS_NAMES)}

I1, I2, R1, R2, R3, R12, R23, R123 = range(8)
IDEMPOTENTS = (I1, I2)
REEB = (R1, R2, R3, R12, R23, R123)

# graph-edge labels; "1" is the identity label, kept distinct from i1 + i2
LABELS = ("1", "r1", "r2", "r3", "r12", "r23", "r123")
REEB_LABELS = LABELS[1:]

_DIGITS = {R1: "1", R2: "2", R3: "3", R12: "12", R23: "23", R123: "123"}
_FROM_DIGITS = {v: k for k, v in _DIGITS.items()}

# (left, right) idempotent of each Reeb element
_SIDES = {
    R1: (I1, I2),
    R2: (I2, I1),
    R3: (I1, I2),
    R12: (I1, I1),
    R23: (I2, I2),
    R123: (I1, I2),
}


def _basis_product(x: int, y: int) -> int | None:
    if x in IDEMPOTENTS and y in IDEMPOTENTS:
        return x if x == y else None
    if x in IDEMPOTENTS:
        return y if _SIDES[y][0] == x else None
    if y in IDEMPOTENTS:
        return x if _SIDES[x][1] == y else None
    a, b = _DIGITS[x], _DIGITS[y]
    if int(a[-1]) + 1 != int(b[0]):
        return None
    return _FROM_DIGITS[a + b]


MULT_TABLE: tuple[tuple[int | None, ...], ...] = tuple(
    tuple(_basis_product(x, y) for y in range(8)) for x in range(8)
)


@dataclass(frozen=True)
class AlgebraElement:
    """A Z/2-linear combination of the eight basis elements."""

    bits: int = 0

    def __post_init__(self):
        if not 0 <= self.bits < 256:
            raise ValueError(f"bit mask out of range: {self.bits}")

    @classmethod
    def basis(cls, key: int | str) -> "AlgebraElement":
        k = BASIS_INDEX[key] if isinstance(key, str) else key
        return cls(1 << k)

    def terms(self) -> Iterator[int]:
        """Basis indices with nonzero coefficient, in basis order."""
        for k in range(8):
            if self.bits >> k & 1:
                yield k

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        return AlgebraElement(self.bits ^ other.bits)

    __sub__ = __add__

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        return multiply(self, other)

    def __bool__(self) -> bool:
        return self.bits != 0

    def __repr__(self) -> str:
        if not self.bits:
            return "0"
        return " + ".join(BASIS_NAMES[k] for k in self.terms())


ZERO = AlgebraElement(0)
ONE = AlgebraElement((1 << I1) | (1 << I2))


def multiply(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    out = 0
    for x in a.terms():
        for y in b.terms():
            z = MULT_TABLE[x][y]
            if z is not None:
                out ^= 1 << z
    return AlgebraElement(out)


def left_idempotent(x: int | str) -> int:
    k = BASIS_INDEX[x] if isinstance(x, str) else x
    if k in IDEMPOTENTS:
        raise ValueError("idempotents have no distinguished left idempotent")
    return _SIDES[k][0]


def right_idempotent(x: int | str) -> int:
    k = BASIS_INDEX[x] if isinstance(x, str) else x
    if k in IDEMPOTENTS:
        raise ValueError("idempotents have no distinguished right idempotent")
    return _SIDES[k][1]


# -- Reeb labels and index strings ------------------------------------------

def digits(x: int | str) -> str:
    """Index string of a Reeb element, e.g. r123 -> "123"."""
    k = BASIS_INDEX[x] if isinstance(x, str) else x
    return _DIGITS[k]


def from_digits(s: str) -> int:
    """Reeb element of a consecutive increasing index string."""
    try:
        return _FROM_DIGITS[s]
    except KeyError:
        raise ValueError(f"not a Reeb element index string: {s!r}") from None


def idempotent_number(k: int) -> int:
    """1 for i1, 2 for i2 (the file/graph convention: 1 = filled, 2 = hollow)."""
    return 1 if k == I1 else 2


def idempotent_index(number: int) -> int:
    if number not in (1, 2):
        raise ValueError(f"idempotent must be 1 or 2, got {number!r}")
    return I1 if number == 1 else I2


def label_element(label: str, idempotent: int | None = None) -> AlgebraElement:
    """Algebra element carried by a graph label.

    The identity label stands for the idempotent of the source generator when
    one is given, and for the unit otherwise.
    """
    if label == "1":
        if idempotent is None:
            return ONE
        return AlgebraElement.basis(idempotent_index(idempotent))
    if label not in REEB_LABELS:
        raise ValueError(f"unknown label {label!r}")
    return AlgebraElement.basis(label)


def multiply_labels(a: str, b: str) -> str | None:
    """Product of two labels as a label, or None when it vanishes."""
    if a == "1":
        return b
    if b == "1":
        return a
    z = MULT_TABLE[BASIS_INDEX[a]][BASIS_INDEX[b]]
    return None if z is None else BASIS_NAMES[z]


def label_sides(label: str) -> tuple[int, int]:
    """(left, right) idempotent numbers of a Reeb label."""
    k = BASIS_INDEX[label]
    return idempotent_number(left_idempotent(k)), idempotent_number(right_idempotent(k))


def element_labels(element: AlgebraElement) -> list[str]:
    """Graph labels of the terms of an element; idempotent terms become "1"."""
    out = []
    for k in element.terms():
        out.append("1" if k in IDEMPOTENTS else BASIS_NAMES[k])
    return out
