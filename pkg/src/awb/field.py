"""Exact scalar fields: the rationals and prime fields GF(p)."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

_GF_RE = re.compile(r"^GF\((\d+)\)$")


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Field:
    """A field of characteristic 0 (``Q``) or a prime ``p`` (``GF(p)``).

    Scalars over Q are ``int`` when integral and ``Fraction`` otherwise;
    scalars over GF(p) are canonical residues ``0 .. p-1``.
    """

    characteristic: int = 0

    def __post_init__(self):
        c = self.characteristic
        if c != 0 and not _is_prime(c):
            raise ValueError(f"characteristic must be 0 or prime, got {c}")

    @property
    def kind(self) -> str:
        return "rationals" if self.characteristic == 0 else "prime_field"

    @property
    def name(self) -> str:
        return "Q" if self.characteristic == 0 else f"GF({self.characteristic})"

    @classmethod
    def parse(cls, text: str) -> "Field":
        text = text.strip()
        if text in ("Q", "QQ"):
            return cls(0)
        m = _GF_RE.match(text)
        if m:
            return cls(int(m.group(1)))
        raise ValueError(f"unknown field {text!r}; expected 'Q' or 'GF(p)'")

    def norm(self, x):
        p = self.characteristic
        if p:
            return x % p
        if type(x) is Fraction and x.denominator == 1:
            return x.numerator
        return x

    def __call__(self, x):
        """Coerce an int, Fraction or scalar string into this field."""
        if isinstance(x, str):
            return self.parse_scalar(x)
        p = self.characteristic
        if p:
            if isinstance(x, Fraction):
                return (x.numerator * pow(x.denominator, -1, p)) % p
            return int(x) % p
        if isinstance(x, Fraction):
            return self.norm(x)
        if isinstance(x, int):
            return x
        raise TypeError(f"cannot coerce {x!r} into {self.name}")

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        p = self.characteristic
        if p:
            return pow(x, -1, p)
        return self.norm(Fraction(1) / x)

    def div(self, x, y):
        return self.norm(x * self.inv(y))

    def parse_scalar(self, s: str):
        s = s.strip()
        try:
            value = Fraction(s)
        except ValueError:
            raise ValueError(f"malformed scalar {s!r}") from None
        return self(value)

    def format_scalar(self, x) -> str:
        return str(x)
