"""Rational base p/q numeration: digit alphabets, evaluation and representation.

Words are plain sequences of ``int`` written most significant digit first, so
the word ``[2, 1, 2]`` stands for ``a_2 a_1 a_0`` with ``a_0 = 2``.  Values are
:class:`fractions.Fraction`, which keeps them in lowest terms after every
operation.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import NotCoprime, OrderViolation, WordSyntaxError

Word = Sequence[int]

EPSILON = "ε"


@dataclass(frozen=True)
class RationalBase:
    """A validated base p/q with ``gcd(p, q) == 1`` and ``p > q > 1``."""

    p: int
    q: int

    def __post_init__(self):
        p, q = self.p, self.q
        if not (isinstance(p, int) and isinstance(q, int)):
            raise TypeError("p and q must be integers")
        if q <= 1 or p <= q:
            raise OrderViolation(f"need p > q > 1, got p={p}, q={q}")
        if math.gcd(p, q) != 1:
            raise NotCoprime(f"p={p} and q={q} share the factor {math.gcd(p, q)}")

    def __str__(self):
        return f"{self.p}/{self.q}"

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.p, self.q)

    # Alphabets are returned as ranges: ordered, immutable and cheap to test.
    @property
    def canonical_alphabet(self) -> range:
        """A_p, the digits 0..p-1."""
        return range(0, self.p)

    @property
    def minimal_alphabet(self) -> range:
        """A_q, the digits 0..q-1."""
        return range(0, self.q)

    @property
    def maximal_alphabet(self) -> range:
        """The digits p-q..p-1."""
        return range(self.p - self.q, self.p)

    @property
    def balanced_alphabet(self) -> range:
        """B, the 2q-1 digits ending at p-1 and centred on p-q."""
        return range(self.p - 2 * self.q + 1, self.p)

    @property
    def center(self) -> int:
        return self.p - self.q


def new_base(p: int, q: int) -> RationalBase:
    return RationalBase(p, q)


def evaluate(base: RationalBase, word: Iterable[int]) -> Fraction:
    """Value of a finite word: sum of ``a_i / q * (p/q)**i``.

    Any integer digits are accepted.  Computed by the Horner-style recurrence
    ``value(u.a) = value(u) * p/q + a/q``, kept over the denominator q**len(u)
    and reduced once at the end.
    """
    p, q = base.p, base.q
    num, den = 0, 1
    for a in word:
        num = num * p + a * den
        den *= q
    return Fraction(num, den)


def represent(base: RationalBase, n: int) -> list[int]:
    """The p/q-representation of ``n >= 0`` (empty for 0).

    Uses the modified Euclidean division ``q*N_i = p*N_(i+1) + a_i``.
    """
    if n < 0:
        raise ValueError(f"only non-negative integers have a representation, got {n}")
    digits = []
    while n:
        n, a = divmod(base.q * n, base.p)
        digits.append(a)
    digits.reverse()
    return digits


def tau(base: RationalBase, n: int, a: int) -> Optional[int]:
    """The partial transition ``(n*p + a) / q``; None when not a natural number."""
    m, r = divmod(n * base.p + a, base.q)
    if r or m < 0:
        return None
    return m


# -- text formats -------------------------------------------------------------

_SIGNED = re.compile(r"^[+-]?\d+$")


def format_word(word: Iterable[int]) -> str:
    digits = list(word)
    if not digits:
        return EPSILON
    return ",".join(str(d) for d in digits)


def parse_word(text: str, base: Optional[RationalBase] = None) -> list[int]:
    """Parse the comma separated form, or ``""``, ``eps`` and ``ε`` for the empty word.

    A comma-less string of several decimal digits (``"212"``) is read one digit
    per character only when ``base`` is given with ``p <= 10``; otherwise it is
    a single digit.
    """
    text = text.strip()
    if text in ("", "eps", EPSILON):
        return []
    if "," in text:
        parts = [part.strip() for part in text.split(",")]
        for part in parts:
            if not _SIGNED.match(part):
                raise WordSyntaxError(f"bad digit {part!r} in word {text!r}")
        return [int(part) for part in parts]
    if not _SIGNED.match(text):
        raise WordSyntaxError(f"bad word {text!r}")
    if base is not None and base.p <= 10 and text.isdigit():
        return [int(c) for c in text]
    return [int(text)]


def format_rational(x: Fraction) -> str:
    return str(Fraction(x))


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise WordSyntaxError(f"bad rational {text!r}") from exc
