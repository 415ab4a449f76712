"""Real values of infinite digit words, span-words and spans.

An infinite word ``d1 d2 d3 ...`` is read after the radix point: letter j
weighs ``(q/p)**j``.  Only finite prefixes are ever available, so a real value
is an exact :class:`RatInterval` holding the partial sum plus the smallest and
largest tails the word's alphabet allows.
"""
from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .automata import (DigitStream, find_that_unreachable, maximal_word, minimal_word,
                       tree_T, tree_That)
from .errors import DigitNotInAq, InternalInconsistency, NotAccepted, PreconditionViolated
from .numeration import RationalBase, evaluate, represent
from .transducer import apply, omega_table


@dataclass(frozen=True)
class RatInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def issubset(self, other: "RatInterval") -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def intersects(self, other: "RatInterval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def intersection(self, other: "RatInterval") -> Optional["RatInterval"]:
        if not self.intersects(other):
            return None
        return RatInterval(max(self.lo, other.lo), min(self.hi, other.hi))

    def hull(self, other: "RatInterval") -> "RatInterval":
        return RatInterval(min(self.lo, other.lo), max(self.hi, other.hi))

    def __sub__(self, other: "RatInterval") -> "RatInterval":
        return RatInterval(self.lo - other.hi, self.hi - other.lo)

    def certainly_less(self, other: "RatInterval") -> bool:
        return self.hi < other.lo

    def __str__(self):
        return f"[{self.lo}, {self.hi}]"


def tail_weight(base: RationalBase, k: int) -> Fraction:
    """Sum of the weights of letters k+1, k+2, ...: ``(q/p)**k * q/(p-q)``."""
    p, q = base.p, base.q
    return Fraction(q ** (k + 1), p ** k * (p - q))


def _partial_numerator(base: RationalBase, digits: Iterable[int]) -> tuple[int, int]:
    # (N, k) with N / p**k the weighted sum of the k digits
    p, q = base.p, base.q
    acc, qpow, k = 0, q, 0
    for d in digits:
        acc = acc * p + d * qpow
        qpow *= q
        k += 1
    return acc, k


def rho_partial(base: RationalBase, digits: Sequence[int]) -> Fraction:
    acc, k = _partial_numerator(base, digits)
    return Fraction(acc, base.p ** k)


def rho_truncate(base: RationalBase, digits: Sequence[int], alphabet: range) -> RatInterval:
    """Enclosure of the value of any infinite word starting with ``digits``
    whose remaining letters lie in ``alphabet``."""
    acc, k = _partial_numerator(base, digits)
    s = Fraction(acc, base.p ** k)
    tail = tail_weight(base, k)
    return RatInterval(s + alphabet.start * tail, s + (alphabet.stop - 1) * tail)


def max_letter(base: RationalBase, x: int) -> int:
    """Greatest integer below p congruent to x modulo q."""
    top = base.p - 1
    return top - (top - x) % base.q


def map_m(base: RationalBase, a: int) -> int:
    if not 0 <= a < base.q:
        raise DigitNotInAq(f"{a} not in A_q")
    return max_letter(base, a + base.p)


def span_word(base: RationalBase, n: int) -> DigitStream:
    """Digit-wise difference of the maximal and minimal words of ``n``.

    The stream state is the pair (minimal-word state, maximal-word state).
    """
    lo, hi = minimal_word(base, n), maximal_word(base, n)

    def step(_state):
        a, s = next(lo)
        b, t = next(hi)
        return b - a, (s, t)

    return DigitStream((n, n), step)


@dataclass(frozen=True)
class SpanValue:
    n: int
    k: int
    enclosure: RatInterval
    word: tuple[int, ...]


def span(base: RationalBase, n: int, k: int) -> SpanValue:
    """Enclosure of span(n) from the first ``k`` letters of its span-word.

    A second enclosure, value(maximal word) minus value(minimal word), is
    computed alongside; the two must overlap.
    """
    if n < 0 or k < 0:
        raise ValueError("n and k must be non-negative")
    digits = span_word(base, n).digits(k)
    by_word = rho_truncate(base, digits, base.balanced_alphabet)
    hi = rho_truncate(base, maximal_word(base, n).digits(k), base.maximal_alphabet)
    lo = rho_truncate(base, minimal_word(base, n).digits(k), base.minimal_alphabet)
    both = by_word.intersection(hi - lo)
    if both is None:
        raise InternalInconsistency(f"span enclosures of {n} are disjoint: {by_word} vs {hi - lo}")
    return SpanValue(n, k, both, tuple(digits))


def span_tail_bound(base: RationalBase, k: int) -> Fraction:
    """Exact width of a depth-k span enclosure."""
    return (2 * base.q - 2) * tail_weight(base, k)


def span_numerator(base: RationalBase, n: int, k: int) -> int:
    """Integer N with N / p**k the weighted sum of the first k span-word letters.

    Same result as ``_partial_numerator(base, span_word(base, n).digits(k))``,
    written as one loop because density campaigns call it 10**5 times.
    """
    p, q = base.p, base.q
    top = p - q
    s = t = n
    acc, qpow = 0, q
    for _ in range(k):
        sp = s * p
        s = (sp + (-sp) % q) // q
        a = s * q - sp
        tp = t * p
        b = top + (-tp - top) % q
        t = (tp + b) // q
        acc = acc * p + (b - a) * qpow
        qpow *= q
    return acc


# -- executable statements ----------------------------------------------------

@dataclass
class CheckReport:
    holds: bool
    detail: dict = field(default_factory=dict)


def verify_that_complete(base: RationalBase, n: int, k: int) -> CheckReport:
    """Run the k-prefix of span-word(n) through T-hat from state 0."""
    digits = span_word(base, n).digits(k)
    that = tree_That(base)
    s = 0
    for pos, d in enumerate(digits):
        nxt = that.step(s, d)
        if nxt is None:
            return CheckReport(False, {"n": n, "position": pos, "state": s, "letter": d,
                                       "word": digits})
        s = nxt
    return CheckReport(True, {"n": n, "end": s})


def verify_dpq_to_spq(base: RationalBase, n: int, k: int) -> CheckReport:
    """Map the transducer image through m, subtract the input, and run it in T-hat.

    With ``w`` the k-prefix of w(n) and ``w'`` its image from state 0, the word
    ``m(w') - w`` must be accepted by T-hat and equal the k-prefix of
    span-word(n).
    """
    w = minimal_word(base, n).digits(k)
    image, _end = apply(base, 0, w)
    diff = [map_m(base, c) - b for b, c in zip(w, image)]
    accepted = tree_That(base).run(0, diff)
    expected = span_word(base, n).digits(k)
    ok = accepted is not None and diff == expected
    return CheckReport(ok, {"n": n, "word": diff, "accepted": accepted is not None,
                            "matches_span_word": diff == expected})


def omega_m_kernel(base: RationalBase) -> list[tuple[int, int, int]]:
    """Triples (a, b, c) with (b|c) in omega(a) but m(c) - b != a; empty when all is well."""
    bad = []
    for a, pairs in omega_table(base).items():
        for b, c in sorted(pairs):
            if map_m(base, c) - b != a:
                bad.append((a, b, c))
    return bad


def prefix_extension_search(base: RationalBase, word: Sequence[int],
                            budget: int) -> Optional[int]:
    """Smallest n <= budget whose span-word starts with ``word``; None if none found."""
    word = list(word)
    if tree_That(base).run(0, word) is None:
        raise NotAccepted(f"{word} is not accepted by T-hat in base {base}")
    k = len(word)
    for n in range(budget + 1):
        if span_word(base, n).digits(k) == word:
            return n
    return None


def value_witness(base: RationalBase, word: Sequence[int]) -> list[int]:
    """A word of T with the same value and length as a word accepted by T-hat.

    Only for p < 2q - 1.  The witness is the representation of the value,
    left-padded with zeros.
    """
    if base.p >= 2 * base.q - 1:
        raise PreconditionViolated(f"needs p < 2q - 1, got {base}")
    word = list(word)
    end = tree_That(base).run(0, word)
    if end is None:
        raise NotAccepted(f"{word} is not accepted by T-hat in base {base}")
    rep = represent(base, end)
    if len(rep) > len(word):
        raise InternalInconsistency(f"representation of {end} longer than {word}")
    witness = [0] * (len(word) - len(rep)) + rep
    if tree_T(base).run(0, witness) != end or evaluate(base, witness) != evaluate(base, word):
        raise InternalInconsistency(f"bad witness {witness} for {word}")
    return witness


# -- density ------------------------------------------------------------------

def ambient_interval(base: RationalBase, k: int = 64) -> tuple[RatInterval, RatInterval]:
    """Hull of [0, value of the maximal word of 0], and the enclosure of that value."""
    top = rho_truncate(base, maximal_word(base, 0).digits(k), base.maximal_alphabet)
    return RatInterval(Fraction(0), top.hi), top


def density_depth(base: RationalBase, rel: Fraction = Fraction(1, 10 ** 6)) -> int:
    """Smallest depth whose span enclosures are narrower than ``rel`` times the ambient length."""
    _, top = ambient_interval(base)
    target = rel * top.lo
    k = 0
    while span_tail_bound(base, k) >= target:
        k += 1
    return k


def prefixed_interval(base: RationalBase, m: int, k: int = 64) -> tuple[RatInterval, RatInterval]:
    """Enclosures of the two ends of the values of ⟨m⟩W_m.

    ``value(⟨m⟩ w) = (q/p)**d * (q*m + value(w))`` with d the length of ⟨m⟩.
    """
    p, q = base.p, base.q
    d = len(represent(base, m))
    scale = Fraction(q, p) ** d
    lo = rho_truncate(base, minimal_word(base, m).digits(k), base.minimal_alphabet)
    hi = rho_truncate(base, maximal_word(base, m).digits(k), base.maximal_alphabet)
    shift = q * m
    return (RatInterval(scale * (shift + lo.lo), scale * (shift + lo.hi)),
            RatInterval(scale * (shift + hi.lo), scale * (shift + hi.hi)))


@dataclass
class DensityReport:
    base: RationalBase
    n_max: int
    k: int
    ambient: RatInterval
    enclosure_width: Fraction
    max_gap: Fraction
    max_gap_at: tuple[Fraction, Fraction]
    outside_ambient: int
    regime: str
    certificate: Optional[dict] = None

    def as_dict(self) -> dict:
        out = {
            "base": [self.base.p, self.base.q],
            "n_max": self.n_max,
            "k": self.k,
            "regime": self.regime,
            "ambient": [str(self.ambient.lo), str(self.ambient.hi)],
            "enclosure_width": str(self.enclosure_width),
            "enclosure_width_float": float(self.enclosure_width),
            "max_gap": str(self.max_gap),
            "max_gap_float": float(self.max_gap),
            "max_gap_at": [str(x) for x in self.max_gap_at],
            "outside_ambient": self.outside_ambient,
        }
        if self.certificate is not None:
            out["certificate"] = self.certificate
        return out


def span_midpoints(base: RationalBase, n_max: int, k: int) -> tuple[list[int], int]:
    """Midpoints of the depth-k span enclosures of 0..n_max as integers over a shared denominator."""
    p, q = base.p, base.q
    dmin, dmax = base.balanced_alphabet.start, base.balanced_alphabet.stop - 1
    # midpoint = acc/p^k + (dmin+dmax)/2 * q^(k+1)/(p^k (p-q))
    den = 2 * (p - q) * p ** k
    offset = (dmin + dmax) * q ** (k + 1)
    scale = 2 * (p - q)
    return [span_numerator(base, n, k) * scale + offset for n in range(n_max + 1)], den


def density_report(base: RationalBase, n_max: int, k: Optional[int] = None,
                   cert_from: int = 0) -> DensityReport:
    """Spread of the spans of 0..n_max over [0, value of the maximal word of 0].

    Reports the largest gap between consecutive span midpoints (ambient ends
    included).  When p > 2q it also builds an open interval that provably holds
    no span: take m reachable from ``cert_from`` in T but not in T-hat, and use
    the interior of the values of ⟨m⟩W_m.
    """
    if k is None:
        k = density_depth(base)
    ambient, top = ambient_interval(base)
    mids, den = span_midpoints(base, n_max, k)
    mids.sort()
    outside = sum(1 for x in mids if x < 0 or x > top.hi * den)
    # ambient upper end taken at its certain lower bound
    points = [Fraction(0)] + [Fraction(x, den) for x in mids] + [top.lo]
    points.sort()
    best, at = Fraction(-1), (Fraction(0), Fraction(0))
    for a, b in zip(points, points[1:]):
        if b - a > best:
            best, at = b - a, (a, b)
    p, q = base.p, base.q
    regime = "dense" if p < 2 * q else "nowhere-dense"
    cert = None
    if p > 2 * q:
        m = find_that_unreachable(base, cert_from)
        left, right = prefixed_interval(base, m)
        lo, hi = left.hi, right.lo
        inside = 0
        if lo < hi:
            i = bisect.bisect_right(mids, lo * den)
            j = bisect.bisect_left(mids, hi * den)
            # strict inequalities on both ends
            inside = sum(1 for x in mids[i:j] if lo < Fraction(x, den) < hi)
        cert = {
            "from": cert_from,
            "unreachable_state": m,
            "prefix": represent(base, m),
            "open_interval": [str(lo), str(hi)],
            "open_interval_float": [float(lo), float(hi)],
            "midpoints_inside": inside,
            "valid": lo < hi and inside == 0,
        }
    return DensityReport(base, n_max, k, ambient, span_tail_bound(base, k), best, at,
                         outside, regime, cert)
