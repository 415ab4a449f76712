"""The derived transducer: a letter-to-letter sequential transducer over A_q x A_q.

It is read off T-hat by replacing each digit label ``a`` with the set of pairs
``(b|c)`` whose difference ``c - b`` is ``a - (p - q)``.  Two ways of taking a
step are provided.  :func:`step_closed_form` is the arithmetic shortcut used
everywhere; :func:`step_substitution` enumerates the substitution literally
and serves as its oracle.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from .automata import DigitStream, minimal_word, tree_That
from .errors import DigitNotInAq, DigitNotInB, InternalInconsistency
from .numeration import RationalBase, tau


def omega_bar(base: RationalBase, a: int) -> int:
    """Distance of ``a`` to the centre p-q of B."""
    if a not in base.balanced_alphabet:
        raise DigitNotInB(f"{a} not in B = {_show(base.balanced_alphabet)}")
    return a - base.center


def omega(base: RationalBase, a: int) -> frozenset[tuple[int, int]]:
    shift = omega_bar(base, a)
    q = base.q
    return frozenset((b, b + shift) for b in range(q) if 0 <= b + shift < q)


def omega_table(base: RationalBase) -> dict[int, frozenset[tuple[int, int]]]:
    return {a: omega(base, a) for a in base.balanced_alphabet}


def _check_input(base: RationalBase, b: int):
    if not 0 <= b < base.q:
        raise DigitNotInAq(f"{b} not in A_q = {_show(base.minimal_alphabet)}")


def _show(r: range) -> str:
    return f"[{r.start}..{r.stop - 1}]"


def step_closed_form(base: RationalBase, n: int, b: int) -> tuple[int, int]:
    """Output letter and next state for input ``b`` at state ``n``.

    ``c = (b - (n+1)p) mod q`` and ``m = ceil(((n+1)p - b)/q - 1)``, in exact
    integer arithmetic.
    """
    _check_input(base, b)
    p, q = base.p, base.q
    c = (b - (n + 1) * p) % q
    # ceil(x / q) == -((-x) // q)
    m = -((q + b - (n + 1) * p) // q)
    return c, m


def substitution_candidates(base: RationalBase, n: int, b: int) -> list[tuple[int, int, int]]:
    """Every ``(a, c, m)`` with ``a`` in B, ``m = tau(n, a)`` and ``(b|c)`` in omega(a)."""
    _check_input(base, b)
    found = []
    for a in base.balanced_alphabet:
        m = tau(base, n, a)
        if m is None:
            continue
        c = b + a - base.center
        if 0 <= c < base.q:
            found.append((a, c, m))
    return found


def step_substitution(base: RationalBase, n: int, b: int) -> tuple[int, int]:
    found = substitution_candidates(base, n, b)
    if len(found) != 1:
        raise InternalInconsistency(
            f"state {n}, input {b} in base {base}: {len(found)} candidate transitions {found}")
    _a, c, m = found[0]
    return c, m


@dataclass(frozen=True)
class DerivedTransducer:
    base: RationalBase
    closed_form: bool = True

    initial = 0

    def step(self, n: int, b: int) -> tuple[int, int]:
        if self.closed_form:
            return step_closed_form(self.base, n, b)
        return step_substitution(self.base, n, b)

    def delta(self, n: int, b: int) -> int:
        return self.step(n, b)[1]

    def eta(self, n: int, b: int) -> int:
        return self.step(n, b)[0]

    def apply(self, start: int, word: Sequence[int]) -> tuple[list[int], int]:
        out = []
        n = start
        for b in word:
            c, n = self.step(n, b)
            out.append(c)
        return out, n

    def transitions(self, n: int) -> dict[int, list[tuple[int, int]]]:
        """Outgoing transitions of ``n`` grouped by target: ``{m: [(b, c), ...]}``."""
        grouped: dict[int, list[tuple[int, int]]] = {}
        for b in range(self.base.q):
            c, m = self.step(n, b)
            grouped.setdefault(m, []).append((b, c))
        return grouped

    def edges(self, max_state: int) -> Iterator[tuple[int, list[tuple[int, int]], int]]:
        for n in range(max_state + 1):
            for m, labels in sorted(self.transitions(n).items()):
                if m <= max_state:
                    yield n, labels, m


def apply(base: RationalBase, start: int, word: Sequence[int]) -> tuple[list[int], int]:
    return DerivedTransducer(base).apply(start, word)


def apply_stream(base: RationalBase, stream: DigitStream, start: int = 0) -> DigitStream:
    """Lazy image of ``stream``; the returned stream's state is the transducer state."""

    def step(n):
        b, _ = next(stream)
        return step_closed_form(base, n, b)

    return DigitStream(start, step)


@dataclass
class ShiftReport:
    n: int
    i: int
    word: list[int]
    holds: bool
    violations: list[dict] = field(default_factory=list)


def verify_shift_property(base: RationalBase, n: int, i: int, word: Sequence[int]) -> ShiftReport:
    """Check that ``n -u-> m`` in T and ``i -(u|v)-> j`` give ``n+i+1 -v-> m+j+1`` in T.

    The check is made on every prefix of ``u``.  Raises ValueError when ``u``
    does not label a path from ``n`` in T.
    """
    word = list(word)
    p = base.p
    d = DerivedTransducer(base)
    report = ShiftReport(n, i, word, True)
    s, t, r = n, i, n + i + 1
    for k, b in enumerate(word):
        if not 0 <= b < p:
            raise ValueError(f"{b} is not a digit of T")
        s_next = tau(base, s, b)
        if s_next is None:
            raise ValueError(f"{word} does not label a path from {n} in T")
        c, t_next = d.step(t, b)
        r_next = tau(base, r, c)
        expected = s_next + t_next + 1
        if r_next != expected:
            report.holds = False
            report.violations.append(
                {"position": k, "state": r, "letter": c, "got": r_next, "expected": expected})
            break
        s, t, r = s_next, t_next, r_next
    return report


def run_search(base: RationalBase, u: Sequence[int], v: Sequence[int],
               budget: int) -> Optional[int]:
    """Smallest ``n <= budget`` with ``u`` a prefix of w(n) and ``v`` of w(n+1).

    This is the "only if" direction of the finite-word characterisation of the
    runs of the transducer from state 0; with no bound on ``n`` known, the
    search reports None when the budget runs out.
    """
    u, v = list(u), list(v)
    if len(u) != len(v):
        return None
    for n in range(budget + 1):
        if minimal_word(base, n).digits(len(u)) != u:
            continue
        if minimal_word(base, n + 1).digits(len(v)) == v:
            return n
    return None


def graphs_coincide(base: RationalBase, max_state: int) -> tuple[bool, set, set]:
    """Compare source/target pairs of the transducer and of T-hat for sources <= max_state."""
    that = tree_That(base)
    d = DerivedTransducer(base, closed_form=False)
    that_edges = {(n, m) for n in range(max_state + 1) for _a, m in that.successors(n)}
    d_edges = {(n, d.delta(n, b)) for n in range(max_state + 1) for b in range(base.q)}
    return that_edges == d_edges, that_edges - d_edges, d_edges - that_edges
