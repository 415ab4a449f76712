"""Lazy infinite automata over digit alphabets.

Both automata have state set N, initial state 0, every state final, and the
same transition rule ``n --a--> (n*p + a) / q``; they only differ by the
alphabet the rule is restricted to.  Nothing is ever materialised.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Any, Callable, Iterator, Optional, Sequence

from .errors import InternalInconsistency, PreconditionViolated
from .numeration import RationalBase, tau


@dataclass(frozen=True)
class LazyAutomaton:
    base: RationalBase
    alphabet: range
    name: str = ""

    initial = 0

    def step(self, n: int, a: int) -> Optional[int]:
        if a not in self.alphabet:
            return None
        return tau(self.base, n, a)

    def successors(self, n: int) -> list[tuple[int, int]]:
        """``(letter, state)`` pairs leaving ``n``, by increasing letter."""
        p, q = self.base.p, self.base.q
        out = []
        # first letter of the alphabet with q | n*p + a
        a = self.alphabet.start + (-(n * p + self.alphabet.start)) % q
        while a < self.alphabet.stop:
            m = (n * p + a) // q
            if m >= 0:
                out.append((a, m))
            a += q
        return out

    def is_final(self, n: int) -> bool:
        return n >= 0

    def run(self, start: int, word: Sequence[int]) -> Optional[int]:
        n = start
        for a in word:
            n = self.step(n, a)
            if n is None:
                return None
        return n

    def edges(self, max_state: int, max_depth: Optional[int] = None,
              self_loop: bool = True) -> Iterator[tuple[int, int, int]]:
        """Enumerate ``(source, letter, target)`` with both ends ``<= max_state``.

        With ``max_depth`` only states reachable from 0 within that many steps
        are used as sources.  ``self_loop=False`` drops the ``0 --0--> 0`` loop,
        which gives the plain representation tree.
        """
        if max_state < 0:
            return
        if max_depth is None:
            sources: Iterator[int] = iter(range(max_state + 1))
        else:
            sources = iter(sorted(_reachable_within(self, 0, max_depth, max_state)))
        for n in sources:
            for a, m in self.successors(n):
                if m > max_state:
                    continue
                if not self_loop and n == m == 0:
                    continue
                yield n, a, m


def _reachable_within(aut: LazyAutomaton, start: int, depth: int, bound: int) -> set[int]:
    # source states for edges that can appear at depth < depth
    seen = {start}
    frontier = {start}
    for _ in range(depth - 1):
        nxt = set()
        for n in frontier:
            for _a, m in aut.successors(n):
                if m <= bound and m not in seen:
                    nxt.add(m)
        seen |= nxt
        frontier = nxt
    return seen if depth > 0 else set()


def tree_T(base: RationalBase) -> LazyAutomaton:
    return LazyAutomaton(base, base.canonical_alphabet, "T")


def tree_That(base: RationalBase) -> LazyAutomaton:
    return LazyAutomaton(base, base.balanced_alphabet, "That")


def accepts(aut: LazyAutomaton, start: int, word: Sequence[int]) -> Optional[int]:
    """End state of the run of ``word`` from ``start``, or None."""
    return aut.run(start, word)


class DigitStream:
    """Single-consumer cursor over an infinite word read along a path.

    ``step`` maps the current state to ``(digit, next_state)``.  Iterating
    yields those pairs; ``state`` always holds the state after the last
    emitted digit.
    """

    def __init__(self, start: Any, step: Callable[[Any], tuple[int, Any]]):
        self.state = start
        self._step = step

    def __iter__(self):
        return self

    def __next__(self) -> tuple[int, Any]:
        digit, self.state = self._step(self.state)
        return digit, self.state

    def take(self, k: int) -> tuple[list[int], list[Any]]:
        digits, states = [], []
        for _ in range(k):
            d, s = next(self)
            digits.append(d)
            states.append(s)
        return digits, states

    def digits(self, k: int) -> list[int]:
        return self.take(k)[0]


def minimal_letter(base: RationalBase, n: int) -> int:
    return (-n * base.p) % base.q


def maximal_letter(base: RationalBase, n: int) -> int:
    lo = base.p - base.q
    return lo + (-n * base.p - lo) % base.q


def minimal_word(base: RationalBase, n: int) -> DigitStream:
    if n < 0:
        raise ValueError("states are non-negative")
    p, q = base.p, base.q

    def step(s):
        a = (-s * p) % q
        return a, (s * p + a) // q

    return DigitStream(n, step)


def maximal_word(base: RationalBase, n: int) -> DigitStream:
    if n < 0:
        raise ValueError("states are non-negative")
    p, q = base.p, base.q
    lo = p - q

    def step(s):
        a = lo + (-s * p - lo) % q
        return a, (s * p + a) // q

    return DigitStream(n, step)


@dataclass(frozen=True)
class StateInterval:
    lo: int
    hi: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    def __len__(self):
        return self.hi - self.lo + 1

    def __contains__(self, n):
        return self.lo <= n <= self.hi

    def __iter__(self):
        return iter(range(self.lo, self.hi + 1))


def reachable_interval(aut: LazyAutomaton, n: int, i: int) -> StateInterval:
    """States reachable from ``n`` by words of length exactly ``i``.

    Only the endpoints are followed.  This is exact when the alphabet holds at
    least ``p`` consecutive digits (so T always, and T-hat when p <= 2q-1):
    then the successors of an integer interval form an integer interval.
    """
    if i < 0:
        raise ValueError("depth must be non-negative")
    if len(aut.alphabet) < aut.base.p:
        raise PreconditionViolated(
            f"reachable states of {aut.name or 'this automaton'} need not form an interval "
            f"(alphabet of {len(aut.alphabet)} digits < p={aut.base.p})")
    lo = hi = n
    for _ in range(i):
        lo = aut.successors(lo)[0][1]
        hi = aut.successors(hi)[-1][1]
    return StateInterval(lo, hi)


def reachable_bfs(aut: LazyAutomaton, n: int, i: int) -> set[int]:
    """Brute-force set of states at distance exactly ``i`` (exponential)."""
    layer = {n}
    for _ in range(i):
        layer = {m for s in layer for _a, m in aut.successors(s)}
    return layer


def that_reaches(base: RationalBase, n: int, target: int,
                 max_depth: Optional[int] = None) -> bool:
    """Whether ``target`` is reachable from ``n`` in T-hat.

    Without ``max_depth`` this requires p > 2q - 1, where every T-hat letter is
    positive and states strictly increase along a run, so the search can be
    pruned at ``target`` and is exhaustive over all depths.
    """
    that = tree_That(base)
    if max_depth is None:
        if base.p <= 2 * base.q - 1:
            raise PreconditionViolated("unbounded search needs p > 2q - 1")
        todo = deque([n])
        seen = {n}
        while todo:
            s = todo.popleft()
            if s == target:
                return True
            for _a, m in that.successors(s):
                if m <= target and m not in seen:
                    seen.add(m)
                    todo.append(m)
        return False
    layer = {n}
    for _ in range(max_depth + 1):
        if target in layer:
            return True
        layer = {m for s in layer for _a, m in that.successors(s)}
    return False


def find_that_unreachable(base: RationalBase, n: int) -> int:
    """A state reachable from ``n`` in T but not in T-hat (needs p > 2q).

    Picks the largest positive multiple of p among the states T reaches in
    exactly p+1 steps.  Its only incoming edge is labelled 0, a letter T-hat
    lacks.  The absence is then confirmed by an exhaustive pruned search.
    """
    p, q = base.p, base.q
    if p <= 2 * q:
        raise PreconditionViolated(f"needs p > 2q, got {base}")
    interval = reachable_interval(tree_T(base), n, p + 1)
    m = interval.hi - interval.hi % p
    if m < interval.lo or m == 0:
        raise InternalInconsistency(f"no positive multiple of {p} in [{interval.lo}, {interval.hi}]")
    if that_reaches(base, n, m):
        raise InternalInconsistency(f"state {m} is reachable from {n} in T-hat")
    return m
