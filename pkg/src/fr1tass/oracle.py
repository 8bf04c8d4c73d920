"""Ground truth helpers: enumeration, comparison, classification.

Everything here answers questions about a machine's language rather than
about single runs: which short words it accepts, whether two machines
agree up to a length, and closed-form descriptions for the unary case.
"""

from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional

from .exceptions import AlphabetMismatchError, PreconditionError
from .gallery import PcpInstance, encode_pcp_candidate
from .model import Machine, Mode, Word
from .simulate import Verdict, _budget, _compile, _core, accepts


def enumerate_accepted(m: Machine, max_len: int) -> set:
    """All accepted words of length at most max_len.

    Work is shared across common prefixes: the first sweep of a run only
    ever touches input letters in order, so the walk over the prefix tree
    carries each partial first sweep along and finishes full words from
    their recorded mid-run position.  A prefix that gets stuck during the
    first sweep kills its whole subtree, and a halting acceptance during
    the first sweep accepts the whole subtree.
    """
    if max_len < 0:
        raise ValueError("max_len must be at least 0")
    comp = _compile(m)
    accepted: set = set()
    if m.mode is Mode.ET or m.accepts_empty:
        accepted.add(())
    sigma = sorted(m.input_alphabet, key=m.tape.rank)
    as_mode = m.mode is Mode.AS

    def whole_cone(prefix: Word):
        accepted.add(prefix)
        if len(prefix) < max_len:
            for a in sigma:
                whole_cone(prefix + (a,))

    def visit(state: str, appended: Word, prefix: Word):
        if prefix:
            verdict, _, _, _ = _core(
                comp, state, deque(appended), 2, prefix, len(prefix),
                _budget(comp, len(prefix)), False, None)
            if verdict is Verdict.ACCEPTED:
                accepted.add(prefix)
        if len(prefix) == max_len:
            return
        row = comp.delta.get(state, {})
        for a in sigma:
            hit = row.get(a)
            if hit is None:
                continue
            q2, out = hit
            if as_mode and q2 in comp.accepting:
                whole_cone(prefix + (a,))
                continue
            visit(q2, appended if out is None else appended + (out,),
                  prefix + (a,))

    visit(m.start, (), ())
    return accepted


def _enumerate_naive(m: Machine, max_len: int) -> set:
    """One full run per word; the slow mirror of enumerate_accepted."""
    sigma = sorted(m.input_alphabet, key=m.tape.rank)
    out = set()
    for r in range(max_len + 1):
        for tup in itertools.product(sigma, repeat=r):
            if accepts(m, tup):
                out.add(tup)
    return out


@dataclass(frozen=True)
class Counterexample:
    """A word on which two languages disagree."""

    word: Word
    in_first: bool
    in_second: bool


def _first_word(words, m: Machine) -> Word:
    return min(words, key=lambda w: (len(w), tuple(m.tape.rank(x) for x in w)))


def equivalent_up_to(a: Machine, b: Machine,
                     max_len: int) -> Optional[Counterexample]:
    """None when both machines accept the same words up to max_len,
    otherwise the shortest (then letter-orderwise first) disagreement."""
    if a.input_alphabet != b.input_alphabet:
        raise AlphabetMismatchError("machines read different input alphabets")
    in_a = enumerate_accepted(a, max_len)
    in_b = enumerate_accepted(b, max_len)
    diff = in_a ^ in_b
    if not diff:
        return None
    w = _first_word(diff, a)
    return Counterexample(word=w, in_first=w in in_a, in_second=w in in_b)


def matches_predicate_up_to(m: Machine, predicate: Callable[[Word], bool],
                            max_len: int) -> Optional[Counterexample]:
    """None when the machine accepts exactly the words the predicate
    allows, up to max_len; otherwise the first disagreement in length
    then letter order."""
    got = enumerate_accepted(m, max_len)
    sigma = sorted(m.input_alphabet, key=m.tape.rank)
    for r in range(max_len + 1):
        for tup in itertools.product(sigma, repeat=r):
            machine_says = tup in got
            predicate_says = bool(predicate(tup))
            if machine_says != predicate_says:
                return Counterexample(word=tup, in_first=machine_says,
                                      in_second=predicate_says)
    return None


# --- reference predicates -----------------------------------------------------


def is_power_of_two_block(word: Word) -> bool:
    n = len(word)
    return n >= 1 and n & (n - 1) == 0 and set(word) <= {"a"}


def is_marked_copy(word: Word) -> bool:
    """# u # u for a block u over a, b."""
    if len(word) < 2 or word[0] != "#":
        return False
    rest = word[1:]
    if rest.count("#") != 1:
        return False
    i = rest.index("#")
    u, v = rest[:i], rest[i + 1:]
    return u == v and all(x in ("a", "b") for x in u)


def is_center_a(word: Word) -> bool:
    return len(word) % 2 == 1 and word[len(word) // 2] == "a"


def is_balanced_ab(word: Word) -> bool:
    """As many a as b, or one extra a."""
    if not set(word) <= {"a", "b"}:
        return False
    gap = word.count("a") - word.count("b")
    return gap in (0, 1)


def is_palindrome(word: Word) -> bool:
    return tuple(word) == tuple(reversed(word))


def regular(pattern: str) -> Callable[[Word], bool]:
    """Predicate matching a whole word against a regular expression.

    Words are joined letter by letter, so this only makes sense for
    single-character letters.
    """
    rx = re.compile(pattern)

    def predicate(word: Word) -> bool:
        for x in word:
            if len(x) != 1:
                raise ValueError("regular predicates need one-character letters")
        return rx.fullmatch("".join(word)) is not None

    return predicate


def pcp_solution_encoding(p: PcpInstance) -> Callable[[Word], bool]:
    """Predicate for well-formed candidate encodings of actual solutions."""

    def predicate(word: Word) -> bool:
        word = tuple(word)
        if not word or word[0] != "#":
            return False
        parts: list = [[]]
        for x in word[1:]:
            if x == "#":
                parts.append([])
            else:
                parts[-1].append(x)
        if len(parts) != 3:
            return False
        indices = []
        for x in parts[0]:
            if not (x.endswith("~") and x[:-1].isdigit()):
                return False
            indices.append(int(x[:-1]))
        if not indices or not all(1 <= i <= p.size for i in indices):
            return False
        if word != encode_pcp_candidate(p, indices):
            return False
        top = tuple(x for i in indices for x in p.u_words[i - 1])
        bottom = tuple(x for i in indices for x in p.v_words[i - 1])
        return top == bottom

    return predicate


# --- unary machines -----------------------------------------------------------


class UnaryKind(Enum):
    AS_THRESHOLD = "AS_Threshold"
    ET_FINITE = "ET_Finite"
    ET_ALL = "ET_All"
    EMPTY = "Empty"


@dataclass(frozen=True)
class UnaryClass:
    """Closed-form description of a unary language.

    AS_Threshold holds all lengths at or above the threshold, ET_Finite
    exactly the listed lengths, ET_All every length, Empty none.
    """

    kind: UnaryKind
    threshold: Optional[int] = None
    lengths: Optional[frozenset] = None

    def member(self, n: int) -> bool:
        if n < 0:
            raise ValueError("lengths are nonnegative")
        if self.kind is UnaryKind.AS_THRESHOLD:
            return n >= self.threshold
        if self.kind is UnaryKind.ET_FINITE:
            return n in self.lengths
        return self.kind is UnaryKind.ET_ALL

    def __str__(self):
        if self.kind is UnaryKind.AS_THRESHOLD:
            return f"{self.kind.value} {self.threshold}"
        if self.kind is UnaryKind.ET_FINITE:
            body = " ".join(str(n) for n in sorted(self.lengths))
            return f"{self.kind.value} {body}".rstrip()
        return self.kind.value


def classify_unary_noaux(m: Machine) -> UnaryClass:
    """Exact language of a single-letter machine with no working letters.

    Such a machine follows one state walk regardless of input length; only
    where the tape runs out depends on the length.  The walk is followed
    until it sticks or a state repeats, counting erasures as it goes, and
    the language falls out of those counts.
    """
    if len(m.input_alphabet) != 1 or set(m.tape.letters) != m.input_alphabet:
        raise PreconditionError(
            "classification needs a machine whose only tape letter is its "
            "one input letter")
    if m.mode is Mode.AS and m.accepts_empty:
        raise PreconditionError(
            "halting machines accepting the empty word have no threshold form")
    letter = next(iter(m.input_alphabet))

    walk = [m.start]
    erased = []
    first_seen = {m.start: 0}
    stuck = False
    cycle_start = None
    q = m.start
    while True:
        hit = m.transitions.get((q, letter))
        if hit is None:
            stuck = True
            break
        q, out = hit
        erased.append(out is None)
        walk.append(q)
        if q in first_seen:
            cycle_start = first_seen[q]
            break
        first_seen[q] = len(walk) - 1

    # cumulative erasures: total[i] counts the first i steps
    total = [0]
    for e in erased:
        total.append(total[-1] + (1 if e else 0))

    if m.mode is Mode.AS:
        hits = [j for j in range(1, len(walk)) if walk[j] in m.accepting]
        if not hits:
            return UnaryClass(kind=UnaryKind.EMPTY)
        d = hits[0]
        # the run reaches step d iff the tape outlasts steps 1..d-1
        return UnaryClass(kind=UnaryKind.AS_THRESHOLD,
                          threshold=total[d - 1] + 1)
    if stuck:
        cap = total[-1]
        return UnaryClass(kind=UnaryKind.ET_FINITE,
                          lengths=frozenset(range(cap + 1)))
    if any(erased[cycle_start:]):
        # erasures never dry up, so every length eventually empties
        return UnaryClass(kind=UnaryKind.ET_ALL)
    return UnaryClass(kind=UnaryKind.ET_FINITE,
                      lengths=frozenset(range(total[-1] + 1)))


def has_strongly_equivalent_states(m: Machine) -> Optional[tuple]:
    """First pair of distinct states with identical transition rows
    across the whole tape alphabet, or None when all rows differ."""
    names = sorted(m.states)
    rows = {q: tuple(m.transitions.get((q, x)) for x in m.tape.letters)
            for q in names}
    for i, p in enumerate(names):
        for q in names[i + 1:]:
            if rows[p] == rows[q]:
                return (p, q)
    return None
