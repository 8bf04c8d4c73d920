"""Constructions that combine or normalize machines.

All constructions return fresh valid machines and leave their inputs
untouched.  Binary constructions require both operands to read the same
input alphabet and, where the underlying simulation needs it, normalize
erasing machines via remove_erasing first (recorded in the result's
metadata).  Unreachable states are pruned from every result.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .exceptions import (AlphabetMismatchError, CycleError, ErasingInputError,
                         ModeError)
from .model import (Machine, Mode, OrderedAlphabet, ParseError, _tokenize,
                    fresh_name, make_machine)


def _ordered(letters) -> OrderedAlphabet:
    return OrderedAlphabet(tuple(letters))


@dataclass(frozen=True)
class PartialOrderSpec:
    """Elements plus (lo, hi) pairs meaning lo is at or below hi."""

    elements: tuple
    pairs: tuple

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        object.__setattr__(self, "pairs", tuple(map(tuple, self.pairs)))


def linear_extension(spec: PartialOrderSpec) -> tuple:
    """Total order refining the given partial order.

    Ties are broken by element input order, so the result is deterministic.
    Raises CycleError when the pairs relate distinct elements cyclically.
    """
    elements = list(spec.elements)
    pos = {e: i for i, e in enumerate(elements)}
    if len(pos) != len(elements):
        raise ValueError("duplicate elements")
    succs = {e: [] for e in elements}
    indegree = {e: 0 for e in elements}
    seen = set()
    for lo, hi in spec.pairs:
        if lo not in pos or hi not in pos:
            raise ValueError(f"pair ({lo}, {hi}) mentions unknown elements")
        if lo == hi or (lo, hi) in seen:
            continue
        seen.add((lo, hi))
        succs[lo].append(hi)
        indegree[hi] += 1
    ready = [pos[e] for e in elements if indegree[e] == 0]
    heapq.heapify(ready)
    out = []
    while ready:
        e = elements[heapq.heappop(ready)]
        out.append(e)
        for s in succs[e]:
            indegree[s] -= 1
            if indegree[s] == 0:
                heapq.heappush(ready, pos[s])
    if len(out) != len(elements):
        raise CycleError("order relates elements cyclically")
    return tuple(out)


def _reachable_part(start: str, transitions: dict):
    by_source: dict = {}
    for (q, _), (q2, _) in transitions.items():
        by_source.setdefault(q, []).append(q2)
    seen = {start}
    todo = [start]
    while todo:
        for q2 in by_source.get(todo.pop(), ()):
            if q2 not in seen:
                seen.add(q2)
                todo.append(q2)
    kept = {k: v for k, v in transitions.items() if k[0] in seen}
    return seen, kept


def _marked_names(letters) -> dict:
    """Map each letter to a fresh marked twin (suffixed copy)."""
    taken = set(letters)
    suffix = "*"
    while any(x + suffix in taken for x in letters):
        suffix += "*"
    return {x: x + suffix for x in letters}


def _require_as(m: Machine, what: str):
    if m.mode is not Mode.AS:
        raise ModeError(f"{what} needs an AS machine (apply et_to_as first)")


def remove_erasing(a: Machine) -> Machine:
    """Equivalent machine that writes a new bottom letter instead of erasing.

    The fresh letter becomes the smallest tape letter and every state skips
    over it in place, so runs agree with the original step for step apart
    from carrying the placeholder cells along.
    """
    _require_as(a, "remove_erasing")
    box = fresh_name("BOX", set(a.tape.letters) | a.input_alphabet)
    transitions = {}
    for (q, x), (q2, out) in a.transitions.items():
        transitions[(q, x)] = (q2, box if out is None else out)
    for q in sorted(a.states):
        transitions[(q, box)] = (q, box)
    return make_machine(
        sigma=a.input_alphabet,
        tape=(box,) + a.tape.letters,
        start=a.start,
        accepting=a.accepting,
        transitions=transitions,
        mode=Mode.AS,
        accepts_empty=a.accepts_empty,
        extra_states=a.states,
    )


def _split_accepting_start(m: Machine) -> Machine:
    """Fresh non-accepting start with the original start's behavior.

    Acceptance is only checked after a transition, so a machine may sit in
    an accepting start without halting; constructions that rewrite accepting
    rows must not touch the row the start actually uses.
    """
    if m.start not in m.accepting:
        return m
    fresh = fresh_name(m.start, m.states)
    transitions = dict(m.transitions)
    for (q, x), target in m.transitions.items():
        if q == m.start:
            transitions[(fresh, x)] = target
    return make_machine(
        sigma=m.input_alphabet,
        tape=m.tape.letters,
        start=fresh,
        accepting=m.accepting,
        transitions=transitions,
        mode=m.mode,
        accepts_empty=m.accepts_empty,
        extra_states=m.states,
    )


def as_to_et(a: Machine) -> Machine:
    """Recast an AS machine as an ET machine over the same inputs.

    Once the original would accept, the new machine erases whatever is
    left, so the tape empties exactly on accepted words.  The empty word
    is the one exception: ET machines accept it unconditionally.
    """
    _require_as(a, "as_to_et")
    b = remove_erasing(_split_accepting_start(a))
    transitions = {k: v for k, v in b.transitions.items()
                   if k[0] not in b.accepting}
    for f in sorted(b.accepting):
        for x in b.tape.letters:
            transitions[(f, x)] = (f, None)
    return make_machine(
        sigma=b.input_alphabet,
        tape=b.tape.letters,
        start=b.start,
        accepting=b.accepting,  # inert in ET mode, kept for reference
        transitions=transitions,
        mode=Mode.ET,
        extra_states=b.states,
    )


def et_to_as(a: Machine) -> Machine:
    """Recast an ET machine as an AS machine.

    The first step marks the tape's front cell.  Erased cells become a
    bottom placeholder that every state skips; a clean/seen flag tracks
    whether the current lap saw any real letter, and reading the marked
    placeholder on a clean lap means the simulated tape is empty.
    """
    if a.mode is not Mode.ET:
        raise ModeError("et_to_as needs an ET machine (apply as_to_et first)")
    box = fresh_name("BOX", set(a.tape.letters) | a.input_alphabet)
    plain = (box,) + a.tape.letters
    mark = _marked_names(plain)
    tape = []
    for x in plain:
        tape += [mark[x], x]

    def clean(q):
        return q + "@c"

    def seen(q):
        return q + "@s"

    copies = {clean(q) for q in a.states} | {seen(q) for q in a.states}
    init = fresh_name("init", copies)
    acc = fresh_name("acc", copies | {init})

    t: dict = {}
    for x in sorted(a.input_alphabet, key=a.tape.rank):
        hit = a.transitions.get((a.start, x))
        if hit is not None:
            q2, out = hit
            t[(init, x)] = (clean(q2), mark[out if out is not None else box])
    for q in sorted(a.states):
        t[(clean(q), box)] = (clean(q), box)
        t[(seen(q), box)] = (seen(q), box)
        t[(clean(q), mark[box])] = (acc, mark[box])
        t[(seen(q), mark[box])] = (clean(q), mark[box])
        for y in a.tape.letters:
            hit = a.transitions.get((q, y))
            if hit is None:
                continue
            q2, out = hit
            out = out if out is not None else box
            t[(clean(q), y)] = (seen(q2), out)
            t[(seen(q), y)] = (seen(q2), out)
            t[(clean(q), mark[y])] = (clean(q2), mark[out])
            t[(seen(q), mark[y])] = (clean(q2), mark[out])

    states, t = _reachable_part(init, t)
    return Machine(
        input_alphabet=a.input_alphabet,
        tape=_ordered(tape),
        states=frozenset(states),
        start=init,
        accepting=frozenset({acc} if acc in states else ()),
        transitions=t,
        mode=Mode.AS,
        accepts_empty=True,
    )


def _sticky(m: Machine) -> Machine:
    """Park accepting states on same-letter loops.

    In a lockstep product one component may accept long before the other;
    the loops let the finished component idle without going missing.  The
    component language is unchanged because acceptance halts the machine
    the moment such a state is entered.
    """
    m = _split_accepting_start(m)
    transitions = {k: v for k, v in m.transitions.items()
                   if k[0] not in m.accepting}
    for f in sorted(m.accepting):
        for x in m.tape.letters:
            transitions[(f, x)] = (f, x)
    return make_machine(
        sigma=m.input_alphabet,
        tape=m.tape.letters,
        start=m.start,
        accepting=m.accepting,
        transitions=transitions,
        mode=Mode.AS,
        accepts_empty=m.accepts_empty,
        extra_states=m.states,
    )


def _joint_names(parts, taken) -> dict:
    """Injective readable names for tuples, avoiding the taken set."""
    suffix = ""
    while True:
        names = {p: "(" + ",".join(p) + ")" + suffix for p in parts}
        values = set(names.values())
        if len(values) == len(names) and not (values & set(taken)):
            return names
        suffix += "'"


def _product(a: Machine, b: Machine, keep_one: bool) -> Machine:
    if a.input_alphabet != b.input_alphabet:
        raise AlphabetMismatchError("operands read different input alphabets")
    _require_as(a, "product")
    _require_as(b, "product")
    a2 = _sticky(remove_erasing(a))
    b2 = _sticky(remove_erasing(b))
    sigma = sorted(a.input_alphabet, key=a2.tape.rank)

    pairs = [(x, y) for x in a2.tape.letters for y in b2.tape.letters]
    letter = _joint_names(pairs, sigma)
    order = linear_extension(PartialOrderSpec(
        elements=tuple(letter[p] for p in pairs),
        pairs=tuple((letter[(x1, y1)], letter[(x2, y2)])
                    for x1, y1 in pairs for x2, y2 in pairs
                    if a2.rank(x1) <= a2.rank(x2) and b2.rank(y1) <= b2.rank(y2)),
    ))
    tape = order + tuple(sigma)  # every pair sits below every raw letter

    bot = fresh_name("_", a2.states | b2.states)
    combos = [(p, q) for p in sorted(a2.states) for q in sorted(b2.states)]
    if keep_one:
        combos += [(p, bot) for p in sorted(a2.states)]
        combos += [(bot, q) for q in sorted(b2.states)]
    state = _joint_names(combos, ())

    def accepting_pair(p, q):
        if keep_one:
            return p in a2.accepting or q in b2.accepting
        return p in a2.accepting and q in b2.accepting

    t: dict = {}
    for p, q in combos:
        reads = ([(x, x, x) for x in sigma] +
                 [(letter[(x, y)], x, y) for x, y in pairs])
        for consumed, xa, xb in reads:
            hit_a = a2.transitions.get((p, xa)) if p != bot else None
            hit_b = b2.transitions.get((q, xb)) if q != bot else None
            if p != bot and q != bot:
                if hit_a and hit_b:
                    t[(state[(p, q)], consumed)] = (
                        state[(hit_a[0], hit_b[0])], letter[(hit_a[1], hit_b[1])])
                elif keep_one and hit_a:
                    t[(state[(p, q)], consumed)] = (
                        state[(hit_a[0], bot)], letter[(hit_a[1], xb)])
                elif keep_one and hit_b:
                    t[(state[(p, q)], consumed)] = (
                        state[(bot, hit_b[0])], letter[(xa, hit_b[1])])
            elif p != bot and hit_a:
                t[(state[(p, bot)], consumed)] = (
                    state[(hit_a[0], bot)], letter[(hit_a[1], xb)])
            elif q != bot and hit_b:
                t[(state[(bot, q)], consumed)] = (
                    state[(bot, hit_b[0])], letter[(xa, hit_b[1])])

    start = state[(a2.start, b2.start)]
    states, t = _reachable_part(start, t)
    accepting = set()
    for p, q in combos:
        if state[(p, q)] not in states:
            continue
        p_acc = p != bot and p in a2.accepting
        q_acc = q != bot and q in b2.accepting
        if (p_acc or q_acc) if keep_one else (p_acc and q_acc):
            accepting.add(state[(p, q)])
    if keep_one:
        accepts_empty = a.accepts_empty or b.accepts_empty
    else:
        accepts_empty = a.accepts_empty and b.accepts_empty
    return Machine(
        input_alphabet=a.input_alphabet,
        tape=_ordered(tape),
        states=frozenset(states),
        start=start,
        accepting=frozenset(accepting),
        transitions=t,
        mode=Mode.AS,
        accepts_empty=accepts_empty,
        metadata={"normalized": "remove_erasing"},
    )


def intersect(a: Machine, b: Machine) -> Machine:
    """Lockstep product accepting words both operands accept."""
    return _product(a, b, keep_one=False)


def union(a: Machine, b: Machine) -> Machine:
    """Lockstep product accepting words either operand accepts.

    When exactly one component gets stuck the other keeps running on its
    own track, the dead track repeating its letters unchanged.
    """
    return _product(a, b, keep_one=True)


def complement(a: Machine) -> Machine:
    """Machine accepting exactly the words a non-erasing AS machine rejects.

    The first step marks the tape's front cell; indexed state copies count
    crossings of the mark since the last tape change.  Rejection by a
    missing transition routes to the accepting sink right away, and enough
    change-free crossings prove the original run cycles, which also routes
    to the sink.  Entering a state the original accepts in strands the run.
    """
    _require_as(a, "complement")
    if a.has_erasing():
        raise ErasingInputError(
            "complement needs a non-erasing machine (apply remove_erasing first)")
    mark = _marked_names(a.tape.letters)
    tape = []
    for x in a.tape.letters:
        tape += [mark[x], x]
    rounds = len(a.states) + 1

    def copy(q, i):
        return f"{q}.{i}"

    names = {copy(q, i) for q in a.states for i in range(1, rounds + 2)}
    start = fresh_name("start", names)
    sink = fresh_name("sink", names | {start})

    t: dict = {}
    for x in sorted(a.input_alphabet, key=a.tape.rank):
        hit = a.transitions.get((a.start, x))
        if hit is not None:
            t[(start, x)] = (copy(hit[0], 1), mark[hit[1]])
        else:
            t[(start, x)] = (sink, mark[x])
    for q in sorted(a.states - a.accepting):
        for i in range(1, rounds + 2):
            here = copy(q, i)
            for y in a.tape.letters:
                hit = a.transitions.get((q, y))
                if hit is None:
                    t[(here, y)] = (sink, y)
                    t[(here, mark[y])] = (sink, mark[y])
                    continue
                q2, out = hit
                t[(here, y)] = (copy(q2, i if out == y else 1), out)
                if out != y:
                    t[(here, mark[y])] = (copy(q2, 1), mark[out])
                elif i <= rounds:
                    t[(here, mark[y])] = (copy(q2, i + 1), mark[y])
                else:
                    t[(here, mark[y])] = (sink, mark[y])

    states, t = _reachable_part(start, t)
    return Machine(
        input_alphabet=a.input_alphabet,
        tape=_ordered(tape),
        states=frozenset(states),
        start=start,
        accepting=frozenset({sink} if sink in states else ()),
        transitions=t,
        mode=Mode.AS,
        accepts_empty=not a.accepts_empty,
    )


def _sequential(a: Machine, b: Machine, keep_one: bool) -> Machine:
    """Run a's program to a verdict, then b's, sharing one state pool.

    The input survives a's phase on a second track; a freeze pass then
    drops a's track and hands b the preserved word starting from the
    marked front cell.  For the union flavor, a rejecting by a missing
    transition falls through to b, but a run of a that cycles forever
    keeps the combined machine cycling, so only pairs whose first operand
    always halts are exact; the intersection flavor has no such caveat.
    """
    if a.input_alphabet != b.input_alphabet:
        raise AlphabetMismatchError("operands read different input alphabets")
    _require_as(a, "sequential product")
    _require_as(b, "sequential product")
    a2 = remove_erasing(a)
    b2 = remove_erasing(b)
    sigma = sorted(a.input_alphabet, key=a2.tape.rank)

    # letters: [t2] frozen track, [t1/t2] a-phase pairs, raw input; the m
    # variants mark the tape's front cell
    tape = []
    frozen = {}
    for y in b2.tape.letters:
        frozen[(y, False)] = f"[{y}]"
        frozen[(y, True)] = f"[{y}]m"
        tape += [frozen[(y, False)], frozen[(y, True)]]
    phase1 = {}
    for x2 in sigma:
        for x1 in a2.tape.letters:
            phase1[(x1, x2, False)] = f"[{x1}/{x2}]"
            phase1[(x1, x2, True)] = f"[{x1}/{x2}]m"
            tape += [phase1[(x1, x2, False)], phase1[(x1, x2, True)]]
    tape += sigma

    slot_a = {q: f"s{i}" for i, q in enumerate(sorted(a2.states))}
    slot_b = {q: f"s{i}" for i, q in enumerate(sorted(b2.states))}
    start, freezer, goal = "c0", "c1", "fin"

    def a_move(source, hit, x2, marked):
        """Route one step of a's program from the given letter context."""
        if hit is None:
            if keep_one:
                t[source] = (freezer, frozen[(x2, marked)])
            return
        q2, out = hit
        if q2 in a2.accepting:
            after = goal if keep_one else freezer
            t[source] = (after, frozen[(x2, marked)])
        else:
            t[source] = (slot_a[q2], phase1[(out, x2, marked)])

    def b_move(source, hit, marked):
        if hit is None:
            return
        q2, out = hit
        after = goal if q2 in b2.accepting else slot_b[q2]
        t[source] = (after, frozen[(out, marked)])

    t: dict = {}
    for x in sigma:
        a_move((start, x), a2.transitions.get((a2.start, x)), x, True)
    for q in sorted(a2.states - a2.accepting):
        for x in sigma:
            a_move((slot_a[q], x), a2.transitions.get((q, x)), x, False)
            for x1 in a2.tape.letters:
                for marked in (False, True):
                    a_move((slot_a[q], phase1[(x1, x, marked)]),
                           a2.transitions.get((q, x1)), x, marked)
    # the freeze pass drops a's track, then seeks the marked front cell
    # and feeds it to b's start
    for x in sigma:
        t[(freezer, x)] = (freezer, frozen[(x, False)])
        for x1 in a2.tape.letters:
            for marked in (False, True):
                t[(freezer, phase1[(x1, x, marked)])] = (
                    freezer, frozen[(x, marked)])
    for y in b2.tape.letters:
        t[(freezer, frozen[(y, False)])] = (freezer, frozen[(y, False)])
        b_move((freezer, frozen[(y, True)]),
               b2.transitions.get((b2.start, y)), True)
    for q in sorted(b2.states - b2.accepting):
        for y in b2.tape.letters:
            for marked in (False, True):
                b_move((slot_b[q], frozen[(y, marked)]),
                       b2.transitions.get((q, y)), marked)

    states, t = _reachable_part(start, t)
    if keep_one:
        accepts_empty = a.accepts_empty or b.accepts_empty
    else:
        accepts_empty = a.accepts_empty and b.accepts_empty
    return Machine(
        input_alphabet=a.input_alphabet,
        tape=_ordered(tape),
        states=frozenset(states),
        start=start,
        accepting=frozenset({goal} if goal in states else ()),
        transitions=t,
        mode=Mode.AS,
        accepts_empty=accepts_empty,
        metadata={"normalized": "remove_erasing", "extra_states": "3"},
    )


def intersect_sequential(a: Machine, b: Machine) -> Machine:
    """Intersection within max(|Qa|, |Qb|) + 3 states."""
    return _sequential(a, b, keep_one=False)


def union_sequential(a: Machine, b: Machine) -> Machine:
    """Union within max(|Qa|, |Qb|) + 3 states.

    Exact whenever the first operand halts on every input; see
    _sequential for the caveat on cycling first operands.
    """
    return _sequential(a, b, keep_one=True)


# --- deterministic finite automata -------------------------------------------


@dataclass(frozen=True)
class DfaSpec:
    """A complete or partial DFA: transitions map (state, letter) to state."""

    alphabet: tuple
    states: frozenset
    start: str
    accepting: frozenset
    transitions: dict

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "states", frozenset(self.states))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError("duplicate alphabet letters")
        if self.start not in self.states:
            raise ValueError("start is not a state")
        if not self.accepting <= self.states:
            raise ValueError("accepting set contains non-states")
        for (q, x), q2 in self.transitions.items():
            if q not in self.states or q2 not in self.states:
                raise ValueError(f"transition ({q}, {x}) touches non-states")
            if x not in self.alphabet:
                raise ValueError(f"transition letter {x!r} not in alphabet")


def parse_dfa(text: str) -> DfaSpec:
    """Parse a DFA from alphabet:, start:, accept: and trans: lines.

    States are whatever the other lines mention; trans lines have the
    shape 'trans: state letter -> state'.
    """
    lines = list(_tokenize(text))
    pos = 0
    last_line = lines[-1][0] if lines else 1

    def expect(directive: str):
        nonlocal pos
        if pos >= len(lines):
            raise ParseError(last_line, f"missing '{directive}:' directive")
        number, tokens = lines[pos]
        if tokens[0] != directive + ":":
            raise ParseError(number,
                             f"expected '{directive}:', got {tokens[0]!r}")
        pos += 1
        return number, tokens[1:]

    _, alphabet = expect("alphabet")
    start_line, start_tokens = expect("start")
    if len(start_tokens) != 1:
        raise ParseError(start_line, "start takes exactly one state")
    _, accepting = expect("accept")
    transitions: dict = {}
    while pos < len(lines):
        number, tokens = lines[pos]
        pos += 1
        if tokens[0] != "trans:":
            raise ParseError(number, f"expected 'trans:', got {tokens[0]!r}")
        body = tokens[1:]
        if len(body) != 4 or body[2] != "->":
            raise ParseError(number,
                             "trans needs the shape: state letter -> state")
        q, x, _, q2 = body
        if (q, x) in transitions:
            raise ParseError(number, f"duplicate transition for ({q}, {x})")
        transitions[(q, x)] = q2

    states = {start_tokens[0], *accepting}
    for (q, _), q2 in transitions.items():
        states.update((q, q2))
    try:
        return DfaSpec(alphabet=tuple(alphabet), states=frozenset(states),
                       start=start_tokens[0], accepting=frozenset(accepting),
                       transitions=transitions)
    except ValueError as err:
        raise ParseError(last_line, str(err)) from err


def dfa_accepts(d: DfaSpec, word) -> bool:
    q = d.start
    for x in word:
        hit = d.transitions.get((q, x))
        if hit is None:
            return False
        q = hit
    return q in d.accepting


def from_dfa(d: DfaSpec) -> Machine:
    """Machine with the DFA's language.

    The first sweep runs the DFA, overwriting every cell with a bottom
    placeholder; accepting DFA states then erase one placeholder into a
    fresh accepting state on the second sweep.
    """
    box = fresh_name("BOX", d.alphabet)
    acc = fresh_name("acc", d.states)
    t: dict = {}
    for (q, x), q2 in sorted(d.transitions.items()):
        t[(q, x)] = (q2, box)
    for f in sorted(d.accepting):
        t[(f, box)] = (acc, None)
    return make_machine(
        sigma=d.alphabet,
        tape=(box,) + tuple(d.alphabet),
        start=d.start,
        accepting=(acc,),
        transitions=t,
        mode=Mode.AS,
        accepts_empty=d.start in d.accepting,
        extra_states=d.states,
    )
