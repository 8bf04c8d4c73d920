"""Execution engine: configurations, sweeps, verdicts.

A run proceeds in sweeps.  Sweep i consumes exactly the r_i letters present
on the tape when the sweep starts; outputs appended during the sweep belong
to sweep i+1.  Because every step consumes one letter and writes at most
one, the tape never grows, so each sweep start can be compared against the
previous one.  A long enough run of unchanged sweep-start tapes forces a
state to repeat on identical tapes, which proves the run is circling; the
engine rejects such runs instead of spinning forever.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional

from .exceptions import LimitExceededError
from .model import Machine, Mode, Word


class Verdict(enum.Enum):
    ACCEPTED = "Accepted"
    REJECTED_STUCK = "RejectedStuck"
    REJECTED_LOOP = "RejectedLoop"
    REJECTED_EMPTY_TAPE = "RejectedEmptyTape"


class SweepCase(enum.Enum):
    SHRUNK = "Shrunk"
    REWROTE = "Rewrote"
    UNCHANGED = "Unchanged"


class HaltReason(enum.Enum):
    EMPTY_TAPE = "EmptyTape"
    STUCK = "Stuck"


@dataclass(frozen=True)
class Configuration:
    """Snapshot between steps; sweep bookkeeping rolls over eagerly."""

    state: str
    tape: Word
    steps_taken: int
    sweep_index: int
    steps_into_sweep: int
    sweep_start_length: int


@dataclass(frozen=True)
class Halted:
    reason: HaltReason
    configuration: Configuration


@dataclass(frozen=True)
class SweepRecord:
    index: int
    start_state: str
    start_tape: Word
    length: int
    case: Optional[SweepCase]  # None for the first sweep of a run


@dataclass(frozen=True)
class RunLimits:
    max_steps: Optional[int] = None
    trace: bool = False


@dataclass(frozen=True)
class RunResult:
    verdict: Verdict
    halting_state: str
    sweeps: Optional[list]
    total_steps: int
    total_sweeps: int

    @property
    def accepted(self) -> bool:
        return self.verdict is Verdict.ACCEPTED


def _check_word(m: Machine, word: Iterable[str]) -> Word:
    w = tuple(word)
    for letter in w:
        if letter not in m.input_alphabet:
            raise ValueError(f"letter {letter!r} not in the input alphabet")
    return w


def initial_configuration(m: Machine, word: Iterable[str]) -> Configuration:
    w = _check_word(m, word)
    return Configuration(state=m.start, tape=w, steps_taken=0, sweep_index=1,
                         steps_into_sweep=0, sweep_start_length=len(w))


def step(m: Machine, c: Configuration):
    """One step from c: Configuration, or Halted when no step exists."""
    if not c.tape:
        return Halted(HaltReason.EMPTY_TAPE, c)
    hit = m.transitions.get((c.state, c.tape[0]))
    if hit is None:
        return Halted(HaltReason.STUCK, c)
    state, out = hit
    tape = c.tape[1:] + ((out,) if out is not None else ())
    sweep_index = c.sweep_index
    into = c.steps_into_sweep + 1
    length = c.sweep_start_length
    if into == length:
        sweep_index += 1
        into = 0
        length = len(tape)
    return Configuration(state=state, tape=tape, steps_taken=c.steps_taken + 1,
                         sweep_index=sweep_index, steps_into_sweep=into,
                         sweep_start_length=length)


def sweep_bound(m: Machine, n: int) -> int:
    """Sweeps a length-n run can start before looping is certain."""
    k = len(m.tape)
    return (n + n * (k - 1) + 1) * (len(m.states) + 1)


@dataclass(frozen=True)
class _Compiled:
    delta: dict  # state -> {letter: (state, out)}
    accepting: frozenset
    mode: Mode
    state_count: int
    accepts_empty: bool
    gamma_size: int


def _compile(m: Machine) -> _Compiled:
    delta: dict = {}
    for (q, a), target in m.transitions.items():
        delta.setdefault(q, {})[a] = target
    return _Compiled(delta=delta, accepting=m.accepting, mode=m.mode,
                     state_count=len(m.states), accepts_empty=m.accepts_empty,
                     gamma_size=len(m.tape))


def _budget(comp: _Compiled, n: int) -> int:
    sweeps = (n + n * (comp.gamma_size - 1) + 1) * (comp.state_count + 1)
    return sweeps * max(n, 1) + n + 1


def _core(comp: _Compiled, state: str, tape: deque, sweep_index: int,
          prev_tape: Optional[Word], steps: int, budget: int,
          budget_is_user: bool, records: Optional[list]):
    """Run from a sweep boundary; returns (verdict, state, steps, sweeps)."""
    delta = comp.delta
    accepting = comp.accepting
    as_mode = comp.mode is Mode.AS
    unchanged = 0
    while True:
        if not tape:
            if as_mode and not (steps == 0 and comp.accepts_empty):
                return Verdict.REJECTED_EMPTY_TAPE, state, steps, sweep_index - 1
            return Verdict.ACCEPTED, state, steps, sweep_index - 1
        cur = tuple(tape)
        if sweep_index == 1:
            case = None
        elif len(cur) < len(prev_tape):
            case = SweepCase.SHRUNK
        elif cur == prev_tape:
            case = SweepCase.UNCHANGED
        else:
            case = SweepCase.REWROTE
        unchanged = unchanged + 1 if case is SweepCase.UNCHANGED else 0
        if records is not None:
            records.append(SweepRecord(index=sweep_index, start_state=state,
                                       start_tape=cur, length=len(cur), case=case))
        if unchanged > comp.state_count:
            # state must have repeated on identical sweep-start tapes
            return Verdict.REJECTED_LOOP, state, steps, sweep_index
        prev_tape = cur
        for _ in range(len(cur)):
            if steps >= budget:
                if budget_is_user:
                    raise LimitExceededError(f"step limit of {budget} exhausted")
                raise RuntimeError("internal step budget exhausted")
            row = delta.get(state)
            hit = row.get(tape[0]) if row is not None else None
            if hit is None:
                return Verdict.REJECTED_STUCK, state, steps, sweep_index
            tape.popleft()
            state, out = hit
            if out is not None:
                tape.append(out)
            steps += 1
            if as_mode and state in accepting:
                return Verdict.ACCEPTED, state, steps, sweep_index
        sweep_index += 1


def run(m: Machine, word: Iterable[str], limits: Optional[RunLimits] = None) -> RunResult:
    limits = limits or RunLimits()
    w = _check_word(m, word)
    comp = _compile(m)
    records: Optional[list] = [] if limits.trace else None
    if limits.max_steps is not None:
        budget, budget_is_user = limits.max_steps, True
    else:
        budget, budget_is_user = _budget(comp, len(w)), False
    verdict, state, steps, sweeps = _core(
        comp, m.start, deque(w), 1, None, 0, budget, budget_is_user, records)
    return RunResult(verdict=verdict, halting_state=state, sweeps=records,
                     total_steps=steps, total_sweeps=sweeps)


def accepts(m: Machine, word: Iterable[str]) -> bool:
    return run(m, word).verdict is Verdict.ACCEPTED


def flatten_trace(m: Machine, word: Iterable[str]) -> Optional[Word]:
    """Concatenate the sweep-start tapes of the run on word.

    Only meaningful when the machine writes input letters exclusively,
    so the result is again a word the machine can read; returns None
    otherwise, and for runs that were cut off as loops.
    """
    if not m.is_no_aux():
        return None
    result = run(m, word, RunLimits(trace=True))
    if result.verdict is Verdict.REJECTED_LOOP:
        return None
    flat: list = []
    for record in result.sweeps:
        flat.extend(record.start_tape)
    return tuple(flat)
