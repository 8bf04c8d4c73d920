"""Machines, DFAs and helpers shared across the test modules."""

import itertools

from fr1tass.model import Mode, make_machine
from fr1tass.simulate import accepts
from fr1tass.transform import DfaSpec, from_dfa


def all_a():
    """Nonempty blocks of a."""
    return make_machine(
        sigma=("a",), tape=("a",), start="s0", accepting=("hit",),
        transitions={("s0", "a"): ("hit", "a")}, mode=Mode.AS)


def pure_loop():
    """Spins forever on any nonempty input."""
    return make_machine(
        sigma=("a",), tape=("a",), start="spin", accepting=(),
        transitions={("spin", "a"): ("spin", "a")}, mode=Mode.AS)


def parity_dfa(accept_even: bool) -> DfaSpec:
    return DfaSpec(
        alphabet=("a", "b"), states=frozenset({"e", "o"}), start="e",
        accepting=frozenset({"e" if accept_even else "o"}),
        transitions={(q, x): ("o" if q == "e" else "e")
                     for q in "eo" for x in "ab"})


def even_length():
    return from_dfa(parity_dfa(True))


def odd_length():
    return from_dfa(parity_dfa(False))


def starts_a_dfa() -> DfaSpec:
    """a followed by anything; no way to read a leading b."""
    return DfaSpec(
        alphabet=("a", "b"), states=frozenset({"s", "in"}), start="s",
        accepting=frozenset({"in"}),
        transitions={("s", "a"): "in", ("in", "a"): "in", ("in", "b"): "in"})


def two_hash_dfa() -> DfaSpec:
    """Words over #, a, b with exactly two #."""
    t = {}
    for i in range(3):
        for x in "ab":
            t[(f"h{i}", x)] = f"h{i}"
    t[("h0", "#")] = "h1"
    t[("h1", "#")] = "h2"
    return DfaSpec(
        alphabet=("#", "a", "b"), states=frozenset({"h0", "h1", "h2"}),
        start="h0", accepting=frozenset({"h2"}), transitions=t)


def words(sigma, max_len: int):
    """Every word over sigma up to max_len, shortest first."""
    for r in range(max_len + 1):
        yield from itertools.product(tuple(sigma), repeat=r)


def run_language(m, max_len: int) -> set:
    """Accepted words up to max_len, one full run per word."""
    return {w for w in words(sorted(m.input_alphabet), max_len)
            if accepts(m, w)}
