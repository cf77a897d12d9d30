"""Independent brute-force oracles used to cross-check the library.

Everything here computes languages straight from definitions - structural
recursion over expression trees, direct decoding of block strings, explicit
walk enumeration - without touching the library's automata conversions, so
test expectations never share a code path with what they check.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator, Optional

from rexlab.rex import (
    Concat,
    Empty,
    Epsilon,
    Intersect,
    Negate,
    Plus,
    Regex,
    Star,
    Sym,
    Union,
)
from rexlab.witnesses import PathWord, enc_width

Word = tuple


def words_upto(symbols: Iterable, max_len: int) -> Iterator[Word]:
    syms = list(symbols)
    for length in range(max_len + 1):
        yield from itertools.product(syms, repeat=length)


def regex_slice(r: Regex, symbols: Iterable, max_len: int) -> frozenset[Word]:
    """All words of length <= max_len in the language, by structural recursion.

    Works for extended operators too; negation is taken relative to the given
    symbol collection.  Symbols may be names or marked symbols.
    """
    syms = tuple(symbols)

    def go(node: Regex) -> frozenset[Word]:
        if isinstance(node, Empty):
            return frozenset()
        if isinstance(node, Epsilon):
            return frozenset([()])
        if isinstance(node, Sym):
            return frozenset([(node.sym,)])
        if isinstance(node, Concat):
            left, right = go(node.left), go(node.right)
            return frozenset(u + v for u in left for v in right
                             if len(u) + len(v) <= max_len)
        if isinstance(node, Union):
            return go(node.left) | go(node.right)
        if isinstance(node, Intersect):
            return go(node.left) & go(node.right)
        if isinstance(node, Negate):
            return frozenset(words_upto(syms, max_len)) - go(node.inner)
        if isinstance(node, (Star, Plus)):
            base = go(node.inner)
            star = frozenset([()])
            frontier = star
            while frontier:
                grown = frozenset(u + v for u in frontier for v in base
                                  if v and len(u) + len(v) <= max_len)
                frontier = grown - star
                star |= grown
            if isinstance(node, Star):
                return star
            return frozenset(u + v for u in base for v in star
                             if len(u) + len(v) <= max_len)
        raise TypeError(node)

    return go(r)


def nfa_slice(nfa, max_len: int) -> frozenset[Word]:
    """Accepted words up to max_len by direct subset simulation."""
    out = set()
    for w in words_upto(nfa.alphabet.names, max_len):
        current = frozenset([nfa.initial])
        for s in w:
            current = nfa.step(current, s)
            if not current:
                break
        if current & nfa.finals:
            out.add(w)
    return frozenset(out)


def first_last_adjacent(words: frozenset[Word]):
    """Read first/last/adjacency data off an enumerated language slice."""
    first, last, follow = set(), set(), set()
    for w in words:
        if w:
            first.add(w[0])
            last.add(w[-1])
            follow.update(zip(w, w[1:]))
    return frozenset(first), frozenset(last), frozenset(follow)


def unambiguity_violation(marked_words: frozenset[Word]) -> Optional[tuple]:
    """Search a marked-language slice for a one-unambiguity violation.

    Returns (u, x, y) with x != y of equal base following the common prefix u,
    or None if the slice shows none (the slice may be too short to be
    conclusive for a negative answer).
    """
    nexts: dict[Word, set] = {}
    for w in marked_words:
        for i in range(len(w)):
            nexts.setdefault(w[:i], set()).add(w[i])
    for u in sorted(nexts, key=len):
        by_base: dict[str, object] = {}
        for m in sorted(nexts[u], key=lambda m: m.occurrence):
            if m.base in by_base:
                return (u, by_base[m.base], m)
            by_base[m.base] = m
    return None


# ---------------------------------------------------------------------------
# Walks and their encodings, straight from the definitions
# ---------------------------------------------------------------------------

def path_words(n: int, max_edges: int, even_only: bool = False) -> Iterator[PathWord]:
    for k in range(1, max_edges + 1):
        if even_only and k % 2:
            continue
        for seq in itertools.product(range(n), repeat=k + 1):
            yield PathWord(tuple(seq), n)


def is_z_word(word: Word, n: int) -> bool:
    """Is this symbol sequence a walk on the complete n-vertex graph?"""
    if not word:
        return False
    prev = None
    for name in word:
        if not (name.startswith("a(") and name.endswith(")")):
            return False
        i, j = (int(t) for t in name[2:-1].split(","))
        if not (0 <= i < n and 0 <= j < n):
            return False
        if prev is not None and i != prev:
            return False
        prev = j
    return True


def is_k_string(s: str, n: int) -> bool:
    """Decode a candidate block string by the definition: a non-empty chain of
    enc(j)$enc(i)# blocks with all numbers below n and consecutive blocks
    linked through equal numbers (second of the next = first of the previous)."""
    w = enc_width(n)
    block_len = 2 * w + 2
    if not s or len(s) % block_len:
        return False
    prev_first = None
    for t in range(0, len(s), block_len):
        block = s[t:t + block_len]
        bits1, dollar, bits2, hashmark = (
            block[:w], block[w], block[w + 1:2 * w + 1], block[2 * w + 1])
        if dollar != "$" or hashmark != "#":
            return False
        if not all(c in "01" for c in bits1 + bits2):
            return False
        first, second = int(bits1, 2), int(bits2, 2)
        if first >= n or second >= n:
            return False
        if prev_first is not None and second != prev_first:
            return False
        prev_first = first
    return True
