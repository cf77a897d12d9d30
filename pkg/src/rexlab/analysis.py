"""Brute-force language oracles and empirical probes.

Everything here is deliberately simple machinery used to cross-check the
constructive modules: finite language enumeration, bounded equality with the
first divergent word, factor cover and repetition index, index filters for
walk alphabets, exhaustive minimal-regex search, and the size blow-up bench.
"""

from __future__ import annotations

import re
import time
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence, Union as TUnion

from . import budget
from .automata import (
    Dfa,
    Nfa,
    determinize,
    eliminate_states,
    equivalent,
    glushkov,
    minimize,
    complement_dfa,
    product,
    extended_to_nfa,
)
from .rex import (
    EMPTY,
    EPSILON,
    Alphabet,
    Concat,
    Empty,
    Epsilon,
    Regex,
    Star,
    Sym,
    Union,
    size,
    subexpressions,
    symbols_of,
)

__all__ = [
    "Word",
    "LanguageOracle",
    "IndexResult",
    "FINITE",
    "INFINITE",
    "RegexSearch",
    "BlowupReport",
    "enumerate_language",
    "equal_upto",
    "covers",
    "word_index",
    "sidekicks",
    "starred_subexpressions",
    "minimal_regex_size",
    "blowup_report",
    "PIPELINES",
]

Word = tuple[str, ...]

DEFAULT_MAX_LEN = 16
DEFAULT_MAX_WORDS = 500_000


def _as_nfa(source: TUnion[Regex, Nfa], alphabet: Optional[Alphabet]) -> Nfa:
    if isinstance(source, Nfa):
        return source
    return extended_to_nfa(source, alphabet)


@dataclass(frozen=True)
class LanguageOracle:
    """Exact finite slice of a language: all accepted words up to a length.

    Words are tuples of symbol names, sorted by length then alphabet order.
    """

    alphabet: Alphabet
    max_len: int
    words: tuple[Word, ...]

    @property
    def word_set(self) -> frozenset[Word]:
        try:
            return self._word_set  # type: ignore[attr-defined]
        except AttributeError:
            ws = frozenset(self.words)
            object.__setattr__(self, "_word_set", ws)
            return ws

    def __contains__(self, word: Word) -> bool:
        return tuple(word) in self.word_set


def enumerate_language(source: TUnion[Regex, Nfa], max_len: int,
                       alphabet: Optional[Alphabet] = None,
                       max_len_limit: int = DEFAULT_MAX_LEN,
                       max_words: int = DEFAULT_MAX_WORDS) -> LanguageOracle:
    """Enumerate the language slice by BFS over the determinised automaton.

    Prefixes that cannot be completed to an accepted word within the length
    bound are pruned, so sparse languages enumerate quickly even at the
    default bound of 16.  The number of accepted words is capped by
    ``max_words`` (a typed budget error when exceeded).
    """
    if max_len > max_len_limit:
        raise budget.BudgetExceededError(
            f"max_len {max_len} above the configured bound {max_len_limit}")
    nfa = _as_nfa(source, alphabet)
    dfa = nfa if isinstance(nfa, Dfa) else determinize(nfa)
    sigma = dfa.alphabet

    # Distance from each state to the nearest accepting state (reverse BFS).
    k = len(sigma)
    table = dfa._delta_array()
    INF = max_len + 1
    dist = [INF] * dfa.n_states
    frontier = list(dfa.finals)
    for q in frontier:
        dist[q] = 0
    preds: list[list[int]] = [[] for _ in range(dfa.n_states)]
    for p in range(dfa.n_states):
        for ci in range(k):
            q = table[p * k + ci]
            if q >= 0:
                preds[q].append(p)
    step = 0
    while frontier and step < INF:
        step += 1
        nxt = []
        for q in frontier:
            for p in preds[q]:
                if dist[p] > step:
                    dist[p] = step
                    nxt.append(p)
        frontier = nxt

    words: list[Word] = []
    level: list[tuple[int, Word]] = []
    if dist[dfa.initial] <= max_len:
        level = [(dfa.initial, ())]
    if dfa.initial in dfa.finals:
        words.append(())
    while level:
        budget.checkpoint()
        nxt_level: list[tuple[int, Word]] = []
        for state, prefix in level:
            row = state * k
            for ci, s in enumerate(sigma):
                q = table[row + ci]
                if q < 0:
                    continue
                length = len(prefix) + 1
                if length + dist[q] > max_len:
                    continue
                word = prefix + (s,)
                if q in dfa.finals:
                    words.append(word)
                    if len(words) > max_words:
                        raise budget.BudgetExceededError(
                            f"language slice exceeds {max_words} words")
                if length < max_len:
                    nxt_level.append((q, word))
        level = nxt_level

    words.sort(key=lambda w: (len(w), [sigma.sort_key(s) for s in w]))
    return LanguageOracle(sigma, max_len, tuple(words))


@dataclass(frozen=True)
class EqualUpto:
    equal: bool
    divergent: Optional[Word] = None


def equal_upto(a: TUnion[Regex, Nfa], b: TUnion[Regex, Nfa], max_len: int,
               alphabet: Optional[Alphabet] = None,
               max_words: int = DEFAULT_MAX_WORDS) -> EqualUpto:
    """Compare the enumerated slices; reports the length-lex least disagreement."""
    oa = enumerate_language(a, max_len, alphabet, max_words=max_words)
    ob = enumerate_language(b, max_len, alphabet, max_words=max_words)
    if oa.alphabet != ob.alphabet:
        raise ValueError("slices taken over different alphabets")
    if oa.words == ob.words:
        return EqualUpto(True)
    diff = oa.word_set ^ ob.word_set
    sigma = oa.alphabet
    divergent = min(diff, key=lambda w: (len(w), [sigma.sort_key(s) for s in w]))
    return EqualUpto(False, divergent)


# ---------------------------------------------------------------------------
# Cover and repetition index
# ---------------------------------------------------------------------------

def _factor_nfa(word: Word, alphabet: Alphabet) -> Nfa:
    """Sigma* word Sigma* as a (k+1)-state NFA."""
    k = len(word)
    transitions = set()
    for s in alphabet:
        transitions.add((0, s, 0))
        transitions.add((k, s, k))
    for i, s in enumerate(word):
        transitions.add((i, s, i + 1))
    return Nfa(alphabet, k + 1, 0, frozenset([k]), frozenset(transitions))


def covers(r: Regex, word: Sequence[str], alphabet: Optional[Alphabet] = None) -> bool:
    """Does some word of the language contain ``word`` as a factor?

    Decided by emptiness of the product with the factor automaton.
    """
    w = tuple(word)
    sigma = alphabet
    if sigma is None:
        names = sorted(set(symbols_of(r)) | set(w))
        if not names:
            names = ["a"]  # symbol-free expression: emptiness is all that matters
        sigma = Alphabet(tuple(names))
    nfa = extended_to_nfa(r, sigma)
    prod = product(nfa, _factor_nfa(w, sigma))
    # Emptiness: is any accepting state reachable?
    seen = {prod.initial}
    stack = [prod.initial]
    while stack:
        p = stack.pop()
        if p in prod.finals:
            return True
        for s in sigma:
            for q in prod.moves.get((p, s), ()):
                if q not in seen:
                    seen.add(q)
                    stack.append(q)
    return False


@dataclass(frozen=True)
class IndexResult:
    """Largest number of consecutive repetitions of a word coverable by the
    language, or infinite when repetition pumps without bound."""

    finite: bool
    value: Optional[int] = None

    def __str__(self) -> str:
        return f"Finite({self.value})" if self.finite else "Infinite"


INFINITE = IndexResult(False)


def FINITE(m: int) -> IndexResult:
    return IndexResult(True, m)


def word_index(r: Regex, word: Sequence[str],
               alphabet: Optional[Alphabet] = None) -> IndexResult:
    """Repetition index of ``word`` in the language of ``r``.

    Runs the automaton of ``r`` in product with a cyclic position counter for
    the word; a completed cycle counts one repetition.  Any cycle in the
    useful part of that product pumps repetitions (every cycle crosses the
    wrap edge), so the index is infinite exactly when one exists; otherwise
    the product is acyclic and the answer is the heaviest path.  Starting
    offsets are chosen nondeterministically, which handles self-overlapping
    words correctly.  An empty language yields Finite(0) by convention.
    """
    w = tuple(word)
    if not w:
        raise ValueError("the repeated word must be non-empty")
    sigma = alphabet
    if sigma is None:
        names = sorted(set(symbols_of(r)) | set(w))
        sigma = Alphabet(tuple(names))
    nfa = extended_to_nfa(r, sigma)

    reach = set()
    stack = [nfa.initial]
    reach.add(nfa.initial)
    while stack:
        p = stack.pop()
        for s in sigma:
            for q in nfa.moves.get((p, s), ()):
                if q not in reach:
                    reach.add(q)
                    stack.append(q)
    co: set[int] = set(nfa.finals)
    rev: dict[int, set[int]] = {}
    for p, s, q in nfa.transitions:
        rev.setdefault(q, set()).add(p)
    stack = list(co)
    while stack:
        q = stack.pop()
        for p in rev.get(q, ()):
            if p not in co:
                co.add(p)
                stack.append(p)

    L = len(w)
    # Nodes (q, pos); edge (q,pos) -> (q', pos+1 mod L) on symbol w[pos].
    def succs(node: tuple[int, int]) -> Iterator[tuple[tuple[int, int], int]]:
        q, pos = node
        for q2 in nfa.moves.get((q, w[pos]), ()):
            yield (q2, (pos + 1) % L), 1 if pos + 1 == L else 0

    starts = {(q, 0) for q in reach}
    # Forward set from the starts.
    desc: set[tuple[int, int]] = set(starts)
    stack2 = list(starts)
    while stack2:
        node = stack2.pop()
        for nxt, _ in succs(node):
            if nxt not in desc:
                desc.add(nxt)
                stack2.append(nxt)
    useful = {node for node in desc if node[0] in co}
    if not useful:
        return FINITE(0)  # empty language covers nothing; degenerate by convention
    # Ancestors of useful nodes, within desc.
    rev2: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for node in desc:
        for nxt, _ in succs(node):
            if nxt in desc:
                rev2.setdefault(nxt, []).append(node)
    anc: set[tuple[int, int]] = set(useful)
    stack3 = list(useful)
    while stack3:
        node = stack3.pop()
        for p in rev2.get(node, ()):
            if p not in anc:
                anc.add(p)
                stack3.append(p)
    nodes = desc & anc

    # Cycle check via Kahn; any cycle inside the useful part pumps.
    indeg = {node: 0 for node in nodes}
    for node in nodes:
        for nxt, _ in succs(node):
            if nxt in nodes:
                indeg[nxt] += 1
    queue = [node for node, d in indeg.items() if d == 0]
    topo = []
    while queue:
        node = queue.pop()
        topo.append(node)
        for nxt, _ in succs(node):
            if nxt in nodes:
                indeg[nxt] -= 1
                if indeg[nxt] == 0:
                    queue.append(nxt)
    if len(topo) < len(nodes):
        return INFINITE

    best = {node: (0 if node in starts and node[0] in reach else None)
            for node in nodes}
    for node in topo:
        b = best.get(node)
        if b is None:
            continue
        for nxt, weight in succs(node):
            if nxt in nodes:
                cand = b + weight
                if best[nxt] is None or cand > best[nxt]:
                    best[nxt] = cand
    candidates = [b for node, b in best.items()
                  if b is not None and node[0] in co]
    return FINITE(max(candidates)) if candidates else FINITE(0)


# ---------------------------------------------------------------------------
# Walk-alphabet probes
# ---------------------------------------------------------------------------

_EDGE_NAME = re.compile(r"^a\((\d+),(\d+)\)$")


def _edge_indices(name: str) -> tuple[int, int]:
    m = _EDGE_NAME.match(name)
    if not m:
        raise ValueError(f"symbol {name!r} is not an edge label a(i,j)")
    return int(m.group(1)), int(m.group(2))


def sidekicks(r: Regex, alphabet: Optional[Alphabet] = None) -> frozenset[int]:
    """Vertices that occur in every non-empty word of the language.

    The expression must be over edge labels ``a(i,j)``.  A vertex ``i`` fails
    exactly when the language has a non-empty word using no ``a(i,.)`` or
    ``a(.,i)`` symbol, which is a reachability question over the automaton
    restricted to the ``i``-avoiding alphabet.
    """
    sigma = alphabet
    if sigma is None:
        names = sorted(set(symbols_of(r)))
        if not names:
            return frozenset()
        sigma = Alphabet(tuple(names))
    indices: set[int] = set()
    edges = {}
    for name in sigma:
        i, j = _edge_indices(name)
        indices.update((i, j))
        edges[name] = (i, j)
    nfa = extended_to_nfa(r, sigma)

    out = set()
    for v in sorted(indices):
        allowed = {name for name, (i, j) in edges.items() if v not in (i, j)}
        # States reachable through at least one allowed edge.
        first = set()
        for s in allowed:
            first |= nfa.moves.get((nfa.initial, s), frozenset())
        seen = set(first)
        stack = list(first)
        while stack:
            p = stack.pop()
            for s in allowed:
                for q in nfa.moves.get((p, s), ()):
                    if q not in seen:
                        seen.add(q)
                        stack.append(q)
        if not (seen & nfa.finals):
            out.add(v)
    return frozenset(out)


def starred_subexpressions(r: Regex) -> list[Regex]:
    """All star nodes, outermost first (pre-order)."""
    return [node for node in subexpressions(r) if isinstance(node, Star)]


# ---------------------------------------------------------------------------
# Exhaustive minimal-regex search
# ---------------------------------------------------------------------------

MAX_SEARCH_SIZE = 9


@dataclass(frozen=True)
class RegexSearch:
    """Outcome of the exhaustive search: the least size and a witness when one
    exists within the bound, plus the number of candidates examined."""

    minimal_size: Optional[int]
    witness: Optional[Regex]
    examined: int


def _ast_key(r: Regex) -> tuple:
    if isinstance(r, Sym):
        return (2, r.sym)
    if isinstance(r, Empty):
        return (0,)
    if isinstance(r, Epsilon):
        return (1,)
    if isinstance(r, Star):
        return (3, _ast_key(r.inner))
    if isinstance(r, Concat):
        return (4, _ast_key(r.left), _ast_key(r.right))
    if isinstance(r, Union):
        return (5, _ast_key(r.left), _ast_key(r.right))
    raise TypeError(r)


def _canonical_candidate(r: Regex) -> bool:
    """Prune candidates with an equal-language strictly smaller or
    earlier-ordered sibling.

    All rules are language-preserving rewrites that shrink or reorder:
    dropping the empty language from anything, epsilon from concatenations
    and from starred unions, nested or trivial stars, duplicate or unsorted
    union members, and left-nested associativity variants.
    """
    if isinstance(r, Star):
        t = r.inner
        if isinstance(t, (Empty, Epsilon, Star)):
            return False
        if isinstance(t, Union) and (isinstance(t.left, Epsilon) or isinstance(t.right, Epsilon)):
            return False
        return True
    if isinstance(r, Concat):
        if isinstance(r.left, (Empty, Epsilon)) or isinstance(r.right, (Empty, Epsilon)):
            return False
        if isinstance(r.left, Concat):  # force right-nested chains
            return False
        return True
    if isinstance(r, Union):
        if isinstance(r.left, (Empty, Union)) or isinstance(r.right, Empty):
            return False
        head = r.right.left if isinstance(r.right, Union) else r.right
        return _ast_key(r.left) < _ast_key(head)
    return True


def _candidates(s: int, atoms: list[Regex], memo: dict[int, list[Regex]]) -> list[Regex]:
    if s in memo:
        return memo[s]
    out: list[Regex] = []
    if s == 1:
        out = list(atoms)
    else:
        for t in _candidates(s - 1, atoms, memo):
            c = Star(t)
            if _canonical_candidate(c):
                out.append(c)
        for left_size in range(1, s - 1):
            for left in _candidates(left_size, atoms, memo):
                for right in _candidates(s - 1 - left_size, atoms, memo):
                    for cls in (Concat, Union):
                        c = cls(left, right)
                        if _canonical_candidate(c):
                            out.append(c)
    memo[s] = out
    return out


def minimal_regex_size(target: Dfa, max_size: int,
                       max_candidates: int = DEFAULT_MAX_WORDS,
                       search_budget: int = MAX_SEARCH_SIZE) -> RegexSearch:
    """Exhaustively search plain regexes (no negation/intersection/plus) over
    the target's alphabet for the least reverse-Polish size defining its
    language.

    Candidates are generated in size order with language-preserving pruning;
    each survivor is first screened by a finite language slice and only slice
    matches pay for a full equivalence check.
    """
    if max_size > search_budget:
        raise budget.BudgetExceededError(
            f"max_size {max_size} above the search budget {search_budget}")
    atoms: list[Regex] = [EMPTY, EPSILON] + [Sym(s) for s in target.alphabet]
    fingerprint_len = min(2 * max(target.n_states, 1) + 2, DEFAULT_MAX_LEN)
    target_slice = enumerate_language(target, fingerprint_len).words

    examined = 0
    memo: dict[int, list[Regex]] = {}
    for s in range(1, max_size + 1):
        for cand in _candidates(s, atoms, memo):
            budget.checkpoint()
            examined += 1
            if examined > max_candidates:
                raise budget.BudgetExceededError(
                    f"search exceeds {max_candidates} candidates")
            cand_nfa = glushkov(cand, target.alphabet)
            try:
                cand_slice = enumerate_language(
                    cand_nfa, fingerprint_len,
                    max_words=len(target_slice) + 1).words
            except budget.BudgetExceededError:
                continue  # more words than the target within the bound
            if cand_slice != target_slice:
                continue
            if equivalent(cand_nfa, target):
                return RegexSearch(s, cand, examined)
    return RegexSearch(None, None, examined)


# ---------------------------------------------------------------------------
# Blow-up bench
# ---------------------------------------------------------------------------

PIPELINES = ("complement-naive", "complement-unambiguous",
             "intersect-product", "intersect-sore")

_PIPELINE_FAMILIES = {
    "complement-naive": {"complement-witness"},
    "complement-unambiguous": {"unamb-family"},
    "intersect-product": {"unamb-family", "m-sore-pair"},
    "intersect-sore": {"m-sore-pair"},
}


@dataclass(frozen=True)
class BlowupRow:
    n: int
    input_size: int
    output_size: Optional[int]  # None marks a blown budget
    wall_ms: float


@dataclass(frozen=True)
class BlowupReport:
    family: str
    pipeline: str
    bound_label: str
    rows: tuple[BlowupRow, ...]

    def to_csv(self) -> str:
        lines = ["family,n,input_size,output_size,wall_ms"]
        for row in self.rows:
            out = "NA" if row.output_size is None else str(row.output_size)
            lines.append(f"{self.family},{row.n},{row.input_size},{out},{row.wall_ms:.1f}")
        return "\n".join(lines) + "\n"


def blowup_report(family: str, ns: Sequence[int], pipeline: str,
                  max_states: int = budget.DEFAULT_MAX_STATES,
                  max_output: int = 2_000_000) -> BlowupReport:
    """Measure input/output sizes for a witness family through a pipeline.

    Budget blow-ups mark the row (output size absent) rather than dropping it.
    """
    from .unambiguous import complement_unambiguous, intersect_sores
    from .witnesses import (SIGMA_K, SIGMA_L, complement_witness, m_alphabet,
                            m_sore_pair, unamb_family)

    if pipeline not in PIPELINES:
        raise ValueError(f"unknown pipeline {pipeline!r}; choose from {PIPELINES}")
    if family not in _PIPELINE_FAMILIES[pipeline]:
        raise ValueError(f"pipeline {pipeline!r} does not apply to family {family!r}")
    if list(ns) != sorted(set(ns)):
        raise ValueError("parameter values must be strictly increasing")

    rows = []
    for n in ns:
        start = time.perf_counter()
        output: Optional[int] = None
        if pipeline == "complement-naive":
            expr = complement_witness(n)
            input_size = size(expr)
            try:
                dfa = minimize(determinize(glushkov(expr, SIGMA_K), max_states=max_states))
                output = size(eliminate_states(complement_dfa(dfa), max_size=max_output))
            except budget.BudgetExceededError:
                output = None
        elif pipeline == "complement-unambiguous":
            exprs = unamb_family(n)
            input_size = sum(size(e) for e in exprs)
            try:
                output = max(size(complement_unambiguous(e, SIGMA_L)) for e in exprs)
            except budget.BudgetExceededError:
                output = None
        elif pipeline == "intersect-sore":
            r, s = m_sore_pair(n)
            input_size = size(r) + size(s)
            try:
                output = size(intersect_sores([r, s], m_alphabet(n)))
            except budget.BudgetExceededError:
                output = None
        else:  # intersect-product
            if family == "m-sore-pair":
                exprs = list(m_sore_pair(n))
                sigma = m_alphabet(n)
            else:
                exprs = unamb_family(n)
                sigma = SIGMA_L
            input_size = sum(size(e) for e in exprs)
            try:
                acc = glushkov(exprs[0], sigma)
                for e in exprs[1:]:
                    acc = product(acc, glushkov(e, sigma), max_states=max_states)
                output = size(eliminate_states(acc, max_size=max_output))
            except budget.BudgetExceededError:
                output = None
        wall_ms = (time.perf_counter() - start) * 1000.0
        rows.append(BlowupRow(n, input_size, output, wall_ms))

    bound = {"complement-naive": "doubly exponential",
             "complement-unambiguous": "polynomial",
             "intersect-product": "doubly exponential",
             "intersect-sore": "singly exponential"}[pipeline]
    return BlowupReport(family, pipeline, bound, tuple(rows))
