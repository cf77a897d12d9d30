"""Finite automata over explicit alphabets and the standard conversions.

The model is epsilon-free: an NFA is (states 0..n-1, initial, finals,
transition triples).  DFAs are NFAs whose transition relation is a partial
function; a missing transition rejects.  The reported size of an automaton is
the number of states plus the number of transitions.

Conversions here: Glushkov position automaton, compilation of extended
regexes (intersection via products, negation via determinise-and-complement),
subset construction, DFA complement, product, Hopcroft minimisation with a
canonical serialisation, language equivalence, and state elimination back to
a plain regex.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional

from . import budget
from .rex import (
    EMPTY,
    EPSILON,
    Alphabet,
    Concat,
    Empty,
    Epsilon,
    Intersect,
    Negate,
    Plus,
    Regex,
    RexlabError,
    Star,
    Sym,
    Union,
    glushkov_sets,
    iter_postorder,
    mark,
    sconcat,
    sstar,
    sunion,
    symbols_of,
)

__all__ = [
    "Nfa",
    "Dfa",
    "AlphabetMismatchError",
    "AutomatonFormatError",
    "glushkov",
    "extended_to_nfa",
    "determinize",
    "complement_dfa",
    "product",
    "minimize",
    "equivalent",
    "eliminate_states",
    "accepts",
    "serialize",
    "parse_automaton",
    "shortest_divergence",
]


class AlphabetMismatchError(RexlabError):
    """Binary automaton operations require identical alphabets."""


class AutomatonFormatError(RexlabError):
    """Malformed automaton file."""


@dataclass(frozen=True)
class Nfa:
    alphabet: Alphabet
    n_states: int
    initial: int
    finals: frozenset[int]
    transitions: frozenset[tuple[int, str, int]]

    def __post_init__(self):
        if not (0 <= self.initial < self.n_states):
            raise ValueError("initial state out of range")
        if not all(0 <= q < self.n_states for q in self.finals):
            raise ValueError("final state out of range")
        for p, a, q in self.transitions:
            if not (0 <= p < self.n_states and 0 <= q < self.n_states):
                raise ValueError(f"transition endpoint out of range: {(p, a, q)}")
            if a not in self.alphabet:
                raise ValueError(f"transition symbol {a!r} not in alphabet")

    @property
    def size(self) -> int:
        return self.n_states + len(self.transitions)

    @cached_property
    def moves(self) -> dict[tuple[int, str], frozenset[int]]:
        table: dict[tuple[int, str], set[int]] = {}
        for p, a, q in self.transitions:
            table.setdefault((p, a), set()).add(q)
        return {k: frozenset(v) for k, v in table.items()}

    def step(self, states: frozenset[int], symbol: str) -> frozenset[int]:
        out: set[int] = set()
        for q in states:
            out |= self.moves.get((q, symbol), frozenset())
        return frozenset(out)

    def is_deterministic(self) -> bool:
        return all(len(v) <= 1 for v in self.moves.values())


@dataclass(frozen=True)
class Dfa(Nfa):
    def __post_init__(self):
        super().__post_init__()
        k = len(self.alphabet)
        index = self.alphabet.index
        flags = bytearray(self.n_states * k)
        for p, a, _ in self.transitions:
            slot = p * k + index[a]
            if flags[slot]:
                raise ValueError(f"multiple transitions from state {p} on {a!r}")
            flags[slot] = 1

    @cached_property
    def delta(self) -> dict[tuple[int, str], int]:
        return {(p, a): q for p, a, q in self.transitions}

    def _delta_array(self) -> list[int]:
        """Flat transition table, -1 for missing; row-major by alphabet index."""
        k = len(self.alphabet)
        index = self.alphabet.index
        table = [-1] * (self.n_states * k)
        for p, a, q in self.transitions:
            table[p * k + index[a]] = q
        return table


def accepts(a: Nfa, word: Iterable[str]) -> bool:
    """Membership by subset simulation; symbols must belong to the alphabet."""
    current = frozenset([a.initial])
    for symbol in word:
        if symbol not in a.alphabet:
            raise ValueError(f"symbol {symbol!r} not in alphabet")
        current = a.step(current, symbol)
        if not current:
            return False
    return bool(current & a.finals)


def _require_same_alphabet(a: Nfa, b: Nfa):
    if a.alphabet != b.alphabet:
        raise AlphabetMismatchError(
            f"alphabets differ: {list(a.alphabet)} vs {list(b.alphabet)}")


def _derived_alphabet(r: Regex, alphabet: Optional[Alphabet]) -> Alphabet:
    if alphabet is not None:
        return alphabet
    names = sorted(set(symbols_of(r)))
    if not names:
        raise ValueError("cannot derive an alphabet from a symbol-free expression; "
                         "pass one explicitly")
    return Alphabet(tuple(names))


# ---------------------------------------------------------------------------
# Glushkov construction
# ---------------------------------------------------------------------------

def glushkov(r: Regex, alphabet: Optional[Alphabet] = None) -> Nfa:
    """Position automaton: one state per symbol occurrence plus an initial one.

    States are the occurrence subscripts, the initial state is 0; the result
    therefore has exactly (number of occurrences) + 1 states.
    """
    marked = mark(r)  # rejects extended operators
    sets = glushkov_sets(marked)
    sigma = _derived_alphabet(r, alphabet)
    for name in symbols_of(r):
        if name not in sigma:
            raise ValueError(f"symbol {name!r} not in the declared alphabet")
    transitions = set()
    for x in sets.first:
        transitions.add((0, x.base, x.occurrence))
    for x, y in sets.follow:
        transitions.add((x.occurrence, y.base, y.occurrence))
    finals = {x.occurrence for x in sets.last}
    if sets.nullable:
        finals.add(0)
    n = len(marked.positions) + 1
    nfa = Nfa(sigma, n, 0, frozenset(finals), frozenset(transitions))
    return Dfa(sigma, n, 0, nfa.finals, nfa.transitions) if nfa.is_deterministic() else nfa


# ---------------------------------------------------------------------------
# Extended regexes
# ---------------------------------------------------------------------------

def _atom_nfa(sigma: Alphabet, accept_epsilon: bool) -> Nfa:
    return Nfa(sigma, 1, 0, frozenset([0] if accept_epsilon else []), frozenset())


def _sym_nfa(sigma: Alphabet, name: str) -> Nfa:
    if name not in sigma:
        raise ValueError(f"symbol {name!r} not in the declared alphabet")
    return Nfa(sigma, 2, 0, frozenset([1]), frozenset([(0, name, 1)]))


def _shift(a: Nfa, offset: int) -> tuple[set[tuple[int, str, int]], set[int], int]:
    trans = {(p + offset, s, q + offset) for p, s, q in a.transitions}
    finals = {q + offset for q in a.finals}
    return trans, finals, a.initial + offset


def _nfa_union(a: Nfa, b: Nfa) -> Nfa:
    # Fresh initial state copying both initial states' outgoing transitions.
    ta, fa, ia = _shift(a, 1)
    tb, fb, ib = _shift(b, 1 + a.n_states)
    trans = ta | tb
    for p, s, q in list(trans):
        if p == ia or p == ib:
            trans.add((0, s, q))
    finals = fa | fb
    if ia in fa or ib in fb:
        finals.add(0)
    return Nfa(a.alphabet, 1 + a.n_states + b.n_states, 0, frozenset(finals), frozenset(trans))


def _nfa_concat(a: Nfa, b: Nfa) -> Nfa:
    ta, fa, ia = _shift(a, 0)
    tb, fb, ib = _shift(b, a.n_states)
    trans = ta | tb
    b_init_out = [(s, q) for p, s, q in tb if p == ib]
    for f in fa:
        for s, q in b_init_out:
            trans.add((f, s, q))
    finals = set(fb)
    if ib in fb:
        finals |= fa
    return Nfa(a.alphabet, a.n_states + b.n_states, ia, frozenset(finals), frozenset(trans))


def _nfa_repeat(a: Nfa, at_least_one: bool) -> Nfa:
    # Fresh initial state; accepting states loop back through copies of the
    # old initial state's outgoing transitions.
    ta, fa, ia = _shift(a, 1)
    trans = set(ta)
    init_out = [(s, q) for p, s, q in ta if p == ia]
    for f in fa | {0}:
        for s, q in init_out:
            trans.add((f, s, q))
    finals = set(fa)
    if not at_least_one or ia in fa:
        finals.add(0)
    return Nfa(a.alphabet, a.n_states + 1, 0, frozenset(finals), frozenset(trans))


def extended_to_nfa(r: Regex, alphabet: Optional[Alphabet] = None,
                    max_states: int = budget.DEFAULT_MAX_STATES) -> Nfa:
    """Compile a full extended regex to an NFA.

    Intersections become reachable products, negations determinise, minimise
    and complement the sub-automaton.  Plain connectives use epsilon-free
    combinators, so for an intersection-only expression the state count stays
    below 2^size.  Negation requires a declared alphabet, since the complement
    is taken relative to it.
    """
    if alphabet is None:
        if any(isinstance(n, Negate) for n in iter_postorder(r)):
            raise ValueError("negation needs an explicit alphabet")
        alphabet = _derived_alphabet(r, None)
    sigma = alphabet

    values: list[Nfa] = []
    for node in iter_postorder(r):
        budget.checkpoint()
        if isinstance(node, Empty):
            values.append(_atom_nfa(sigma, False))
        elif isinstance(node, Epsilon):
            values.append(_atom_nfa(sigma, True))
        elif isinstance(node, Sym):
            values.append(_sym_nfa(sigma, node.sym))  # type: ignore[arg-type]
        elif isinstance(node, Concat):
            b, a = values.pop(), values.pop()
            values.append(_nfa_concat(a, b))
        elif isinstance(node, Union):
            b, a = values.pop(), values.pop()
            values.append(_nfa_union(a, b))
        elif isinstance(node, Star):
            values.append(_nfa_repeat(values.pop(), at_least_one=False))
        elif isinstance(node, Plus):
            values.append(_nfa_repeat(values.pop(), at_least_one=True))
        elif isinstance(node, Intersect):
            b, a = values.pop(), values.pop()
            values.append(product(a, b, max_states=max_states))
        elif isinstance(node, Negate):
            inner = values.pop()
            # Minimising first keeps nested negations feasible at desk scale.
            small = minimize(determinize(inner, max_states=max_states))
            values.append(complement_dfa(small))
        else:  # pragma: no cover
            raise TypeError(f"unknown node {node!r}")
        if values[-1].n_states > max_states:
            raise budget.BudgetExceededError(
                f"intermediate automaton exceeds {max_states} states")
    return values[0]


# ---------------------------------------------------------------------------
# Subset construction, complement, product
# ---------------------------------------------------------------------------

def determinize(a: Nfa, max_states: int = budget.DEFAULT_MAX_STATES) -> Dfa:
    """Subset construction restricted to reachable subsets.

    Subsets are kept as integer bitmasks; new states are numbered in BFS
    discovery order with symbols scanned in alphabet order, which makes the
    output deterministic.
    """
    move_mask: dict[tuple[int, str], int] = {}
    for p, s, q in a.transitions:
        move_mask[(p, s)] = move_mask.get((p, s), 0) | (1 << q)
    finals_mask = 0
    for q in a.finals:
        finals_mask |= 1 << q

    # Per (position, symbol) successor bitmasks, as flat per-symbol arrays.
    per_symbol: list[list[int]] = []
    for s in a.alphabet:
        row = [0] * a.n_states
        for p in range(a.n_states):
            row[p] = move_mask.get((p, s), 0)
        per_symbol.append(row)

    start = 1 << a.initial
    ids: dict[int, int] = {start: 0}
    order = [start]
    transitions: list[tuple[int, str, int]] = []
    names = a.alphabet.names
    i = 0
    while i < len(order):
        budget.checkpoint()
        mask = order[i]
        src = ids[mask]
        for ci, row in enumerate(per_symbol):
            succ = 0
            m = mask
            while m:
                low = m & -m
                succ |= row[low.bit_length() - 1]
                m ^= low
            if not succ:
                continue
            dst = ids.get(succ)
            if dst is None:
                if len(ids) >= max_states:
                    raise budget.BudgetExceededError(
                        f"subset construction exceeds {max_states} states")
                dst = len(ids)
                ids[succ] = dst
                order.append(succ)
            transitions.append((src, names[ci], dst))
        i += 1
    finals = frozenset(ids[m] for m in order if m & finals_mask)
    return Dfa(a.alphabet, len(ids), 0, finals, frozenset(transitions))


def _totalize(d: Dfa) -> Dfa:
    k = len(d.alphabet)
    index = d.alphabet.index
    flags = bytearray(d.n_states * k)
    for p, a, _ in d.transitions:
        flags[p * k + index[a]] = 1
    names = d.alphabet.names
    missing = [(slot // k, names[slot % k])
               for slot, present in enumerate(flags) if not present]
    if not missing:
        return d
    sink = d.n_states
    trans = list(d.transitions)
    trans.extend((q, s, sink) for q, s in missing)
    trans.extend((sink, s, sink) for s in d.alphabet)
    return Dfa(d.alphabet, d.n_states + 1, d.initial, d.finals, frozenset(trans))


def complement_dfa(d: Dfa) -> Dfa:
    """Accept exactly the words the input rejects: totalise, then swap finals."""
    total = _totalize(d)
    finals = frozenset(range(total.n_states)) - total.finals
    return Dfa(total.alphabet, total.n_states, total.initial, finals, total.transitions)


def product(a: Nfa, b: Nfa, max_states: int = budget.DEFAULT_MAX_STATES) -> Nfa:
    """Reachable pairwise product; accepts the intersection of the languages."""
    _require_same_alphabet(a, b)
    ids: dict[tuple[int, int], int] = {(a.initial, b.initial): 0}
    order = [(a.initial, b.initial)]
    transitions = set()
    i = 0
    while i < len(order):
        budget.checkpoint()
        p, q = order[i]
        for s in a.alphabet:
            pa = a.moves.get((p, s))
            if not pa:
                continue
            pb = b.moves.get((q, s))
            if not pb:
                continue
            for p2 in pa:
                for q2 in pb:
                    key = (p2, q2)
                    if key not in ids:
                        if len(ids) >= max_states:
                            raise budget.BudgetExceededError(
                                f"product exceeds {max_states} states")
                        ids[key] = len(ids)
                        order.append(key)
                    transitions.add((ids[(p, q)], s, ids[key]))
        i += 1
    finals = frozenset(ids[(p, q)] for p, q in order if p in a.finals and q in b.finals)
    deterministic = a.is_deterministic() and b.is_deterministic()
    cls = Dfa if deterministic else Nfa
    return cls(a.alphabet, len(ids), 0, finals, frozenset(transitions))


# ---------------------------------------------------------------------------
# Minimisation (Hopcroft) with canonical state numbering
# ---------------------------------------------------------------------------

def minimize(d: Dfa) -> Dfa:
    """Unique minimal DFA with a canonical state order.

    Unreachable states are dropped, classes that cannot reach an accepting
    class are trimmed (the result may be partial), and the remaining states
    are renumbered by BFS from the initial state with symbols scanned in
    alphabet order.  Language-equal DFAs over the same alphabet therefore
    serialise identically.  Internals are flat arrays so automata with
    millions of transitions stay tractable.
    """
    sigma = list(d.alphabet)
    k = len(sigma)
    table = d._delta_array()

    # Reachable restriction.
    mark = bytearray(d.n_states)
    mark[d.initial] = 1
    stack = [d.initial]
    while stack:
        p = stack.pop()
        row = p * k
        for ci in range(k):
            q = table[row + ci]
            if q >= 0 and not mark[q]:
                mark[q] = 1
                stack.append(q)
    reach = [q for q in range(d.n_states) if mark[q]]
    remap = {q: i for i, q in enumerate(reach)}
    n = len(reach)
    sink = n  # explicit dead state making the function total
    total = n + 1
    delta = [sink] * (total * k)
    for i, q in enumerate(reach):
        row, orow = i * k, q * k
        for ci in range(k):
            t = table[orow + ci]
            if t >= 0:
                delta[row + ci] = remap[t]
    is_final = bytearray(total)
    for q in d.finals:
        if q in remap:
            is_final[remap[q]] = 1

    # Hopcroft partition refinement (index-based worklist variant).
    finals_grp = [q for q in range(total) if is_final[q]]
    others_grp = [q for q in range(total) if not is_final[q]]
    partition: list[set[int]] = []
    block_of = [0] * total
    for grp in (finals_grp, others_grp):
        if grp:
            b = len(partition)
            for q in grp:
                block_of[q] = b
            partition.append(set(grp))

    # Preimage in CSR form, one (starts, order) pair per symbol.
    preimage = []
    for ci in range(k):
        counts = [0] * (total + 1)
        for p in range(total):
            counts[delta[p * k + ci] + 1] += 1
        for t in range(total):
            counts[t + 1] += counts[t]
        order = [0] * total
        fill = counts[:-1].copy()
        for p in range(total):
            t = delta[p * k + ci]
            order[fill[t]] = p
            fill[t] += 1
        preimage.append((counts, order))

    worklist = {(b, ci) for b in range(len(partition)) for ci in range(k)}
    while worklist:
        budget.checkpoint()
        b, ci = worklist.pop()
        counts, order = preimage[ci]
        movers: dict[int, list[int]] = {}
        for q in partition[b]:
            for idx in range(counts[q], counts[q + 1]):
                p = order[idx]
                movers.setdefault(block_of[p], []).append(p)
        for src, hit in movers.items():
            if len(hit) == len(partition[src]):
                continue
            hit_set = set(hit)
            partition[src] -= hit_set
            new_b = len(partition)
            partition.append(hit_set)
            for q in hit_set:
                block_of[q] = new_b
            for cj in range(k):
                if (src, cj) in worklist:
                    worklist.add((new_b, cj))
                else:
                    smaller = new_b if len(hit_set) <= len(partition[src]) else src
                    worklist.add((smaller, cj))

    # Quotient transition table over the classes.
    nblocks = len(partition)
    class_delta = [0] * (nblocks * k)
    for b, block in enumerate(partition):
        rep = next(iter(block))
        row, rrow = b * k, rep * k
        for ci in range(k):
            class_delta[row + ci] = block_of[delta[rrow + ci]]
    final_blocks = {block_of[q] for q in range(total) if is_final[q]}

    # Classes from which no accepting class is reachable are dead: they keep
    # no transitions (the initial class stays as a state regardless).
    useful = bytearray(nblocks)
    stack = []
    for b in final_blocks:
        useful[b] = 1
        stack.append(b)
    class_preds: list[list[int]] = [[] for _ in range(nblocks)]
    for b in range(nblocks):
        for ci in range(k):
            class_preds[class_delta[b * k + ci]].append(b)
    while stack:
        t = stack.pop()
        for b in class_preds[t]:
            if not useful[b]:
                useful[b] = 1
                stack.append(b)
    init_block = block_of[remap[d.initial]]

    # Canonical BFS numbering from the initial class.
    ids = {init_block: 0}
    order2 = [init_block]
    i = 0
    new_trans = []
    while i < len(order2):
        b = order2[i]
        row = b * k
        for ci in range(k):
            t = class_delta[row + ci]
            if not useful[t]:
                continue
            if t not in ids:
                ids[t] = len(ids)
                order2.append(t)
            new_trans.append((ids[b], sigma[ci], ids[t]))
        i += 1
    new_finals = frozenset(ids[b] for b in final_blocks if b in ids)
    return Dfa(d.alphabet, len(ids), 0, new_finals, frozenset(new_trans))


def serialize(a: Nfa) -> str:
    """Line-oriented automaton file; deterministic for a fixed automaton."""
    lines = ["automaton v1",
             "alphabet: " + " ".join(a.alphabet),
             f"states: {a.n_states}",
             f"initial: {a.initial}"]
    finals = " ".join(str(q) for q in sorted(a.finals))
    lines.append("finals:" + (" " + finals if finals else ""))
    lines.extend(sorted(f"trans: {p} {s} {q}" for p, s, q in a.transitions))
    return "\n".join(lines) + "\n"


def parse_automaton(text: str) -> Nfa:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0].strip() != "automaton v1":
        raise AutomatonFormatError("missing 'automaton v1' header")

    def field(i: int, key: str) -> str:
        if i >= len(lines) or not lines[i].startswith(key + ":"):
            raise AutomatonFormatError(f"expected '{key}:' on line {i + 1}")
        return lines[i][len(key) + 1:].strip()

    try:
        alphabet = Alphabet(tuple(field(1, "alphabet").split()))
        n_states = int(field(2, "states"))
        initial = int(field(3, "initial"))
        finals_text = field(4, "finals")
        finals = frozenset(int(t) for t in finals_text.split()) if finals_text else frozenset()
        transitions = set()
        for ln in lines[5:]:
            if not ln.startswith("trans:"):
                raise AutomatonFormatError(f"unexpected line {ln!r}")
            parts = ln[len("trans:"):].split()
            if len(parts) != 3:
                raise AutomatonFormatError(f"bad transition line {ln!r}")
            transitions.add((int(parts[0]), parts[1], int(parts[2])))
        nfa = Nfa(alphabet, n_states, initial, finals, frozenset(transitions))
    except (ValueError, IndexError) as exc:
        raise AutomatonFormatError(str(exc)) from exc
    if nfa.is_deterministic():
        return Dfa(alphabet, n_states, initial, nfa.finals, nfa.transitions)
    return nfa


def equivalent(a: Nfa, b: Nfa, max_states: int = budget.DEFAULT_MAX_STATES) -> bool:
    """Language equality via identical canonical minimised serialisations."""
    _require_same_alphabet(a, b)
    da = a if isinstance(a, Dfa) else determinize(a, max_states=max_states)
    db = b if isinstance(b, Dfa) else determinize(b, max_states=max_states)
    return serialize(minimize(da)) == serialize(minimize(db))


def shortest_divergence(a: Nfa, b: Nfa,
                        max_states: int = budget.DEFAULT_MAX_STATES
                        ) -> Optional[tuple[str, ...]]:
    """Length-lex least word accepted by exactly one automaton, if any."""
    _require_same_alphabet(a, b)
    da = a if isinstance(a, Dfa) else determinize(a, max_states=max_states)
    db = b if isinstance(b, Dfa) else determinize(b, max_states=max_states)
    dead = (-1, -1)
    start = (da.initial, db.initial)
    seen = {start}
    queue: list[tuple[tuple[int, int], tuple[str, ...]]] = [(start, ())]
    i = 0
    while i < len(queue):
        budget.checkpoint()
        (p, q), word = queue[i]
        in_a = p >= 0 and p in da.finals
        in_b = q >= 0 and q in db.finals
        if in_a != in_b:
            return word
        for s in a.alphabet:
            p2 = da.delta.get((p, s), -1) if p >= 0 else -1
            q2 = db.delta.get((q, s), -1) if q >= 0 else -1
            key = (p2, q2)
            if key == dead or key in seen:
                continue
            seen.add(key)
            queue.append((key, word + (s,)))
        i += 1
    return None


# ---------------------------------------------------------------------------
# State elimination
# ---------------------------------------------------------------------------

def eliminate_states(a: Nfa, max_size: Optional[int] = None) -> Regex:
    """Convert an automaton to a plain regex by generalised state elimination.

    States are removed in ascending (in-degree x out-degree), ties broken by
    state id, recomputed as elimination proceeds; a classic size-reduction
    heuristic.  The output uses union/concat/star only.  ``max_size`` caps the
    number of AST nodes created (None means unbounded).
    """
    start, accept = -1, -2
    edges: dict[tuple[int, int], Regex] = {}

    def add_edge(p: int, q: int, r: Regex):
        if isinstance(r, Empty):
            return
        key = (p, q)
        edges[key] = sunion(edges[key], r) if key in edges else r

    for p, s, q in sorted(a.transitions):
        add_edge(p, q, Sym(s))
    add_edge(start, a.initial, EPSILON)
    for f in sorted(a.finals):
        add_edge(f, accept, EPSILON)

    created = 0

    def charge(r: Regex):
        nonlocal created
        created += 1
        if max_size is not None and created > max_size:
            raise budget.BudgetExceededError(
                f"state elimination exceeds {max_size} nodes")
        return r

    remaining = set(range(a.n_states))
    while remaining:
        budget.checkpoint()
        outs: dict[int, list[int]] = {q: [] for q in remaining}
        ins: dict[int, list[int]] = {q: [] for q in remaining}
        for (p, q) in edges:
            if q in outs and p != q:
                ins[q].append(p)
            if p in outs and p != q:
                outs[p].append(q)
        victim = min(remaining, key=lambda q: (len(ins[q]) * len(outs[q]), q))
        remaining.discard(victim)

        loop = edges.pop((victim, victim), None)
        loop_star = sstar(loop) if loop is not None else EPSILON
        preds = [(p, edges.pop((p, victim))) for p in set(ins[victim])]
        succs = [(q, edges.pop((victim, q))) for q in set(outs[victim])]
        for p, rin in preds:
            via = charge(sconcat(rin, loop_star))
            for q, rout in succs:
                add_edge(p, q, charge(sconcat(via, rout)))

    return edges.get((start, accept), EMPTY)
