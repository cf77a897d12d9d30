"""One-unambiguous regexes, SOREs, the polynomial complement, and local languages.

A plain regex is one-unambiguous when positions of an input can be matched
against its symbol occurrences without lookahead; operationally, exactly when
its position automaton is deterministic.  For such expressions the complement
can be assembled directly from the first/follow/last data as a polynomial-size
plain regex, instead of the determinise-complement-eliminate route.

Single-occurrence regexes (every alphabet symbol at most once) define local
languages, which makes their intersection a profile intersection followed by
one small state elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .automata import Dfa, eliminate_states
from .rex import (
    EMPTY,
    EPSILON,
    Alphabet,
    Concat,
    MarkedRegex,
    MarkedSymbol,
    Plus,
    PositionSets,
    Regex,
    RexlabError,
    Star,
    Sym,
    Union,
    format_regex,
    glushkov_sets,
    has_extended,
    mark,
    sconcat,
    set_expr,
    subexpressions,
    sunion,
    symbols_of,
    unmark,
)

__all__ = [
    "UnambiguityReport",
    "LocalProfile",
    "NotOneUnambiguousError",
    "NotSoreError",
    "is_one_unambiguous",
    "is_sore",
    "nfirst",
    "nfollow",
    "last_marked",
    "init_expr",
    "prefix_to",
    "complement_unambiguous",
    "local_profile",
    "profile_intersection",
    "profile_to_dfa",
    "intersect_sores",
]


class NotOneUnambiguousError(RexlabError):
    pass


class NotSoreError(RexlabError):
    pass


@dataclass(frozen=True)
class UnambiguityReport:
    """Outcome of the one-unambiguity test.

    When the expression fails, ``witness`` carries a marked word ``u`` and two
    distinct positions ``x``, ``y`` with the same base symbol such that both
    ``ux...`` and ``uy...`` extend to words of the marked language.
    """

    is_one_unambiguous: bool
    witness: Optional[tuple[tuple[MarkedSymbol, ...], MarkedSymbol, MarkedSymbol]] = None


@dataclass(frozen=True)
class LocalProfile:
    """First/last/follow data over unmarked symbols, plus epsilon membership."""

    nullable: bool
    first: frozenset[str]
    last: frozenset[str]
    follow: frozenset[tuple[str, str]]


def _marked_sets(r: Regex) -> tuple[MarkedRegex, PositionSets]:
    marked = mark(r)  # rejects extended operators
    return marked, glushkov_sets(marked)


def is_one_unambiguous(r: Regex) -> UnambiguityReport:
    """Test via determinism of the position automaton.

    The witness comes from the first nondeterministic fork along a BFS of the
    automaton (shortest ``u``, tie-broken by occurrence subscripts).
    """
    marked, sets = _marked_sets(r)
    position = {x.occurrence: x for x in marked.positions}

    # successors[state] = positions reachable in one step, as marked symbols
    successors: dict[int, list[MarkedSymbol]] = {0: sorted(
        sets.first, key=lambda m: m.occurrence)}
    by_source: dict[int, list[MarkedSymbol]] = {}
    for x, y in sets.follow:
        by_source.setdefault(x.occurrence, []).append(y)
    for state, ys in by_source.items():
        successors[state] = sorted(ys, key=lambda m: m.occurrence)

    # BFS for the earliest state whose successors clash on a base symbol.
    seen = {0}
    queue: list[tuple[int, tuple[MarkedSymbol, ...]]] = [(0, ())]
    i = 0
    while i < len(queue):
        state, path = queue[i]
        clash: dict[str, MarkedSymbol] = {}
        for y in successors.get(state, ()):
            other = clash.get(y.base)
            if other is not None:
                return UnambiguityReport(False, (path, other, y))
            clash[y.base] = y
        for y in successors.get(state, ()):
            if y.occurrence not in seen:
                seen.add(y.occurrence)
                queue.append((y.occurrence, path + (y,)))
        i += 1
    return UnambiguityReport(True)


def is_sore(r: Regex) -> bool:
    """True when no symbol occurs twice and no extended operator appears."""
    if has_extended(r):
        return False
    names = symbols_of(r)
    return len(names) == len(set(names))


def _require_unambiguous(r: Regex):
    report = is_one_unambiguous(r)
    if not report.is_one_unambiguous:
        raise NotOneUnambiguousError(
            f"expression is not one-unambiguous (witness {report.witness})")


def nfirst(r: Regex, alphabet: Alphabet) -> frozenset[str]:
    """Symbols that begin no word of the language."""
    _require_unambiguous(r)
    _, sets = _marked_sets(r)
    return frozenset(alphabet) - {x.base for x in sets.first}


def nfollow(r: Regex, x: MarkedSymbol, alphabet: Alphabet) -> frozenset[str]:
    """Symbols no marked version of which can follow position ``x``."""
    marked, sets = _marked_sets(r)
    if x not in marked.positions:
        raise ValueError(f"unknown marked symbol {x}")
    return frozenset(alphabet) - {b.base for a, b in sets.follow if a == x}


def last_marked(r: Regex) -> frozenset[MarkedSymbol]:
    """Positions that end some word of the marked language."""
    _require_unambiguous(r)
    _, sets = _marked_sets(r)
    return sets.last


def _sigma_star(alphabet: Alphabet) -> Regex:
    return Star(set_expr(alphabet, alphabet))


def init_expr(r: Regex, alphabet: Alphabet) -> Regex:
    """Words whose very first symbol already leaves the language.

    Two cases: with the empty word in the language the result is
    ``nfirst . Sigma*``; without it, ``eps + nfirst . Sigma*``.  An empty
    nfirst set collapses the concatenation to the empty-language expression.
    """
    _, sets = _marked_sets(r)
    head = sconcat(set_expr(nfirst(r, alphabet), alphabet), _sigma_star(alphabet))
    if sets.nullable:
        return head
    return Union(EPSILON, head)


def prefix_to(r: Regex, x: MarkedSymbol) -> Regex:
    """Unmarked expression for the prefixes of marked words that end at ``x``.

    Structural recursion: concatenation keeps the left part whole when ``x``
    lies to the right; star/plus allow any number of full iterations before a
    partial one reaching ``x``; unions project on the branch containing ``x``.
    """
    marked = mark(r)
    if x not in marked.positions:
        raise ValueError(f"unknown marked symbol {x}")

    def contains(node: Regex) -> bool:
        return any(isinstance(s, Sym) and s.sym == x for s in subexpressions(node))

    def walk(node: Regex) -> Regex:
        if isinstance(node, Sym):
            return Sym(x.base)
        if isinstance(node, Concat):
            if contains(node.left):
                return walk(node.left)
            return Concat(unmark(node.left), walk(node.right))
        if isinstance(node, Union):
            return walk(node.left if contains(node.left) else node.right)
        if isinstance(node, (Star, Plus)):
            return Concat(Star(unmark(node.inner)), walk(node.inner))
        raise ValueError(f"position {x} not found")  # pragma: no cover

    return walk(marked.root)


def complement_unambiguous(r: Regex, alphabet: Alphabet) -> Regex:
    """Plain regex for the complement of a one-unambiguous expression.

    Assembles (a) words broken at their first symbol, (b) for every
    non-word-ending position, the prefixes reaching it either ending there or
    continuing with a forbidden symbol, and (c) for word-ending positions, the
    prefixes continuing with a forbidden symbol.  Empty-set pieces are
    simplified away (``%0 . r = %0``, ``%0 | r = r``) before size reporting.
    The output is a plain regex of size polynomial in the input.
    """
    _require_unambiguous(r)
    marked, sets = _marked_sets(r)
    sigma_star = _sigma_star(alphabet)

    def follow_gap(x: MarkedSymbol) -> Regex:
        banned = frozenset(alphabet) - {b.base for a, b in sets.follow if a == x}
        return sconcat(set_expr(banned, alphabet), sigma_star)

    out = init_expr(r, alphabet)
    for x in sorted(marked.positions, key=lambda m: m.occurrence):
        r_x = prefix_to(r, x)
        if x in sets.last:
            term = sconcat(r_x, follow_gap(x))
        else:
            term = sconcat(r_x, sunion(EPSILON, follow_gap(x)))
        out = sunion(out, term)
    return out


# ---------------------------------------------------------------------------
# Local languages / SORE intersection
# ---------------------------------------------------------------------------

def local_profile(r: Regex) -> LocalProfile:
    """Unmarked position sets of a SORE; well defined since symbols are unique."""
    if not is_sore(r):
        raise NotSoreError(f"not a single-occurrence regex: {r}")
    _, sets = _marked_sets(r)
    return LocalProfile(
        nullable=sets.nullable,
        first=frozenset(x.base for x in sets.first),
        last=frozenset(x.base for x in sets.last),
        follow=frozenset((a.base, b.base) for a, b in sets.follow),
    )


def profile_intersection(profiles: Sequence[LocalProfile]) -> LocalProfile:
    out = profiles[0]
    for p in profiles[1:]:
        out = LocalProfile(
            nullable=out.nullable and p.nullable,
            first=out.first & p.first,
            last=out.last & p.last,
            follow=out.follow & p.follow,
        )
    return out


def profile_to_dfa(profile: LocalProfile, alphabet: Alphabet) -> Dfa:
    """The canonical local-language acceptor: one state per symbol plus start."""
    state = {name: i + 1 for i, name in enumerate(alphabet)}
    transitions = {(0, a, state[a]) for a in profile.first}
    transitions |= {(state[a], b, state[b]) for a, b in profile.follow}
    finals = {state[a] for a in profile.last}
    if profile.nullable:
        finals.add(0)
    return Dfa(alphabet, len(alphabet) + 1, 0, frozenset(finals), frozenset(transitions))


def intersect_sores(rs: Sequence[Regex], alphabet: Alphabet) -> Regex:
    """Plain regex for the intersection of single-occurrence regexes.

    Profiles are intersected component-wise, realised as the local-language
    DFA over at most len(alphabet)+1 states, and converted back by state
    elimination, so the work stays linear in the total input size (times the
    usual elimination factor for a fixed alphabet).
    """
    if not rs:
        raise ValueError("need at least one expression")
    profiles = []
    for r in rs:
        if not is_sore(r):
            raise NotSoreError(f"not a single-occurrence regex: {format_regex(r)}")
        for name in symbols_of(r):
            if name not in alphabet:
                raise ValueError(f"symbol {name!r} not in the declared alphabet")
        profiles.append(local_profile(r))
    merged = profile_intersection(profiles)
    if not merged.first:
        # No word can start: the intersection is {eps} or empty outright.
        return EPSILON if merged.nullable else EMPTY
    return eliminate_states(profile_to_dfa(merged, alphabet))
