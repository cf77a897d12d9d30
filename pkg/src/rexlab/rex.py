"""Extended regular expression ASTs, text syntax, sizes, markings and position sets.

Symbols are plain strings (interned by Python); an :class:`Alphabet` is an
ordered, duplicate-free collection of symbol names.  Expression trees are
immutable dataclasses, so sharing subtrees is safe everywhere; all measures
treat an expression as its tree expansion.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional, Union as TUnion

__all__ = [
    "Alphabet",
    "MarkedSymbol",
    "Regex",
    "Empty",
    "Epsilon",
    "Sym",
    "Concat",
    "Union",
    "Star",
    "Plus",
    "Intersect",
    "Negate",
    "EMPTY",
    "EPSILON",
    "MarkedRegex",
    "PositionSets",
    "RexlabError",
    "RegexSyntaxError",
    "UnknownSymbolError",
    "ExtendedOperatorError",
    "parse",
    "format_regex",
    "size",
    "mark",
    "unmark",
    "glushkov_sets",
    "repeat_upto",
    "power",
    "union_all",
    "concat_all",
    "set_expr",
    "sunion",
    "sconcat",
    "sstar",
    "symbols_of",
    "occurrence_count",
    "has_extended",
    "subexpressions",
]


class RexlabError(Exception):
    """Base class for all library errors."""


class RegexSyntaxError(RexlabError):
    """Malformed regex text; carries the offending position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class UnknownSymbolError(RexlabError):
    """A symbol token that is not part of the declared alphabet."""

    def __init__(self, token: str):
        super().__init__(f"unknown symbol {token!r}")
        self.token = token


class ExtendedOperatorError(RexlabError):
    """Negation/intersection fed to an operation defined for plain regexes only."""


# Characters with syntactic meaning in the regex grammar; symbol tokens using
# any of these (or whitespace, or more than one character) must be quoted.
_META = set("|&!*+()%'")


def _valid_symbol_name(name: str) -> bool:
    if not name or "\\" in name:
        return False
    return all(32 < ord(c) < 127 for c in name)  # printable ASCII, no blanks


@dataclass(frozen=True)
class Alphabet:
    """Ordered set of symbol names; iteration order is insertion order."""

    names: tuple[str, ...]

    def __post_init__(self):
        seen = set()
        for name in self.names:
            if not _valid_symbol_name(name):
                raise ValueError(f"bad symbol name {name!r}: must be printable ASCII "
                                 "without blanks or backslashes")
            if name in seen:
                raise ValueError(f"duplicate symbol {name!r}")
            seen.add(name)
        if not self.names:
            raise ValueError("alphabet must contain at least one symbol")

    @classmethod
    def of(cls, *names: str) -> "Alphabet":
        return cls(tuple(names))

    @classmethod
    def from_chars(cls, chars: str) -> "Alphabet":
        return cls(tuple(chars))

    @classmethod
    def from_text(cls, text: str) -> "Alphabet":
        """One symbol name per line; ``#``-prefixed comment lines are ignored."""
        names = []
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            names.append(line)
        return cls(tuple(names))

    @property
    def index(self) -> dict[str, int]:
        try:
            return self._index  # type: ignore[attr-defined]
        except AttributeError:
            idx = {name: i for i, name in enumerate(self.names)}
            object.__setattr__(self, "_index", idx)
            return idx

    def __contains__(self, name: object) -> bool:
        return name in self.index

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    def __len__(self) -> int:
        return len(self.names)

    def sort_key(self, name: str) -> int:
        return self.index[name]


@dataclass(frozen=True)
class MarkedSymbol:
    """An alphabet symbol subscripted with its occurrence index in an expression."""

    base: str
    occurrence: int

    def __str__(self) -> str:
        return f"{self.base}_{self.occurrence}"


# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------

class Regex:
    """Base class of all expression nodes. Instances are immutable."""

    __slots__ = ()


@dataclass(frozen=True)
class Empty(Regex):
    pass


@dataclass(frozen=True)
class Epsilon(Regex):
    pass


@dataclass(frozen=True)
class Sym(Regex):
    sym: TUnion[str, MarkedSymbol]


@dataclass(frozen=True)
class Concat(Regex):
    left: Regex
    right: Regex


@dataclass(frozen=True)
class Union(Regex):
    left: Regex
    right: Regex


@dataclass(frozen=True)
class Star(Regex):
    inner: Regex


@dataclass(frozen=True)
class Plus(Regex):
    """One-or-more repetition, the single-occurrence shorthand for ``rr*``."""

    inner: Regex


@dataclass(frozen=True)
class Intersect(Regex):
    left: Regex
    right: Regex


@dataclass(frozen=True)
class Negate(Regex):
    inner: Regex


EMPTY = Empty()
EPSILON = Epsilon()

_BINARY = (Concat, Union, Intersect)
_UNARY = (Star, Plus, Negate)


def children(r: Regex) -> tuple[Regex, ...]:
    if isinstance(r, _BINARY):
        return (r.left, r.right)
    if isinstance(r, _UNARY):
        return (r.inner,)
    return ()


def iter_postorder(root: Regex) -> Iterator[Regex]:
    """Tree-semantics post-order; shared subtrees are visited per occurrence."""
    stack: list[tuple[Regex, bool]] = [(root, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded:
            yield node
        else:
            stack.append((node, True))
            for child in reversed(children(node)):
                stack.append((child, False))


def subexpressions(root: Regex) -> Iterator[Regex]:
    """Pre-order walk over the tree, root first."""
    stack = [root]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(children(node)))


def _fold(root: Regex, leaf: Callable, combine: Callable):
    """Bottom-up evaluation with an explicit stack (no recursion limit issues).

    ``leaf(node)`` handles nullary nodes; ``combine(node, child_values)`` the rest.
    """
    values: list = []
    for node in iter_postorder(root):
        kids = children(node)
        if not kids:
            values.append(leaf(node))
        else:
            args = values[-len(kids):]
            del values[-len(kids):]
            values.append(combine(node, args))
    return values[0]


def size(r: Regex) -> int:
    """Reverse-Polish length: symbols and operators, parentheses ignored.

    Works on heavily shared trees in time proportional to the number of
    distinct nodes.
    """
    memo: dict[int, int] = {}
    stack: list[tuple[Regex, bool]] = [(r, False)]
    while stack:
        node, expanded = stack.pop()
        if id(node) in memo:
            continue
        kids = children(node)
        if expanded or not kids:
            memo[id(node)] = 1 + sum(memo[id(c)] for c in kids)
        else:
            stack.append((node, True))
            for c in kids:
                if id(c) not in memo:
                    stack.append((c, False))
    return memo[id(r)]


def symbols_of(r: Regex) -> list[str]:
    """Base names of all symbol occurrences, left to right (with repeats)."""
    out = []
    for node in subexpressions(r):
        if isinstance(node, Sym):
            s = node.sym
            out.append(s.base if isinstance(s, MarkedSymbol) else s)
    return out


def occurrence_count(r: Regex) -> int:
    return sum(1 for node in subexpressions(r) if isinstance(node, Sym))


def has_extended(r: Regex) -> bool:
    return any(isinstance(node, (Intersect, Negate)) for node in subexpressions(r))


# ---------------------------------------------------------------------------
# Smart constructors: language-preserving local simplifications used when
# assembling machine-generated expressions (state elimination, complements).
# ---------------------------------------------------------------------------

def sunion(a: Regex, b: Regex) -> Regex:
    if isinstance(a, Empty):
        return b
    if isinstance(b, Empty):
        return a
    if a is b:
        return a
    return Union(a, b)


def sconcat(a: Regex, b: Regex) -> Regex:
    if isinstance(a, Empty) or isinstance(b, Empty):
        return EMPTY
    if isinstance(a, Epsilon):
        return b
    if isinstance(b, Epsilon):
        return a
    return Concat(a, b)


def sstar(a: Regex) -> Regex:
    if isinstance(a, (Empty, Epsilon)):
        return EPSILON
    if isinstance(a, Star):
        return a
    if isinstance(a, Plus):
        return Star(a.inner)
    return Star(a)


def union_all(parts: Iterable[Regex]) -> Regex:
    """Left-associated union; the empty union is the empty-language expression."""
    out: Optional[Regex] = None
    for p in parts:
        out = p if out is None else Union(out, p)
    return EMPTY if out is None else out


def concat_all(parts: Iterable[Regex]) -> Regex:
    """Left-associated concatenation, dropping epsilon factors; empty -> epsilon."""
    out: Optional[Regex] = None
    for p in parts:
        if isinstance(p, Epsilon):
            continue
        out = p if out is None else Concat(out, p)
    return EPSILON if out is None else out


def set_expr(names: Iterable[str], alphabet: Alphabet) -> Regex:
    """A symbol set as the union of its members, in alphabet order."""
    ordered = sorted(names, key=alphabet.sort_key)
    return union_all(Sym(n) for n in ordered)


def power(r: Regex, k: int) -> Regex:
    """k-fold concatenation r r ... r; the zeroth power is epsilon."""
    if k < 0:
        raise ValueError("negative power")
    return concat_all([r] * k)


def repeat_upto(r: Regex, n: int) -> Regex:
    """Expression for at most ``n`` repetitions of ``r``.

    Built as the nested form ``(eps + r(eps + r(... (eps + r))))`` so the size
    stays linear in ``n``; zero repetitions give the epsilon expression.
    """
    if n < 0:
        raise ValueError("negative repetition bound")
    if n == 0:
        return EPSILON
    out: Regex = Union(EPSILON, r)
    for _ in range(n - 1):
        out = Union(EPSILON, Concat(r, out))
    return out


# ---------------------------------------------------------------------------
# Text syntax
#
#   union    := isect ('|' isect)*
#   isect    := concat ('&' concat)*
#   concat   := prefixed+
#   prefixed := '!' prefixed | postfix
#   postfix  := atom ('*' | '+')*
#   atom     := BARE-CHAR | 'quoted' | %e | %0 | '(' union ')'
#
# Whitespace is insignificant outside quotes.  A bare symbol token is any
# single printable character that carries no syntactic meaning; multi-char
# symbol names are single-quoted with \' escaping the quote.
# ---------------------------------------------------------------------------

class _Parser:
    def __init__(self, text: str, alphabet: Alphabet):
        self.text = text
        self.alphabet = alphabet
        self.i = 0

    def error(self, message: str) -> RegexSyntaxError:
        return RegexSyntaxError(message, self.i)

    def peek(self) -> Optional[str]:
        self.skip_ws()
        return self.text[self.i] if self.i < len(self.text) else None

    def skip_ws(self):
        while self.i < len(self.text) and self.text[self.i].isspace():
            self.i += 1

    def parse(self) -> Regex:
        node = self.union()
        if self.peek() is not None:
            raise self.error(f"unexpected {self.text[self.i]!r}")
        return node

    def union(self) -> Regex:
        node = self.isect()
        while self.peek() == "|":
            self.i += 1
            node = Union(node, self.isect())
        return node

    def isect(self) -> Regex:
        node = self.concat()
        while self.peek() == "&":
            self.i += 1
            node = Intersect(node, self.concat())
        return node

    _STOP = {None, "|", "&", ")"}

    def concat(self) -> Regex:
        node = self.prefixed()
        while self.peek() not in self._STOP:
            node = Concat(node, self.prefixed())
        return node

    def prefixed(self) -> Regex:
        if self.peek() == "!":
            self.i += 1
            return Negate(self.prefixed())
        return self.postfix()

    def postfix(self) -> Regex:
        node = self.atom()
        while True:
            c = self.peek()
            if c == "*":
                self.i += 1
                node = Star(node)
            elif c == "+":
                self.i += 1
                node = Plus(node)
            else:
                return node

    def atom(self) -> Regex:
        c = self.peek()
        if c is None:
            raise self.error("expected an atom, found end of input")
        if c == "(":
            self.i += 1
            node = self.union()
            if self.peek() != ")":
                raise self.error("expected ')'")
            self.i += 1
            return node
        if c == "%":
            self.i += 1
            if self.i >= len(self.text):
                raise self.error("dangling '%'")
            kind = self.text[self.i]
            self.i += 1
            if kind == "e":
                return EPSILON
            if kind == "0":
                return EMPTY
            raise self.error(f"unknown escape %{kind}")
        if c == "'":
            return Sym(self.quoted())
        if c in _META or not c.isascii():
            raise self.error(f"unexpected {c!r}")
        self.i += 1
        return Sym(self.check_symbol(c))

    def quoted(self) -> str:
        self.i += 1  # opening quote
        out = []
        while self.i < len(self.text):
            c = self.text[self.i]
            if c == "\\" and self.i + 1 < len(self.text) and self.text[self.i + 1] == "'":
                out.append("'")
                self.i += 2
                continue
            if c == "'":
                self.i += 1
                return self.check_symbol("".join(out))
            out.append(c)
            self.i += 1
        raise self.error("unterminated quoted symbol")

    def check_symbol(self, name: str) -> str:
        if name not in self.alphabet:
            raise UnknownSymbolError(name)
        return name


def parse(text: str, alphabet: Alphabet) -> Regex:
    """Parse regex text over the given alphabet; inverse of :func:`format_regex`."""
    return _Parser(text, alphabet).parse()


# Precedence levels used by the printer; higher binds tighter.
_PREC_UNION, _PREC_ISECT, _PREC_CONCAT, _PREC_NEG, _PREC_POSTFIX, _PREC_ATOM = range(6)


def _prec(r: Regex) -> int:
    if isinstance(r, Union):
        return _PREC_UNION
    if isinstance(r, Intersect):
        return _PREC_ISECT
    if isinstance(r, Concat):
        return _PREC_CONCAT
    if isinstance(r, Negate):
        return _PREC_NEG
    if isinstance(r, (Star, Plus)):
        return _PREC_POSTFIX
    return _PREC_ATOM


def format_symbol(name: str) -> str:
    if len(name) == 1 and name not in _META and not name.isspace():
        return name
    return "'" + name.replace("'", "\\'") + "'"


def format_regex(r: Regex) -> str:
    """Precedence-minimal text for ``r``; round-trips structurally through parse."""
    out: list[str] = []
    # Work items are literal strings or (node, minimum-precedence) pairs.
    stack: list = [(r, _PREC_UNION)]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            out.append(item)
            continue
        node, lvl = item
        p = _prec(node)
        if p < lvl:
            out.append("(")
            stack.append(")")
            lvl = _PREC_UNION
        if isinstance(node, Empty):
            out.append("%0")
        elif isinstance(node, Epsilon):
            out.append("%e")
        elif isinstance(node, Sym):
            s = node.sym
            if isinstance(s, MarkedSymbol):
                raise ValueError("marked expressions have no text form")
            out.append(format_symbol(s))
        elif isinstance(node, Union):
            stack.append((node.right, _PREC_UNION + 1))
            stack.append("|")
            stack.append((node.left, _PREC_UNION))
        elif isinstance(node, Intersect):
            stack.append((node.right, _PREC_ISECT + 1))
            stack.append("&")
            stack.append((node.left, _PREC_ISECT))
        elif isinstance(node, Concat):
            stack.append((node.right, _PREC_CONCAT + 1))
            stack.append((node.left, _PREC_CONCAT))
        elif isinstance(node, Negate):
            stack.append((node.inner, _PREC_NEG))
            out.append("!")
        elif isinstance(node, Star):
            stack.append("*")
            stack.append((node.inner, _PREC_POSTFIX))
        elif isinstance(node, Plus):
            stack.append("+")
            stack.append((node.inner, _PREC_POSTFIX))
        else:  # pragma: no cover
            raise TypeError(f"unknown node {node!r}")
    return "".join(out)


# ---------------------------------------------------------------------------
# Marking
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MarkedRegex:
    """An expression with every symbol occurrence subscripted 1..k left to right."""

    root: Regex
    origin: Regex

    @property
    def positions(self) -> tuple[MarkedSymbol, ...]:
        return tuple(node.sym for node in subexpressions(self.root)
                     if isinstance(node, Sym))


def mark(r: Regex) -> MarkedRegex:
    """Subscript the symbol occurrences of a plain regex in left-to-right order."""
    if has_extended(r):
        raise ExtendedOperatorError("marking is defined for plain regexes only")
    counter = 0

    def leaf(node: Regex) -> Regex:
        nonlocal counter
        if isinstance(node, Sym):
            if isinstance(node.sym, MarkedSymbol):
                raise ValueError("expression is already marked")
            counter += 1
            return Sym(MarkedSymbol(node.sym, counter))
        return node

    # Left-to-right numbering relies on iter_postorder visiting leaves in
    # left-to-right order, which it does.
    root = _fold(r, leaf, lambda node, kids: type(node)(*kids))
    return MarkedRegex(root, r)


def unmark(r: Regex) -> Regex:
    """Drop all occurrence subscripts."""
    def leaf(node: Regex) -> Regex:
        if isinstance(node, Sym) and isinstance(node.sym, MarkedSymbol):
            return Sym(node.sym.base)
        return node

    return _fold(r, leaf, lambda node, kids: type(node)(*kids))


# ---------------------------------------------------------------------------
# Position sets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PositionSets:
    """Exact first/last/follow data of a marked expression.

    ``first``/``last`` hold the positions that begin/end some word of the
    marked language, ``follow`` the adjacent position pairs, and ``nullable``
    tells whether the empty word belongs to the language.  Subexpressions
    denoting the empty language contribute nothing, so the sets characterise
    the language exactly.
    """

    nullable: bool
    first: frozenset[MarkedSymbol]
    last: frozenset[MarkedSymbol]
    follow: frozenset[tuple[MarkedSymbol, MarkedSymbol]]


_EMPTY_FS: frozenset = frozenset()


def glushkov_sets(m: MarkedRegex) -> PositionSets:
    """Compute the position sets of a marking by one bottom-up pass.

    One-or-more repetition contributes like ``rr*``: same sets, nullability
    inherited from the body.
    """
    # Tuple layout: (is_empty_language, nullable, first, last, follow)
    def leaf(node: Regex):
        if isinstance(node, Empty):
            return (True, False, _EMPTY_FS, _EMPTY_FS, _EMPTY_FS)
        if isinstance(node, Epsilon):
            return (False, True, _EMPTY_FS, _EMPTY_FS, _EMPTY_FS)
        s = node.sym  # type: ignore[union-attr]
        fs = frozenset([s])
        return (False, False, fs, fs, _EMPTY_FS)

    def combine(node: Regex, kids: list):
        if isinstance(node, Concat):
            (e1, n1, f1, l1, w1), (e2, n2, f2, l2, w2) = kids
            if e1 or e2:
                return (True, False, _EMPTY_FS, _EMPTY_FS, _EMPTY_FS)
            first = f1 | f2 if n1 else f1
            last = l1 | l2 if n2 else l2
            follow = w1 | w2 | frozenset((x, y) for x in l1 for y in f2)
            return (False, n1 and n2, first, last, follow)
        if isinstance(node, Union):
            (e1, n1, f1, l1, w1), (e2, n2, f2, l2, w2) = kids
            if e1:
                return kids[1]
            if e2:
                return kids[0]
            return (False, n1 or n2, f1 | f2, l1 | l2, w1 | w2)
        if isinstance(node, (Star, Plus)):
            (e1, n1, f1, l1, w1) = kids[0]
            if e1:
                # r* with empty body denotes {eps}; r+ the empty language.
                if isinstance(node, Star):
                    return (False, True, _EMPTY_FS, _EMPTY_FS, _EMPTY_FS)
                return (True, False, _EMPTY_FS, _EMPTY_FS, _EMPTY_FS)
            nullable = True if isinstance(node, Star) else n1
            follow = w1 | frozenset((x, y) for x in l1 for y in f1)
            return (False, nullable, f1, l1, follow)
        raise ExtendedOperatorError("position sets are defined for plain regexes only")

    _, nullable, first, last, follow = _fold(m.root, leaf, combine)
    return PositionSets(nullable, first, last, follow)
