"""Parametric witness families for complement/intersection blow-up experiments.

The families:

* ``z_dfa(n)`` - edge-label sequences of walks on the complete n-vertex graph
  (alphabet ``a(i,j)``), as a small DFA.
* ``k_dfa(n)`` - the four-letter block encoding of those walks: each edge
  ``a(i,j)`` becomes ``enc(j)$enc(i)#`` with ceil(log2 n)-bit numbers, indices
  swapped, so consecutive blocks chain through equal numbers.
* ``complement_witness(n)`` - a linear-size regex whose complement is exactly
  the block language for 2^n vertices.
* ``l_dfa`` / ``l_member`` - the even-length block language with an explicit
  end marker.
* ``unamb_family(n)`` - 2n+1 one-unambiguous expressions of linear size whose
  intersection is that end-marked language for 2^n vertices.
* ``m_sore_pair(n)`` - two single-occurrence expressions of quadratic size
  whose intersection is the circled-walk language ``M_n``.

The end marker is a single symbol named ``$end``; triangles and flags of the
circled alphabet are spelled ``tr(i)`` and ``rt(i)``, circled indices with a
trailing ``*`` inside the pair, e.g. ``a(2,4*)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union as TUnion

from .automata import Dfa, Nfa
from .rex import (
    EPSILON,
    Alphabet,
    Concat,
    Plus,
    Regex,
    Star,
    Sym,
    Union,
    concat_all,
    power,
    repeat_upto,
    set_expr,
    size,
    union_all,
)

__all__ = [
    "SIGMA_K",
    "SIGMA_L",
    "END_MARKER",
    "PathWord",
    "WitnessBundle",
    "FAMILIES",
    "z_alphabet",
    "z_dfa",
    "encode_int",
    "enc_width",
    "rho_encode",
    "k_dfa",
    "complement_witness",
    "l_member",
    "l_dfa",
    "unamb_family",
    "m_alphabet",
    "rho_hat_encode",
    "m_member",
    "m_sore_pair",
    "build_bundle",
]

SIGMA_K = Alphabet.of("0", "1", "$", "#")
END_MARKER = "$end"
SIGMA_L = Alphabet.of("0", "1", "$", "#", END_MARKER)


@dataclass(frozen=True)
class PathWord:
    """A walk i0 -> i1 -> ... -> ik on the complete graph with n vertices."""

    indices: tuple[int, ...]
    n: int

    def __post_init__(self):
        if len(self.indices) < 2:
            raise ValueError("a path word needs at least one edge")
        if not all(0 <= i < self.n for i in self.indices):
            raise ValueError(f"vertex out of range for n={self.n}: {self.indices}")

    @property
    def start_point(self) -> int:
        return self.indices[0]

    @property
    def end_point(self) -> int:
        return self.indices[-1]

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(zip(self.indices, self.indices[1:]))

    @property
    def edge_count(self) -> int:
        return len(self.indices) - 1


def z_alphabet(n: int) -> Alphabet:
    return Alphabet(tuple(f"a({i},{j})" for i in range(n) for j in range(n)))


def z_dfa(n: int) -> Dfa:
    """Walk acceptor: a pre-start state plus one state per vertex, all final.

    From the pre-start state any edge label is admissible (walks may start
    anywhere); from vertex i only labels ``a(i,j)``.  The empty word is not a
    walk, so the pre-start state is not final.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    sigma = z_alphabet(n)
    transitions = set()
    for i in range(n):
        for j in range(n):
            label = f"a({i},{j})"
            transitions.add((0, label, 1 + j))
            transitions.add((1 + i, label, 1 + j))
    finals = frozenset(range(1, n + 1))
    return Dfa(sigma, n + 1, 0, finals, frozenset(transitions))


def enc_width(n: int) -> int:
    """Number of bits used for vertex numbers: ceil(log2 n), n >= 2."""
    if n < 2:
        raise ValueError("binary encodings need n >= 2")
    return (n - 1).bit_length()


def encode_int(i: int, n: int) -> str:
    """Fixed-width big-endian binary encoding of ``i`` among ``n`` values."""
    width = enc_width(n)
    if not 0 <= i < n:
        raise ValueError(f"index {i} out of range for n={n}")
    return format(i, f"0{width}b")


def rho_encode(w: PathWord) -> str:
    """Block encoding of a walk; note the per-edge index swap enc(j)$enc(i)#."""
    n = w.n
    return "".join(f"{encode_int(j, n)}${encode_int(i, n)}#" for i, j in w.edges)


def k_dfa(n: int) -> Dfa:
    """Acceptor of the block encodings of walks, built phase by phase.

    Within a block the machine reads the first number (remembering it as the
    carry for the next block), the ``$``, the second number, and the ``#``.
    The second number of every block after the first is compared bit by bit
    against the previous block's first number; a mismatch simply has no
    transition.  States are (phase, carry, bit position, partial value)
    tuples, so the automaton stays within O(n^2 log n).
    """
    if n < 2:
        raise ValueError("block encodings need n >= 2")
    w = enc_width(n)

    def fits(value: int, bits_read: int) -> bool:
        # Can the partial first/second number still complete below n?
        return (value << (w - bits_read)) < n

    start = ("A", None, 0, 0)
    ids: dict[tuple, int] = {start: 0}
    order: list[tuple] = [start]
    transitions: list[tuple[int, str, int]] = []

    def goto(src: tuple, symbol: str, dst: tuple):
        if dst not in ids:
            ids[dst] = len(ids)
            order.append(dst)
        transitions.append((ids[src], symbol, ids[dst]))

    i = 0
    while i < len(order):
        state = order[i]
        phase = state[0]
        if phase == "A":  # reading the current block's first number
            _, carry, pos, value = state
            for bit in (0, 1):
                v2 = (value << 1) | bit
                if pos + 1 < w:
                    if fits(v2, pos + 1):
                        goto(state, str(bit), ("A", carry, pos + 1, v2))
                elif v2 < n:
                    goto(state, str(bit), ("dollar", carry, v2))
        elif phase == "dollar":
            _, carry, first = state
            if carry is None:
                goto(state, "$", ("B1", first, 0, 0))
            else:
                goto(state, "$", ("B2", first, carry, 0))
        elif phase == "B1":  # first block: any second number below n
            _, first, pos, value = state
            for bit in (0, 1):
                v2 = (value << 1) | bit
                if pos + 1 < w:
                    if fits(v2, pos + 1):
                        goto(state, str(bit), ("B1", first, pos + 1, v2))
                elif v2 < n:
                    goto(state, str(bit), ("hash", first))
        elif phase == "B2":  # later block: must equal the previous first number
            _, first, expected, pos = state
            bit = (expected >> (w - 1 - pos)) & 1
            if pos + 1 < w:
                goto(state, str(bit), ("B2", first, expected, pos + 1))
            else:
                goto(state, str(bit), ("hash", first))
        else:  # "hash": end of block; accepting continuation state
            _, first = state
            goto(state, "#", ("A", first, 0, 0))
        i += 1

    finals = frozenset(ids[s] for s in order
                       if s[0] == "A" and s[1] is not None and s[2] == 0)
    return Dfa(SIGMA_K, len(ids), 0, finals, frozenset(transitions))


# ---------------------------------------------------------------------------
# The linear-size complement witness
# ---------------------------------------------------------------------------

def complement_witness(n: int) -> Regex:
    """Regex of size O(n) over {0,1,$,#} whose complement is the block
    language on 2^n vertices.

    Union of five groups of offenders: a bad opening, a ``$`` not followed by
    an n-bit number and ``#``, a non-final ``#`` not followed by an n-bit
    number and ``$``, a missing final ``#``, and a bit mismatch between the
    first number of one block and the second number of the next (the two
    positions sit exactly 3n+2 symbols apart).
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    sigma = set_expr(SIGMA_K, SIGMA_K)
    sigma_star = Star(set_expr(SIGMA_K, SIGMA_K))
    bit = set_expr(["0", "1"], SIGMA_K)

    def bits_exact(k: int) -> Regex:
        return power(set_expr(["0", "1"], SIGMA_K), k)

    bad_start = union_all([
        repeat_upto(sigma, n),
        concat_all([repeat_upto(bit, n - 1), set_expr(["$", "#"], SIGMA_K), sigma_star]),
        concat_all([bits_exact(n), set_expr(["0", "1", "#"], SIGMA_K), sigma_star]),
    ])
    bad_dollar = concat_all([
        sigma_star, Sym("$"),
        Union(
            concat_all([repeat_upto(sigma, n - 1), set_expr(["#", "$"], SIGMA_K)]),
            concat_all([power(sigma, n), set_expr(["0", "1", "$"], SIGMA_K)]),
        ),
        sigma_star,
    ])
    bad_hash = concat_all([
        sigma_star, Sym("#"),
        Union(
            concat_all([repeat_upto(sigma, n - 1), set_expr(["#", "$"], SIGMA_K)]),
            concat_all([power(sigma, n), set_expr(["0", "1", "#"], SIGMA_K)]),
        ),
        sigma_star,
    ])
    bad_end = Concat(sigma_star, set_expr(["0", "1", "$"], SIGMA_K))

    # A first-number bit position: start of string or right after a '#'.
    at_first_number = Union(Star(bit), concat_all([sigma_star, Sym("#"), Star(bit)]))
    gap = power(sigma, 3 * n + 2)

    def mismatch(b0: str, b1: str) -> Regex:
        return concat_all([at_first_number, Sym(b0), gap, Sym(b1), sigma_star])

    bad_chain = Union(mismatch("0", "1"), mismatch("1", "0"))

    return union_all([bad_start, bad_dollar, bad_hash, bad_end, bad_chain])


# ---------------------------------------------------------------------------
# End-marked even-length variant
# ---------------------------------------------------------------------------

def l_member(w: PathWord) -> tuple[str, ...]:
    """Member of the end-marked language: block encoding plus the marker."""
    if w.edge_count % 2 != 0:
        raise ValueError("the end-marked language contains even walks only")
    return tuple(rho_encode(w)) + (END_MARKER,)


def l_dfa(n: int) -> Dfa:
    """Direct acceptor: the block acceptor, restricted to an even number of
    blocks, followed by the end marker."""
    base = k_dfa(n)
    ids: dict[tuple[int, int], int] = {(base.initial, 0): 0}
    order = [(base.initial, 0)]
    transitions = set()
    i = 0
    while i < len(order):
        q, parity = order[i]
        for s in SIGMA_K:
            t = base.delta.get((q, s))
            if t is None:
                continue
            key = (t, parity ^ (1 if s == "#" else 0))
            if key not in ids:
                ids[key] = len(ids)
                order.append(key)
            transitions.add((ids[(q, parity)], s, ids[key]))
        i += 1
    accept = len(ids)
    for (q, parity), sid in list(ids.items()):
        if parity == 0 and q in base.finals:
            transitions.add((sid, END_MARKER, accept))
    return Dfa(SIGMA_L, accept + 1, 0, frozenset([accept]), frozenset(transitions))


def unamb_family(n: int) -> list[Regex]:
    """2n+1 one-unambiguous expressions of size O(n) whose intersection is the
    end-marked block language on 2^n vertices.

    One expression pins the format (an even number of n-bit blocks, then the
    marker); for every bit position i, one expression equates bit i of the
    numbers 3n+2 apart across an odd-``#`` boundary and one across an
    even-``#`` boundary.  Gap fillers range over {0,1,$,#} only - including
    the marker there would break one-unambiguity at the block-final ``#``.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    sigma = set_expr(SIGMA_K, SIGMA_L)  # four-letter filler inside blocks
    bit = set_expr(["0", "1"], SIGMA_L)
    end = Sym(END_MARKER)

    def bits(k: int) -> Regex:
        return power(set_expr(["0", "1"], SIGMA_L), k)

    block = concat_all([bits(n), Sym("$"), bits(n), Sym("#")])
    shape = Concat(Star(Concat(block, block)), end)

    exprs = [shape]
    for i in range(n):
        both = Union(
            concat_all([Sym("0"), power(sigma, 3 * n + 2), Sym("0")]),
            concat_all([Sym("1"), power(sigma, 3 * n + 2), Sym("1")]),
        )
        odd = Concat(Star(concat_all([power(sigma, i), both,
                                      power(sigma, n - i - 1), Sym("#")])), end)
        exprs.append(odd)
    for i in range(n):
        def tail(b: str) -> Regex:
            return concat_all([
                Sym(b), power(sigma, 2 * n - i + 1),
                Union(end, concat_all([power(sigma, n + i + 1), Sym(b),
                                       power(sigma, n - i - 1), Sym("#")])),
            ])
        body = concat_all([power(sigma, i), Union(tail("0"), tail("1"))])
        exprs.append(Concat(power(sigma, 2 * n + 2), Star(body)))
    return exprs


# ---------------------------------------------------------------------------
# Circled-walk languages and the single-occurrence pair
# ---------------------------------------------------------------------------

def _circ_out(i: int, j: int) -> str:
    return f"a({i}*,{j})"


def _circ_in(i: int, j: int) -> str:
    return f"a({i},{j}*)"


def _flag(i: int) -> str:
    return f"rt({i})"


def _tri(i: int) -> str:
    return f"tr({i})"


def m_alphabet(n: int) -> Alphabet:
    """Circled-pair symbols plus per-vertex flags and triangles: 2n^2+2n names."""
    if n < 1:
        raise ValueError("n must be at least 1")
    names = [_circ_out(i, j) for i in range(n) for j in range(n)]
    names += [_circ_in(i, j) for i in range(n) for j in range(n)]
    names += [_flag(i) for i in range(n)]
    names += [_tri(i) for i in range(n)]
    return Alphabet(tuple(names))


def rho_hat_encode(w: PathWord) -> tuple[str, ...]:
    """Circled encoding: each edge pair (i,j),(j,k) becomes rt(i) a(i,j*) a(j*,k)."""
    if w.edge_count % 2 != 0:
        raise ValueError("circled encodings are defined for even walks only")
    out: list[str] = []
    edges = w.edges
    for t in range(0, len(edges), 2):
        (i, j), (_, k) = edges[t], edges[t + 1]
        out += [_flag(i), _circ_in(i, j), _circ_out(j, k)]
    return tuple(out)


def m_member(w: PathWord) -> tuple[str, ...]:
    """Circled encoding terminated by the end-point triangle."""
    return rho_hat_encode(w) + (_tri(w.end_point),)


def m_sore_pair(n: int) -> tuple[Regex, Regex]:
    """Two single-occurrence expressions whose intersection is the circled-walk
    language.

    The first pins the block format `(flag, into-circle, out-of-circle)+` and a
    final triangle, matching circled indices within a block; the second slides
    a window `(into-vertex? flag-or-triangle out-of-vertex?)*` that matches the
    plain indices around every flag and triangle.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    sigma = m_alphabet(n)
    flags = set_expr([_flag(i) for i in range(n)], sigma)
    tris = set_expr([_tri(i) for i in range(n)], sigma)
    circle_blocks = union_all(
        Concat(set_expr([_circ_in(j, i) for j in range(n)], sigma),
               set_expr([_circ_out(i, j) for j in range(n)], sigma))
        for i in range(n))
    r = Concat(Plus(Concat(flags, circle_blocks)), tris)

    windows = union_all(
        concat_all([
            Union(set_expr([_circ_out(j, i) for j in range(n)], sigma), EPSILON),
            Union(Sym(_flag(i)), Sym(_tri(i))),
            Union(set_expr([_circ_in(i, j) for j in range(n)], sigma), EPSILON),
        ])
        for i in range(n))
    s = Star(windows)
    return r, s


# ---------------------------------------------------------------------------
# Bundles
# ---------------------------------------------------------------------------

FAMILIES = ("z-dfa", "k-dfa", "complement-witness", "l-family", "m-sore-pair",
            "unamb-family")

_BOUNDS = {
    "z-dfa": "O(n^2)",
    "k-dfa": "O(n^2 log n)",
    "complement-witness": "O(n)",
    "l-family": "O(n^2 log n)",
    "m-sore-pair": "O(n^2)",
    "unamb-family": "O(n) each",
}


@dataclass(frozen=True)
class WitnessBundle:
    family: str
    n: int
    payload: TUnion[Regex, Nfa, list[Regex], tuple[Regex, ...]]
    declared_size: int
    bound_label: str
    alphabet_size: int

    def metadata(self) -> dict:
        return {"family": self.family, "n": self.n,
                "declared_size": self.declared_size,
                "alphabet_size": self.alphabet_size,
                "bound": self.bound_label}


def build_bundle(family: str, n: int) -> WitnessBundle:
    if family == "z-dfa":
        payload: TUnion[Regex, Nfa, list[Regex], tuple[Regex, ...]] = z_dfa(n)
        declared, sigma = payload.size, len(payload.alphabet)
    elif family == "k-dfa":
        payload = k_dfa(n)
        declared, sigma = payload.size, len(payload.alphabet)
    elif family == "complement-witness":
        payload = complement_witness(n)
        declared, sigma = size(payload), len(SIGMA_K)
    elif family == "l-family":
        payload = l_dfa(n)
        declared, sigma = payload.size, len(payload.alphabet)
    elif family == "m-sore-pair":
        payload = m_sore_pair(n)
        declared, sigma = sum(size(r) for r in payload), len(m_alphabet(n))
    elif family == "unamb-family":
        payload = unamb_family(n)
        declared, sigma = sum(size(r) for r in payload), len(SIGMA_L)
    else:
        raise ValueError(f"unknown family {family!r}; choose from {FAMILIES}")
    return WitnessBundle(family, n, payload, declared, _BOUNDS[family], sigma)
