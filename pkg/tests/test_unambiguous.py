import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rexlab.automata import (
    complement_dfa,
    determinize,
    equivalent,
    glushkov,
    minimize,
    product,
)
from rexlab.rex import (
    EMPTY,
    EPSILON,
    Alphabet,
    MarkedSymbol,
    Sym,
    Union,
    format_regex,
    mark,
    parse,
)
from rexlab.unambiguous import (
    LocalProfile,
    NotOneUnambiguousError,
    NotSoreError,
    complement_unambiguous,
    init_expr,
    intersect_sores,
    is_one_unambiguous,
    is_sore,
    last_marked,
    local_profile,
    nfirst,
    nfollow,
    prefix_to,
    profile_intersection,
    profile_to_dfa,
)

from corpus import one_unambiguous_corpus, random_plain_regex, random_sore
from oracles import nfa_slice, regex_slice, unambiguity_violation

A = Alphabet.of("a")
AB = Alphabet.of("a", "b")
ABC = Alphabet.of("a", "b", "c")


def ms(base, occ):
    return MarkedSymbol(base, occ)


class TestOneUnambiguous:
    def test_star_then_symbol_is_ambiguous(self):
        report = is_one_unambiguous(parse("a*a", A))
        assert not report.is_one_unambiguous
        u, x, y = report.witness
        assert u == ()
        assert {x, y} == {ms("a", 1), ms("a", 2)}

    def test_symbol_then_star_is_unambiguous(self):
        assert is_one_unambiguous(parse("aa*", A)).is_one_unambiguous

    def test_witness_extends_to_marked_words(self):
        report = is_one_unambiguous(parse("(a|b)*a", AB))
        assert not report.is_one_unambiguous
        u, x, y = report.witness
        m = mark(parse("(a|b)*a", AB))
        words = regex_slice(m.root, m.positions, 2 * len(m.positions) + 1)
        prefixes = {w[:i] for w in words for i in range(len(w) + 1)}
        assert u + (x,) in prefixes and u + (y,) in prefixes
        assert x != y and x.base == y.base

    @settings(max_examples=40)
    @given(st.integers(0, 100_000))
    def test_agrees_with_definition_search(self, seed):
        rng = random.Random(seed)
        r = random_plain_regex(rng, "ab", rng.randint(1, 8))
        m = mark(r)
        if len(m.positions) > 5:
            return  # marked slices over many positions get too large
        bound = min(2 * len(m.positions) + 1, 7)
        words = regex_slice(m.root, m.positions, bound)
        found = unambiguity_violation(words)
        report = is_one_unambiguous(r)
        if report.is_one_unambiguous:
            # no slice, however long, may exhibit a violation
            assert found is None
        else:
            _, x, y = report.witness
            assert x != y and x.base == y.base
            if 2 * len(m.positions) + 1 <= bound:
                # slice long enough to be conclusive: the fork must show
                assert found is not None


class TestIsSore:
    def test_examples(self):
        assert is_sore(parse("(a|b)+c", ABC))
        assert not is_sore(parse("a*(a|b)+", AB))
        assert is_sore(EPSILON)

    def test_extended_is_not(self):
        assert not is_sore(parse("a&b", AB))


class TestFirstFollowLast:
    def test_nfirst(self):
        assert nfirst(parse("aa*", AB), AB) == {"b"}
        assert nfirst(parse("(a|b)c", ABC), ABC) == {"c"}
        assert nfirst(EPSILON, A) == {"a"}

    def test_nfirst_requires_unambiguous(self):
        with pytest.raises(NotOneUnambiguousError):
            nfirst(parse("a*a", AB), AB)

    def test_nfollow(self):
        assert nfollow(parse("aa*", AB), ms("a", 2), AB) == {"b"}
        assert nfollow(parse("(a|b)c", ABC), ms("a", 1), ABC) == {"a", "b"}
        assert nfollow(parse("a", A), ms("a", 1), A) == {"a"}

    def test_nfollow_unknown_position(self):
        with pytest.raises(ValueError):
            nfollow(parse("a", A), ms("a", 7), A)

    def test_last_marked(self):
        assert last_marked(parse("aa*", A)) == {ms("a", 1), ms("a", 2)}
        assert last_marked(parse("(a|b)c", ABC)) == {ms("c", 3)}
        assert last_marked(EPSILON) == frozenset()


class TestInitExpr:
    def test_without_epsilon(self):
        got = init_expr(parse("aa*", AB), AB)
        assert format_regex(got) == "%e|b(a|b)*"

    def test_with_epsilon(self):
        got = init_expr(parse("a*", AB), AB)
        assert format_regex(got) == "b(a|b)*"

    def test_empty_nfirst_collapses(self):
        # Everything can start a word, so the bad-first piece is empty.
        assert init_expr(parse("(a|b)*", AB), AB) == EMPTY
        got = init_expr(parse("(a|b)(a|b)*", AB), AB)
        assert got == Union(EPSILON, EMPTY)


class TestPrefixTo:
    def test_first_occurrence(self):
        assert prefix_to(parse("aa*", A), ms("a", 1)) == Sym("a")

    def test_second_occurrence(self):
        # prefixes ending at the starred occurrence need at least two symbols
        got = prefix_to(parse("aa*", A), ms("a", 2))
        assert format_regex(got) == "a(a*a)"
        assert regex_slice(got, "a", 5) == {tuple("a" * k) for k in range(2, 6)}

    def test_whole_word(self):
        got = prefix_to(parse("(a|b)c", ABC), ms("c", 3))
        assert got == parse("(a|b)c", ABC)

    @settings(max_examples=40)
    @given(st.integers(0, 100_000))
    def test_marked_prefix_language(self, seed):
        # prefix_to must equal the prefixes of marked words that end at the
        # chosen occurrence, unmarked: exactly the position automaton's paths
        # into that occurrence's state.
        from rexlab.automata import Nfa
        rng = random.Random(seed)
        r = random_plain_regex(rng, "ab", rng.randint(1, 8), allow_empty=False)
        m = mark(r)
        if not m.positions:
            return
        x = rng.choice(m.positions)
        g = glushkov(r, AB)
        to_x = Nfa(g.alphabet, g.n_states, g.initial,
                   frozenset([x.occurrence]), g.transitions)
        got = regex_slice(prefix_to(r, x), "ab", 6)
        assert got == nfa_slice(to_x, 6)


class TestComplementUnambiguous:
    def test_shape_for_a_aplus(self):
        s = complement_unambiguous(parse("aa*", AB), AB)
        assert format_regex(s) == "%e|b(a|b)*|a(b(a|b)*)|a(a*a)(b(a|b)*)"
        lhs = glushkov(s, AB)
        rhs = complement_dfa(minimize(determinize(glushkov(parse("aa*", AB), AB))))
        assert equivalent(lhs, rhs)

    def test_empty_language(self):
        s = complement_unambiguous(EMPTY, AB)
        assert format_regex(s) == "%e|(a|b)(a|b)*"

    def test_rejects_ambiguous(self):
        with pytest.raises(NotOneUnambiguousError):
            complement_unambiguous(parse("a*a", AB), AB)

    def test_plain_output(self):
        from rexlab.rex import has_extended
        s = complement_unambiguous(parse("(ab)*", AB), AB)
        assert not has_extended(s)

    def test_language_is_complement(self):
        for r in one_unambiguous_corpus(4242, 60, 20, "abc"):
            s = complement_unambiguous(r, ABC)
            rhs = complement_dfa(minimize(determinize(glushkov(r, ABC))))
            assert equivalent(glushkov(s, ABC), rhs), format_regex(r)


class TestLocalProfile:
    def test_ab_star(self):
        lp = local_profile(parse("ab*", AB))
        assert lp == LocalProfile(False, frozenset("a"), frozenset("ab"),
                                  frozenset({("a", "b"), ("b", "b")}))

    def test_union_plus(self):
        lp = local_profile(parse("(a|b)+c", ABC))
        assert not lp.nullable
        assert lp.first == {"a", "b"}
        assert lp.last == {"c"}
        assert lp.follow == {("a", "a"), ("a", "b"), ("a", "c"),
                             ("b", "a"), ("b", "b"), ("b", "c")}

    def test_epsilon(self):
        lp = local_profile(EPSILON)
        assert lp == LocalProfile(True, frozenset(), frozenset(), frozenset())

    def test_rejects_non_sore(self):
        with pytest.raises(NotSoreError):
            local_profile(parse("aa", A))

    @settings(max_examples=40)
    @given(st.integers(0, 100_000))
    def test_local_language_equals_expression(self, seed):
        # For single-occurrence expressions the profile's local language is
        # exactly the expression's language.
        rng = random.Random(seed)
        r = random_sore(rng, "abc")
        lp = local_profile(r)
        words = regex_slice(r, "abc", 4)
        from oracles import words_upto
        for w in words_upto("abc", 4):
            if w:
                in_local = (w[0] in lp.first and w[-1] in lp.last
                            and all(p in lp.follow for p in zip(w, w[1:])))
            else:
                in_local = lp.nullable
            assert in_local == (w in words)


class TestIntersectSores:
    def test_pairwise_example(self):
        got = intersect_sores([parse("ab*", ABC), parse("a(b|c)*", ABC)], ABC)
        assert equivalent(glushkov(got, ABC), glushkov(parse("ab*", ABC), ABC))

    def test_singleton_identity(self):
        r = parse("(a|b)+c", ABC)
        got = intersect_sores([r], ABC)
        assert equivalent(glushkov(got, ABC), glushkov(r, ABC))

    def test_rejects_non_sore(self):
        with pytest.raises(NotSoreError) as err:
            intersect_sores([parse("aa", AB)], AB)
        assert "aa" in str(err.value)

    def test_incompatible_nullability_and_dead_first(self):
        # one requires a start with a, the other with b: only eps could
        # survive, and it does exactly when both sides allow it
        assert intersect_sores([parse("ab*", AB), parse("ba*", AB)], AB) == EMPTY
        assert intersect_sores(
            [parse("(ab*)|%e", AB), parse("(ba*)|%e", AB)], AB) == EPSILON

    def test_profile_dfa_state_count(self):
        lps = [local_profile(parse("ab*", ABC)), local_profile(parse("a(b|c)*", ABC))]
        dfa = profile_to_dfa(profile_intersection(lps), ABC)
        assert dfa.n_states == len(ABC) + 1

    @settings(max_examples=30)
    @given(st.integers(0, 100_000))
    def test_equals_iterated_product(self, seed):
        rng = random.Random(seed)
        exprs = [random_sore(rng, "abcd") for _ in range(rng.randint(1, 3))]
        sigma = Alphabet.of("a", "b", "c", "d")
        got = intersect_sores(exprs, sigma)
        acc = glushkov(exprs[0], sigma)
        for r in exprs[1:]:
            acc = product(acc, glushkov(r, sigma))
        assert equivalent(glushkov(got, sigma), acc)
