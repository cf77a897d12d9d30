"""Automata: position construction, subsets, complement, product,
minimisation, and elimination back to an expression."""

from rexlab import (
    Alphabet,
    accepts,
    complement_dfa,
    determinize,
    eliminate_states,
    equivalent,
    extended_to_nfa,
    format_regex,
    glushkov,
    minimize,
    parse,
    serialize,
)

sigma = Alphabet.of("a", "b")

# The position automaton has one state per symbol occurrence plus a start.
g = glushkov(parse("(a|b)*abb", sigma), sigma)
print(f"position automaton: {g.n_states} states, {len(g.transitions)} transitions")
print(serialize(g))

d = determinize(g)
m = minimize(d)
print(f"subsets: {d.n_states} states; minimal: {m.n_states} states")

# Complement flips acceptance after totalising.
c = complement_dfa(m)
print("abb accepted:", accepts(m, "abb"), "| by complement:", accepts(c, "abb"))

# Product intersects languages; extended expressions compile directly.
even = extended_to_nfa(parse("(aa)*", Alphabet.of("a")))
runs = extended_to_nfa(parse("a*&(aa)*", Alphabet.of("a")))
print("intersection via operator == via product:",
      equivalent(runs, even))

# State elimination returns a plain expression for any automaton.
back = eliminate_states(m)
print("eliminated:", format_regex(back))
print("round trip equivalent:", equivalent(glushkov(back, sigma), m))
