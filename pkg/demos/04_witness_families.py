"""The witness families behind the size blow-up results, at desk scale.

Walks on a complete graph (quadratic alphabet), their four-letter block
encoding, a linear-size expression whose complement is exactly that block
language, and the intersection families of one-unambiguous and
single-occurrence expressions.
"""

from rexlab import (
    SIGMA_K,
    SIGMA_L,
    PathWord,
    accepts,
    complement_dfa,
    complement_witness,
    determinize,
    equivalent,
    glushkov,
    is_sore,
    k_dfa,
    l_dfa,
    m_member,
    m_sore_pair,
    product,
    rho_encode,
    size,
    unamb_family,
    z_dfa,
)

# Walks: edge a(i,j) goes from vertex i to vertex j.
walk = PathWord((3, 2, 1, 4, 2), 5)
print("walk 3>2>1>4>2 encodes to:", rho_encode(walk))
print("block acceptor takes it:", accepts(k_dfa(5), rho_encode(walk)))
print("walk acceptor size (n=5):", z_dfa(5).size,
      "| block acceptor size:", k_dfa(5).size)

# A linear-size expression whose complement is the block language on 2^n
# vertices: the heart of the complement blow-up.
r1 = complement_witness(1)
print("\nwitness size at n=1:", size(r1))
identity = equivalent(
    complement_dfa(determinize(glushkov(r1, SIGMA_K))), k_dfa(2))
print("complement equals the 2-vertex block language:", identity)

# 2n+1 one-unambiguous expressions intersecting to the end-marked variant.
family = unamb_family(1)
print("\nfamily sizes:", [size(e) for e in family])
acc = glushkov(family[0], SIGMA_L)
for e in family[1:]:
    acc = product(acc, glushkov(e, SIGMA_L))
print("intersection equals the end-marked language:",
      equivalent(acc, l_dfa(2)))

# Two single-occurrence expressions intersecting to the circled-walk language.
r, s = m_sore_pair(2)
print("\nsingle-occurrence pair sizes:", size(r), size(s),
      "| both single-occurrence:", is_sore(r) and is_sore(s))
print("a circled member:", " ".join(m_member(PathWord((0, 1, 0), 2))))
