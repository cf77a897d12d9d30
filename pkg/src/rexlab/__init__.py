"""Regular-expression algebra with automata conversions, one-unambiguous
complements, single-occurrence intersection, succinctness witness families,
and brute-force verification oracles."""

from .rex import (
    Alphabet,
    MarkedSymbol,
    MarkedRegex,
    PositionSets,
    Regex,
    Empty,
    Epsilon,
    Sym,
    Concat,
    Union,
    Star,
    Plus,
    Intersect,
    Negate,
    EMPTY,
    EPSILON,
    RexlabError,
    RegexSyntaxError,
    UnknownSymbolError,
    ExtendedOperatorError,
    parse,
    format_regex,
    size,
    mark,
    unmark,
    glushkov_sets,
    repeat_upto,
)
from .automata import (
    Nfa,
    Dfa,
    glushkov,
    extended_to_nfa,
    determinize,
    complement_dfa,
    product,
    minimize,
    equivalent,
    eliminate_states,
    accepts,
    serialize,
    parse_automaton,
)
from .budget import BudgetExceededError, CancelToken
from .unambiguous import (
    UnambiguityReport,
    LocalProfile,
    NotOneUnambiguousError,
    NotSoreError,
    is_one_unambiguous,
    is_sore,
    nfirst,
    nfollow,
    last_marked,
    init_expr,
    prefix_to,
    complement_unambiguous,
    local_profile,
    intersect_sores,
)
from .witnesses import (
    PathWord,
    WitnessBundle,
    SIGMA_K,
    SIGMA_L,
    END_MARKER,
    z_dfa,
    encode_int,
    rho_encode,
    k_dfa,
    complement_witness,
    l_member,
    l_dfa,
    unamb_family,
    m_alphabet,
    rho_hat_encode,
    m_member,
    m_sore_pair,
    build_bundle,
)
from .analysis import (
    LanguageOracle,
    IndexResult,
    RegexSearch,
    BlowupReport,
    enumerate_language,
    equal_upto,
    covers,
    word_index,
    sidekicks,
    starred_subexpressions,
    minimal_regex_size,
    blowup_report,
)

__version__ = "0.1.0"
