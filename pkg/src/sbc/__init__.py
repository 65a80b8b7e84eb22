"""Block maps and sliding block codes on one-sided full shift spaces.

Decide progressive / weakly progressive / regressive, verify *-commuting
with the shift, analyze local-homeomorphism status and covering degree,
minimize windows, infer rule tables from traces, and enumerate tables
under property constraints.
"""

from .core import (
    Alphabet,
    BlockMap,
    Word,
    all_words,
    apply_block_map,
    compose,
    constant_block_map,
    identity_block_map,
    parse_block_map,
    radix_index,
    reduce_to_minimal,
    serialize_block_map,
    shift_block_map,
    slide,
    slide_raw,
)
from .derive import (
    Conflict,
    SampleCorpus,
    VerificationFailure,
    corpus_from_block_map,
    derive_block_map,
    parse_samples,
    serialize_samples,
    verify_against_corpus,
)
from .errors import (
    AlphabetMismatchError,
    ContradictoryConstraintsError,
    DepthTooSmallError,
    DeriveError,
    DuplicateRuleError,
    DuplicateSampleError,
    IncompleteTableError,
    InconsistentCorpusError,
    LengthMismatchError,
    ParseError,
    PreconditionUnverifiedError,
    RuleSyntaxError,
    SearchError,
    SpaceTooLargeError,
    SymbolOutOfRangeError,
    ToolkitError,
    UnderdeterminedError,
    WindowExceededError,
    WordTooShortError,
)
from .properties import (
    BijectionCollision,
    CheckResult,
    CoveringDegree,
    InjectivityFailure,
    LocalHomeoVerdict,
    PairAutomaton,
    PropertyReport,
    WeakOrderFailure,
    analyze,
    covering_degree,
    cylinder_injectivity,
    is_progressive,
    is_regressive,
    is_weakly_progressive,
    preimage_prefixes,
    star_commute_oracle,
    star_commutes_with_shift,
    weak_progressive_order,
)
from .search import (
    SearchConstraints,
    SearchResult,
    canonical_relabeling,
    enumerate_block_maps,
    relabel_block_map,
)

__version__ = "0.1.0"
