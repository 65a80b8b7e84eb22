"""Exception types shared across the toolkit."""


class ToolkitError(Exception):
    """Base class for every error raised by this package."""


class AlphabetMismatchError(ToolkitError):
    """Two values built over different alphabets were combined."""


class LengthMismatchError(ToolkitError):
    """A word had the wrong length for a single rule lookup."""


class WordTooShortError(ToolkitError):
    """A word was shorter than the window it must carry."""


class DepthTooSmallError(ToolkitError):
    """The finite check depth was smaller than the rule window."""


class PreconditionUnverifiedError(ToolkitError):
    """A computation requiring a verified witness was called without one."""


class ParseError(ToolkitError):
    """Malformed rule-table or samples text.  `line` is 1-based when known."""

    def __init__(self, message, line=None):
        super().__init__(message)
        self.line = line


class RuleSyntaxError(ParseError):
    pass


class IncompleteTableError(ParseError):
    pass


class DuplicateRuleError(ParseError):
    pass


class SymbolOutOfRangeError(ParseError):
    pass


class DuplicateSampleError(ParseError):
    pass


class DeriveError(ToolkitError):
    """Base class for rule-inference failures."""


class InconsistentCorpusError(DeriveError):
    """One pair of samples forces conflicting outputs at every tried window.

    `conflicts` holds one conflict record per window 1..max_window;
    `pair` is the (first, second) sample index pair that persists.
    """

    def __init__(self, message, conflicts, pair):
        super().__init__(message)
        self.conflicts = tuple(conflicts)
        self.pair = pair


class UnderdeterminedError(DeriveError):
    """The corpus fixed no output for some domain words at the best window.

    `window` is the smallest conflict-free window, `missing` the
    unconstrained domain words (raw symbol tuples).
    """

    def __init__(self, message, window, missing):
        super().__init__(message)
        self.window = window
        self.missing = tuple(missing)


class WindowExceededError(DeriveError):
    """Every window up to the bound had a conflict, but no single sample
    pair persists through all of them; a larger window might still fit."""

    def __init__(self, message, max_window, conflicts):
        super().__init__(message)
        self.max_window = max_window
        self.conflicts = tuple(conflicts)


class SearchError(ToolkitError):
    """Base class for enumeration failures."""


class SpaceTooLargeError(SearchError):
    """The unpruned table space exceeds the safety guard."""


class ContradictoryConstraintsError(SearchError):
    """The requested property combination is unsatisfiable by definition."""
