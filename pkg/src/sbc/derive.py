"""Rule inference from input/output traces of an unknown shift-commuting map.

A sample (x, y) asserts that the unknown map sends every sequence starting
with x to one starting with y.  At a candidate window n this pins the table
entry for each window of x that fits inside it; scanning windows upward and
solving the resulting constraints either recovers the least-window table or
produces finite evidence that no sliding code fits the corpus.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Alphabet, BlockMap, Word, all_words, slide_raw, reduce_to_minimal
from .errors import (
    AlphabetMismatchError,
    DuplicateSampleError,
    InconsistentCorpusError,
    RuleSyntaxError,
    UnderdeterminedError,
    WindowExceededError,
)
from .properties import CheckResult

__all__ = [
    "SampleCorpus",
    "Conflict",
    "ClaimViolation",
    "VerificationFailure",
    "corpus_from_block_map",
    "derive_block_map",
    "verify_against_corpus",
    "parse_samples",
    "serialize_samples",
]


@dataclass(frozen=True)
class SampleCorpus:
    """Pairs (x, y) claiming y is the output prefix forced by input prefix x."""

    alphabet: Alphabet
    samples: tuple[tuple[Word, Word], ...]

    def __post_init__(self):
        object.__setattr__(self, "samples", tuple(self.samples))
        seen = set()
        for x, y in self.samples:
            if x.alphabet != self.alphabet or y.alphabet != self.alphabet:
                raise AlphabetMismatchError(
                    "sample words must share the corpus alphabet"
                )
            if len(y) < 1:
                raise ValueError("sample outputs must be non-empty")
            if len(x) < len(y):
                raise ValueError(
                    "sample input must be at least as long as its output"
                )
            key = (x.symbols, y.symbols)
            if key in seen:
                raise ValueError(f"duplicate sample {x} -> {y}")
            seen.add(key)


@dataclass(frozen=True)
class Conflict:
    """Two sample positions forcing different outputs for one domain word.
    The two samples may coincide when a single trace contradicts itself."""

    window: int
    domain: tuple[int, ...]
    first_sample: int
    first_output: int
    second_sample: int
    second_output: int

    def describe(self, alphabet: Alphabet) -> str:
        dom = alphabet.format_word(self.domain)
        return (
            f"window {self.window}: samples {self.first_sample + 1} and "
            f"{self.second_sample + 1} force d({dom})="
            f"{alphabet.name(self.first_output)} and d({dom})="
            f"{alphabet.name(self.second_output)}"
        )


@dataclass(frozen=True)
class ClaimViolation:
    """A window whose fitted table was rejected because a sample shorter
    than the window claimed an output the table cannot honor."""

    window: int
    failure: "VerificationFailure"

    def describe(self, alphabet: Alphabet) -> str:
        return f"window {self.window}: {self.failure.describe(alphabet)}"


@dataclass(frozen=True)
class VerificationFailure:
    """First place a corpus claim disagrees with a table's slide output."""

    sample: int
    kind: str  # "mismatch" or "window_exceeds_input"
    position: int | None = None
    expected: int | None = None
    actual: int | None = None

    def describe(self, alphabet: Alphabet) -> str:
        if self.kind == "window_exceeds_input":
            return f"sample {self.sample + 1}: input shorter than the window"
        return (
            f"sample {self.sample + 1}: output position {self.position} "
            f"claims {alphabet.name(self.expected)} but sliding gives "
            f"{alphabet.name(self.actual)}"
        )


def corpus_from_block_map(d: BlockMap, input_length: int) -> SampleCorpus:
    """The complete corpus of all inputs of `input_length` with their exact
    slide outputs; handy for round trips and for seeding consistency tests."""
    if input_length < d.window:
        raise ValueError("input_length must be at least the window")
    k = d.alphabet.size
    samples = []
    for x in all_words(k, input_length):
        y = slide_raw(d.table, k, d.window, x)
        samples.append((Word(d.alphabet, x), Word(d.alphabet, y)))
    return SampleCorpus(d.alphabet, tuple(samples))


def _fit_window(samples, n):
    """Fill a partial table at window n from all in-range constraints.
    Returns (assignments, None) or (None, Conflict)."""
    assignments: dict[tuple[int, ...], tuple[int, int]] = {}
    for s_idx, (x, y) in enumerate(samples):
        xs, ys = x.symbols, y.symbols
        for i in range(len(ys)):
            if i + n > len(xs):
                break
            domain = xs[i : i + n]
            output = ys[i]
            prev = assignments.get(domain)
            if prev is None:
                assignments[domain] = (output, s_idx)
            elif prev[0] != output:
                return None, Conflict(n, domain, prev[1], prev[0], s_idx, output)
    return assignments, None


def _pair_conflicts_everywhere(corpus, i, j, max_window):
    pair = [corpus.samples[i]]
    if j != i:
        pair.append(corpus.samples[j])
    for n in range(1, max_window + 1):
        _, conflict = _fit_window(pair, n)
        if conflict is None:
            return False
    return True


def derive_block_map(
    corpus: SampleCorpus, max_window: int = 8
) -> tuple[BlockMap, int]:
    """Infer the least-window table consistent with every sample.

    Windows are tried from 1 to max_window.  The first conflict-free window
    must fix every table entry (holes raise UnderdeterminedError rather
    than being guessed) and the reduced table must verify against the whole
    corpus, which rules out silently dropping claims made by samples
    shorter than the window.  When every window conflicts, a sample pair
    conflicting at all of them is reported as inconsistency evidence;
    otherwise the window bound is reported as exceeded.  Failure at the
    bound is not proof that no sliding code exists.
    """
    if max_window < 1:
        raise ValueError("max_window must be at least 1")
    k = corpus.alphabet.size
    conflicts = []
    for n in range(1, max_window + 1):
        assignments, conflict = _fit_window(corpus.samples, n)
        if conflict is not None:
            conflicts.append(conflict)
            continue
        missing = [w for w in all_words(k, n) if w not in assignments]
        if missing:
            raise UnderdeterminedError(
                f"no output fixed for {len(missing)} domain words at window {n}",
                window=n,
                missing=missing,
            )
        table = tuple(assignments[w][0] for w in all_words(k, n))
        candidate = BlockMap(corpus.alphabet, n, table)
        reduced, n_min = reduce_to_minimal(candidate)
        gate = verify_against_corpus(reduced, corpus)
        if not gate.holds:
            # A sample shorter than the window made a claim the fitted
            # table cannot honor; keep scanning larger windows.
            conflicts.append(ClaimViolation(n, gate.witness))
            continue
        return reduced, n_min
    pairs = []
    for conflict in conflicts:
        if not isinstance(conflict, Conflict):
            continue
        pair = (conflict.first_sample, conflict.second_sample)
        if pair not in pairs:
            pairs.append(pair)
    for i, j in pairs:
        if _pair_conflicts_everywhere(corpus, i, j, max_window):
            raise InconsistentCorpusError(
                f"samples {i + 1} and {j + 1} force conflicting outputs at "
                f"every window up to {max_window}; no sliding code fits",
                conflicts=conflicts,
                pair=(i, j),
            )
    raise WindowExceededError(
        f"every window up to {max_window} has a conflict",
        max_window=max_window,
        conflicts=conflicts,
    )


def verify_against_corpus(d: BlockMap, corpus: SampleCorpus) -> CheckResult:
    """Check every sample against the table's slide output.

    A sample is satisfied when the checkable prefix of its claim (the first
    min(|y|, |x|-n+1) positions) matches; a sample whose input is shorter
    than the window claims something no window-n code can certify, so it
    fails outright.
    """
    if corpus.alphabet != d.alphabet:
        raise AlphabetMismatchError("corpus and map are over different alphabets")
    k, n = d.alphabet.size, d.window
    for idx, (x, y) in enumerate(corpus.samples):
        if len(x) < n:
            return CheckResult(
                False, VerificationFailure(idx, "window_exceeds_input")
            )
        out = slide_raw(d.table, k, n, x.symbols)
        checkable = min(len(y), len(x) - n + 1)
        for pos in range(checkable):
            if out[pos] != y.symbols[pos]:
                return CheckResult(
                    False,
                    VerificationFailure(
                        idx,
                        "mismatch",
                        position=pos + 1,
                        expected=y.symbols[pos],
                        actual=out[pos],
                    ),
                )
    return CheckResult(True)


def parse_samples(text: str, alphabet: Alphabet | None = None) -> SampleCorpus:
    """Parse a samples file: one `INPUT -> OUTPUT` pair per line, words in
    the usual format, '#' comment lines and blanks ignored.  Without an
    explicit alphabet, its size is inferred as one past the largest symbol
    mentioned (a file convention; pass the alphabet when symbols may be
    missing from the corpus)."""
    rows = []
    for line_no, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("->")
        if len(parts) != 2:
            raise RuleSyntaxError("expected 'INPUT -> OUTPUT'", line=line_no)
        rows.append((parts[0].strip(), parts[1].strip(), line_no))
    if alphabet is None:
        largest = 0
        for left, right, line_no in rows:
            for token in (left, right):
                try:
                    if "," in token:
                        values = [int(p) for p in token.split(",")]
                    else:
                        values = [int(c) for c in token]
                except ValueError:
                    raise RuleSyntaxError(
                        f"cannot read word {token!r}", line=line_no
                    ) from None
                largest = max(largest, *values) if values else largest
        alphabet = Alphabet(largest + 1)
    samples = []
    seen = set()
    for left, right, line_no in rows:
        try:
            x = alphabet.word(left)
            y = alphabet.word(right)
        except ValueError as exc:
            raise RuleSyntaxError(str(exc), line=line_no) from None
        if len(y) < 1 or len(x) < len(y):
            raise RuleSyntaxError(
                "output must be non-empty and no longer than the input",
                line=line_no,
            )
        key = (x.symbols, y.symbols)
        if key in seen:
            raise DuplicateSampleError(
                f"duplicate sample {left} -> {right}", line=line_no
            )
        seen.add(key)
        samples.append((x, y))
    return SampleCorpus(alphabet, tuple(samples))


def serialize_samples(corpus: SampleCorpus) -> str:
    lines = [f"{x} -> {y}" for x, y in corpus.samples]
    return "\n".join(lines) + "\n"
