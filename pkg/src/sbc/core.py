"""Alphabets, finite words, and block-map rule tables with sliding evaluation.

A block map with window n sends each length-n word over a finite alphabet to
a single output symbol.  Sliding it along a longer word applies the rule to
every length-n window, so a word of length L maps to one of length L-n+1.
Tables are stored flat, indexed by the radix-k encoding of the domain word
with the first symbol most significant; lexicographic domain order therefore
matches table order.

All values here are immutable after construction and safe to share between
threads.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .errors import (
    AlphabetMismatchError,
    DuplicateRuleError,
    IncompleteTableError,
    LengthMismatchError,
    RuleSyntaxError,
    SymbolOutOfRangeError,
    WordTooShortError,
)

__all__ = [
    "Alphabet",
    "Word",
    "BlockMap",
    "all_words",
    "radix_index",
    "slide_raw",
    "apply_block_map",
    "slide",
    "shift_block_map",
    "identity_block_map",
    "constant_block_map",
    "compose",
    "reduce_to_minimal",
    "parse_block_map",
    "serialize_block_map",
]


@lru_cache(maxsize=None)
def all_words(k: int, length: int) -> tuple[tuple[int, ...], ...]:
    """All raw words of `length` over symbols 0..k-1, in lexicographic order."""
    return tuple(itertools.product(range(k), repeat=length))


def radix_index(symbols, k: int) -> int:
    """Radix-k encoding of a raw word, first symbol most significant."""
    idx = 0
    for s in symbols:
        idx = idx * k + s
    return idx


def slide_raw(table, k: int, n: int, symbols) -> tuple[int, ...]:
    """Slide a flat rule table along a raw symbol sequence; no validation."""
    kn1 = k ** (n - 1)
    idx = radix_index(symbols[: n - 1], k)
    out = []
    for s in symbols[n - 1 :]:
        idx = (idx % kn1) * k + s
        out.append(table[idx])
    return tuple(out)


@lru_cache(maxsize=None)
def window_indices(k: int, n: int, length: int) -> tuple[tuple[int, ...], ...]:
    """Table indices of every n-window, for each word of `length` over k
    symbols, aligned with the all_words(k, length) enumeration."""
    kn1 = k ** (n - 1)
    rows = []
    for w in all_words(k, length):
        idx = radix_index(w[: n - 1], k)
        wins = []
        for s in w[n - 1 :]:
            idx = (idx % kn1) * k + s
            wins.append(idx)
        rows.append(tuple(wins))
    return tuple(rows)


@dataclass(frozen=True)
class Alphabet:
    """A finite symbol set 0..size-1 with optional display names."""

    size: int
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("alphabet size must be at least 1")
        if self.names is not None:
            names = tuple(self.names)
            object.__setattr__(self, "names", names)
            if len(names) != self.size:
                raise ValueError(
                    f"expected {self.size} names, got {len(names)}"
                )
            if len(set(names)) != len(names):
                raise ValueError("alphabet names must be pairwise distinct")

    def name(self, symbol: int) -> str:
        if self.names is not None:
            return self.names[symbol]
        return str(symbol)

    def format_word(self, symbols) -> str:
        """Render raw symbols: contiguous when every name is one character
        and the alphabet is decimal-sized, comma-separated otherwise."""
        parts = [self.name(s) for s in symbols]
        if self.size <= 10 and all(len(p) == 1 for p in parts):
            return "".join(parts)
        return ",".join(parts)

    def word(self, text: str) -> "Word":
        """Parse a word: contiguous digits when size <= 10, else
        comma-separated decimal symbols.  Empty text is the empty word."""
        text = text.strip()
        if not text:
            return Word(self, ())
        if self.size <= 10 and "," not in text:
            if not text.isdigit():
                raise ValueError(f"expected a digit string, got {text!r}")
            syms = tuple(int(c) for c in text)
        else:
            try:
                syms = tuple(int(p.strip()) for p in text.split(","))
            except ValueError:
                raise ValueError(
                    f"expected comma-separated symbols, got {text!r}"
                ) from None
        return Word(self, syms)


@dataclass(frozen=True)
class Word:
    """A finite word over an alphabet; doubles as the defining prefix of
    the cylinder of all infinite sequences starting with it."""

    alphabet: Alphabet
    symbols: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(self.symbols))
        k = self.alphabet.size
        for s in self.symbols:
            if not 0 <= s < k:
                raise ValueError(f"symbol {s} outside alphabet of size {k}")

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word(self.alphabet, self.symbols[item])
        return self.symbols[item]

    def __str__(self):
        return self.alphabet.format_word(self.symbols)


@dataclass(frozen=True)
class BlockMap:
    """A total rule table from length-`window` words to single symbols."""

    alphabet: Alphabet
    window: int
    table: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(self.table))
        if self.window < 1:
            raise ValueError("window must be at least 1")
        k = self.alphabet.size
        expected = k ** self.window
        if len(self.table) != expected:
            raise ValueError(
                f"table must have {expected} entries, got {len(self.table)}"
            )
        for v in self.table:
            if not 0 <= v < k:
                raise ValueError(f"output {v} outside alphabet of size {k}")

    def domain_words(self) -> tuple[tuple[int, ...], ...]:
        return all_words(self.alphabet.size, self.window)

    def rule(self, symbols) -> int:
        """Output for a raw length-`window` symbol sequence; unchecked."""
        return self.table[radix_index(symbols, self.alphabet.size)]


def _require_word(d: BlockMap, w: Word):
    if w.alphabet != d.alphabet:
        raise AlphabetMismatchError(
            "word and block map are over different alphabets"
        )


def apply_block_map(d: BlockMap, w: Word) -> int:
    """Look up the output symbol for a word of exactly the window length."""
    _require_word(d, w)
    if len(w) != d.window:
        raise LengthMismatchError(
            f"expected a word of length {d.window}, got {len(w)}"
        )
    return d.table[radix_index(w.symbols, d.alphabet.size)]


def slide(d: BlockMap, w: Word) -> Word:
    """Apply the rule to every window of w; output has length |w|-n+1."""
    _require_word(d, w)
    if len(w) < d.window:
        raise WordTooShortError(
            f"word of length {len(w)} is shorter than window {d.window}"
        )
    return Word(d.alphabet, slide_raw(d.table, d.alphabet.size, d.window, w.symbols))


def shift_block_map(alphabet: Alphabet) -> BlockMap:
    """The window-2 map returning its second symbol; sliding it drops the
    first symbol of a word."""
    k = alphabet.size
    return BlockMap(alphabet, 2, tuple(i % k for i in range(k * k)))


def identity_block_map(alphabet: Alphabet) -> BlockMap:
    """The window-1 map fixing every symbol."""
    return BlockMap(alphabet, 1, tuple(range(alphabet.size)))


def constant_block_map(alphabet: Alphabet, symbol: int, window: int = 1) -> BlockMap:
    """The map sending every length-`window` word to `symbol`."""
    if not 0 <= symbol < alphabet.size:
        raise ValueError(f"symbol {symbol} outside alphabet")
    return BlockMap(alphabet, window, (symbol,) * alphabet.size ** window)


def compose(outer: BlockMap, inner: BlockMap) -> BlockMap:
    """The rule table of `outer after inner`, with window n1+n2-1.

    Sliding the result equals sliding inner first and outer second.
    """
    if outer.alphabet != inner.alphabet:
        raise AlphabetMismatchError("composed maps must share an alphabet")
    k = outer.alphabet.size
    n = inner.window + outer.window - 1
    table = []
    for w in all_words(k, n):
        mid = slide_raw(inner.table, k, inner.window, w)
        table.append(outer.table[radix_index(mid, k)])
    return BlockMap(outer.alphabet, n, tuple(table))


def reduce_to_minimal(d: BlockMap) -> tuple[BlockMap, int]:
    """The unique smallest-window map inducing the same sliding code.

    The output of a reducible table depends only on a leading segment of
    its domain word, so minimization is a projection test on leading
    coordinates.  Trailing coordinates are never dropped: that would shift
    the output alignment and change the induced code.
    """
    k, n = d.alphabet.size, d.window
    table = d.table
    for n_min in range(1, n + 1):
        width = k ** (n - n_min)
        blocks = range(k ** n_min)
        if all(
            len(set(table[b * width : (b + 1) * width])) == 1 for b in blocks
        ):
            reduced = tuple(table[b * width] for b in blocks)
            return BlockMap(d.alphabet, n_min, reduced), n_min
    raise AssertionError("unreachable: window n always projects to itself")


def serialize_block_map(d: BlockMap) -> str:
    """Canonical text form: header lines, then one rule per line in
    lexicographic domain order."""
    k, n = d.alphabet.size, d.window
    lines = [f"alphabet {k}", f"window {n}"]
    for i, w in enumerate(all_words(k, n)):
        if k <= 10:
            dom = "".join(str(s) for s in w)
        else:
            dom = " ".join(str(s) for s in w)
        lines.append(f"{dom} {d.table[i]}")
    return "\n".join(lines) + "\n"


def _parse_header(tokens, keyword, line_no):
    if len(tokens) != 2 or tokens[0] != keyword or not tokens[1].isdigit():
        raise RuleSyntaxError(f"expected '{keyword} <count>'", line=line_no)
    value = int(tokens[1])
    if value < 1:
        raise RuleSyntaxError(f"{keyword} must be at least 1", line=line_no)
    return value


def _parse_symbol(token, k, line_no):
    try:
        value = int(token)
    except ValueError:
        raise RuleSyntaxError(f"not a symbol: {token!r}", line=line_no) from None
    if not 0 <= value < k:
        raise SymbolOutOfRangeError(
            f"symbol {value} outside alphabet of size {k}", line=line_no
        )
    return value


def parse_block_map(text: str) -> BlockMap:
    """Parse the rule-table format.

    Layout: '#' comment lines and blank lines are ignored; the first
    significant line is `alphabet K`, the second `window N`; then exactly
    K**N rule lines follow, each N whitespace-separated domain symbols and
    one output symbol.  When K <= 10 the domain may instead be one
    contiguous digit string of length N.  Rule order is irrelevant;
    duplicate domains are rejected.
    """
    k = None
    n = None
    seen: dict[tuple[int, ...], int] = {}
    for line_no, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if k is None:
            k = _parse_header(tokens, "alphabet", line_no)
            continue
        if n is None:
            n = _parse_header(tokens, "window", line_no)
            continue
        if len(tokens) == n + 1:
            domain = tuple(_parse_symbol(t, k, line_no) for t in tokens[:n])
        elif len(tokens) == 2 and k <= 10 and len(tokens[0]) == n:
            domain = tuple(_parse_symbol(c, k, line_no) for c in tokens[0])
        else:
            raise RuleSyntaxError(
                f"expected {n} domain symbols and one output", line=line_no
            )
        output = _parse_symbol(tokens[-1], k, line_no)
        if domain in seen:
            raise DuplicateRuleError(
                f"duplicate rule for domain {''.join(map(str, domain))}",
                line=line_no,
            )
        seen[domain] = output
    if k is None or n is None:
        raise RuleSyntaxError("missing 'alphabet' or 'window' header")
    missing = [w for w in all_words(k, n) if w not in seen]
    if missing:
        shown = ", ".join("".join(map(str, w)) for w in missing[:4])
        more = "" if len(missing) <= 4 else f" and {len(missing) - 4} more"
        raise IncompleteTableError(
            f"table is missing {len(missing)} domain words: {shown}{more}"
        )
    alphabet = Alphabet(k)
    table = tuple(seen[w] for w in all_words(k, n))
    return BlockMap(alphabet, n, table)
