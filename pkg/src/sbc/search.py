"""Constraint-guided enumeration of rule tables over small alphabets.

Requiring the column maps (regressive) or row maps (progressive) to be
permutations turns enumeration into Latin-square-style backtracking over
table cells, which shrinks the branch space from k**(k**n) to at most
(k!)**(k**(n-1)) per side.  Properties without a known propagation (weak
order, covering degree, canonical form under relabeling) are filtered on
completed tables.  Emission is in lexicographic table order and fully
deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import Alphabet, BlockMap, all_words, radix_index
from .errors import ContradictoryConstraintsError, SpaceTooLargeError
from .properties import _bijection_collision, _weak_order_violation

__all__ = [
    "SearchConstraints",
    "SearchResult",
    "relabel_block_map",
    "canonical_relabeling",
    "enumerate_block_maps",
]

# Unpruned runs walk all k**(k**n) tables; refuse beyond this domain size
# unless the caller insists.
_GUARD_DOMAIN = 16


@dataclass(frozen=True)
class SearchConstraints:
    """What to enumerate.  None means "any" for the tri-state fields.

    weak_order restricts the least weak-progressiveness order: exactly the
    given value, or at most the given value when weak_order_is_bound is
    set.  covering requires the covering degree to exist and equal the
    given value (its witness search uses weak_order_search_bound).
    modulo_relabeling emits only tables that are lexicographically least
    within their orbit under simultaneous symbol relabeling.
    """

    alphabet_size: int
    window: int
    progressive: bool | None = None
    regressive: bool | None = None
    weak_order: int | None = None
    weak_order_is_bound: bool = False
    covering: int | None = None
    limit: int | None = None
    count_only: bool = False
    modulo_relabeling: bool = False
    force: bool = False
    weak_order_search_bound: int = 6

    def __post_init__(self):
        if self.alphabet_size < 1:
            raise ValueError("alphabet_size must be at least 1")
        if self.window < 1:
            raise ValueError("window must be at least 1")
        if self.limit is not None and self.limit < 0:
            raise ValueError("limit must be non-negative")
        if self.weak_order is not None and self.weak_order < 1:
            raise ValueError("weak_order must be at least 1")
        if self.covering is not None and self.covering < 1:
            raise ValueError("covering must be at least 1")
        if self.weak_order_search_bound < 1:
            raise ValueError("weak_order_search_bound must be at least 1")


@dataclass(frozen=True)
class SearchResult:
    """Matching tables (truncated to the limit) and the exact total count."""

    tables: tuple[BlockMap, ...]
    count: int


def _relabel_raw(table, k, n, perm):
    out = [0] * len(table)
    for idx, w in enumerate(all_words(k, n)):
        out[radix_index([perm[s] for s in w], k)] = perm[table[idx]]
    return tuple(out)


def _canonical_raw(table, k, n):
    best = tuple(table)
    for perm in itertools.permutations(range(k)):
        image = _relabel_raw(table, k, n, perm)
        if image < best:
            best = image
    return best


def relabel_block_map(d: BlockMap, perm) -> BlockMap:
    """Apply one symbol permutation simultaneously to domain and outputs."""
    perm = tuple(perm)
    if sorted(perm) != list(range(d.alphabet.size)):
        raise ValueError("perm must be a permutation of the alphabet")
    k, n = d.alphabet.size, d.window
    return BlockMap(d.alphabet, n, _relabel_raw(d.table, k, n, perm))


def canonical_relabeling(d: BlockMap) -> BlockMap:
    """Lexicographically least table in the relabeling orbit of d."""
    k, n = d.alphabet.size, d.window
    return BlockMap(d.alphabet, n, _canonical_raw(d.table, k, n))


def _least_weak_order(table, k, n, bound):
    for m in range(1, bound + 1):
        if _weak_order_violation(table, k, n, m) is None:
            return m
    return None


def _validate(c: SearchConstraints):
    if c.weak_order is not None and not c.weak_order_is_bound:
        # least order 1 and progressive coincide
        if c.progressive is True and c.weak_order >= 2:
            raise ContradictoryConstraintsError(
                "progressive tables have least weak order 1"
            )
        if c.progressive is False and c.weak_order == 1:
            raise ContradictoryConstraintsError(
                "least weak order 1 means progressive"
            )
    pruned = c.progressive is True or c.regressive is True
    if (
        c.alphabet_size ** c.window > _GUARD_DOMAIN
        and not pruned
        and not c.count_only
        and not c.force
    ):
        raise SpaceTooLargeError(
            f"domain size {c.alphabet_size ** c.window} exceeds the unpruned "
            f"guard of {_GUARD_DOMAIN}; constrain the search or pass force"
        )


def enumerate_block_maps(c: SearchConstraints) -> SearchResult:
    """All tables satisfying the constraints, in lexicographic table order.

    The count is exact even when the limit truncates emission or when
    count_only suppresses it entirely.
    """
    _validate(c)
    k, n = c.alphabet_size, c.window
    size = k ** n
    kn1 = k ** (n - 1)
    need_row = c.progressive is True
    need_col = c.regressive is True
    row_of = [i // k for i in range(size)]
    col_of = [i % kn1 for i in range(size)]
    row_used = [0] * kn1
    col_used = [0] * kn1
    table = [0] * size
    alphabet = Alphabet(k)
    found: list[BlockMap] = []
    count = 0

    weak_bound = c.weak_order_search_bound
    if c.weak_order is not None:
        weak_bound = max(weak_bound, c.weak_order)

    def accept(t):
        if c.progressive is False and _bijection_collision(t, k, n, False) is None:
            return False
        if c.regressive is False and _bijection_collision(t, k, n, True) is None:
            return False
        if c.weak_order is not None:
            if c.weak_order_is_bound:
                if _least_weak_order(t, k, n, c.weak_order) is None:
                    return False
            else:
                for m in range(1, c.weak_order):
                    if _weak_order_violation(t, k, n, m) is None:
                        return False
                if _weak_order_violation(t, k, n, c.weak_order) is not None:
                    return False
        if c.covering is not None:
            if _least_weak_order(t, k, n, weak_bound) is None:
                return False
            per = [0] * k
            for p_idx in range(kn1):
                for s in set(t[p_idx * k : (p_idx + 1) * k]):
                    per[s] += 1
            if len(set(per)) != 1 or per[0] != c.covering:
                return False
        if c.modulo_relabeling and t != _canonical_raw(t, k, n):
            return False
        return True

    def walk(i):
        nonlocal count
        if i == size:
            t = tuple(table)
            if accept(t):
                count += 1
                if not c.count_only and (
                    c.limit is None or len(found) < c.limit
                ):
                    found.append(BlockMap(alphabet, n, t))
            return
        row = row_of[i]
        col = col_of[i]
        for v in range(k):
            bit = 1 << v
            if need_row and row_used[row] & bit:
                continue
            if need_col and col_used[col] & bit:
                continue
            table[i] = v
            if need_row:
                row_used[row] |= bit
            if need_col:
                col_used[col] |= bit
            walk(i + 1)
            if need_row:
                row_used[row] ^= bit
            if need_col:
                col_used[col] ^= bit

    walk(0)
    return SearchResult(tuple(found), count)
