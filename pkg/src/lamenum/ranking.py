"""Bijections between terms and their 1-based ranks.

For each (size, budget) pair the census orders terms canonically:

  * ranks 1..m at size 0 are the indices 1..m;
  * at size n+1, the first T(n, m+1) ranks are abstractions, ordered by the
    rank of the body at budget m+1;
  * the remaining ranks are applications, grouped by increasing size of the
    left operand, row-major within a group (left rank varies slowest).

Normal forms get the same treatment over their own grammar: a normal form
is a chain of abstractions over a neutral term, applications pair a neutral
left operand with a normal-form right operand, so the application groups
pair G-counts with F-counts.

Ranks are plain Python integers (arbitrary precision), always in
[1 .. count].  unrank and rank are mutually inverse; enumerate_family
yields terms in exactly rank order without materializing the whole family.
"""

from __future__ import annotations

from typing import Iterator

from .counting import _NF, _PLAIN, count_neutral, count_nf, count_terms
from .terms import (Abs, App, Index, LamenumError, Term, is_normal_form,
                    openness_of)

# The recursions below sit in tight loops; read the memo tables directly
# once the public entry point has validated its arguments.
_plain = _PLAIN.value
_nf = _NF.nf
_neutral = _NF.neutral


class RankRangeError(LamenumError):
    """Rank outside [1 .. count], including empty families like (0, 0)."""


class OpennessError(LamenumError):
    """Term has more free variables than the budget it was ranked under."""


class NotNormalFormError(LamenumError):
    """A normal-form rank was requested for a term containing a redex."""


def unrank_term(n: int, m: int, k: int) -> Term:
    """The k-th term of size n under free-variable budget m, 1-based."""
    total = count_terms(n, m)
    if not 1 <= k <= total:
        raise RankRangeError(
            f"rank {k} outside [1..{total}] for size {n}, budget {m}")
    return _unrank(n, m, k)


def _unrank(n: int, m: int, k: int) -> Term:
    if n == 0:
        return Index(k)
    below = _plain(n - 1, m + 1)
    if k <= below:
        return Abs(_unrank(n - 1, m + 1, k))
    h = k - below
    rest = n - 1
    for j in range(rest + 1):
        right_total = _plain(rest - j, m)
        block = _plain(j, m) * right_total
        if h <= block:
            left_rank, right_rank = divmod(h - 1, right_total)
            return App(_unrank(j, m, left_rank + 1),
                       _unrank(rest - j, m, right_rank + 1))
        h -= block
    raise AssertionError("rank exhausted the application groups")


def rank_term(t: Term, m: int) -> int:
    """Position of ``t`` in the size-of-t, budget-m ordering.  Inverse of
    unrank_term at that size."""
    spill = openness_of(t) - m
    if spill > 0:
        raise OpennessError(
            f"term needs {spill} more free variables than budget {m}")
    rank, _ = _rank(t, m)
    return rank


def _rank(t: Term, m: int) -> tuple[int, int]:
    """Rank and size in one pass, so application offsets know their
    operand sizes without extra traversals."""
    if isinstance(t, Index):
        return t.i, 0
    if isinstance(t, Abs):
        body_rank, body_size = _rank(t.body, m + 1)
        return body_rank, body_size + 1
    left_rank, left_size = _rank(t.left, m)
    right_rank, right_size = _rank(t.right, m)
    n = left_size + right_size + 1
    offset = _plain(n - 1, m + 1)
    for j in range(left_size):
        offset += _plain(j, m) * _plain(n - 1 - j, m)
    rank = offset + (left_rank - 1) * _plain(right_size, m) + right_rank
    return rank, n


def unrank_nf(n: int, m: int, k: int) -> Term:
    """The k-th beta-normal form of size n under budget m, 1-based."""
    total = count_nf(n, m)
    if not 1 <= k <= total:
        raise RankRangeError(
            f"rank {k} outside [1..{total}] for size {n}, budget {m}")
    return _unrank_nf(n, m, k)


def _unrank_nf(n: int, m: int, k: int) -> Term:
    if n == 0:
        return Index(k)
    below = _nf(n - 1, m + 1)
    if k <= below:
        return Abs(_unrank_nf(n - 1, m + 1, k))
    return _unrank_neutral(n, m, k - below)


def _unrank_neutral(n: int, m: int, k: int) -> Term:
    if n == 0:
        return Index(k)
    h = k
    rest = n - 1
    for j in range(rest + 1):
        right_total = _nf(rest - j, m)
        block = _neutral(j, m) * right_total
        if h <= block:
            left_rank, right_rank = divmod(h - 1, right_total)
            return App(_unrank_neutral(j, m, left_rank + 1),
                       _unrank_nf(rest - j, m, right_rank + 1))
        h -= block
    raise AssertionError("rank exhausted the neutral groups")


def rank_nf(t: Term, m: int) -> int:
    """Position of normal form ``t`` in the normal-form ordering at its
    size under budget m."""
    if not is_normal_form(t):
        raise NotNormalFormError("term contains a beta redex")
    spill = openness_of(t) - m
    if spill > 0:
        raise OpennessError(
            f"term needs {spill} more free variables than budget {m}")
    rank, _ = _rank_nf(t, m)
    return rank


def _rank_nf(t: Term, m: int) -> tuple[int, int]:
    if isinstance(t, Index):
        return t.i, 0
    if isinstance(t, Abs):
        body_rank, body_size = _rank_nf(t.body, m + 1)
        return body_rank, body_size + 1
    rank, n = _rank_neutral(t, m)
    return _nf(n - 1, m + 1) + rank, n


def _rank_neutral(t: Term, m: int) -> tuple[int, int]:
    if isinstance(t, Index):
        return t.i, 0
    left_rank, left_size = _rank_neutral(t.left, m)
    right_rank, right_size = _rank_nf(t.right, m)
    n = left_size + right_size + 1
    offset = 0
    for j in range(left_size):
        offset += _neutral(j, m) * _nf(n - 1 - j, m)
    rank = offset + (left_rank - 1) * _nf(right_size, m) + right_rank
    return rank, n


def enumerate_terms(n: int, m: int) -> Iterator[Term]:
    """All terms of size n, budget m, lazily, in rank order.

    Application groups materialize their operand lists (operands share
    structure across the emitted terms), so memory grows with the largest
    operand family, not with the output.
    """
    if n == 0:
        for i in range(1, m + 1):
            yield Index(i)
        return
    for body in enumerate_terms(n - 1, m + 1):
        yield Abs(body)
    rest = n - 1
    for j in range(rest + 1):
        if count_terms(j, m) == 0 or count_terms(rest - j, m) == 0:
            continue
        lefts = list(enumerate_terms(j, m))
        rights = list(enumerate_terms(rest - j, m))
        for left in lefts:
            for right in rights:
                yield App(left, right)


def enumerate_nf(n: int, m: int) -> Iterator[Term]:
    """All beta-normal forms of size n, budget m, lazily, in rank order."""
    if n == 0:
        for i in range(1, m + 1):
            yield Index(i)
        return
    for body in enumerate_nf(n - 1, m + 1):
        yield Abs(body)
    yield from _enumerate_neutral(n, m)


def _enumerate_neutral(n: int, m: int) -> Iterator[Term]:
    if n == 0:
        for i in range(1, m + 1):
            yield Index(i)
        return
    rest = n - 1
    for j in range(rest + 1):
        if count_neutral(j, m) == 0 or count_nf(rest - j, m) == 0:
            continue
        lefts = list(_enumerate_neutral(j, m))
        rights = list(enumerate_nf(rest - j, m))
        for left in lefts:
            for right in rights:
                yield App(left, right)


_ENUMERATORS = {"terms": enumerate_terms, "nf": enumerate_nf,
                "neutral": _enumerate_neutral}


def enumerate_family(family: str, n: int, m: int) -> Iterator[Term]:
    """enumerate_terms / enumerate_nf / neutral enumeration by name."""
    try:
        gen = _ENUMERATORS[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}, expected one of "
                         f"{sorted(_ENUMERATORS)}") from None
    return gen(n, m)
