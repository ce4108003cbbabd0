"""Uniform random generation of terms via the ranking bijection.

Sampling a term is sampling an integer: draw a rank uniformly from
[1 .. count] and unrank it.  Ranks are drawn by rejection from fixed-width
bit blocks, so uniformity is exact, not approximate, for counts of any
size.  Typable terms are obtained by sieving: draw, test, repeat; the
sieve reports how many draws it needed, which is itself a useful
observable (the attempt counts of a uniform sieve are geometric).

Determinism
-----------
All entry points take an explicit ``random.Random``.  ``make_rng`` derives
one from a seed and a stream number by hashing, so distinct streams of the
same seed are independent for practical purposes and a (seed, stream) pair
names the same draw sequence on every platform.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass

from .counting import count_nf, count_terms
from .ranking import unrank_nf, unrank_term
from .terms import Abs, LamenumError, Term, openness_of
from .typecheck import is_typable


class EmptyDomainError(LamenumError):
    """No terms exist at the requested size and budget."""


class SieveExhaustedError(LamenumError):
    """The typability sieve gave up.  ``attempts`` carries the number of
    draws made before giving up."""

    def __init__(self, attempts: int):
        super().__init__(f"no typable term found in {attempts} attempts")
        self.attempts = attempts


@dataclass(frozen=True)
class SamplerConfig:
    """What to sample and how hard to try.

    size and budget select the census family cell; family is "terms" or
    "nf"; seed and stream name the random sequence when no generator is
    passed explicitly; max_attempts bounds the typability sieve.
    """

    size: int
    budget: int = 0
    family: str = "terms"
    seed: int = 0
    stream: int = 0
    max_attempts: int = 1_000_000

    def __post_init__(self):
        if self.size < 0 or self.budget < 0:
            raise ValueError("size and budget must be nonnegative")
        if self.family not in ("terms", "nf"):
            raise ValueError(f"unknown family {self.family!r}, "
                             f"expected 'terms' or 'nf'")
        if self.max_attempts < 1:
            raise ValueError("max_attempts must be positive")

    def rng(self) -> random.Random:
        return make_rng(self.seed, self.stream)


def make_rng(seed: int, stream: int = 0) -> random.Random:
    """Deterministic generator for (seed, stream), independent across
    streams.  Hashing decorrelates nearby seeds and makes the derivation
    platform-independent."""
    digest = hashlib.sha256(f"lamenum:{seed}:{stream}".encode()).digest()
    return random.Random(int.from_bytes(digest, "big"))


def random_rank(total: int, rng: random.Random) -> int:
    """Uniform integer in [1 .. total].

    Draws bit blocks as wide as total and rejects overshoots, so every
    rank has probability exactly 1/total; expected draws are below 2.
    """
    if total < 1:
        raise EmptyDomainError("family is empty, no rank to draw")
    bits = total.bit_length()
    while True:
        value = rng.getrandbits(bits)
        if value < total:
            return value + 1


def random_term(cfg: SamplerConfig, rng: random.Random | None = None) -> Term:
    """Uniform term of cfg.size with openness at most cfg.budget."""
    if rng is None:
        rng = cfg.rng()
    total = count_terms(cfg.size, cfg.budget)
    return unrank_term(cfg.size, cfg.budget, random_rank(total, rng))


def random_nf(cfg: SamplerConfig, rng: random.Random | None = None) -> Term:
    """Uniform beta-normal form of cfg.size with openness at most
    cfg.budget."""
    if rng is None:
        rng = cfg.rng()
    total = count_nf(cfg.size, cfg.budget)
    return unrank_nf(cfg.size, cfg.budget, random_rank(total, rng))


def random_typable(cfg: SamplerConfig,
                   rng: random.Random | None = None) -> tuple[Term, int]:
    """Uniform simply-typable term from cfg's family, with the number of
    draws the sieve needed.

    Rejection preserves uniformity on the typable subset.  Terms with free
    variables are tested through their closure (a term is typable in some
    context iff wrapping its openness in abstractions gives a typable
    closed term).  Raises SieveExhaustedError after cfg.max_attempts draws.
    """
    if rng is None:
        rng = cfg.rng()
    draw = random_nf if cfg.family == "nf" else random_term
    for attempt in range(1, cfg.max_attempts + 1):
        t = draw(cfg, rng)
        if is_typable(_closure(t)):
            return t, attempt
    raise SieveExhaustedError(cfg.max_attempts)


def _closure(t: Term) -> Term:
    for _ in range(openness_of(t)):
        t = Abs(t)
    return t
