"""Exact counts of de Bruijn terms by size and free-variable budget.

Everything here is arbitrary-precision integer arithmetic.  The central
family T(n, m) counts terms of size n whose free indices all fit below a
budget of m enclosing binders (openness <= m), with size charging 1 per
abstraction or application node and 0 per index:

    T(0, m) = m
    T(n+1, m) = T(n, m+1) + sum_{i=0}^{n} T(i, m) * T(n-i, m)

The same shape of recurrence counts beta-normal forms F (and the neutral
terms G threaded through them), terms with an exact number of distinct free
variables f, and the coefficient vectors that express T and F as polynomials
in m for fixed n.  Tables grow on demand and are retained for the lifetime
of the process; growth is guarded by a lock so concurrent readers see only
finished rows.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass
from math import comb


class _PlainTable:
    """Memo table for the T recurrence.

    Row n is filled left to right; computing T(n, m) needs row n-1 out to
    column m+1, so a query (n, m) triangularly extends row i to width
    m + (n - i) + 1.  Rows only ever grow, which keeps earlier results valid.
    """

    def __init__(self):
        self._rows: list[list[int]] = []
        self._lock = threading.Lock()

    def value(self, n: int, m: int) -> int:
        rows = self._rows
        if n < len(rows) and m < len(rows[n]):
            return rows[n][m]
        with self._lock:
            self._grow(n, m)
            return self._rows[n][m]

    def _grow(self, n: int, m: int) -> None:
        rows = self._rows
        for i in range(n + 1):
            width = m + (n - i) + 1
            if i == len(rows):
                rows.append([])
            row = rows[i]
            if i == 0:
                row.extend(range(len(row), width))
            else:
                prev = rows[i - 1]
                for j in range(len(row), width):
                    acc = prev[j + 1]
                    for a in range(i):
                        acc += rows[a][j] * rows[i - 1 - a][j]
                    row.append(acc)


class _NormalFormTable:
    """Joint memo table for normal forms F and neutral terms G.

    A normal form is a chain of abstractions over a neutral term; a neutral
    term is an index or a neutral term applied to a normal form:

        G(0, m) = m        G(n+1, m) = sum_{k=0}^{n} F(k, m) * G(n-k, m)
        F(0, m) = m        F(n+1, m) = F(n, m+1) + G(n+1, m)

    Same triangular growth pattern as the plain table.
    """

    def __init__(self):
        self._f: list[list[int]] = []
        self._g: list[list[int]] = []
        self._lock = threading.Lock()

    def value(self, n: int, m: int) -> tuple[int, int]:
        f, g = self._f, self._g
        if n < len(f) and m < len(f[n]):
            return f[n][m], g[n][m]
        with self._lock:
            self._grow(n, m)
            return self._f[n][m], self._g[n][m]

    # The ranking loops look counts up once per node, so give each table a
    # tuple-free single-value read.
    def nf(self, n: int, m: int) -> int:
        f = self._f
        if n < len(f) and m < len(f[n]):
            return f[n][m]
        with self._lock:
            self._grow(n, m)
            return self._f[n][m]

    def neutral(self, n: int, m: int) -> int:
        g = self._g
        if n < len(g) and m < len(g[n]):
            return g[n][m]
        with self._lock:
            self._grow(n, m)
            return self._g[n][m]

    def _grow(self, n: int, m: int) -> None:
        f, g = self._f, self._g
        for i in range(n + 1):
            width = m + (n - i) + 1
            if i == len(f):
                f.append([])
                g.append([])
            frow, grow = f[i], g[i]
            if i == 0:
                frow.extend(range(len(frow), width))
                grow.extend(range(len(grow), width))
            else:
                fprev = f[i - 1]
                for j in range(len(frow), width):
                    acc = 0
                    for k in range(i):
                        acc += f[k][j] * g[i - 1 - k][j]
                    grow.append(acc)
                    frow.append(fprev[j + 1] + acc)


class _ExactFreeTable:
    """Memo table for f(n, m), terms of size n whose free indices are
    exactly {1..m} after order-preserving renumbering.

    f(0, m) = [m == 1]; f vanishes for m > n + 1 (a term of size n has at
    most n+1 index occurrences).  The step recurrence splits on the root:
    abstraction bodies either use the new binder or not, and applications
    distribute the m variables over the two sides with c shared, k only
    on the left and m-c-k only on the right:

        f(n+1, m) = f(n, m) + f(n, m+1)
                  + sum_{p=0}^{n} sum_{c=0}^{m} sum_{k=0}^{m-c}
                        C(m, c) * C(m-c, k) * f(p, k+c) * f(n-p, m-k)
    """

    def __init__(self):
        self._rows: list[list[int]] = []
        self._lock = threading.Lock()

    def value(self, n: int, m: int) -> int:
        if m > n + 1:
            return 0
        rows = self._rows
        if n < len(rows) and m < len(rows[n]):
            return rows[n][m]
        with self._lock:
            self._grow(n, m)
            return self._rows[n][m]

    def _grow(self, n: int, m: int) -> None:
        rows = self._rows

        def f(p: int, q: int) -> int:
            return rows[p][q] if q < len(rows[p]) else 0  # q > p+1 region

        for i in range(n + 1):
            width = min(m + (n - i), i + 1) + 1
            if i == len(rows):
                rows.append([])
            row = rows[i]
            if i == 0:
                for j in range(len(row), width):
                    row.append(1 if j == 1 else 0)
                continue
            prev = rows[i - 1]
            for j in range(len(row), width):
                acc = f(i - 1, j) + (prev[j + 1] if j + 1 < len(prev) else 0)
                for p in range(i):
                    for c in range(j + 1):
                        bc = comb(j, c)
                        for k in range(j - c + 1):
                            left = f(p, k + c)
                            if left:
                                acc += (bc * comb(j - c, k) * left
                                        * f(i - 1 - p, j - k))
                row.append(acc)


class _CoefficientTable:
    """Rows of coefficient vectors expressing a count family as a polynomial
    in the free-variable budget m.

    For plain terms, row n holds c(n, 0..n+1) with T(n, m) =
    sum_i c(n, i) m^i:

        c(0, i) = [i == 1]
        c(n+1, i) = sum_{j=i}^{n+1} C(j, i) c(n, j)
                  + sum_{j=0}^{i} sum_{k=0}^{n} c(k, j) c(n-k, i-j)

    The binomial sum is the abstraction case (evaluating at m+1 re-expands
    in powers of m); the convolution is the application case.  The normal
    form analogue keeps two aligned rows d (normal forms) and g (neutral
    terms), where the abstraction step applies only to d:

        g(n+1, i) = sum_{j=0}^{i} sum_{k=0}^{n} g(k, j) d(n-k, i-j)
        d(n+1, i) = sum_{j=i}^{n+1} C(j, i) d(n, j) + g(n+1, i)
    """

    def __init__(self, with_neutral: bool):
        self._with_neutral = with_neutral
        self._main: list[list[int]] = []
        self._aux: list[list[int]] = []
        self._lock = threading.Lock()

    def row(self, n: int) -> list[int]:
        if n >= len(self._main):
            with self._lock:
                self._grow(n)
        return self._main[n]

    def aux_row(self, n: int) -> list[int]:
        if n >= len(self._aux):
            with self._lock:
                self._grow(n)
        return self._aux[n]

    def _grow(self, n: int) -> None:
        main, aux = self._main, self._aux
        if not main:
            main.append([0, 1])
            aux.append([0, 1])

        def at(rows: list[list[int]], p: int, q: int) -> int:
            return rows[p][q] if 0 <= q < len(rows[p]) else 0

        for step in range(len(main) - 1, n):
            new_main: list[int] = []
            new_aux: list[int] = []
            for i in range(step + 3):  # row step+1 has entries 0 .. step+2
                conv = 0
                for j in range(i + 1):
                    for k in range(step + 1):
                        left = at(aux if self._with_neutral else main, k, j)
                        if left:
                            conv += left * at(main, step - k, i - j)
                shift = sum(comb(j, i) * at(main, step, j)
                            for j in range(i, step + 2))
                new_main.append(shift + conv)
                new_aux.append(conv)
            main.append(new_main)
            aux.append(new_aux)


_PLAIN = _PlainTable()
_NF = _NormalFormTable()
_EXACT = _ExactFreeTable()
_PLAIN_COEFF = _CoefficientTable(with_neutral=False)
_NF_COEFF = _CoefficientTable(with_neutral=True)


def count_terms(n: int, m: int) -> int:
    """Number of terms of size n with openness at most m."""
    _check_args(n, m)
    return _PLAIN.value(n, m)


def count_nf(n: int, m: int) -> int:
    """Number of beta-normal forms of size n with openness at most m."""
    _check_args(n, m)
    return _NF.nf(n, m)


def count_neutral(n: int, m: int) -> int:
    """Number of neutral terms (normal forms not starting with an
    abstraction) of size n with openness at most m."""
    _check_args(n, m)
    return _NF.neutral(n, m)


def count_exact_free(n: int, m: int) -> int:
    """Number of terms of size n with exactly m distinct free variables,
    i.e. free-index set exactly {1..m}.

    Computed by binomial inversion of the cumulative counts:

        f(n, m) = sum_{i=0}^{m} (-1)^(m+i) C(m, i) T(n, i)

    which follows from T(n, m) = sum_i C(m, i) f(n, i): a term with budget m
    chooses which subset of the m indices actually occurs.
    """
    _check_args(n, m)
    return sum((-1) ** (m + i) * comb(m, i) * _PLAIN.value(n, i)
               for i in range(m + 1))


def count_exact_free_by_recurrence(n: int, m: int) -> int:
    """Same count as count_exact_free, from the direct recurrence.

    Slower; kept as an independently computed cross-check (validate_relations
    uses it so the inversion relation is not checked against itself).
    """
    _check_args(n, m)
    return _EXACT.value(n, m)


def surjections(i: int, m: int) -> int:
    """Number of surjections from an i-element set onto an m-element set,
    by inclusion-exclusion over missed targets."""
    if i < 0 or m < 0:
        raise ValueError(f"arguments must be nonnegative, got ({i}, {m})")
    return sum((-1) ** j * comb(m, j) * (m - j) ** i for j in range(m + 1))


@dataclass(frozen=True)
class CoeffVector:
    """Coefficients of a count family as a polynomial in the budget m.

    For size n the vector has n+2 entries, constant term first; the top
    coefficient of the plain-term polynomial is the n-th Catalan number
    (all-application terms choose a binary tree shape and each of the n+1
    leaves independently picks one of the m indices).
    """

    n: int
    coefficients: tuple[int, ...]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"size must be nonnegative, got {self.n}")
        if len(self.coefficients) != self.n + 2:
            raise ValueError(
                f"size {self.n} wants {self.n + 2} coefficients, "
                f"got {len(self.coefficients)}")

    def evaluate(self, m: int) -> int:
        """Exact polynomial evaluation at integer m (Horner)."""
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * m + c
        return acc


def term_polynomial(n: int) -> CoeffVector:
    """CoeffVector with term_polynomial(n).evaluate(m) == count_terms(n, m)."""
    if n < 0:
        raise ValueError(f"size must be nonnegative, got {n}")
    return CoeffVector(n, tuple(_PLAIN_COEFF.row(n)))


def nf_polynomial(n: int) -> CoeffVector:
    """CoeffVector matching count_nf(n, .) as a polynomial in m."""
    if n < 0:
        raise ValueError(f"size must be nonnegative, got {n}")
    return CoeffVector(n, tuple(_NF_COEFF.row(n)))


def neutral_polynomial(n: int) -> CoeffVector:
    """CoeffVector matching count_neutral(n, .) as a polynomial in m."""
    if n < 0:
        raise ValueError(f"size must be nonnegative, got {n}")
    return CoeffVector(n, tuple(_NF_COEFF.aux_row(n)))


def count_contexts(n: int, i: int) -> int:
    """Coefficient c(n, i) of m^i in the plain-term polynomial: the number
    of size-n contexts with exactly i index holes, distinguishable holes
    filled independently from the m-index pool."""
    if n < 0 or i < 0:
        raise ValueError(f"arguments must be nonnegative, got ({n}, {i})")
    row = _PLAIN_COEFF.row(n)
    return row[i] if i < len(row) else 0


def count_nf_contexts(n: int, i: int) -> int:
    """Normal-form analogue of count_contexts."""
    if n < 0 or i < 0:
        raise ValueError(f"arguments must be nonnegative, got ({n}, {i})")
    row = _NF_COEFF.row(n)
    return row[i] if i < len(row) else 0


def count_neutral_contexts(n: int, i: int) -> int:
    """Neutral-term analogue of count_contexts."""
    if n < 0 or i < 0:
        raise ValueError(f"arguments must be nonnegative, got ({n}, {i})")
    row = _NF_COEFF.aux_row(n)
    return row[i] if i < len(row) else 0


_FAMILY_COUNTS = {
    "terms": count_terms,
    "nf": count_nf,
    "neutral": count_neutral,
    "exact-free": count_exact_free,
    "contexts": count_contexts,
    "nf-contexts": count_nf_contexts,
    "neutral-contexts": count_neutral_contexts,
}


def count_family(family: str, n: int, m: int) -> int:
    """Dispatch on a family name; see _FAMILY_COUNTS for the vocabulary.
    For the context families the second argument is the hole count."""
    try:
        fn = _FAMILY_COUNTS[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}, expected one of "
                         f"{sorted(_FAMILY_COUNTS)}") from None
    return fn(n, m)


FAMILIES = tuple(sorted(_FAMILY_COUNTS))


@dataclass(frozen=True)
class RelationViolation:
    relation: str
    n: int
    m: int
    lhs: int
    rhs: int


@dataclass(frozen=True)
class RelationReport:
    checked: int
    violations: tuple[RelationViolation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_relations(n_max: int, m_max: int) -> RelationReport:
    """Cross-check the four identities tying the count families together,
    for all 0 <= n <= n_max, 0 <= m <= m_max:

      cumulative-from-exact   T(n,m) = sum_i C(m,i) f(n,i)
      polynomial              T(n,m) = sum_i c(n,i) m^i
      exact-from-cumulative   f(n,m) = sum_i (-1)^(m+i) C(m,i) T(n,i)
      exact-from-contexts     f(n,m) = sum_i c(n,i) S(i,m)

    with S(i,m) the surjection numbers and i running to n+1 in the
    coefficient sums.  Each side is computed from its own recurrence (the f
    side from the direct recurrence, not the inversion formula), so a bug in
    any one family breaks at least one relation.
    """
    if n_max < 0 or m_max < 0:
        raise ValueError("bounds must be nonnegative")
    violations: list[RelationViolation] = []
    checked = 0

    def check(relation: str, n: int, m: int, lhs: int, rhs: int) -> None:
        nonlocal checked
        checked += 1
        if lhs != rhs:
            violations.append(RelationViolation(relation, n, m, lhs, rhs))

    for n, m in itertools.product(range(n_max + 1), range(m_max + 1)):
        t_nm = count_terms(n, m)
        f_nm = count_exact_free_by_recurrence(n, m)
        coeffs = term_polynomial(n).coefficients
        check("cumulative-from-exact", n, m, t_nm,
              sum(comb(m, i) * count_exact_free_by_recurrence(n, i)
                  for i in range(m + 1)))
        check("polynomial", n, m, t_nm, term_polynomial(n).evaluate(m))
        check("exact-from-cumulative", n, m, f_nm,
              sum((-1) ** (m + i) * comb(m, i) * count_terms(n, i)
                  for i in range(m + 1)))
        check("exact-from-contexts", n, m, f_nm,
              sum(coeffs[i] * surjections(i, m) for i in range(n + 2)))
    return RelationReport(checked=checked, violations=tuple(violations))


def _check_args(n: int, m: int) -> None:
    if n < 0 or m < 0:
        raise ValueError(f"size and budget must be nonnegative, got ({n}, {m})")
