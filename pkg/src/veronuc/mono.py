"""Exponent tuples, base-p digits and multinomial coefficients.

Exponent tuples are plain ``tuple[int, ...]`` of length ``m + 1``.  The
set of tuples of length ``m + 1`` summing to ``t`` is listed in descending
lexicographic order, so ``(t, 0, ..., 0)`` has index 0; every coordinate
vector elsewhere in the package uses this order.
"""

from __future__ import annotations

import enum
import math
from functools import lru_cache
from typing import Sequence

from .errors import IndexOutOfRange

ExponentTuple = tuple[int, ...]


def _count(parts: int, total: int) -> int:
    """Number of ``parts``-tuples of nonnegative integers summing to ``total``."""
    if parts == 0:
        return 1 if total == 0 else 0
    return math.comb(total + parts - 1, parts - 1)


def enumerate_exponents(m: int, t: int) -> list[ExponentTuple]:
    """All ``(e_0, ..., e_m)`` with sum ``t``, descending lexicographic."""
    if m < 0 or t < 0:
        raise ValueError(f"m and t must be nonnegative, got m={m}, t={t}")
    return list(_exponents(m, t))


@lru_cache(maxsize=256)
def _exponents(m: int, t: int) -> tuple[ExponentTuple, ...]:
    if m == 0:
        return ((t,),)
    out = []
    for head in range(t, -1, -1):
        for tail in _exponents(m - 1, t - head):
            out.append((head,) + tail)
    return tuple(out)


def rank(e: Sequence[int]) -> int:
    """Position of ``e`` in :func:`enumerate_exponents` order."""
    e = tuple(e)
    if any(x < 0 for x in e) or not e:
        raise IndexOutOfRange(f"{e} is not an exponent tuple")
    remaining = sum(e)
    parts = len(e)
    idx = 0
    for x in e[:-1]:
        parts -= 1
        # tuples with a larger entry at this position come first
        for bigger in range(x + 1, remaining + 1):
            idx += _count(parts, remaining - bigger)
        remaining -= x
    return idx


def unrank(m: int, t: int, index: int) -> ExponentTuple:
    """Inverse of :func:`rank` on ``E^t_m``."""
    total = _count(m + 1, t)
    if not 0 <= index < total:
        raise IndexOutOfRange(f"index {index} outside [0, {total}) for m={m}, t={t}")
    out = []
    remaining = t
    for pos in range(m):
        parts = m - pos
        for x in range(remaining, -1, -1):
            block = _count(parts, remaining - x)
            if index < block:
                out.append(x)
                remaining -= x
                break
            index -= block
    out.append(remaining)
    return tuple(out)


def base_p_digits(n: int, p: int) -> list[int]:
    """Base-``p`` digits of ``n``, least significant first; ``[]`` for 0."""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if p < 2:
        raise ValueError(f"base must be at least 2, got {p}")
    digits = []
    while n:
        n, d = divmod(n, p)
        digits.append(d)
    return digits


def multinomial_exact(t: int, e: Sequence[int]) -> int:
    """``t! / (e_0! ... e_m!)`` as an exact integer, 0 when ``sum(e) != t``.

    Built as a product of binomials ``C(e_0 + ... + e_i, e_i)``.  This is the
    reference value for :func:`multinomial_mod_p`, which must stay
    independent of it.
    """
    if any(x < 0 for x in e) or sum(e) != t:
        return 0
    result = 1
    running = 0
    for x in e:
        running += x
        result *= math.comb(running, x)
    return result


@lru_cache(maxsize=64)
def _factorials_mod(p: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    fact = [1] * p
    for i in range(1, p):
        fact[i] = fact[i - 1] * i % p
    inv_fact = tuple(pow(f, p - 2, p) for f in fact)
    return tuple(fact), inv_fact


def multinomial_mod_p(t: int, e: Sequence[int], p: int) -> int:
    """Residue of the multinomial coefficient modulo ``p`` via Lucas.

    The coefficient is congruent to the product over digit positions of the
    digit multinomials ``t_l! / (e_{0,l}! ... e_{m,l}!)``.  A position whose
    digit sum exceeds ``t_l`` contributes 0.
    """
    if any(x < 0 for x in e) or sum(e) != t:
        return 0
    fact, inv_fact = _factorials_mod(p)
    t_digits = base_p_digits(t, p)
    e_digits = [base_p_digits(x, p) for x in e]
    result = 1
    for lam, tl in enumerate(t_digits):
        column = [d[lam] if lam < len(d) else 0 for d in e_digits]
        if sum(column) != tl:
            return 0
        term = fact[tl]
        for d in column:
            term = term * inv_fact[d] % p
        result = result * term % p
    return result


def carry_free(t: int, e: Sequence[int], p: int) -> bool:
    """True iff adding the ``e_i`` in base ``p`` produces no carries to ``t``."""
    t_digits = base_p_digits(t, p)
    e_digits = [base_p_digits(x, p) for x in e]
    width = max([len(t_digits)] + [len(d) for d in e_digits])
    for lam in range(width):
        tl = t_digits[lam] if lam < len(t_digits) else 0
        if sum(d[lam] for d in e_digits if lam < len(d)) != tl:
            return False
    return True


def count_nonvanishing(m: int, t: int, p: int) -> int:
    """Number of ``e`` in ``E^t_m`` whose multinomial is nonzero mod ``p``."""
    result = 1
    for tl in base_p_digits(t, p):
        result *= math.comb(m + tl, tl)
    return result


def nucleus_dim_formula(m: int, t: int, p: int) -> int:
    """Projective dimension of the nucleus; -1 means empty."""
    return math.comb(m + t, t) - count_nonvanishing(m, t, p) - 1


def span_of_powers_dim(m: int, t: int, p: int) -> int:
    """Dimension of the span of all t-th powers, valid when ``#F >= t``."""
    return count_nonvanishing(m, t, p)


class EmptyCase(str, enum.Enum):
    TRIVIAL_PARAMS = "TrivialParams"
    SMALL_T = "SmallT"
    CURVE_SPECIAL = "CurveSpecial"
    NON_EMPTY = "NonEmpty"

    def __str__(self) -> str:
        return self.value


def classify_empty(m: int, t: int, p: int) -> EmptyCase:
    """Which of the four empty-nucleus cases ``(m, t, p)`` falls into."""
    if m <= 0 or t <= 1:
        return EmptyCase.TRIVIAL_PARAMS
    if t < p:
        return EmptyCase.SMALL_T
    if m == 1:
        digits = base_p_digits(t, p)
        if all(d == p - 1 for d in digits[:-1]):
            return EmptyCase.CURVE_SPECIAL
    return EmptyCase.NON_EMPTY
