"""Independent reference implementations.

These deliberately re-derive results through different algorithms than the
package (exhaustive search instead of greedy decomposition, plain list
recursion instead of cached streams) so that agreement is evidence, not
tautology.
"""

import math
from fractions import Fraction
from functools import lru_cache

from schreier import Ordinal, classify, fund_seq


# -- membership by exhaustive decomposition -------------------------------

@lru_cache(maxsize=None)
def member_oracle(xi: Ordinal, fs: tuple) -> bool:
    """Hierarchy membership trying every consecutive-block decomposition,
    not just the greedy one."""
    if not fs:
        return True
    kind, pred = classify(xi)
    if kind == "zero":
        return len(fs) == 1
    if kind == "successor":
        return _some_split(pred, fs, fs[0])
    return any(member_oracle(fund_seq(xi, n), fs)
               for n in range(1, fs[0] + 1))


@lru_cache(maxsize=None)
def _some_split(zeta: Ordinal, fs: tuple, budget: int) -> bool:
    if not fs:
        return True
    if budget == 0:
        return False
    return any(
        member_oracle(zeta, fs[:cut]) and _some_split(zeta, fs[cut:], budget - 1)
        for cut in range(1, len(fs) + 1)
    )


# -- repeated averages by plain list recursion ----------------------------

def _first_vector(xi: Ordinal, elems: tuple):
    """(vector dict, elements consumed) of the first level-xi vector on
    the listed base elements."""
    kind, pred = classify(xi)
    if kind == "zero":
        return {elems[0]: Fraction(1)}, 1
    if kind == "successor":
        first, used = _first_vector(pred, elems)
        s = min(first)
        vectors, total = [first], used
        for _ in range(s - 1):
            w, u = _first_vector(pred, elems[total:])
            vectors.append(w)
            total += u
        merged = {}
        for w in vectors:
            for n, x in w.items():
                merged[n] = merged.get(n, Fraction(0)) + x / s
        return merged, total
    return _first_vector(fund_seq(xi, elems[0]), elems)


def ra_oracle(xi: Ordinal, elems, n: int) -> dict:
    """The n-th level-xi vector on the listed base elements."""
    elems = tuple(elems)
    total = 0
    for _ in range(n):
        vector, used = _first_vector(xi, elems[total:])
        total += used
    return vector


# -- counting -------------------------------------------------------------

def count_depth_one(window: int) -> int:
    """#{F nonempty inside [1..window] with #F <= min F}, plus the empty
    set, by direct summation."""
    total = 1
    for m in range(1, window + 1):
        for extra in range(0, min(m - 1, window - m) + 1):
            total += math.comb(window - m, extra)
    return total
