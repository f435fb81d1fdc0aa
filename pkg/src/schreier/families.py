"""The generalized Schreier hierarchy and its family algebra.

F_0 is the empty set plus all singletons.  F_{z+1} collects admissible
unions  F = F_1 u ... u F_n  of blocks F_i in F_z with n <= F_1 < ... < F_n,
and for a limit ordinal xi membership reads: some n <= min F has
F in F_{xi<n>} under the fixed fundamental-sequence assignment.

Finite sets are plain sorted tuples of naturals >= 1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import CapExceeded, ValidationError
from .lazysets import LazySet
from .ordinals import (ONE, ZERO, Ordinal, add, classify, fund_seq, is_limit,
                       mul_nat, omega_pow)

DEFAULT_WINDOW_CAP = 16


def finset(iterable) -> tuple:
    fs = tuple(iterable)
    if any(a >= b for a, b in zip(fs, fs[1:])) or (fs and fs[0] < 1):
        raise ValueError(f"not a strictly increasing set of naturals: {fs}")
    return fs


def _subsets_of_window(window: int):
    universe = range(1, window + 1)
    for size in range(window + 1):
        yield from itertools.combinations(universe, size)


# -- membership ----------------------------------------------------------

def _greedy_blocks(zeta: Ordinal, fs: tuple, pred):
    """Split fs into the fewest F_zeta blocks (greedy longest prefix).

    Heredity makes the admissible prefix lengths an initial segment and
    the greedy split optimal.  Returns None when some element cannot even
    start a block (empty blocks are useless).
    """
    blocks = []
    rest = fs
    while rest:
        j = 1
        while j < len(rest) and pred(zeta, rest[: j + 1]):
            j += 1
        if not pred(zeta, rest[:1]):
            return None
        blocks.append(rest[:j])
        rest = rest[j:]
    return blocks


@lru_cache(maxsize=None)
def member(xi: Ordinal, fs: tuple) -> bool:
    """Exact membership F in F_xi."""
    if not fs:
        return True
    kind, pred = classify(xi)
    if kind == "zero":
        return len(fs) == 1
    if xi == ONE:
        # closed form; the generic path would litter the cache with one
        # entry per slice of every candidate set
        return len(fs) <= fs[0]
    if kind == "successor":
        blocks = _greedy_blocks(pred, fs, member)
        return blocks is not None and len(blocks) <= fs[0]
    return any(member(fund_seq(xi, n), fs) for n in range(1, fs[0] + 1))


@lru_cache(maxsize=None)
def can_extend_k(xi: Ordinal, fs: tuple, k: int) -> bool:
    """True iff F u B is in F_xi for arbitrarily large k-element B.

    For spreading hereditary families this predicate is exactly
    membership in the k-th strong derivative (one free extension per
    derivative step; spreading collapses the nested quantifiers).
    Decided structurally: at a successor level the greedy last block
    absorbs part of B and the rest forms fresh blocks; at a limit level
    some admissible rung must do it.
    """
    if k == 0:
        return member(xi, fs)
    if not fs:
        # a lone far-out block: singletons only at level 0, anything above
        return xi >= ONE or k <= 1
    kind, pred = classify(xi)
    if kind == "zero":
        return False
    if kind == "successor":
        blocks = _greedy_blocks(pred, fs, member)
        if blocks is None:
            return False
        j, m = len(blocks), fs[0]
        for absorbed in range(k + 1):
            if not can_extend_k(pred, blocks[-1], absorbed):
                continue
            rest = k - absorbed
            if rest == 0:
                if j <= m:
                    return True
            else:
                fresh = 1 if can_extend_k(pred, (), rest) else rest
                if j + fresh <= m:
                    return True
        return False
    return any(can_extend_k(fund_seq(xi, n), fs, k)
               for n in range(1, fs[0] + 1))


def can_extend(xi: Ordinal, fs: tuple) -> bool:
    """True iff F u {n} is in F_xi for arbitrarily large n."""
    return can_extend_k(xi, fs, 1)


@lru_cache(maxsize=None)
def strong_rank(xi: Ordinal, fs: tuple) -> Ordinal:
    """The stage of the strong derivative chain of F_xi at which F drops
    out, as an ordinal: F survives stage alpha iff alpha <= rank(F).

    For finite k this agrees with can_extend_k (property-tested); the
    empty set gets w^xi, the index of the whole family.  At a successor
    level the greedy decomposition leaves min F - #blocks spare block
    slots, each worth a full lower-level chain, plus whatever the last
    block can still absorb.
    """
    if not fs:
        return omega_pow(xi)
    if not member(xi, fs):
        raise ValueError(f"{fs} is not in F_{xi}")
    kind, pred = classify(xi)
    if kind == "zero":
        return ZERO
    if kind == "successor":
        blocks = _greedy_blocks(pred, fs, member)
        spare = fs[0] - len(blocks)
        return add(mul_nat(omega_pow(pred), spare), strong_rank(pred, blocks[-1]))
    return max(strong_rank(fund_seq(xi, n), fs)
               for n in range(1, fs[0] + 1) if member(fund_seq(xi, n), fs))


def is_maximal(xi: Ordinal, fs: tuple) -> bool:
    if not member(xi, fs):
        raise ValueError(f"{fs} is not in F_{xi}")
    return not can_extend(xi, fs)


# -- f-variants ----------------------------------------------------------

@dataclass(frozen=True)
class FVariant:
    """Membership in the hierarchy built over the base F^f_1 with
    #F <= f(min F), for a strictly increasing f."""

    f: callable

    def member(self, xi: Ordinal, fs: tuple) -> bool:
        if not fs:
            return True
        kind, pred = classify(xi)
        if kind == "zero":
            return len(fs) == 1
        if xi == ONE:
            return len(fs) <= self.f(fs[0])
        if kind == "successor":
            blocks = _greedy_blocks(pred, fs, self.member)
            return blocks is not None and len(blocks) <= fs[0]
        return any(self.member(fund_seq(xi, n), fs) for n in range(1, fs[0] + 1))


# -- windows -------------------------------------------------------------

@dataclass(frozen=True)
class FamilyWindow:
    window: int
    members: frozenset
    tag: str = ""
    hereditary_checked: bool = False
    spreading_checked: bool = False

    def __contains__(self, fs) -> bool:
        return tuple(fs) in self.members

    def __len__(self) -> int:
        return len(self.members)

    def verify_hereditary(self) -> "FamilyWindow":
        for fs in self.members:
            for i in range(len(fs)):
                if fs[:i] + fs[i + 1:] not in self.members:
                    raise ValidationError(f"heredity fails at {fs} drop {fs[i]}")
        return FamilyWindow(self.window, self.members, self.tag, True,
                            self.spreading_checked)

    def verify_spreading(self) -> "FamilyWindow":
        for fs in self.members:
            for spread in _spreads_within(fs, self.window):
                if spread not in self.members:
                    raise ValidationError(f"spreading fails: {fs} -> {spread}")
        return FamilyWindow(self.window, self.members, self.tag,
                            self.hereditary_checked, True)

    def to_lines(self):
        yield f"#window={self.window} #tag={self.tag}"
        for fs in sorted(self.members, key=lambda s: (len(s), s)):
            yield "[" + ",".join(map(str, fs)) + "]"

    @staticmethod
    def from_lines(lines) -> "FamilyWindow":
        it = iter(lines)
        header = next(it).strip()
        fields = dict(part.split("=", 1) for part in header.lstrip("#").split(" #"))
        members = set()
        for line in it:
            line = line.strip()
            if not line:
                continue
            body = line.strip("[]")
            members.add(finset(int(x) for x in body.split(",")) if body else ())
        return FamilyWindow(int(fields["window"]), frozenset(members),
                            fields.get("tag", ""))


def _spreads_within(fs: tuple, window: int):
    """All G with g_i >= f_i inside [1..window], same size."""
    if not fs:
        return
    choices = [range(v, window + 1) for v in fs]
    for cand in itertools.product(*choices):
        if all(a < b for a, b in zip(cand, cand[1:])) and cand != fs:
            yield cand


def _grow_members(window: int, pred):
    """All members within [1..window] of a hereditary family given by pred,
    found by extending members one larger element at a time."""
    members = {()}
    frontier = [()]
    while frontier:
        fs = frontier.pop()
        lo = fs[-1] + 1 if fs else 1
        for n in range(lo, window + 1):
            ext = fs + (n,)
            if ext not in members and pred(ext):
                members.add(ext)
                frontier.append(ext)
    return frozenset(members)


def enumerate_window(xi: Ordinal, window: int,
                     cap: int = DEFAULT_WINDOW_CAP) -> FamilyWindow:
    """Materialize F_xi intersected with the powerset of [1..window]."""
    if window > cap:
        raise CapExceeded(f"window {window} exceeds enumeration cap {cap}")
    members = _grow_members(window, lambda fs: member(xi, fs))
    fam = FamilyWindow(window, members, tag=f"F_{xi} window")
    return fam.verify_hereditary()


# -- transforms ----------------------------------------------------------

def restrict(fam: FamilyWindow, lazy: LazySet) -> FamilyWindow:
    keep = frozenset(
        fs for fs in fam.members if all(lazy.contains(v) for v in fs)
    )
    return FamilyWindow(fam.window, keep, tag=f"{fam.tag}[{lazy.describe()}]")


def image_family(xi: Ordinal, m: LazySet, window: int,
                 cap: int = DEFAULT_WINDOW_CAP) -> FamilyWindow:
    """F^M_xi within [1..window]: images (m_i)_{i in F} of index sets
    F in F_xi."""
    if window > cap:
        raise CapExceeded(f"window {window} exceeds enumeration cap {cap}")

    def pred(g):
        try:
            idx = finset(m.index_of(v) for v in g)
        except ValueError:
            return False
        return member(xi, idx)

    members = _grow_members(window, pred)
    return FamilyWindow(window, members, tag=f"F^M_{xi} window")


def f_variant_window(fv: FVariant, xi: Ordinal, window: int,
                     cap: int = DEFAULT_WINDOW_CAP) -> FamilyWindow:
    if window > cap:
        raise CapExceeded(f"window {window} exceeds enumeration cap {cap}")
    members = _grow_members(window, lambda fs: fv.member(xi, fs))
    return FamilyWindow(window, members, tag=f"F^f_{xi} window")


# -- pairing and norms ---------------------------------------------------

def pairing(vector, fs) -> Fraction:
    """<A, F> = sum of A's entries over F.  `vector` is a mapping or an
    object with .entries."""
    entries = vector.entries if hasattr(vector, "entries") else vector
    getter = dict(entries)
    return sum((getter.get(n, Fraction(0)) for n in fs), Fraction(0))


def admissible_subsets(xi: Ordinal, support: tuple):
    """All F in F_xi with F a subset of the given support."""
    found = [()]
    frontier = [()]
    while frontier:
        fs = frontier.pop()
        start = support.index(fs[-1]) + 1 if fs else 0
        for v in support[start:]:
            ext = fs + (v,)
            if member(xi, ext):
                found.append(ext)
                frontier.append(ext)
    return found


def _norm_f1(values: dict) -> Fraction:
    """sup over F in F_1 of the captured mass, exactly: pick min F = m and
    then the m-1 largest coordinates above m.  Scaled to integers over a
    common denominator and swept right to left with incremental top-k
    prefix sums, so large supports stay cheap."""
    import bisect
    import math

    items = sorted(values.items())
    denom = math.lcm(*(v.denominator for v in values.values()))
    scaled = [(m, int(v * denom)) for m, v in items]
    neg = []        # negated tail values, ascending (= tail descending)
    prefix = [0]    # prefix[k] = sum of the k largest tail values
    best = 0
    for m, v in reversed(scaled):
        k = min(m - 1, len(neg))
        best = max(best, v + prefix[k])
        bisect.insort(neg, -v)
        prefix = [0]
        for x in neg:
            prefix.append(prefix[-1] - x)
    return Fraction(best, denom)


def schreier_norm(xi: Ordinal, vector, cap: int = DEFAULT_WINDOW_CAP) -> Fraction:
    """Exact Schreier-space norm sup { sum_{n in F} |a_n| : F in F_xi }."""
    entries = vector.entries if hasattr(vector, "entries") else vector
    values = {n: abs(Fraction(v)) for n, v in dict(entries).items() if v}
    if not values:
        return Fraction(0)
    if xi == ONE:
        return _norm_f1(values)
    support = tuple(sorted(values))
    if len(support) > cap:
        raise CapExceeded(
            f"support size {len(support)} exceeds norm cap {cap}", ordinal=xi
        )
    return max(
        sum((values[n] for n in fs), Fraction(0))
        for fs in admissible_subsets(xi, support)
    )
