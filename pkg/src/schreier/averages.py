"""The repeated-averages hierarchy of summability methods.

Level 0 on M = (m_n) is the unit-vector sequence e_{m_n}.  At a successor
level each vector averages s consecutive lower-level vectors, where s is
the least support element of the first one.  At a limit level the n-th
vector is the first vector of the rung selected by min of the not yet
consumed part of M.  Supports grow Ackermann-fast, so every operation
takes a hard support cap and fails loudly when it is hit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from threading import RLock

from .errors import CapExceeded
from .families import is_maximal, member, pairing
from .lazysets import NATURALS, LazySet
from .ordinals import Ordinal, classify, fund_seq, is_limit

DEFAULT_SUPPORT_CAP = 10 ** 5


class RaVector:
    """Finite-support nonnegative rational vector with total mass 1."""

    __slots__ = ("_values",)

    def __init__(self, values):
        vals = {int(n): Fraction(v) for n, v in dict(values).items() if v}
        if any(v < 0 for v in vals.values()) or any(n < 1 for n in vals):
            raise ValueError("entries must be positive rationals at naturals")
        if sum(vals.values()) != 1:
            raise ValueError("entries must sum to 1")
        self._values = vals

    @property
    def entries(self):
        return tuple(sorted(self._values.items()))

    @property
    def support(self):
        return tuple(sorted(self._values))

    def get(self, n: int) -> Fraction:
        return self._values.get(n, Fraction(0))

    def __eq__(self, other):
        return isinstance(other, RaVector) and self._values == other._values

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        body = " + ".join(f"{v}*e_{n}" for n, v in self.entries)
        return f"RaVector({body})"

    def to_json(self):
        return {"entries": [[n, f"{v.numerator}/{v.denominator}"]
                            for n, v in self.entries]}

    @staticmethod
    def from_json(obj) -> "RaVector":
        return RaVector({n: Fraction(v) for n, v in obj["entries"]})

    @staticmethod
    def average(vectors, cap: int) -> "RaVector":
        s = len(vectors)
        merged = {}
        for v in vectors:
            for n, x in v._values.items():
                merged[n] = merged.get(n, Fraction(0)) + x / s
            if len(merged) > cap:
                raise CapExceeded(f"support grew past cap {cap} while averaging")
        return RaVector(merged)


class _RaStream:
    """Cached vector sequence for one (ordinal, base-set) pair, with the
    bookkeeping needed to re-expand vectors into lower-level averages."""

    def __init__(self, xi: Ordinal, m: LazySet):
        self.xi = xi
        self.m = m
        self.kind, self.pred = classify(xi)
        self.vectors = []
        self.lock = RLock()
        if self.kind == "successor":
            self.child = _stream(self.pred, m)
            self.consumed = 0
            self.blocks = []  # (first child index - 1, block length)
        elif self.kind == "limit":
            self.current = m
            self.chain = []  # (n_k, tail set, rung ordinal)

    def get(self, n: int, cap: int) -> RaVector:
        with self.lock:
            while len(self.vectors) < n:
                self._make_next(cap)
            return self.vectors[n - 1]

    def _make_next(self, cap: int):
        if self.kind == "zero":
            idx = len(self.vectors) + 1
            self.vectors.append(RaVector({self.m.nth(idx): 1}))
            return
        if self.kind == "successor":
            k = self.consumed
            first = self.child.get(k + 1, cap)
            s = first.support[0]
            comps, size = [first], len(first.support)
            for i in range(2, s + 1):
                v = self.child.get(k + i, cap)
                size += len(v.support)
                if size > cap:
                    raise CapExceeded(
                        f"support of vector {len(self.vectors) + 1} exceeds "
                        f"cap {cap}", ordinal=self.xi,
                        index=len(self.vectors) + 1)
                comps.append(v)
            self.vectors.append(RaVector.average(comps, cap))
            self.blocks.append((k, s))
            self.consumed = k + s
            return
        # limit: take the first vector of the rung picked by min of the
        # unconsumed part of the base set
        nk = self.current.nth(1)
        rung = fund_seq(self.xi, nk)
        v = _stream(rung, self.current).get(1, cap)
        self.vectors.append(v)
        self.chain.append((nk, self.current, rung))
        self.current = self.current.drop(len(v.support))


_STREAMS = {}
_STREAMS_LOCK = RLock()


def _stream(xi: Ordinal, m: LazySet) -> _RaStream:
    key = (xi, m.describe())
    with _STREAMS_LOCK:
        st = _STREAMS.get(key)
        if st is None:
            st = _STREAMS[key] = _RaStream(xi, m)
        return st


def ra_vector(xi: Ordinal, m: LazySet, n: int,
              cap: int = DEFAULT_SUPPORT_CAP) -> RaVector:
    """The n-th repeated-averages vector of (m, xi), exactly."""
    if n < 1:
        raise ValueError("vector indices are 1-based")
    return _stream(xi, m).get(n, cap)


def growth_probe(xi: Ordinal, count: int,
                 cap: int = DEFAULT_SUPPORT_CAP):
    """(max supp of the n-th vector on the naturals) for n = 1..count."""
    return [ra_vector(xi, NATURALS, n, cap).support[-1]
            for n in range(1, count + 1)]


# -- property suite ------------------------------------------------------

@dataclass(frozen=True)
class PropertyReport:
    xi: Ordinal
    base: str
    depth: int
    entries: tuple  # of dicts

    @property
    def passed(self) -> bool:
        return all(e["status"] != "fail" for e in self.entries)

    @property
    def capped(self) -> bool:
        return any(e["status"] == "capped" for e in self.entries)


def check_properties(xi: Ordinal, m: LazySet, depth: int,
                     cap: int = DEFAULT_SUPPORT_CAP) -> PropertyReport:
    """Verify block structure, support membership/maximality, prefix
    determinism and recomposition on the first `depth` vectors."""
    entries = []

    def note(prop, n, status, detail=""):
        entries.append({"property": prop, "n": n, "status": status,
                        "detail": detail})

    vectors = []
    for n in range(1, depth + 1):
        try:
            vectors.append(ra_vector(xi, m, n, cap))
        except CapExceeded as exc:
            note("P1", n, "capped", str(exc))
            break

    # P.1: block sequence of unit-mass vectors whose supports tile a
    # prefix of the base set
    consumed = []
    ok = True
    for n, v in enumerate(vectors, 1):
        if consumed and v.support[0] <= consumed[-1]:
            note("P1", n, "fail", f"supports not successive at n={n}")
            ok = False
        consumed.extend(v.support)
    if ok and vectors:
        prefix = m.elements(len(consumed))
        if consumed != prefix:
            note("P1", len(vectors), "fail",
                 "support union is not a prefix of the base set")
        else:
            note("P1", len(vectors), "pass")

    # P.2: supports are maximal members of F_xi
    for n, v in enumerate(vectors, 1):
        fs = v.support
        if not member(xi, fs):
            note("P2", n, "fail", f"supp vector {n} not in the family")
        elif not is_maximal(xi, fs):
            note("P2", n, "fail", f"supp vector {n} not maximal")
        else:
            note("P2", n, "pass")

    # P.3: a second base set agreeing on the consumed prefix reproduces
    # the same vectors
    if vectors:
        twin = LazySet.prefix_arithmetic(
            consumed, consumed[-1] + 97, 5)
        for n, v in enumerate(vectors, 1):
            try:
                same = ra_vector(xi, twin, n, cap) == v
            except CapExceeded as exc:
                note("P3", n, "capped", str(exc))
                break
            note("P3", n, "pass" if same else "fail",
                 "" if same else f"vector {n} differs on the twin set")

    # P.4: the set assembled from supports with indices (2, 3, ...)
    # reproduces those vectors
    if len(vectors) >= 2:
        indices = tuple(range(2, len(vectors) + 1))
        recomposed = LazySet.ra_supports(xi, m, indices)
        for k, nk in enumerate(indices, 1):
            try:
                same = ra_vector(xi, recomposed, k, cap) == vectors[nk - 1]
            except CapExceeded as exc:
                note("P4", k, "capped", str(exc))
                break
            note("P4", k, "pass" if same else "fail",
                 "" if same else f"recomposed vector {k} != vector {nk}")

    return PropertyReport(xi, m.describe(), depth, tuple(entries))


# -- delta witnesses -----------------------------------------------------

def delta_lower(xi: Ordinal) -> Fraction:
    """Guaranteed pairing level: 1/2 at limits, 1/2^{n+1} at lambda+n,
    1 at zero."""
    if xi.is_zero:
        return Fraction(1)
    if is_limit(xi):
        return Fraction(1, 2)
    last_e, last_c = xi.terms[-1]
    n = last_c if last_e.is_zero else 0
    if n == 0:
        return Fraction(1, 2)
    return Fraction(1, 2 ** (n + 1))


def delta_witness(xi: Ordinal, m: LazySet, p: LazySet, n: int,
                  cap: int = DEFAULT_SUPPORT_CAP):
    """Best G in F^M_xi for the n-th vector of (p, xi): maximizes the
    pairing <vector, G> by branch and bound over image sets."""
    v = ra_vector(xi, p, n, cap)
    supp = v.support
    indices = [m.index_of(x) for x in supp]  # raises if p is not inside m
    values = [v.get(x) for x in supp]
    suffix = [Fraction(0)] * (len(supp) + 1)
    for i in range(len(supp) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + values[i]

    best = [Fraction(0), ()]
    # explicit stack: supports can be thousands of points deep
    stack = [(0, (), (), Fraction(0))]
    while stack:
        i, idx_set, val_set, total = stack.pop()
        if total > best[0]:
            best[0], best[1] = total, val_set
        if i == len(supp) or total + suffix[i] <= best[0]:
            continue
        stack.append((i + 1, idx_set, val_set, total))
        ext = idx_set + (indices[i],)
        if member(xi, ext):
            stack.append((i + 1, ext, val_set + (supp[i],),
                          total + values[i]))
    return best[1], best[0]


# -- hull approximation --------------------------------------------------

@dataclass(frozen=True)
class HullDecomposition:
    parts: tuple  # (weight, base LazySet, index)
    residual_bound: Fraction
    combination: dict  # renormalized convex combination, {} if empty


def hull_decompose(zeta: Ordinal, xi: Ordinal, m: LazySet, lset: LazySet,
                   n: int, cap: int = DEFAULT_SUPPORT_CAP) -> HullDecomposition:
    """Express the n-th (lset, zeta) vector as a convex combination of
    level-xi vectors plus a residual with an exact l1 bound.

    Successor levels unfold exactly (residual 0); a limit rung that jumps
    below xi cannot be lifted and contributes its weight to the residual.
    """
    if not xi <= zeta:
        raise ValueError("need xi <= zeta")
    parts = []
    residual = [Fraction(0)]

    def expand(eta, base, j, weight):
        if eta == xi:
            parts.append((weight, base, j))
            return
        if eta < xi:
            residual[0] += weight
            return
        st = _stream(eta, base)
        st.get(j, cap)
        if st.kind == "successor":
            k, s = st.blocks[j - 1]
            for i in range(k + 1, k + s + 1):
                expand(st.pred, base, i, weight / s)
        else:
            _, tail, rung = st.chain[j - 1]
            expand(rung, tail, 1, weight)

    expand(zeta, lset, n, Fraction(1))
    total = sum((w for w, _, _ in parts), Fraction(0))
    residual_bound = 2 * residual[0]
    combination = {}
    if total:
        for w, base, j in parts:
            for pos, val in ra_vector(xi, base, j, cap).entries:
                combination[pos] = combination.get(pos, Fraction(0)) \
                    + (w / total) * val
    return HullDecomposition(tuple(parts), residual_bound, combination)
