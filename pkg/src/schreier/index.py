"""Strong Cantor-Bendixson derivatives of adequate families at window
scale, embedding certificates, largeness sampling and the functional-family
construction of hereditary families.

For a spreading adequate family, A survives one derivative exactly when
A u {n} is a member for arbitrarily large n.  On a finite window the
surrogate rule keeps A when some in-window extension is a member; symbolic
Schreier families additionally carry the exact structural extension rule.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import CapExceeded, ValidationError
from .families import (DEFAULT_WINDOW_CAP, FamilyWindow, can_extend_k,
                       enumerate_window, member, pairing, strong_rank)
from .lazysets import LazySet
from .ordinals import ONE, Ordinal, is_limit, omega_pow
from .averages import ra_vector


@dataclass(frozen=True)
class SpreadingFamily:
    """An adequate family on a window.

    Families cut from the symbolic hierarchy carry their ordinal (and the
    number of derivatives already applied), which gives exact extension
    and rank oracles for the unbounded family behind the window.
    root_persists marks families whose transfinite derivative chain is
    known to outlive omega; window iteration then reports terminal
    "root-only" instead of pretending the index was exhausted.
    """

    window: FamilyWindow
    ordinal: Ordinal = None
    root_persists: bool = False
    depth: int = 0  # derivatives already applied to the symbolic family

    @staticmethod
    def from_schreier(xi: Ordinal, window: int,
                      cap: int = DEFAULT_WINDOW_CAP) -> "SpreadingFamily":
        fam = enumerate_window(xi, window, cap).verify_spreading()
        return SpreadingFamily(fam, ordinal=xi, root_persists=xi >= ONE)

    @staticmethod
    def from_window(fam: FamilyWindow,
                    root_persists: bool = False) -> "SpreadingFamily":
        if not fam.hereditary_checked:
            fam = fam.verify_hereditary()
        if not fam.spreading_checked:
            fam = fam.verify_spreading()
        return SpreadingFamily(fam, root_persists=root_persists)

    def extends(self, fs: tuple) -> bool:
        """Does fs have arbitrarily large one-point extensions?"""
        if self.ordinal is not None:
            return can_extend_k(self.ordinal, fs, self.depth + 1)
        lo = (fs[-1] if fs else 0) + 1
        return any(fs + (n,) in self.window.members
                   for n in range(lo, self.window.window + 1))

    def admits(self, fs: tuple) -> bool:
        """Membership in the unbounded family when known, else in-window."""
        if self.ordinal is not None:
            return can_extend_k(self.ordinal, fs, self.depth)
        return fs in self.window.members


def scb_derivative(fam: SpreadingFamily) -> SpreadingFamily:
    """Members whose extensions persist: the one-step strong derivative."""
    if not fam.window.spreading_checked:
        raise ValidationError("derivative needs a spreading-verified family")
    kept = frozenset(fs for fs in fam.window.members if fam.extends(fs))
    derived = FamilyWindow(fam.window.window, kept,
                           tag=f"({fam.window.tag})'",
                           hereditary_checked=False,
                           spreading_checked=fam.window.spreading_checked)
    return SpreadingFamily(derived, ordinal=fam.ordinal,
                           root_persists=fam.root_persists,
                           depth=fam.depth + 1)


@dataclass(frozen=True)
class WindowIndexReport:
    window: int
    iterations: int
    terminal: str  # "empty" | "root-only"
    sizes: tuple

    def to_json(self):
        return {"window": self.window, "iterations": self.iterations,
                "terminal": self.terminal, "sizes": list(self.sizes)}


def window_index(fam: SpreadingFamily, window: int = None) -> WindowIndexReport:
    """Count the stages of the strong derivative chain that are visible
    inside the window: a finite shadow of the transfinite index.

    With a symbolic family each member carries an exact drop-out rank, so
    the chain restricted to the window changes exactly once per distinct
    rank; iterating derivative steps naively would stall whenever a stage
    change happens outside the window.  Without an oracle the in-window
    extension rule is iterated directly.
    """
    bound = window or fam.window.window
    members = frozenset(fs for fs in fam.window.members
                        if not fs or fs[-1] <= bound)
    if fam.ordinal is not None:
        ranks = sorted({strong_rank(fam.ordinal, fs) for fs in members if fs})
        root_rank = omega_pow(fam.ordinal)
        sizes = [len(members)]
        for r in ranks:
            sizes.append(sum(1 for fs in members
                             if fs and strong_rank(fam.ordinal, fs) > r) + 1)
        if root_rank.is_natural:
            sizes.append(0)
            return WindowIndexReport(bound, len(ranks) + 1, "empty",
                                     tuple(sizes))
        return WindowIndexReport(bound, len(ranks), "root-only", tuple(sizes))
    sizes = [len(members)]
    iterations = 0
    while members and members != {()}:
        members = frozenset(
            fs for fs in members
            if any(fs + (n,) in members
                   for n in range((fs[-1] if fs else 0) + 1, bound + 1)))
        iterations += 1
        sizes.append(len(members))
    if members and fam.root_persists:
        return WindowIndexReport(bound, iterations, "root-only", tuple(sizes))
    if members:
        iterations += 1
        sizes.append(0)
    return WindowIndexReport(bound, iterations, "empty", tuple(sizes))


# -- embeddings ----------------------------------------------------------

def _image_sets(zeta: Ordinal, m: LazySet, window: int):
    """Images (m_i)_{i in F} of F in F_zeta that land inside [1..window]."""
    values = []
    i = 1
    while m.nth(i) <= window:
        values.append(m.nth(i))
        i += 1
    found = [()]
    frontier = [()]
    while frontier:
        idx = frontier.pop()
        lo = idx[-1] + 1 if idx else 1
        for j in range(lo, len(values) + 1):
            ext = idx + (j,)
            if member(zeta, ext):
                found.append(ext)
                frontier.append(ext)
    for idx in found:
        yield tuple(values[j - 1] for j in idx)


def embed_certificate(zeta: Ordinal, fam: FamilyWindow, m: LazySet,
                      window: int = None):
    """Check that every image of an F_zeta set through m lies in fam.
    Returns (ok, blocking set or None)."""
    bound = window or fam.window
    for g in _image_sets(zeta, m, bound):
        if g not in fam.members:
            return False, g
    return True, None


def find_embedding(zeta: Ordinal, fam: FamilyWindow, window: int = None,
                   search_budget: int = 10 ** 4, min_length: int = None):
    """Greedy search with backtracking for a strictly increasing prefix
    (n_1, ..., n_k), k >= min_length, whose F_zeta images all stay inside
    fam.  Every step revalidates the full certificate, so a returned
    prefix is itself a witness.  Returns (prefix, None) on success or
    (None, blocking set) on exhaustion; failure is a legitimate output,
    the window may simply be too small."""
    bound = window or fam.window
    goal = bound if min_length is None else min_length
    steps = [0]
    blocking = [None]

    def images_ok(prefix):
        for g in _image_sets(zeta,
                             LazySet.prefix_arithmetic(
                                 prefix, prefix[-1] + bound + 1, 1),
                             bound):
            if g not in fam.members:
                return g
        return None

    def search(prefix, lo):
        if len(prefix) >= goal:
            return prefix
        for n in range(lo, bound + 1):
            if steps[0] >= search_budget:
                return None
            steps[0] += 1
            cand = prefix + (n,)
            bad = images_ok(cand)
            if bad is None:
                result = search(cand, n + 1)
                if result is not None:
                    return result
            else:
                blocking[0] = bad
        return None

    result = search((), 1)
    if result is not None:
        return tuple(result), None
    return None, blocking[0]


# -- largeness -----------------------------------------------------------

def _best_pairing(v, admits) -> Fraction:
    """max <v, F> over admissible F, by branch and bound over subsets of
    the support (heredity keeps partial sets admissible)."""
    supp = v.support
    values = [v.get(x) for x in supp]
    suffix = [Fraction(0)] * (len(supp) + 1)
    for i in range(len(supp) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + values[i]
    best = Fraction(0)
    # explicit stack: supports can be thousands of points deep
    stack = [(0, (), Fraction(0))]
    while stack:
        i, fs, total = stack.pop()
        best = max(best, total)
        if i == len(supp) or total + suffix[i] <= best:
            continue
        stack.append((i + 1, fs, total))
        ext = fs + (supp[i],)
        if admits(ext):
            stack.append((i + 1, ext, total + values[i]))
    return best


def is_large(fam, m: LazySet, xi: Ordinal, eps: Fraction,
             depth: int = 3, cap: int = 10 ** 5):
    """Sampled check of (M, xi, eps)-largeness: deterministic thinnings
    and tails of M, exact best pairings against the family.  This samples
    a statement quantified over all infinite subsets; the report says so.

    `fam` is a SpreadingFamily (membership judged by its unbounded oracle
    when it has one) or a bare FamilyWindow (in-window members only, which
    undercounts once supports outgrow the window)."""
    admits = fam.admits if isinstance(fam, SpreadingFamily) \
        else (lambda fs: fs in fam.members)
    samples = [("M", m), ("every-2nd", LazySet.every_kth(m, 2)),
               ("every-3rd", LazySet.every_kth(m, 3)),
               ("tail-1", m.drop(1)), ("tail-2", m.drop(2))]
    rows = []
    ok = True
    for label, nset in samples:
        for n in range(1, depth + 1):
            try:
                v = ra_vector(xi, nset, n, cap)
            except CapExceeded as exc:
                rows.append({"sample": label, "n": n, "status": "capped",
                             "detail": str(exc)})
                break
            best = _best_pairing(v, admits)
            passed = best > eps
            ok = ok and passed
            rows.append({"sample": label, "n": n, "status":
                         "pass" if passed else "fail",
                         "value": best})
    return {"kind": "sampled-largeness", "eps": eps, "pass": ok, "rows": rows}


# -- families from functional systems ------------------------------------

def f_delta_build(functionals, delta: Fraction, window: int) -> FamilyWindow:
    """All F within [1..window] on which some functional stays >= delta.
    Hereditary by construction (downward closure of the level sets)."""
    members = {()}
    for f in functionals:
        values = f.entries if hasattr(f, "entries") else dict(f).items()
        level = tuple(sorted(n for n, v in dict(values).items()
                             if 1 <= n <= window and Fraction(v) >= delta))
        _add_subsets(level, members)
    fam = FamilyWindow(window, frozenset(members), tag=f"F_delta({delta})")
    return fam.verify_hereditary()


def _add_subsets(level: tuple, members: set):
    import itertools
    for size in range(1, len(level) + 1):
        members.update(itertools.combinations(level, size))
