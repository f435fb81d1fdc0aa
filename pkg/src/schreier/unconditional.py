"""Convex-unconditionality machinery at desk scale: empirical constant
search over sign-perturbed convex combinations, the analytic floor from
the basis/unconditionality metadata, the free-set predicate for
enumerable functional families, and suppression-unconditionality checks
on adequate families.

The one-point free-set statement is not implemented separately: it is the
singleton-I case of free_set_check.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .families import FamilyWindow, pairing
from .lazysets import LazySet
from .models import SequenceModel


@dataclass(frozen=True)
class CuQuery:
    model: SequenceModel
    window: int
    delta: Fraction
    denom: int = 8          # coefficient grid denominator
    sign_cap: int = 16      # exhaustive signs up to this many indices

    def __post_init__(self):
        if self.window < 1 or self.denom < 1:
            raise ValueError("window and denom must be positive")


def _simplex_points(window: int, denom: int):
    """Nonnegative profiles with sum exactly 1, denominators dividing
    denom, on coordinates 1..window, sparse dicts."""
    def parts(total, slots):
        if slots == 1:
            yield (total,)
            return
        for first in range(total + 1):
            for rest in parts(total - first, slots - 1):
                yield (first,) + rest
    for comp in parts(denom, window):
        yield {n: Fraction(c, denom)
               for n, c in enumerate(comp, 1) if c}


def _local_sign_search(model, profile):
    """Coordinate sign flips from the all-plus start to a local optimum."""
    support = sorted(profile)
    signs = {n: 1 for n in support}
    best = model.norm({n: signs[n] * profile[n] for n in support})
    improved = True
    while improved:
        improved = False
        for n in support:
            signs[n] = -signs[n]
            val = model.norm({m: signs[m] * profile[m] for m in support})
            if val < best:
                best = val
                improved = True
            else:
                signs[n] = -signs[n]
    return best, tuple(signs[n] for n in support)


def cu_search(q: CuQuery):
    """Minimize norm(sum eps_n a_n x_n) over grid profiles a with
    sum a_n = 1 and unsigned norm > delta, over all sign patterns.

    The result is an upper bound on the true infimum (an empirical C(delta)
    candidate), never a lower bound.  Sign enumeration is exhaustive up to
    the cap, then a deterministic local search; 1-unconditional models
    skip the sign loop outright.  Rescaling a combination with mass d < 1
    to mass 1 divides both delta and the value by d, so mass-1 grids lose
    no generality.
    """
    best = None  # (value, profile, signs)
    mode = "exhaustive"
    feasible = False
    for profile in _simplex_points(q.window, q.denom):
        unsigned = q.model.norm(profile)
        if unsigned <= q.delta:
            continue
        feasible = True
        support = sorted(profile)
        if q.model.one_unconditional:
            val, signs = unsigned, (1,) * len(support)
        elif len(support) <= q.sign_cap:
            val, signs = None, None
            for pattern in itertools.product((1, -1), repeat=len(support)):
                cand = q.model.norm(
                    {n: s * profile[n] for n, s in zip(support, pattern)})
                if val is None or cand < val or (cand == val and pattern < signs):
                    val, signs = cand, pattern
        else:
            mode = "local"
            val, signs = _local_sign_search(q.model, profile)
        key = (val, sorted(profile.items()), signs)
        if best is None or key < best:
            best = key
    if not feasible:
        raise ValueError(
            f"no grid combination has norm above delta = {q.delta}")
    value, profile, signs = best
    return {"empirical_min": value,
            "witness": {"a": profile, "signs": list(signs)},
            "mode": mode, "delta": q.delta, "model": q.model.name}


def cu_floor(k: int, d, b) -> Fraction:
    """The analytic lower bound for C(1/k) given basis constant D and
    the unconditional constant B = B(2k-1) of 2k-1 window vectors:
    min(1/(D*B*32k), 1/(D*128*k^2))."""
    d, b = Fraction(d), Fraction(b)
    if k < 1 or d < 1 or b < 1:
        raise ValueError("need k >= 1, D >= 1, B >= 1")
    return min(Fraction(1) / (d * b * 32 * k), Fraction(1) / (d * 128 * k * k))


# -- free sets ------------------------------------------------------------

def free_set_check(functionals, m_prefix, delta: Fraction, eps: Fraction):
    """For every functional f, every n up to the prefix length and every
    I inside {1..n} on which f stays >= delta, some g in the family must
    concentrate there: min_{i in I} g(m_i) > (1-eps)*delta while the rest
    of the prefix carries total |g|-mass < eps*delta.

    For families of indicators of a hereditary system the witness is the
    restricted indicator, so the check passes exactly; a non-hereditary
    family fails it.  Failures are listed in the report.
    """
    prefix = tuple(m_prefix)
    functionals = [dict(f) for f in functionals]
    failures = []
    checked = 0
    for f in functionals:
        for n in range(1, len(prefix) + 1):
            level = [i for i in range(1, n + 1)
                     if f.get(prefix[i - 1], Fraction(0)) >= delta]
            for size in range(1, len(level) + 1):
                for chosen in itertools.combinations(level, size):
                    checked += 1
                    if not _has_free_witness(functionals, prefix, n,
                                             chosen, delta, eps):
                        failures.append({"functional": sorted(f.items()),
                                         "n": n, "I": chosen})
    return {"kind": "free-set", "delta": delta, "eps": eps,
            "checked": checked, "pass": not failures, "failures": failures}


def _has_free_witness(functionals, prefix, n, chosen, delta, eps):
    inside = {prefix[i - 1] for i in chosen}
    for g in functionals:
        if min(g.get(x, Fraction(0)) for x in inside) <= (1 - eps) * delta:
            continue
        leak = sum((abs(g.get(prefix[i - 1], Fraction(0)))
                    for i in range(1, n + 1) if i not in chosen), Fraction(0))
        if leak < eps * delta:
            return True
    return False


# -- suppression unconditionality -----------------------------------------

def suppression_check(fam: FamilyWindow, lset: LazySet, window: int,
                      profiles=None):
    """The coordinate functions f_l over the points of the family (one
    point per member F, value chi_F(l)) form a suppression-unconditional
    system: dropping terms from sum b_i f_{l_i} never increases the sup
    norm  max_F |sum_{i: l_i in F} b_i|.  Checked exactly by enumeration
    over the given coefficient profiles and all suppression sets."""
    positions = [lset.nth(i) for i in range(1, window + 1)
                 if lset.nth(i) <= fam.window]
    if profiles is None:
        spots = positions[:4]
        vals = (Fraction(1), Fraction(-1), Fraction(1, 2))
        profiles = []
        for r in range(1, len(spots) + 1):
            for combo in itertools.combinations(spots, r):
                for assign in itertools.product(vals, repeat=r):
                    profiles.append(dict(zip(combo, assign)))

    def sup_norm(b):
        return max(
            (abs(sum((v for l, v in b.items() if l in fs), Fraction(0)))
             for fs in fam.members),
            default=Fraction(0))

    failures = []
    checked = 0
    for b in profiles:
        full = sup_norm(b)
        support = sorted(b)
        for r in range(len(support) + 1):
            for keep in itertools.combinations(support, r):
                checked += 1
                sub = sup_norm({l: b[l] for l in keep})
                if sub > full:
                    failures.append({"b": sorted(b.items()), "kept": keep,
                                     "suppressed_norm": sub, "norm": full})
    return {"kind": "suppression", "checked": checked,
            "pass": not failures, "failures": failures}
