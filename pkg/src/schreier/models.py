"""Concrete weakly-null sequence models with exact rational norm oracles,
Cesaro means of the averaging methods, trend decisions, spreading-model
certificates, the norm-to-pairing reduction verifier and Banach-Saks
bracket probes.

A model is a polyhedral norm on finitely supported rational vectors; all
the desk-scale checks in this package only ever need exact values on
finite supports, so no attempt is made to represent a Banach space.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .averages import DEFAULT_SUPPORT_CAP, RaVector, ra_vector
from .errors import CapExceeded
from .families import (admissible_subsets, enumerate_window, member,
                       pairing, schreier_norm)
from .index import f_delta_build
from .lazysets import LazySet
from .ordinals import Ordinal, format_ordinal


def _entries(vector) -> dict:
    entries = vector.entries if hasattr(vector, "entries") else vector
    return {n: Fraction(v) for n, v in dict(entries).items() if v}


class SequenceModel:
    """Norm oracle plus the metadata the section-1 machinery reads off:
    basis constant D, window unconditional constants B(r), and whether
    sign flips preserve the norm."""

    name = "abstract"
    basis_constant = Fraction(1)
    one_unconditional = False

    def unconditional_constant(self, r: int) -> Fraction:
        return Fraction(1)

    def norm(self, vector) -> Fraction:
        raise NotImplementedError

    def functionals(self, window: int):
        """Finite generating family of norming functionals on the window,
        as sparse dicts; None when the model has no enumerable family."""
        return None

    def norming_set(self, fs: tuple) -> bool:
        """True when chi_fs is a norming functional, so that any
        nonnegative mass-1 vector on fs has norm exactly 1."""
        return False


class SchreierModel(SequenceModel):
    """The unit vector basis of the Schreier space S_xi:
    norm = sup over F in F_xi of the mass |a| puts on F."""

    one_unconditional = True

    def __init__(self, xi):
        self.xi = xi if isinstance(xi, Ordinal) else Ordinal.natural(xi)
        self.name = f"schreier({format_ordinal(self.xi)})"

    def norm(self, vector) -> Fraction:
        return schreier_norm(self.xi, _entries(vector))

    def functionals(self, window: int):
        fam = enumerate_window(self.xi, window)
        return [{n: Fraction(1) for n in fs} for fs in sorted(fam.members)
                if fs]

    def norming_set(self, fs: tuple) -> bool:
        return member(self.xi, fs)


class SupModel(SequenceModel):
    """The unit vector basis of c_0: norm = max |a_n|."""

    name = "sup"
    one_unconditional = True

    def norm(self, vector) -> Fraction:
        vals = _entries(vector)
        return max((abs(v) for v in vals.values()), default=Fraction(0))

    def functionals(self, window: int):
        return [{n: Fraction(1)} for n in range(1, window + 1)]

    def norming_set(self, fs: tuple) -> bool:
        return len(fs) <= 1

class SignedSchreierModel(SequenceModel):
    """max(max_n |a_n|, max over F in F_xi of |sum_{n in F} a_n|).

    Not from any space in the underlying theory: a deliberately
    conditional norm (signs can cancel inside an admissible set) used to
    exercise the convex-unconditionality machinery.  Coefficients inside
    one F can cancel down to the singleton floor, so the unconditional
    constant on r indices is genuinely above 1.
    """

    one_unconditional = False

    def __init__(self, xi):
        self.xi = xi if isinstance(xi, Ordinal) else Ordinal.natural(xi)
        self.name = f"signed-schreier({format_ordinal(self.xi)})"

    def unconditional_constant(self, r: int) -> Fraction:
        # flipping signs turns |sum_F a| <= sum_F |a| around: off by at
        # most the full admissible mass over the singleton floor
        return Fraction(min(r, 2))

    def norm(self, vector) -> Fraction:
        vals = _entries(vector)
        if not vals:
            return Fraction(0)
        best = max(abs(v) for v in vals.values())
        support = tuple(sorted(vals))
        for fs in admissible_subsets(self.xi, support):
            if fs:
                best = max(best, abs(sum(vals[n] for n in fs)))
        return best

    def functionals(self, window: int):
        fam = enumerate_window(self.xi, window)
        out = []
        for fs in sorted(fam.members):
            if fs:
                out.append({n: Fraction(1) for n in fs})
                out.append({n: Fraction(-1) for n in fs})
        return out


class WeightedModel(SequenceModel):
    """A base model evaluated after per-coordinate rescaling a_n -> w(n)*a_n.
    With weights below 1 the unit vectors are no longer normalized, so
    this is not a basis model unless w = 1."""

    def __init__(self, base: SequenceModel, weight):
        self.base = base
        self.weight = weight
        self.one_unconditional = base.one_unconditional
        self.name = f"weighted({base.name})"

    def norm(self, vector) -> Fraction:
        vals = {n: v * Fraction(self.weight(n)) for n, v in _entries(vector).items()}
        return self.base.norm(vals)


# -- applying a method to the model sequence ------------------------------

@dataclass(frozen=True)
class AppliedVector:
    """A . H = sum a_n x_n as a coefficient vector tagged with its model."""

    model_name: str
    entries: tuple

    def to_json(self):
        return {"model": self.model_name,
                "entries": [[n, f"{v.numerator}/{v.denominator}"]
                            for n, v in self.entries]}


def apply_method(vector, model: SequenceModel) -> AppliedVector:
    return AppliedVector(model.name, tuple(sorted(_entries(vector).items())))


# -- Cesaro means ---------------------------------------------------------

def cesaro_means(xi: Ordinal, lset: LazySet, model: SequenceModel,
                 horizon: int, cap: int = DEFAULT_SUPPORT_CAP):
    """Exact norms of the running means z_n = (v_1 + ... + v_n)/n of the
    level-xi vectors of lset, for n = 1..horizon."""
    out = []
    running = {}
    for n in range(1, horizon + 1):
        for pos, val in ra_vector(xi, lset, n, cap).entries:
            running[pos] = running.get(pos, Fraction(0)) + val
        if len(running) > cap:
            raise CapExceeded(f"mean support grew past cap {cap}",
                              ordinal=xi, index=n)
        z = {pos: val / n for pos, val in running.items()}
        out.append((n, model.norm(z)))
    return out


def summability_trend(xi: Ordinal, lset: LazySet, model: SequenceModel,
                      horizon: int = 8, tol: Fraction = Fraction(1, 4),
                      burn_in: int = 2, cap: int = DEFAULT_SUPPORT_CAP):
    """Classify the Cesaro means as summable-trend (final norm below tol,
    nonincreasing after burn-in), non-summable-trend (all norms above
    tol), or inconclusive.  A desk-scale heuristic over finitely many
    values, never a proof; the raw data always rides along."""
    data = cesaro_means(xi, lset, model, horizon, cap)
    norms = [v for _, v in data]
    decaying = norms[-1] < tol and all(
        a >= b for a, b in zip(norms[burn_in:], norms[burn_in + 1:]))
    if decaying:
        decision = "summable-trend"
    elif all(v > tol for v in norms):
        decision = "non-summable-trend"
    else:
        decision = "inconclusive"
    return {"decision": decision, "tol": tol, "burn_in": burn_in,
            "data": data}


# -- spreading models -----------------------------------------------------

def _simplex_grid(size: int, denom: int = 8):
    """All nonnegative profiles a with sum = 1 and denominators dividing
    denom, on `size` coordinates."""
    def parts(total, slots):
        if slots == 1:
            yield (total,)
            return
        for first in range(total + 1):
            for rest in parts(total - first, slots - 1):
                yield (first,) + rest
    for comp in parts(denom, size):
        yield tuple(Fraction(c, denom) for c in comp)


def spreading_model_check(model: SequenceModel, m: LazySet, xi: Ordinal,
                          eps: Fraction, window: int, denom: int = 8):
    """Certify  norm(sum_{i in F} eps_i a_i x_{m_i}) >= eps * sum |a_i|
    for every F in F_xi inside the index window.

    A set whose image is norming for the model passes exactly for every
    profile at once; otherwise the minimum is taken over the deterministic
    simplex grid (all sign patterns too unless the model is
    1-unconditional).  Per-F minima are reported; `pass` uses >= and the
    `strict` flag records whether every minimum strictly exceeds eps.
    """
    fam = enumerate_window(xi, window)
    rows = []
    overall = None
    for fs in sorted(fam.members):
        if not fs:
            continue
        image = tuple(m.nth(i) for i in fs)
        if model.one_unconditional and model.norming_set(image):
            fmin, method = Fraction(1), "norming-set"
        else:
            fmin, method = None, "grid"
            signsets = [(1,) * len(fs)] if model.one_unconditional else [
                pattern for pattern in _sign_patterns(len(fs))]
            for profile in _simplex_grid(len(fs), denom):
                for signs in signsets:
                    vec = {pos: s * a for pos, a, s
                           in zip(image, profile, signs) if a}
                    val = model.norm(vec)
                    if fmin is None or val < fmin:
                        fmin = val
        rows.append({"set": fs, "image": image, "min": fmin,
                     "method": method})
        overall = fmin if overall is None else min(overall, fmin)
    if overall is None:
        overall = Fraction(1)
    return {"kind": "spreading-model", "xi": format_ordinal(xi), "eps": eps,
            "window": window, "min": overall, "pass": overall >= eps,
            "strict": overall > eps, "rows": rows}


def _sign_patterns(size: int):
    import itertools
    return itertools.product((1, -1), repeat=size)


# -- norm-to-pairing reduction --------------------------------------------

def reduction_check(model: SequenceModel, delta: Fraction, eps: Fraction,
                    m: LazySet, samples=None, window: int = 8,
                    cap: int = DEFAULT_SUPPORT_CAP):
    """Desk-scale verification of the reduction from norm bounds to
    family pairings.

    For a functional x* and a mass-1 nonnegative A with x*(A.H) > delta,
    the level set f(x*) = {n : x*(x_n) > delta/2} must capture pairing
    > delta^2/4  (part a).  And whenever a member F of the family built
    from all level sets has <A, F> >= 1/2, the functional chi_F exhibits
    norm(A.H) >= eps*delta/4  (part b).
    """
    functionals = model.functionals(window)
    if functionals is None:
        raise ValueError(f"{model.name} has no enumerable functional family")
    if samples is None:
        samples = [ra_vector(Ordinal.natural(1), m, n, cap)
                   for n in range(1, 5)]
    family = f_delta_build(functionals, delta / 2, window)
    rows = []
    ok = True
    for a in samples:
        for f in functionals:
            action = sum((a.get(n) * v for n, v in f.items()), Fraction(0))
            if action <= delta:
                continue
            level = tuple(sorted(n for n, v in f.items() if v > delta / 2))
            captured = pairing(a, level)
            good = captured > delta * delta / 4
            ok = ok and good
            rows.append({"part": "a", "A": a.entries, "functional": sorted(
                f.items()), "action": action, "level_set": level,
                "pairing": captured, "pass": good})
        for fs in sorted(family.members):
            if not fs or pairing(a, fs) < Fraction(1, 2):
                continue
            bound = eps * delta / 4
            norm_lower = abs(sum((a.get(n) for n in fs), Fraction(0)))
            norm_val = model.norm(a.entries)
            good = norm_val >= norm_lower >= bound
            ok = ok and good
            rows.append({"part": "b", "A": a.entries, "set": fs,
                         "witness": "chi_F", "norm": norm_val,
                         "functional_value": norm_lower, "bound": bound,
                         "pass": good})
    if not rows:
        return {"kind": "reduction", "pass": True, "note": "vacuous",
                "rows": rows}
    return {"kind": "reduction", "delta": delta, "eps": eps, "pass": ok,
            "rows": rows}


# -- Banach-Saks bracket --------------------------------------------------

def bs_probe(model: SequenceModel, xi_candidates, m: LazySet,
             horizon: int = 8, window: int = 6,
             cap: int = DEFAULT_SUPPORT_CAP):
    """For each candidate level: a passing spreading-model check is
    evidence the Banach-Saks index exceeds it, a summable trend is
    evidence the index is at most one above it.  Returns the bracket the
    evidence is consistent with; finite data proves neither bound."""
    per_level = []
    lo, hi = None, None
    for xi in xi_candidates:
        spread = spreading_model_check(model, m, xi, Fraction(1, 2), window)
        try:
            trend = summability_trend(xi, m, model, horizon, cap=cap)
        except CapExceeded as exc:
            trend = {"decision": "capped", "data": [], "detail": str(exc)}
        per_level.append({"xi": format_ordinal(xi), "spreading": spread,
                          "trend": trend["decision"],
                          "norms": trend["data"]})
        if spread["pass"] and spread["min"] > 0:
            if lo is None or lo < xi:
                lo = xi
        if trend["decision"] == "summable-trend":
            if hi is None or xi < hi:
                hi = xi
    bracket = {
        "above": format_ordinal(lo) if lo is not None else None,
        "at-most-successor-of": format_ordinal(hi) if hi is not None else None,
    }
    return {"kind": "bs-bracket", "model": model.name, "bracket": bracket,
            "note": "finite-window evidence only", "levels": per_level}
