"""Ordinal notations in Cantor normal form below epsilon_0.

An ordinal is a sum  w^e1*c1 + w^e2*c2 + ... + w^ek*ck  with strictly
decreasing exponents (themselves ordinals) and positive integer
coefficients.  Zero is the empty sum.  This is enough for everything the
family hierarchies need: comparison, addition, multiplication by a natural,
omega-powers, successor/limit classification and fundamental sequences.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import OrdinalParseError, ValidationError


@dataclass(frozen=True)
class Ordinal:
    # ((exponent, coefficient), ...) with exponents strictly decreasing
    terms: tuple

    # -- construction ----------------------------------------------------

    @staticmethod
    def zero() -> "Ordinal":
        return _ZERO

    @staticmethod
    def natural(n: int) -> "Ordinal":
        if n < 0:
            raise ValueError("naturals only")
        if n == 0:
            return _ZERO
        return Ordinal(((_ZERO, n),))

    @staticmethod
    def omega() -> "Ordinal":
        return _OMEGA

    def __post_init__(self):
        prev = None
        for e, c in self.terms:
            if not isinstance(e, Ordinal) or c < 1:
                raise ValueError(f"bad CNF term ({e}, {c})")
            if prev is not None and not e < prev:
                raise ValueError("CNF exponents must strictly decrease")
            prev = e

    # -- order -----------------------------------------------------------

    def __lt__(self, other: "Ordinal") -> bool:
        for (e1, c1), (e2, c2) in zip(self.terms, other.terms):
            if e1 != e2:
                return e1 < e2
            if c1 != c2:
                return c1 < c2
        return len(self.terms) < len(other.terms)

    def __le__(self, other: "Ordinal") -> bool:
        return self == other or self < other

    def __gt__(self, other: "Ordinal") -> bool:
        return other < self

    def __ge__(self, other: "Ordinal") -> bool:
        return other <= self

    # -- predicates ------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_natural(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0].is_zero)

    def as_int(self) -> int:
        if not self.is_natural:
            raise ValueError(f"{self} is not a natural number")
        return self.terms[0][1] if self.terms else 0

    def __str__(self) -> str:
        return format_ordinal(self)

    def __repr__(self) -> str:
        return f"Ordinal({format_ordinal(self)!r})"


_ZERO = Ordinal(())
_OMEGA = Ordinal(((Ordinal(((_ZERO, 1),)), 1),))
ZERO = _ZERO
ONE = Ordinal.natural(1)
OMEGA = _OMEGA


# -- arithmetic ----------------------------------------------------------

def add(a: Ordinal, b: Ordinal) -> Ordinal:
    """Ordinal addition (left absorption: smaller left terms vanish)."""
    if b.is_zero:
        return a
    lead = b.terms[0][0]
    kept = [t for t in a.terms if t[0] > lead]
    if len(kept) < len(a.terms) and a.terms[len(kept)][0] == lead:
        merged = (lead, a.terms[len(kept)][1] + b.terms[0][1])
        return Ordinal(tuple(kept) + (merged,) + b.terms[1:])
    return Ordinal(tuple(kept) + b.terms)


def mul_nat(a: Ordinal, n: int) -> Ordinal:
    """a * n for a natural n (distributes into the leading term only)."""
    if n < 0:
        raise ValueError("naturals only")
    if n == 0 or a.is_zero:
        return _ZERO
    (e, c), rest = a.terms[0], a.terms[1:]
    return Ordinal(((e, c * n),) + rest)


def omega_pow(e: Ordinal) -> Ordinal:
    return Ordinal(((e, 1),))


def successor(a: Ordinal) -> Ordinal:
    return add(a, ONE)


# -- classification ------------------------------------------------------

def classify(a: Ordinal):
    """Return ("zero", None), ("successor", pred) or ("limit", None)."""
    if a.is_zero:
        return ("zero", None)
    e, c = a.terms[-1]
    if not e.is_zero:
        return ("limit", None)
    if c == 1:
        return ("successor", Ordinal(a.terms[:-1]))
    return ("successor", Ordinal(a.terms[:-1] + ((e, c - 1),)))


def is_limit(a: Ordinal) -> bool:
    return classify(a)[0] == "limit"


def predecessor(a: Ordinal) -> Ordinal:
    kind, pred = classify(a)
    if kind != "successor":
        raise ValueError(f"{a} is not a successor")
    return pred


# -- fundamental sequences ----------------------------------------------

@lru_cache(maxsize=None)
def fund_seq(xi: Ordinal, n: int) -> Ordinal:
    """The n-th element (n >= 1) of the fixed fundamental sequence of xi.

    Rule: write xi = gamma + w^beta (splitting one copy off the last term).
    For beta = delta+1 take gamma + w^delta*n, for beta a limit take
    gamma + w^{beta<n>}.  If the result is itself a limit, add 1, so that
    every term is a non-limit ordinal as the hierarchy definitions require.
    """
    if n < 1:
        raise ValueError("fundamental sequences start at n = 1")
    if not is_limit(xi):
        raise ValueError(f"{xi} is not a limit ordinal")
    (e, c) = xi.terms[-1]
    gamma = Ordinal(xi.terms[:-1] + (((e, c - 1),) if c > 1 else ()))
    kind, pred = classify(e)
    if kind == "successor":
        cand = add(gamma, mul_nat(omega_pow(pred), n))
    else:
        cand = add(gamma, omega_pow(fund_seq(e, n)))
    if is_limit(cand):
        cand = successor(cand)
    return cand


# -- shift thresholds ----------------------------------------------------

@lru_cache(maxsize=None)
def _threshold(zeta: Ordinal, xi: Ordinal) -> int:
    if not zeta < xi:
        raise ValueError("threshold needs zeta < xi")
    kind, pred = classify(xi)
    if kind == "successor":
        # a single block is an admissible union as soon as 1 <= min F
        if zeta == pred:
            return 1
        return _threshold(zeta, pred)
    # xi limit: find the first rung of the fundamental sequence at or
    # above zeta and route membership through it
    n = 1
    while fund_seq(xi, n) < zeta:
        n += 1
    rung = fund_seq(xi, n)
    if rung == zeta:
        return n
    return max(n, _threshold(zeta, rung))


def shift_threshold(zeta: Ordinal, xi: Ordinal, validate_window: int = 10) -> int:
    """An n such that every F in F_zeta with n <= min F is also in F_xi.

    The value comes from structural recursion over the hierarchy
    definition; it is then cross-checked by brute force on a small window
    and a diagnostic is raised if the check ever fails.
    """
    value = _threshold(zeta, xi)
    if validate_window:
        from .families import member, _subsets_of_window

        for fs in _subsets_of_window(validate_window):
            if fs and fs[0] >= value and member(zeta, fs) and not member(xi, fs):
                raise ValidationError(
                    f"shift_threshold({zeta}, {xi}) = {value} refuted by {fs}"
                )
    return value


# -- parsing and formatting ----------------------------------------------

def format_ordinal(a: Ordinal) -> str:
    if a.is_zero:
        return "0"
    parts = []
    for e, c in a.terms:
        if e.is_zero:
            parts.append(str(c))
            continue
        if e == ONE:
            body = "w"
        elif e == _OMEGA:
            body = "w^w"
        elif e.is_natural:
            body = f"w^{e.as_int()}"
        else:
            body = f"w^({format_ordinal(e)})"
        parts.append(body if c == 1 else f"{body}*{c}")
    return "+".join(parts)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message):
        raise OrdinalParseError(message, self.pos)

    def peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def nat(self) -> int:
        start = self.pos
        while self.peek().isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected a natural number")
        digits = self.text[start:self.pos]
        if len(digits) > 1 and digits[0] == "0":
            self.error("leading zero")
        return int(digits)

    def atom(self) -> Ordinal:
        ch = self.peek()
        if ch == "w":
            self.pos += 1
            return _OMEGA
        if ch == "(":
            self.pos += 1
            inner = self.ordinal()
            self.expect(")")
            return inner
        return Ordinal.natural(self.nat())

    def term(self):
        if self.peek() == "w":
            self.pos += 1
            exp = ONE
            if self.peek() == "^":
                self.pos += 1
                exp = self.atom()
                if exp.is_zero:
                    self.error("w^0 must be written as a natural")
                if exp == ONE:
                    self.error("w^1 must be written as w")
            coeff = 1
            if self.peek() == "*":
                self.pos += 1
                coeff = self.nat()
                if coeff <= 1:
                    self.error("coefficient must be at least 2")
            return (exp, coeff)
        n = self.nat()
        if n == 0:
            return None  # the literal zero ordinal, only valid alone
        return (_ZERO, n)

    def ordinal(self) -> Ordinal:
        first = self.term()
        if first is None:
            return _ZERO
        terms = [first]
        while self.peek() == "+":
            self.pos += 1
            t = self.term()
            if t is None:
                self.error("zero term in a sum")
            terms.append(t)
        for (e1, _), (e2, _) in zip(terms, terms[1:]):
            if not e2 < e1:
                self.error("non-canonical term order")
        return Ordinal(tuple(terms))


def parse_ordinal(text: str) -> Ordinal:
    """Parse canonical CNF notation; rejects non-canonical input."""
    p = _Parser(text.strip())
    result = p.ordinal()
    if p.pos != len(p.text):
        p.error("trailing input")
    return result
