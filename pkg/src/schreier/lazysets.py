"""Finitely-described infinite subsets of N.

A LazySet stands for an infinite strictly increasing sequence of naturals,
given by a small descriptor rather than by its elements.  Descriptors are
canonical, so two LazySets describing the same construction compare and
hash equal, which makes them usable as memoization keys.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

from .errors import CapExceeded
from .ordinals import Ordinal, format_ordinal, parse_ordinal


@dataclass(frozen=True)
class LazySet:
    kind: str
    params: tuple
    # cached prefix of the enumeration; shared per instance
    _prefix: list = field(default_factory=list, compare=False, hash=False, repr=False)

    # -- constructors ----------------------------------------------------

    @staticmethod
    def naturals() -> "LazySet":
        return LazySet("naturals", ())

    @staticmethod
    def arithmetic(start: int, step: int) -> "LazySet":
        if start < 1 or step < 1:
            raise ValueError("arithmetic progression needs start, step >= 1")
        return LazySet("arith", (start, step))

    @staticmethod
    def prefix_arithmetic(prefix, start: int, step: int) -> "LazySet":
        prefix = tuple(prefix)
        if any(a >= b for a, b in zip(prefix, prefix[1:])) or (
            prefix and start <= prefix[-1]
        ):
            raise ValueError("prefix must be increasing and below start")
        if step < 1 or (prefix and prefix[0] < 1) or start < 1:
            raise ValueError("elements must be naturals >= 1")
        return LazySet("prefix_arith", (prefix, start, step))

    @staticmethod
    def every_kth(base: "LazySet", k: int) -> "LazySet":
        if k < 1:
            raise ValueError("k >= 1")
        return LazySet("every_kth", (base, k))

    @staticmethod
    def dropped(base: "LazySet", count: int) -> "LazySet":
        """The base set with its first `count` elements removed."""
        if count == 0:
            return base
        if base.kind == "naturals":
            return LazySet.arithmetic(count + 1, 1)
        if base.kind == "arith":
            start, step = base.params
            return LazySet.arithmetic(start + count * step, step)
        if base.kind == "prefix_arith":
            prefix, start, step = base.params
            if count < len(prefix):
                return LazySet("prefix_arith", (prefix[count:], start, step))
            return LazySet.arithmetic(start + (count - len(prefix)) * step, step)
        if base.kind == "drop":
            inner, j = base.params
            return LazySet("drop", (inner, j + count))
        return LazySet("drop", (base, count))

    @staticmethod
    def ra_supports(xi: Ordinal, base: "LazySet", indices) -> "LazySet":
        """Union of the supports of the level-xi vectors of `base` with the
        given (finite, increasing) index list.  Enumeration is only defined
        up to the end of the last listed support."""
        indices = tuple(indices)
        if any(a >= b for a, b in zip(indices, indices[1:])) or (
            indices and indices[0] < 1
        ):
            raise ValueError("indices must be strictly increasing naturals")
        return LazySet("ra_supports", (xi, base, indices))

    # -- enumeration -----------------------------------------------------

    def _generate(self):
        if self.kind == "naturals":
            return itertools.count(1)
        if self.kind == "arith":
            start, step = self.params
            return itertools.count(start, step)
        if self.kind == "prefix_arith":
            prefix, start, step = self.params
            return itertools.chain(prefix, itertools.count(start, step))
        if self.kind == "every_kth":
            base, k = self.params
            return (base.nth(k * i) for i in itertools.count(1))
        if self.kind == "drop":
            base, j = self.params
            return (base.nth(i + j) for i in itertools.count(1))
        if self.kind == "ra_supports":
            from .averages import ra_vector

            xi, base, indices = self.params

            def gen():
                for n in indices:
                    yield from ra_vector(xi, base, n).support
            return gen()
        raise ValueError(f"unknown LazySet kind {self.kind}")

    def nth(self, i: int) -> int:
        """1-based element access."""
        if i < 1:
            raise ValueError("indices are 1-based")
        if len(self._prefix) < i:
            # regeneration restarts the descriptor, so grow geometrically
            # to keep sequential access amortized O(1)
            target = max(i, 2 * len(self._prefix))
            self._prefix[:] = list(itertools.islice(self._generate(), target))
        if len(self._prefix) < i:
            raise CapExceeded(f"{self.describe()} has no element #{i}")
        return self._prefix[i - 1]

    @property
    def min(self) -> int:
        return self.nth(1)

    def elements(self, count: int):
        return [self.nth(i) for i in range(1, count + 1)]

    def contains(self, value: int) -> bool:
        i = 1
        while True:
            v = self.nth(i)
            if v == value:
                return True
            if v > value:
                return False
            i += 1

    def index_of(self, value: int) -> int:
        """1-based position of value; raises if absent."""
        i = 1
        while True:
            v = self.nth(i)
            if v == value:
                return i
            if v > value:
                raise ValueError(f"{value} not in {self.describe()}")
            i += 1

    def drop(self, count: int) -> "LazySet":
        return LazySet.dropped(self, count)

    # -- descriptors -----------------------------------------------------

    def describe(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    def to_json(self):
        if self.kind == "naturals":
            return {"kind": "naturals"}
        if self.kind == "arith":
            start, step = self.params
            return {"kind": "arith", "start": start, "step": step}
        if self.kind == "prefix_arith":
            prefix, start, step = self.params
            return {
                "kind": "prefix_arith",
                "prefix": list(prefix),
                "start": start,
                "step": step,
            }
        if self.kind == "every_kth":
            base, k = self.params
            return {"kind": "every_kth", "base": base.to_json(), "k": k}
        if self.kind == "drop":
            base, j = self.params
            return {"kind": "drop", "base": base.to_json(), "count": j}
        if self.kind == "ra_supports":
            xi, base, indices = self.params
            return {
                "kind": "ra_supports",
                "xi": format_ordinal(xi),
                "base": base.to_json(),
                "indices": list(indices),
            }
        raise ValueError(self.kind)

    @staticmethod
    def from_json(obj) -> "LazySet":
        kind = obj["kind"]
        if kind == "naturals":
            return LazySet.naturals()
        if kind == "arith":
            return LazySet.arithmetic(obj["start"], obj["step"])
        if kind == "prefix_arith":
            return LazySet.prefix_arithmetic(obj["prefix"], obj["start"], obj["step"])
        if kind == "every_kth":
            return LazySet.every_kth(LazySet.from_json(obj["base"]), obj["k"])
        if kind == "drop":
            return LazySet.dropped(LazySet.from_json(obj["base"]), obj["count"])
        if kind == "ra_supports":
            return LazySet.ra_supports(
                parse_ordinal(obj["xi"]),
                LazySet.from_json(obj["base"]),
                obj["indices"],
            )
        raise ValueError(f"unknown LazySet kind {kind}")


NATURALS = LazySet.naturals()
EVENS = LazySet.arithmetic(2, 2)
