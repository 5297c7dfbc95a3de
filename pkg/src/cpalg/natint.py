"""Congruences on N and Z, and checks that a tabulated function preserves them.

Every verdict here is about a finite window: "no counterexample among the
tabulated points", never a claim about all of N or Z.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Union

from .errors import DomainError

__all__ = ["Equality", "Nak", "Zmod", "CongruenceSpec", "FnTable", "Verdict",
           "related", "check_cp_additive", "check_spp_additive",
           "check_cp_multiplicative", "brute_force_preserves", "count_classes"]

DOMAINS = ("N", "Z", "Nx")


@dataclass(frozen=True)
class Equality:
    def __str__(self):
        return "Equality"


@dataclass(frozen=True)
class Nak:
    """x ~ y iff x = y, or x, y >= a and x ≡ y (mod k)."""
    a: int
    k: int

    def __post_init__(self):
        if self.a < 0 or self.k < 1:
            raise DomainError(f"Nak needs a >= 0, k >= 1 (got {self.a}, {self.k})")

    @property
    def index(self) -> int:
        return self.a + self.k

    def __str__(self):
        return f"Nak({self.a},{self.k})"


@dataclass(frozen=True)
class Zmod:
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise DomainError(f"Zmod needs k >= 1 (got {self.k})")

    @property
    def index(self) -> int:
        return self.k

    def __str__(self):
        return f"Zmod({self.k})"


CongruenceSpec = Union[Equality, Nak, Zmod]


def related(c: CongruenceSpec, x: int, y: int) -> bool:
    if isinstance(c, Nak):
        if x < 0 or y < 0:
            raise DomainError(f"{c} lives on N, got ({x}, {y})")
        return x == y or (x >= c.a and y >= c.a and (x - y) % c.k == 0)
    if isinstance(c, Zmod):
        return (x - y) % c.k == 0
    return x == y


def count_classes(c: CongruenceSpec, points) -> int:
    """Number of classes met by the given points (a test helper)."""
    reps: list[int] = []
    for x in points:
        if not any(related(c, x, r) for r in reps):
            reps.append(x)
    return len(reps)


@dataclass(frozen=True)
class FnTable:
    """Values of a function on the window lo..hi."""
    domain: str
    lo: int
    hi: int
    values: tuple

    def __post_init__(self):
        if self.domain not in DOMAINS:
            raise DomainError(f"domain must be one of {DOMAINS}, got {self.domain!r}")
        if self.hi < self.lo:
            raise DomainError("empty window")
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if len(self.values) != self.hi - self.lo + 1:
            raise DomainError(f"window {self.lo}..{self.hi} needs {self.hi - self.lo + 1} "
                              f"values, got {len(self.values)}")
        floor = {"N": 0, "Nx": 1}.get(self.domain)
        if floor is not None and self.lo < floor:
            raise DomainError(f"domain {self.domain} starts at {floor}, window starts at {self.lo}")

    @classmethod
    def from_function(cls, f: Callable[[int], int], lo: int, hi: int, domain: str = "N"):
        return cls(domain, lo, hi, tuple(f(x) for x in range(lo, hi + 1)))

    def __call__(self, x: int) -> int:
        if not self.lo <= x <= self.hi:
            raise DomainError(f"{x} is outside the window {self.lo}..{self.hi}")
        return self.values[x - self.lo]

    def points(self) -> range:
        return range(self.lo, self.hi + 1)

    def items(self):
        return zip(self.points(), self.values)

    def to_json(self) -> dict:
        return {"schema": 1, "domain": self.domain, "lo": self.lo, "hi": self.hi,
                "values": list(self.values)}

    @classmethod
    def from_json(cls, data) -> "FnTable":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data.get("domain", "N"), int(data["lo"]), int(data["hi"]),
                   tuple(int(v) for v in data["values"]))


@dataclass(frozen=True)
class Verdict:
    """Outcome of a check. ``witness`` replays the failure when holds is False."""
    holds: bool
    prop: str
    witness: tuple = ()
    reason: str = ""
    info: dict = field(default_factory=dict)

    def __bool__(self):
        return self.holds

    def to_json(self) -> dict:
        out = {"schema": 1, "holds": self.holds, "property": self.prop, "reason": self.reason}
        if self.witness:
            out["witness"] = list(self.witness)
        if self.info:
            out["info"] = self.info
        return out


def _divisibility_witness(f: FnTable):
    """First pair (x, y), y < x, in lexicographic order with (x-y) not dividing f(x)-f(y)."""
    vals, lo = f.values, f.lo
    for i in range(1, len(vals)):
        fx = vals[i]
        for j in range(i):
            if (fx - vals[j]) % (i - j):
                return (lo + i, lo + j)
    return None


def check_cp_additive(f: FnTable) -> Verdict:
    """Divisibility on all window pairs; on N also "constant or f(x) >= x"."""
    if f.domain == "Nx":
        raise DomainError("additive check needs domain N or Z")
    w = _divisibility_witness(f)
    if w is not None:
        x, y = w
        return Verdict(False, "cp", w, f"{x - y} does not divide f({x}) - f({y}) = {f(x) - f(y)}")
    if f.domain == "N" and len(set(f.values)) > 1:
        for x, v in f.items():
            if v < x:
                return Verdict(False, "cp", (x,), f"f is not constant and f({x}) = {v} < {x}")
    return Verdict(True, "cp", reason=f"no counterexample on {f.lo}..{f.hi}")


def check_spp_additive(f: FnTable) -> Verdict:
    v = check_cp_additive(f)
    if not v:
        return Verdict(False, "spp", v.witness, v.reason)
    for x in range(f.lo, f.hi):
        if f(x + 1) < f(x):
            return Verdict(False, "spp", (x, x + 1), f"f({x}) = {f(x)} > f({x + 1}) = {f(x + 1)}")
    return Verdict(True, "spp", reason=f"monotone and no counterexample on {f.lo}..{f.hi}")


def _exact_log(num: int, den: int, base: int):
    """n with base**n == num / den exactly, or None."""
    if den <= 0 or num % den:
        return None
    r, n = num // den, 0
    while r > 1 and r % base == 0:
        r //= base
        n += 1
    return n if r == 1 else None


def check_cp_multiplicative(f: FnTable) -> Verdict:
    """Decide whether f(x) = f(1) * x**n on the window (domain N \\ {0})."""
    if not f.lo <= 1 <= f.hi:
        raise DomainError("the window must contain 1")
    if f.hi < 2:
        raise DomainError("the window must contain a point >= 2")

    def refute(x, reason):
        # prefer the simplest certificate: some x that does not divide f(x)
        for y in range(2, f.hi + 1):
            if f(y) % y:
                return Verdict(False, "monomial", (y,), f"{y} does not divide f({y}) = {f(y)}")
        return Verdict(False, "monomial", (x,), reason)

    c = f(1)
    if c <= 0:
        return Verdict(False, "monomial", (1,), f"f(1) = {c} is not positive")
    n = _exact_log(f(2), c, 2)
    if n is None:
        return refute(2, f"f(2)/f(1) = {f(2)}/{c} is not a power of 2")
    for x in range(f.lo, f.hi + 1):
        if f(x) != c * x ** n:
            return refute(x, f"f({x}) = {f(x)} but {c}*{x}^{n} = {c * x ** n}")
    return Verdict(True, "monomial", reason=f"f(x) = {c}*x^{n} on {f.lo}..{f.hi}",
                   info={"c": c, "n": n})


def brute_force_preserves(f: FnTable, congs) -> Verdict:
    """Directly test x ~ y => f(x) ~ f(y) for every listed congruence."""
    pts = list(f.items())
    for c in congs:
        if isinstance(c, Nak) and f.domain == "Z" and f.lo < 0:
            raise DomainError(f"{c} lives on N but the window reaches {f.lo}")
        for i, (x, fx) in enumerate(pts):
            for y, fy in pts[:i]:
                if related(c, x, y) and not related(c, fx, fy):
                    return Verdict(False, "preserves", (x, y), f"{x} ~ {y} under {c} "
                                   f"but f({x}) = {fx}, f({y}) = {fy} are not related",
                                   info={"congruence": str(c)})
    return Verdict(True, "preserves", reason=f"all {len(congs)} congruences preserved on window")
