"""Recognizable subsets of N and Z as ultimately periodic bit patterns.

UPSetN(a, k, F, R) is F ∪ ((a + R) + kN) with F ⊆ {0..a-1} and
R ⊆ {0..k-1} (offsets from a). UPSetZ(k, G) is G + kZ. F, R and G are
stored as int bitmasks; constructors also accept iterables.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Callable, Union

from .errors import DomainError

__all__ = ["UPSetN", "UPSetZ", "RegSetZ", "member", "normalize", "union", "inter",
           "complement", "equals", "translate_preimage", "division_preimage",
           "syntactic_index_N", "recset_from_json"]


def _mask(xs, width: int) -> int:
    if isinstance(xs, int):
        m = xs
    else:
        m = 0
        for x in xs:
            if not 0 <= x < width:
                raise DomainError(f"{x} is outside 0..{width - 1}")
            m |= 1 << x
    if m >> width:
        raise DomainError(f"bitmask wider than {width}")
    return m


def _elems(m: int) -> list[int]:
    return [i for i in range(m.bit_length()) if m >> i & 1]


def _rotate(m: int, shift: int, k: int) -> int:
    """Pattern p with p[i] = m[(i + shift) mod k]."""
    shift %= k
    full = (1 << k) - 1
    return ((m >> shift) | (m << (k - shift))) & full


def _min_period(m: int, k: int) -> int:
    for d in range(1, k + 1):
        if k % d == 0 and _rotate(m, d, k) == m:
            return d
    return k


def _divisors(k: int) -> list[int]:
    return [d for d in range(1, k + 1) if k % d == 0]


@dataclass(frozen=True, init=False)
class UPSetN:
    a: int
    k: int
    F: int
    R: int

    def __init__(self, a: int, k: int, F=0, R=0):
        if a < 0 or k < 1:
            raise DomainError(f"need a >= 0 and k >= 1, got a={a}, k={k}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "F", _mask(F, a))
        object.__setattr__(self, "R", _mask(R, k))

    def __contains__(self, x: int) -> bool:
        if x < 0:
            raise DomainError(f"{x} is not a natural number")
        if x < self.a:
            return bool(self.F >> x & 1)
        return bool(self.R >> ((x - self.a) % self.k) & 1)

    @classmethod
    def from_predicate(cls, pred: Callable[[int], bool], a: int, k: int) -> "UPSetN":
        """Tabulate pred, assumed periodic with period k from a on."""
        F = sum(1 << x for x in range(a) if pred(x))
        R = sum(1 << i for i in range(k) if pred(a + i))
        return cls(a, k, F, R).normalize()

    @classmethod
    def finite(cls, xs) -> "UPSetN":
        xs = sorted(set(xs))
        a = xs[-1] + 1 if xs else 0
        return cls(a, 1, xs, 0).normalize()

    @classmethod
    def progression(cls, r: int, k: int) -> "UPSetN":
        """r + kN."""
        return cls.from_predicate(lambda x: x >= r and (x - r) % k == 0, r + 1, k)

    @classmethod
    def everything(cls) -> "UPSetN":
        return cls(0, 1, 0, 1)

    @classmethod
    def empty(cls) -> "UPSetN":
        return cls(0, 1, 0, 0)

    def normalize(self) -> "UPSetN":
        a, k = self.a, self.k
        d = _min_period(self.R, k)
        R = self.R & ((1 << d) - 1)
        F = self.F
        # peel the threshold while the element just below a continues the cycle
        while a > 0 and bool(F >> (a - 1) & 1) == bool(R >> (d - 1) & 1):
            a -= 1
            F &= (1 << a) - 1
            R = _rotate(R, -1, d)
        return UPSetN(a, d, F, R)

    def aligned(self, a: int, k: int) -> tuple[int, int]:
        """(F, R) describing the same set with threshold a and period k."""
        assert a >= self.a and k % self.k == 0
        F = sum(1 << x for x in range(a) if x in self)
        R = sum(1 << i for i in range(k) if (a + i) in self)
        return F, R

    def elements(self, upto: int) -> list[int]:
        return [x for x in range(upto + 1) if x in self]

    def is_finite(self) -> bool:
        return self.R == 0

    def to_json(self) -> dict:
        return {"schema": 1, "carrier": "N", "a": self.a, "k": self.k,
                "F": _elems(self.F), "R": _elems(self.R)}

    def __str__(self):
        parts = []
        if self.F:
            parts.append("{" + ",".join(map(str, _elems(self.F))) + "}")
        if self.R:
            parts.append("({" + ",".join(str(self.a + r) for r in _elems(self.R)) + f"}}+{self.k}N)")
        return " ∪ ".join(parts) or "∅"


@dataclass(frozen=True, init=False)
class UPSetZ:
    k: int
    G: int

    def __init__(self, k: int, G=0):
        if k < 1:
            raise DomainError(f"need k >= 1, got {k}")
        if not isinstance(G, int):
            G = [g % k for g in G]
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "G", _mask(G, k))

    def __contains__(self, x: int) -> bool:
        return bool(self.G >> (x % self.k) & 1)

    @classmethod
    def everything(cls) -> "UPSetZ":
        return cls(1, 1)

    @classmethod
    def empty(cls) -> "UPSetZ":
        return cls(1, 0)

    def normalize(self) -> "UPSetZ":
        d = _min_period(self.G, self.k)
        return UPSetZ(d, self.G & ((1 << d) - 1))

    def residues(self) -> list[int]:
        return _elems(self.G)

    def elements(self, lo: int, hi: int) -> list[int]:
        return [x for x in range(lo, hi + 1) if x in self]

    def to_json(self) -> dict:
        return {"schema": 1, "carrier": "Z", "k": self.k, "G": _elems(self.G)}

    def __str__(self):
        if self.G == 0:
            return "∅"
        return "{" + ",".join(map(str, _elems(self.G))) + f"}}+{self.k}Z"


@dataclass(frozen=True)
class RegSetZ:
    """L+ ∪ (-L-) with L+, L- ⊆ N ultimately periodic. Regular, not always recognizable."""
    pos: UPSetN
    neg: UPSetN

    def __contains__(self, x: int) -> bool:
        return x in self.pos if x > 0 else (-x in self.neg or (x == 0 and 0 in self.pos))

    def union(self, other: "RegSetZ") -> "RegSetZ":
        return RegSetZ(union(self.pos, other.pos), union(self.neg, other.neg))

    def mirror(self) -> "RegSetZ":
        return RegSetZ(self.neg, self.pos)

    def elements(self, lo: int, hi: int) -> list[int]:
        return [x for x in range(lo, hi + 1) if x in self]


RecSet = Union[UPSetN, UPSetZ]


def member(L, x: int) -> bool:
    return x in L


def normalize(L):
    return L.normalize()


def _check_same(L, M):
    if type(L) is not type(M):
        raise DomainError(f"cannot combine {type(L).__name__} with {type(M).__name__}")


def _binary(L, M, fn):
    _check_same(L, M)
    if isinstance(L, UPSetN):
        a, k = max(L.a, M.a), math.lcm(L.k, M.k)
        (F1, R1), (F2, R2) = L.aligned(a, k), M.aligned(a, k)
        return UPSetN(a, k, fn(F1, F2) & ((1 << a) - 1), fn(R1, R2) & ((1 << k) - 1)).normalize()
    k = math.lcm(L.k, M.k)
    G1 = sum(1 << i for i in range(k) if i in L)
    G2 = sum(1 << i for i in range(k) if i in M)
    return UPSetZ(k, fn(G1, G2) & ((1 << k) - 1)).normalize()


def union(L, M):
    return _binary(L, M, lambda x, y: x | y)


def inter(L, M):
    return _binary(L, M, lambda x, y: x & y)


def complement(L):
    if isinstance(L, UPSetN):
        return UPSetN(L.a, L.k, ~L.F & ((1 << L.a) - 1), ~L.R & ((1 << L.k) - 1)).normalize()
    return UPSetZ(L.k, ~L.G & ((1 << L.k) - 1)).normalize()


def equals(L, M) -> bool:
    _check_same(L, M)
    return L.normalize() == M.normalize()


def translate_preimage(L, n: int):
    """{x : x + n ∈ L}."""
    if isinstance(L, UPSetN):
        if n < 0:
            raise DomainError("translation on N needs n >= 0")
        a = max(L.a - n, 0)
        return UPSetN.from_predicate(lambda x: (x + n) in L, a, L.k)
    if isinstance(L, UPSetZ):
        return UPSetZ(L.k, [(g - n) % L.k for g in L.residues()]).normalize()
    raise DomainError(f"unsupported set type {type(L).__name__}")


def division_preimage(L, n: int):
    """{x : n*x ∈ L}."""
    if n <= 0:
        raise DomainError(f"division needs n >= 1, got {n}")
    if isinstance(L, UPSetN):
        a = -(-L.a // n)
        return UPSetN.from_predicate(lambda x: (n * x) in L, a, L.k)
    if isinstance(L, UPSetZ):
        return UPSetZ(L.k, [x for x in range(L.k) if (n * x) in L]).normalize()
    raise DomainError(f"unsupported set type {type(L).__name__}")


def syntactic_index_N(L: UPSetN) -> tuple[int, int]:
    """(a*, k*) of the coarsest ~_{a,k} saturating L."""
    n = L.normalize()
    return n.a, n.k


def recset_from_json(data):
    """Load a UPSetN or UPSetZ; carrier defaults to Z when only k and G are given."""
    if isinstance(data, str):
        data = json.loads(data)
    carrier = data.get("carrier", "Z" if "G" in data else "N")
    if carrier == "Z":
        k = int(data["k"])
        return UPSetZ(k, [int(g) for g in data.get("G", data.get("R", []))]).normalize()
    if carrier == "N":
        return UPSetN(int(data.get("a", 0)), int(data["k"]), [int(x) for x in data.get("F", [])],
                      [int(r) for r in data.get("R", [])]).normalize()
    raise DomainError(f"unknown carrier {carrier!r}")
