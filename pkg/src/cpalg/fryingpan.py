"""Frying-pan monoids M_{a,k}: the finite quotients of (N, +).

The carrier is {0, ..., a+k-1}: a tail 0..a-1 followed by a cycle of
length k starting at a.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .errors import DomainError
from .exactint import euler_phi

__all__ = ["FryingPan", "phi_ak", "op_ak", "generators", "generators_bruteforce",
           "classify_monogenic", "surjective_morphism_count", "morphism_count_bruteforce",
           "semiring_check", "to_dot", "as_algebra"]

OPS = ("suc", "add", "mul")


@dataclass(frozen=True)
class FryingPan:
    a: int
    k: int

    def __post_init__(self):
        if self.a < 0 or self.k < 1:
            raise DomainError(f"need a >= 0 and k >= 1, got a={self.a}, k={self.k}")

    @property
    def size(self) -> int:
        return self.a + self.k

    def phi(self, x: int) -> int:
        if x < 0:
            raise DomainError(f"phi is defined on N, got {x}")
        a, k = self.a, self.k
        return x if x < a else a + (x - a) % k

    def suc(self, x: int) -> int:
        return self.phi(x + 1)

    def add(self, x: int, y: int) -> int:
        return self.phi(x + y)

    def mul(self, x: int, y: int) -> int:
        return self.phi(x * y)

    def table(self, op: str) -> list:
        n = self.size
        if op == "suc":
            return [self.suc(x) for x in range(n)]
        f = self.add if op == "add" else self.mul
        return [[f(x, y) for y in range(n)] for x in range(n)]

    def __str__(self):
        return f"M_{{{self.a},{self.k}}}"


def phi_ak(fp: FryingPan, x: int) -> int:
    return fp.phi(x)


def op_ak(fp: FryingPan, op: str, *args: int) -> int:
    if op not in OPS:
        raise DomainError(f"unknown operation {op!r}")
    for x in args:
        if not 0 <= x < fp.size:
            raise DomainError(f"{x} is not in the carrier of {fp}")
    want = 1 if op == "suc" else 2
    if len(args) != want:
        raise DomainError(f"{op} takes {want} arguments")
    return getattr(fp, op)(*args)


def generators(fp: FryingPan) -> frozenset[int]:
    a, k = fp.a, fp.k
    if a >= 2:
        return frozenset({1})
    if fp.size == 1:
        # M_{0,1} = {0}: the nonzero part is empty, so 0 generates vacuously
        return frozenset({0})
    return frozenset(g for g in range(1, a + k) if math.gcd(g, k) == 1)


def _orbit(fp: FryingPan, g: int) -> set[int]:
    seen, s = set(), g
    while s not in seen:
        seen.add(s)
        s = fp.add(s, g)
    return seen


def generators_bruteforce(fp: FryingPan) -> frozenset[int]:
    """Elements whose nonempty sums cover M \\ {0}, straight from the definition."""
    nonzero = set(range(1, fp.size))
    return frozenset(g for g in range(fp.size) if nonzero <= _orbit(fp, g))


def surjective_morphism_count(fp: FryingPan) -> int:
    a, k = fp.a, fp.k
    if a >= 2 or (a, k) in {(0, 1), (0, 2), (1, 1), (1, 2)}:
        return 1
    return euler_phi(k)


def morphism_count_bruteforce(fp: FryingPan) -> int:
    """Count surjective morphisms (N,+) -> M by trying every image of 1."""
    count = 0
    for g in range(fp.size):
        # psi(n) = n copies of g; it is a morphism by construction, check onto
        image, s = {0}, 0
        for _ in range(2 * fp.size + 1):
            s = fp.add(s, g)
            image.add(s)
        count += len(image) == fp.size
    return count


def classify_monogenic(alg, g: int):
    """Identify a one-operation monoid generated by g with some M_{a,k}.

    Returns (a, k, iso) where iso[x] is the sum of x copies of g, or None
    when g does not generate. Raises DomainError if alg is not a monoid.
    """
    if len(alg.ops) != 1 or alg.ops[0].arity != 2:
        raise DomainError("expected exactly one binary operation")
    n, op = alg.n, alg.ops[0]
    for x, y, z in itertools.product(range(n), repeat=3):
        if op(op(x, y), z) != op(x, op(y, z)):
            raise DomainError(f"not associative at ({x}, {y}, {z})")
    units = [e for e in range(n) if all(op(e, x) == x == op(x, e) for x in range(n))]
    if not units:
        raise DomainError("no unit element")
    if not 0 <= g < n:
        raise DomainError(f"{g} is not in the carrier")
    seq, pos = [units[0]], {units[0]: 0}
    while True:
        s = op(seq[-1], g)
        if s in pos:
            a = pos[s]
            k = len(seq) - a
            break
        pos[s] = len(seq)
        seq.append(s)
    if len(seq) != n:
        return None
    return a, k, tuple(seq)


def semiring_check(fp: FryingPan):
    """Exhaustively check the semiring axioms; returns None or the first failure."""
    n, add, mul = fp.size, fp.add, fp.mul
    one = fp.phi(1)
    for x in range(n):
        if add(0, x) != x or add(x, 0) != x:
            return ("additive unit", x)
        if mul(one, x) != x or mul(x, one) != x:
            return ("multiplicative unit", x)
        if mul(0, x) != 0 or mul(x, 0) != 0:
            return ("zero annihilates", x)
        for y in range(n):
            if add(x, y) != add(y, x):
                return ("additive commutativity", x, y)
            for z in range(n):
                if add(add(x, y), z) != add(x, add(y, z)):
                    return ("additive associativity", x, y, z)
                if mul(mul(x, y), z) != mul(x, mul(y, z)):
                    return ("multiplicative associativity", x, y, z)
                if mul(x, add(y, z)) != add(mul(x, y), mul(x, z)):
                    return ("left distributivity", x, y, z)
                if mul(add(y, z), x) != add(mul(y, x), mul(z, x)):
                    return ("right distributivity", x, y, z)
    return None


def as_algebra(fp: FryingPan, ops=("add",)):
    """The finite algebra (M_{a,k}; ops) for use with the generic engine."""
    from .finalg import FiniteAlgebra, Operation
    n = fp.size
    out = []
    for name in ops:
        if name == "suc":
            out.append(Operation(1, tuple(fp.suc(x) for x in range(n))))
        else:
            f = fp.add if name == "add" else fp.mul
            out.append(Operation(2, tuple(f(x, y) for x in range(n) for y in range(n))))
    return FiniteAlgebra(n, tuple(out))


def to_dot(fp: FryingPan) -> str:
    """The successor digraph: a tail path into a cycle."""
    lines = [f'digraph "M_{fp.a}_{fp.k}" {{', "  rankdir=LR;", "  node [shape=circle];"]
    for x in range(fp.size):
        shape = "" if x < fp.a else " [style=filled, fillcolor=lightgrey]"
        lines.append(f"  n{x} [label=\"{x}\"]{shape};" if shape else f'  n{x} [label="{x}"];')
    for x in range(fp.size):
        lines.append(f"  n{x} -> n{fp.suc(x)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
