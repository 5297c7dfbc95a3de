"""Finite algebras given by operation tables.

Subsets of the carrier {0..n-1} are ints used as bitsets (bit x set
means x is in the subset). Unary functions are tuples of length n.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property

from .errors import BoundError, DomainError, IllDefined

__all__ = [
    "Operation", "FiniteAlgebra", "Partition", "BinRel", "GroupCheck",
    "freeze", "frozen_functions", "duo_closure", "gen_set",
    "is_stable", "is_congruence", "is_stable_preorder",
    "principal_congruence", "all_congruences", "all_partitions", "all_preorders",
    "all_stable_preorders", "syntactic_congruence", "syntactic_preorder",
    "preserves", "preserves_all_congruences", "preserves_all_stable_preorders",
    "quotient", "induced_function", "preimage", "duo_preimages",
    "decompose_preimage_lattice", "decompose_preimage_boolean",
    "lattice_closure", "boolean_closure", "in_lattice", "in_boolean",
    "group_check", "stable_orders_of_group", "cancellative_to_group",
    "cyclic_group", "bits", "from_bits",
]

DEFAULT_PREORDER_BOUND = 5


def bits(xs) -> int:
    out = 0
    for x in xs:
        out |= 1 << x
    return out


def from_bits(m: int) -> frozenset[int]:
    out, i = [], 0
    while m:
        if m & 1:
            out.append(i)
        m >>= 1
        i += 1
    return frozenset(out)


@dataclass(frozen=True)
class Operation:
    arity: int
    table: tuple  # row-major, length n**arity

    def __call__(self, *args):
        idx = 0
        n = self.n
        for a in args:
            idx = idx * n + a
        return self.table[idx]

    @cached_property
    def n(self) -> int:
        if self.arity == 0:
            return 0
        n = round(len(self.table) ** (1 / self.arity))
        for cand in (n - 1, n, n + 1):
            if cand >= 1 and cand ** self.arity == len(self.table):
                return cand
        raise DomainError(f"table of length {len(self.table)} is not n**{self.arity}")


@dataclass(frozen=True)
class FiniteAlgebra:
    n: int
    ops: tuple

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("carrier must be nonempty")
        ops = tuple(op if isinstance(op, Operation) else Operation(op[0], tuple(op[1]))
                    for op in self.ops)
        object.__setattr__(self, "ops", ops)
        for i, op in enumerate(ops):
            if len(op.table) != self.n ** op.arity:
                raise DomainError(f"operation {i}: table length {len(op.table)}, "
                                  f"expected {self.n ** op.arity}")
            bad = [v for v in op.table if not 0 <= v < self.n]
            if bad:
                raise DomainError(f"operation {i}: value {bad[0]} outside carrier")

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def frozen(self) -> tuple:
        return frozen_functions(self)

    @cached_property
    def duo(self) -> tuple:
        return duo_closure(self)

    def to_json(self) -> dict:
        return {"schema": 1, "n": self.n,
                "ops": [{"arity": op.arity, "table": list(op.table)} for op in self.ops]}

    @classmethod
    def from_json(cls, data) -> "FiniteAlgebra":
        if isinstance(data, str):
            data = json.loads(data)
        ops = []
        for op in data["ops"]:
            table = op["table"]
            # accept nested tables as well as flat row-major lists
            while table and isinstance(table[0], list):
                table = [v for row in table for v in row]
            ops.append(Operation(int(op["arity"]), tuple(int(v) for v in table)))
        return cls(int(data["n"]), tuple(ops))


def cyclic_group(n: int) -> FiniteAlgebra:
    """(Z/nZ, +)."""
    return FiniteAlgebra(n, (Operation(2, tuple((x + y) % n for x in range(n) for y in range(n))),))


# -- partitions and relations ------------------------------------------------

@dataclass(frozen=True)
class Partition:
    """Class index per element, numbered by first occurrence."""
    labels: tuple

    def __post_init__(self):
        relabel, out = {}, []
        for c in self.labels:
            out.append(relabel.setdefault(c, len(relabel)))
        object.__setattr__(self, "labels", tuple(out))

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def count(self) -> int:
        return max(self.labels) + 1 if self.labels else 0

    def classes(self) -> list[frozenset[int]]:
        out = [set() for _ in range(self.count)]
        for x, c in enumerate(self.labels):
            out[c].add(x)
        return [frozenset(c) for c in out]

    def related(self, x: int, y: int) -> bool:
        return self.labels[x] == self.labels[y]

    def saturates(self, subset: int) -> bool:
        inside = {}
        for x, c in enumerate(self.labels):
            b = bool(subset >> x & 1)
            if inside.setdefault(c, b) != b:
                return False
        return True

    def refines(self, other: "Partition") -> bool:
        """Every class of self lies inside a class of other."""
        seen = {}
        return all(seen.setdefault(c, d) == d for c, d in zip(self.labels, other.labels))

    def as_binrel(self) -> "BinRel":
        n = self.n
        return BinRel(n, sum(1 << (x * n + y) for x in range(n) for y in range(n)
                             if self.labels[x] == self.labels[y]))

    @classmethod
    def equality(cls, n: int) -> "Partition":
        return cls(tuple(range(n)))

    @classmethod
    def full(cls, n: int) -> "Partition":
        return cls((0,) * n)


@dataclass(frozen=True)
class BinRel:
    """Binary relation on {0..n-1}; bit x*n+y set means x r y."""
    n: int
    mask: int

    def __contains__(self, pair) -> bool:
        x, y = pair
        return bool(self.mask >> (x * self.n + y) & 1)

    def pairs(self):
        n = self.n
        return [(x, y) for x in range(n) for y in range(n) if (x, y) in self]

    def matrix(self) -> tuple:
        n = self.n
        return tuple(tuple(int((x, y) in self) for y in range(n)) for x in range(n))

    def sort_key(self) -> tuple:
        return tuple(v for row in self.matrix() for v in row)

    def is_reflexive(self) -> bool:
        return all((x, x) in self for x in range(self.n))

    def is_transitive(self) -> bool:
        n = self.n
        return all((x, z) in self for x in range(n) for y in range(n) if (x, y) in self
                   for z in range(n) if (y, z) in self)

    def is_antisymmetric(self) -> bool:
        return all(x == y or (y, x) not in self for x, y in self.pairs())

    def is_preorder(self) -> bool:
        return self.is_reflexive() and self.is_transitive()

    def symmetric_part(self) -> Partition:
        """Classes of the equivalence x r y and y r x (self must be a preorder)."""
        n, labels = self.n, [-1] * self.n
        for x in range(n):
            if labels[x] < 0:
                for y in range(n):
                    if (x, y) in self and (y, x) in self:
                        labels[y] = x
        return Partition(tuple(labels))

    def down(self, y: int) -> int:
        """The initial segment {x : x r y} as a bitset."""
        return bits(x for x in range(self.n) if (x, y) in self)

    @classmethod
    def from_pairs(cls, n: int, pairs) -> "BinRel":
        return cls(n, sum({1 << (x * n + y) for x, y in pairs}))

    @classmethod
    def equality(cls, n: int) -> "BinRel":
        return cls.from_pairs(n, [(x, x) for x in range(n)])


# -- frozen functions and DUOs ----------------------------------------------

def freeze(A: FiniteAlgebra, op_index: int, i: int, frozen_args) -> tuple:
    """x -> op(c_1, ..., x, ..., c_n) with x in position i."""
    if not 0 <= op_index < len(A.ops):
        raise DomainError(f"no operation {op_index}")
    op = A.ops[op_index]
    frozen_args = tuple(frozen_args)
    if not 0 <= i < op.arity or len(frozen_args) != op.arity - 1:
        raise DomainError(f"operation {op_index} has arity {op.arity}: cannot freeze "
                          f"position {i} with {len(frozen_args)} constants")
    return tuple(op(*frozen_args[:i], x, *frozen_args[i:]) for x in range(A.n))


def frozen_functions(A: FiniteAlgebra) -> tuple:
    """All distinct unary frozen functions, in first-seen order."""
    seen = {}
    for j, op in enumerate(A.ops):
        for i in range(op.arity):
            for cs in itertools.product(range(A.n), repeat=op.arity - 1):
                seen.setdefault(freeze(A, j, i, cs), None)
    return tuple(seen)


def duo_closure(A: FiniteAlgebra) -> tuple:
    """The identity plus all composites of frozen functions, sorted."""
    ident = tuple(range(A.n))
    found = {ident}
    frontier = [ident]
    gens = A.frozen
    while frontier:
        nxt = []
        for g in frontier:
            for u in gens:
                h = tuple(u[v] for v in g)
                if h not in found:
                    found.add(h)
                    nxt.append(h)
        frontier = nxt
    return tuple(sorted(found))


def gen_set(A: FiniteAlgebra, a: int) -> frozenset[int]:
    if not 0 <= a < A.n:
        raise DomainError(f"{a} is not in the carrier")
    return frozenset(g[a] for g in A.duo)


# -- stability ---------------------------------------------------------------

def is_stable(A: FiniteAlgebra, r: BinRel) -> bool:
    # enough to test the frozen unary functions
    pairs = r.pairs()
    return all((u[x], u[y]) in r for u in A.frozen for x, y in pairs)


def is_congruence(A: FiniteAlgebra, p: Partition) -> bool:
    lab = p.labels
    for u in A.frozen:
        img = {}
        for x in range(A.n):
            if img.setdefault(lab[x], lab[u[x]]) != lab[u[x]]:
                return False
    return True


def is_stable_preorder(A: FiniteAlgebra, r: BinRel) -> bool:
    return r.is_preorder() and is_stable(A, r)


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x, y) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if rx > ry:
            rx, ry = ry, rx
        self.parent[ry] = rx
        return True

    def partition(self) -> Partition:
        return Partition(tuple(self.find(x) for x in range(len(self.parent))))


def _congruence_closure(A: FiniteAlgebra, seeds, uf=None) -> Partition:
    uf = uf or _UnionFind(A.n)
    todo = [pair for pair in seeds if uf.union(*pair)]
    while todo:
        x, y = todo.pop()
        for u in A.frozen:
            if uf.union(u[x], u[y]):
                todo.append((u[x], u[y]))
    return uf.partition()


def principal_congruence(A: FiniteAlgebra, x: int, y: int) -> Partition:
    return _congruence_closure(A, [(x, y)])


def _join(A, p: Partition, q: Partition) -> Partition:
    uf = _UnionFind(A.n)
    for lab in (p.labels, q.labels):
        first = {}
        for x, c in enumerate(lab):
            uf.union(first.setdefault(c, x), x)
    return uf.partition()


def all_congruences(A: FiniteAlgebra) -> list[Partition]:
    """Join-closure of the principal congruences, plus equality."""
    found = {Partition.equality(A.n)}
    principals = {principal_congruence(A, x, y) for x in range(A.n) for y in range(x + 1, A.n)}
    found |= principals
    frontier = list(principals)
    while frontier:
        nxt = []
        for p in frontier:
            for q in principals:
                j = _join(A, p, q)
                if j not in found:
                    found.add(j)
                    nxt.append(j)
        frontier = nxt
    return sorted(found, key=lambda p: (p.count * -1, p.labels))


def all_partitions(n: int):
    """Every partition of {0..n-1} as restricted growth strings."""
    def rec(prefix, top):
        if len(prefix) == n:
            yield Partition(tuple(prefix))
            return
        for c in range(top + 2):
            yield from rec(prefix + [c], max(top, c))
    if n == 0:
        return
    yield from rec([0], 0)


def _closure_transitive(n: int, mask: int) -> int:
    # Warshall on an n*n bit matrix packed into one int
    rows = [(mask >> (x * n)) & ((1 << n) - 1) for x in range(n)]
    for y in range(n):
        for x in range(n):
            if rows[x] >> y & 1:
                rows[x] |= rows[y]
    return sum(r << (x * n) for x, r in enumerate(rows))


def all_preorders(n: int) -> list[BinRel]:
    """Every reflexive transitive relation on n points.

    Grown from equality by adding one pair and re-closing; this reaches
    each preorder, since a preorder is the closure of its own pairs.
    """
    start = BinRel.equality(n).mask
    found = {start}
    frontier = [start]
    all_pairs = [(x, y) for x in range(n) for y in range(n) if x != y]
    while frontier:
        nxt = []
        for m in frontier:
            for x, y in all_pairs:
                b = 1 << (x * n + y)
                if not m & b:
                    c = _closure_transitive(n, m | b)
                    if c not in found:
                        found.add(c)
                        nxt.append(c)
        frontier = nxt
    return sorted((BinRel(n, m) for m in found), key=BinRel.sort_key)


def all_stable_preorders(A: FiniteAlgebra, bound: int = DEFAULT_PREORDER_BOUND) -> list[BinRel]:
    if A.n > bound:
        raise BoundError(f"stable preorder enumeration is limited to n <= {bound}, got {A.n}",
                         bound)
    return [r for r in all_preorders(A.n) if is_stable(A, r)]


# -- syntactic congruence and preorder --------------------------------------

def _signatures(A: FiniteAlgebra, L: int) -> list[int]:
    """sig[x] has bit j set iff duo[j](x) is in L."""
    duo = A.duo
    sig = [0] * A.n
    for j, g in enumerate(duo):
        for x in range(A.n):
            if L >> g[x] & 1:
                sig[x] |= 1 << j
    return sig


def _as_bits(L) -> int:
    return L if isinstance(L, int) else bits(L)


def syntactic_congruence(A: FiniteAlgebra, L) -> Partition:
    sig = _signatures(A, _as_bits(L))
    return Partition(tuple(sig))


def syntactic_preorder(A: FiniteAlgebra, L) -> BinRel:
    """x <=_L y iff every DUO sending y into L sends x into L."""
    sig = _signatures(A, _as_bits(L))
    n = A.n
    return BinRel(n, sum(1 << (x * n + y) for x in range(n) for y in range(n)
                         if sig[y] & ~sig[x] == 0))


# -- preservation ------------------------------------------------------------

def preserves(A: FiniteAlgebra, f, rel) -> bool:
    if isinstance(rel, Partition):
        lab = rel.labels
        img = {}
        return all(img.setdefault(lab[x], lab[f[x]]) == lab[f[x]] for x in range(A.n))
    return all((f[x], f[y]) in rel for x, y in rel.pairs())


def preserves_all_congruences(A: FiniteAlgebra, f) -> bool:
    return all(preserves(A, f, p) for p in all_congruences(A))


def preserves_all_stable_preorders(A: FiniteAlgebra, f, bound: int = DEFAULT_PREORDER_BOUND) -> bool:
    return all(preserves(A, f, r) for r in all_stable_preorders(A, bound))


def quotient(A: FiniteAlgebra, p: Partition) -> FiniteAlgebra:
    if not is_congruence(A, p):
        raise DomainError("partition is not a congruence")
    reps = [min(c) for c in p.classes()]
    m = len(reps)
    ops = []
    for op in A.ops:
        table = tuple(p.labels[op(*(reps[c] for c in args))]
                      for args in itertools.product(range(m), repeat=op.arity))
        ops.append(Operation(op.arity, table))
    return FiniteAlgebra(m, tuple(ops))


def induced_function(A: FiniteAlgebra, f, p: Partition) -> tuple:
    """f_phi on classes with phi(f(x)) = f_phi(phi(x)); raises IllDefined otherwise."""
    if not is_congruence(A, p):
        raise DomainError("partition is not a congruence")
    lab = p.labels
    out, rep = [None] * p.count, [None] * p.count
    for x in range(A.n):
        c = lab[x]
        if out[c] is None:
            out[c], rep[c] = lab[f[x]], x
        elif out[c] != lab[f[x]]:
            raise IllDefined(f"{rep[c]} and {x} are congruent but their images are not",
                             (rep[c], x))
    # the commuting square, checked pointwise
    assert all(lab[f[x]] == out[lab[x]] for x in range(A.n))
    return tuple(out)


# -- preimages, closures and the decomposition formulas ---------------------

def preimage(f, L: int) -> int:
    return bits(x for x, v in enumerate(f) if L >> v & 1)


def duo_preimages(A: FiniteAlgebra, L) -> list[int]:
    """Distinct gamma^{-1}(L) over the DUOs, sorted."""
    L = _as_bits(L)
    return sorted({preimage(g, L) for g in A.duo})


def decompose_preimage_lattice(A: FiniteAlgebra, f, L) -> int:
    """Right-hand side of the union-of-intersections formula for f^{-1}(L)."""
    L = _as_bits(L)
    out = 0
    for a in range(A.n):
        if L >> f[a] & 1:
            seg = A.full
            for g in A.duo:
                if L >> g[a] & 1:
                    seg &= preimage(g, L)
            out |= seg
    return out


def decompose_preimage_boolean(A: FiniteAlgebra, f, L) -> int:
    """Same with the if-then-else complement inside the intersection."""
    L = _as_bits(L)
    out = 0
    for a in range(A.n):
        if L >> f[a] & 1:
            seg = A.full
            for g in A.duo:
                pre = preimage(g, L)
                seg &= pre if L >> g[a] & 1 else A.full & ~pre
            out |= seg
    return out


def lattice_closure(gens, limit: int | None = None) -> list[int]:
    """Close a family of bitsets under union and intersection."""
    found = set(gens)
    frontier = sorted(found)
    while frontier:
        nxt = []
        cur = sorted(found)
        for x in frontier:
            for y in cur:
                for z in (x | y, x & y):
                    if z not in found:
                        found.add(z)
                        nxt.append(z)
                        if limit is not None and len(found) > limit:
                            raise BoundError(f"closure exceeds {limit} members", limit)
        frontier = sorted(nxt)
    return sorted(found)


def boolean_closure(gens, full: int, limit: int | None = None) -> list[int]:
    gens = set(gens)
    gens |= {full & ~g for g in gens}
    return lattice_closure(gens | {0, full}, limit)


def in_lattice(gens, X: int) -> bool:
    """Is X in the lattice generated by gens? No enumeration needed:
    X must be the union over x in X of the intersection of generators containing x."""
    gens = list(gens)
    if not gens:
        return False
    if X == 0:
        acc = -1
        for g in gens:
            acc &= g
        return acc == 0
    acc = 0
    rest = X
    while rest:
        x = (rest & -rest).bit_length() - 1
        rest &= rest - 1
        seg, hit = -1, False
        for g in gens:
            if g >> x & 1:
                seg &= g
                hit = True
        if not hit:
            return False
        acc |= seg
    return acc == X


def in_boolean(gens, X: int, full: int) -> bool:
    gens = list(gens)
    return in_lattice(gens + [full & ~g for g in gens] + [0, full], X)


# -- groups ------------------------------------------------------------------

def group_check(A: FiniteAlgebra, op_index: int = 0):
    """Verify that operation op_index is a group operation.

    Returns (unit, inverse table); raises DomainError with a witness otherwise.
    """
    op = A.ops[op_index]
    if op.arity != 2:
        raise DomainError(f"operation {op_index} is not binary")
    n = A.n
    for x, y, z in itertools.product(range(n), repeat=3):
        if op(op(x, y), z) != op(x, op(y, z)):
            raise DomainError(f"not associative at {(x, y, z)}")
    units = [e for e in range(n) if all(op(e, x) == x == op(x, e) for x in range(n))]
    if not units:
        raise DomainError("no unit")
    e = units[0]
    inv = []
    for x in range(n):
        ys = [y for y in range(n) if op(x, y) == e == op(y, x)]
        if not ys:
            raise DomainError(f"{x} has no inverse")
        inv.append(ys[0])
    return e, tuple(inv)


def stable_orders_of_group(A: FiniteAlgebra, op_index: int = 0,
                           bound: int = DEFAULT_PREORDER_BOUND) -> list[BinRel]:
    group_check(A, op_index)
    return [r for r in all_stable_preorders(A, bound) if r.is_antisymmetric()]


@dataclass(frozen=True)
class GroupCheck:
    kind: str  # "group", "not-associative" or "not-cancellable"
    unit: int | None = None
    inverse: tuple | None = None
    witness: tuple | None = None


def cancellative_to_group(S: FiniteAlgebra) -> GroupCheck:
    """A finite cancellative semigroup is a group: find its unit and inverses."""
    if len(S.ops) != 1 or S.ops[0].arity != 2:
        raise DomainError("expected one binary operation")
    op, n = S.ops[0], S.n
    for x, y, z in itertools.product(range(n), repeat=3):
        if op(op(x, y), z) != op(x, op(y, z)):
            return GroupCheck("not-associative", witness=(x, y, z))
    for x, y, z in itertools.product(range(n), repeat=3):
        if y != z and (op(x, y) == op(x, z) or op(y, x) == op(z, x)):
            return GroupCheck("not-cancellable", witness=(x, y, z))
    # left translation by x is a bijection, so x*e = x has a solution; it is the unit
    e = next(y for y in range(n) if op(0, y) == 0)
    assert all(op(e, x) == x == op(x, e) for x in range(n))
    inv = tuple(next(y for y in range(n) if op(x, y) == e) for x in range(n))
    return GroupCheck("group", unit=e, inverse=inv)
