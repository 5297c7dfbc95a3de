"""Lattices L_A(L) and Boolean algebras B_A(L) of recognizable sets.

A recognizable L is handled through a finite quotient that recognizes it:
the frying pan M_{a,k} for L ⊆ N (the normalized (a, k) of L) or Z/kZ for
L ⊆ Z, with the signature's operations. The quotient map is a morphism
for + and ×, so each DUO of N (or Z) maps onto a DUO of the quotient and
gamma^{-1}(L) is the pullback of a preimage computed in the quotient.
Family members are bitmasks over the syntactic classes of L.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

from . import finalg
from .errors import DomainError, InvariantViolation, WindowError
from .finalg import FiniteAlgebra, Operation, bits, in_boolean, in_lattice, lattice_closure
from .natint import FnTable, Verdict
from .recsets import RegSetZ, UPSetN, UPSetZ

__all__ = ["SIGNATURES", "GeneratedFamily", "generate", "member_of", "check_finv_in", "check_finv_in_auto",
           "regular_counterexample_check", "residue_family", "division_table",
           "finite_mult_lattice", "parse_signature"]

SIGNATURES = ("+", "×", "+,×")
_ALIASES = {"+": "+", "add": "+", "x": "×", "*": "×", "×": "×", "mul": "×",
            "+,×": "+,×", "+,x": "+,×", "+,*": "+,×", "add,mul": "+,×"}
DEFAULT_MEMBER_LIMIT = 1 << 16


def parse_signature(sig: str) -> str:
    try:
        return _ALIASES[sig.replace(" ", "")]
    except KeyError:
        raise DomainError(f"unknown signature {sig!r}; use one of {SIGNATURES}") from None


@dataclass(frozen=True)
class _Quotient:
    """Finite algebra recognizing L, with representatives and quotient map."""
    carrier: str  # "N" or "Z"
    a: int
    k: int
    signature: str

    @property
    def m(self) -> int:
        return self.a + self.k

    def phi(self, x: int) -> int:
        if self.carrier == "Z":
            return x % self.k
        if x < 0:
            raise DomainError(f"{x} is not in N")
        return x if x < self.a else self.a + (x - self.a) % self.k

    @cached_property
    def duos(self) -> list[tuple[str, tuple]]:
        """(label, unary table) for every DUO class of the quotient, labels refer to L."""
        m, phi = self.m, self.phi
        out = []
        if self.signature == "+":
            for t in range(m):
                out.append((f"L-{t}" if t else "L", tuple(phi(x + t) for x in range(m))))
        elif self.signature == "×":
            for c in range(m):
                out.append((f"L/{c}" if c != 1 else "L", tuple(phi(c * x) for x in range(m))))
        else:
            for c in range(m):
                for t in range(m):
                    if (c, t) == (1, 0):
                        label = "L"
                    elif c == 1:
                        label = f"L-{t}"
                    elif t == 0:
                        label = f"L/{c}"
                    else:
                        label = f"(L-{t})/{c}"
                    out.append((label, tuple(phi(c * x + t) for x in range(m))))
        return out

    def algebra(self) -> FiniteAlgebra:
        """The quotient as a FiniteAlgebra (used to cross-check the DUO list)."""
        m, phi = self.m, self.phi
        ops = []
        if "+" in self.signature:
            ops.append(Operation(2, tuple(phi(x + y) for x in range(m) for y in range(m))))
        if "×" in self.signature:
            ops.append(Operation(2, tuple(phi(x * y) for x in range(m) for y in range(m))))
        return FiniteAlgebra(m, tuple(ops))

    def to_set(self, elems: int):
        """Pull a set of quotient elements back to N or Z."""
        if self.carrier == "Z":
            return UPSetZ(self.k, elems).normalize()
        return UPSetN.from_predicate(lambda x: elems >> self.phi(x) & 1, self.a, self.k)


def _quotient_for(L, signature: str) -> _Quotient:
    if isinstance(L, UPSetZ):
        L = L.normalize()
        return _Quotient("Z", 0, L.k, signature)
    if isinstance(L, UPSetN):
        L = L.normalize()
        return _Quotient("N", L.a, L.k, signature)
    raise DomainError(f"expected UPSetN or UPSetZ, got {type(L).__name__}")


@dataclass
class GeneratedFamily:
    base: object
    signature: str
    kind: str
    quotient: _Quotient = field(repr=False)
    classes: list = field(repr=False)        # quotient elements (bitset) per class
    generators: list = field(repr=False)     # (label, class mask), distinct masks
    member_limit: int = DEFAULT_MEMBER_LIMIT

    @property
    def carrier(self) -> str:
        return self.quotient.carrier

    @property
    def n_classes(self) -> int:
        return len(self.classes)

    @property
    def full(self) -> int:
        return (1 << self.n_classes) - 1

    @cached_property
    def masks(self) -> list[int]:
        """All members as class masks, sorted by value."""
        gens = [g for _, g in self.generators]
        if self.kind == "boolean":
            return finalg.boolean_closure(gens, self.full, self.member_limit)
        return lattice_closure(gens, self.member_limit)

    @property
    def members(self) -> list:
        return [self.to_set(m) for m in self.masks]

    def __len__(self):
        return len(self.masks)

    def contains_mask(self, mask: int) -> bool:
        gens = [g for _, g in self.generators]
        if self.kind == "boolean":
            return in_boolean(gens, mask, self.full)
        return in_lattice(gens, mask)

    def to_set(self, mask: int):
        elems = 0
        for i, c in enumerate(self.classes):
            if mask >> i & 1:
                elems |= c
        return self.quotient.to_set(elems)

    def mask_of(self, X) -> int | None:
        """Class mask of X, or None if X is not a union of syntactic classes."""
        q = self.quotient
        if isinstance(X, UPSetZ) != (q.carrier == "Z"):
            raise DomainError("set and family live on different carriers")
        if isinstance(X, UPSetZ):
            width = math.lcm(X.k, q.k)
            pts = range(width)
        else:
            X = X.normalize()
            width = max(X.a, q.a) + math.lcm(X.k, q.k)
            pts = range(width)
        cls_of = self.class_index
        inside: dict[int, bool] = {}
        for x in pts:
            c = cls_of[q.phi(x)]
            b = x in X
            if inside.setdefault(c, b) != b:
                return None
        return sum(1 << c for c, b in inside.items() if b)

    @cached_property
    def class_index(self) -> list[int]:
        out = [0] * self.quotient.m
        for i, c in enumerate(self.classes):
            for e in range(self.quotient.m):
                if c >> e & 1:
                    out[e] = i
        return out

    def dnf(self, mask: int) -> list[list[str]]:
        """A union of intersections of generator preimages equal to the member."""
        gens = self.generators
        full = self.full
        lits = [(lab, g) for lab, g in gens]
        if self.kind == "boolean":
            lits += [(f"¬{lab}", full & ~g) for lab, g in gens]

        def meet(terms):
            acc = full
            for _, g in terms:
                acc &= g
            return acc

        def prune(terms):
            # drop literals that do not change the intersection
            target = meet(terms)
            terms = sorted(terms, key=lambda t: bin(t[1]).count("1"))
            keep = list(terms)
            for t in reversed(terms):
                trial = [u for u in keep if u is not t]
                if trial and meet(trial) == target:
                    keep = trial
            return keep

        if mask == 0:
            if self.kind == "boolean":
                lab, g = gens[0]
                return [[lab, f"¬{lab}"]]
            return [[lab for lab, _ in prune(lits)]]
        conjs = []
        for c in range(self.n_classes):
            if mask >> c & 1:
                conjs.append(prune([t for t in lits if t[1] >> c & 1]))
        # drop conjunctions contained in another one
        values = [meet(t) for t in conjs]
        kept = []
        for i, t in enumerate(conjs):
            vi = values[i]
            if any(j != i and vi & values[j] == vi and (vi != values[j] or j < i)
                   for j in range(len(conjs))):
                continue
            kept.append(t)
        out = [[lab for lab, _ in t] for t in kept]
        if self.eval_dnf(out) != mask:
            raise InvariantViolation(f"normal form {out} does not evaluate to mask {mask:b}")
        return out

    def eval_dnf(self, dnf) -> int:
        table = {lab: g for lab, g in self.generators}
        acc = 0
        for conj in dnf:
            term = self.full
            for lit in conj:
                term &= (self.full & ~table[lit[1:]]) if lit.startswith("¬") else table[lit]
            acc |= term
        return acc

    def class_reps(self) -> list[int]:
        """Least natural (or least nonnegative residue) in each class."""
        return [(c & -c).bit_length() - 1 for c in self.classes]

    def hasse(self) -> list[tuple[int, int]]:
        """Covering pairs (lower, upper) between member masks."""
        ms = self.masks
        edges = []
        for lo in ms:
            ups = [u for u in ms if u != lo and u & lo == lo]
            for u in ups:
                if not any(v != u and v & lo == lo and u & v == v and v != lo for v in ups):
                    edges.append((lo, u))
        return edges

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "carrier": self.carrier,
            "signature": self.signature,
            "kind": self.kind,
            "base": self.base.to_json(),
            "class_representatives": self.class_reps(),
            "generators": [{"label": lab, "set": self.to_set(g).to_json()}
                           for lab, g in self.generators],
            "members": [{"set": self.to_set(m).to_json(), "dnf": self.dnf(m)} for m in self.masks],
        }

    def to_dot(self) -> str:
        ms = self.masks
        name = {m: f"m{i}" for i, m in enumerate(ms)}
        lines = ["digraph lattice {", "  rankdir=BT;", "  node [shape=box, fontsize=10];"]
        for m in ms:
            label = str(self.to_set(m)).replace('"', '\\"')
            lines.append(f'  {name[m]} [label="{label}"];')
        for lo, up in self.hasse():
            lines.append(f"  {name[lo]} -> {name[up]};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def generate(L, signature: str = "+", kind: str = "lattice",
             member_limit: int | None = DEFAULT_MEMBER_LIMIT, enumerate_members: bool = True
             ) -> GeneratedFamily:
    """L_A(L) (kind="lattice") or B_A(L) (kind="boolean") for a recognizable L."""
    signature = parse_signature(signature)
    if kind not in ("lattice", "boolean"):
        raise DomainError(f"kind must be lattice or boolean, got {kind!r}")
    q = _quotient_for(L, signature)
    # each element e of the quotient is its own least representative
    target = bits(e for e in range(q.m) if e in L)
    # syntactic classes: elements with the same DUO signature
    duos = q.duos
    sig = [0] * q.m
    for j, (_, g) in enumerate(duos):
        for e in range(q.m):
            if target >> g[e] & 1:
                sig[e] |= 1 << j
    part = finalg.Partition(tuple(sig))
    classes = [bits(c) for c in sorted(part.classes(), key=min)]
    index = [0] * q.m
    for i, c in enumerate(classes):
        for e in range(q.m):
            if c >> e & 1:
                index[e] = i
    gens: dict[int, str] = {}
    for label, g in duos:
        pre = finalg.preimage(g, target)
        mask = 0
        for e in range(q.m):
            if pre >> e & 1:
                mask |= 1 << index[e]
        gens.setdefault(mask, label)
    base = L.normalize()
    generators = sorted(((lab, m) for m, lab in gens.items()), key=lambda t: t[1])
    fam = GeneratedFamily(base, signature, kind, q, classes, generators,
                          member_limit if member_limit is not None else 1 << 62)
    if enumerate_members:
        fam.masks  # noqa: B018 - force the closure so callers get a complete family
    return fam


def member_of(fam: GeneratedFamily, X):
    """(True, dnf) if X is in the family, else (False, None)."""
    mask = fam.mask_of(X)
    if mask is None or not fam.contains_mask(mask):
        return False, None
    return True, fam.dnf(mask)


def _needed_classes(fam: GeneratedFamily) -> int:
    if fam.kind == "boolean":
        return fam.full
    acc = 0
    for _, g in fam.generators:
        acc |= g
    return acc


def _required_window(fam: GeneratedFamily, lo: int) -> tuple[int, int]:
    q = fam.quotient
    need = _needed_classes(fam)
    if q.carrier == "Z":
        return lo, lo + q.k - 1
    x, seen = lo, 0
    idx = fam.class_index
    limit = lo + q.m + q.k  # every class present above a is met within one period
    while seen & need != need and x <= limit:
        seen |= 1 << idx[q.phi(x)]
        x += 1
    if seen & need != need:
        # some needed class only has elements below lo
        missing = need & ~seen
        c = (missing & -missing).bit_length() - 1
        lowest = (fam.classes[c] & -fam.classes[c]).bit_length() - 1
        return lowest, max(x - 1, lowest)
    return lo, x - 1


def check_finv_in(fam: GeneratedFamily, f: FnTable, window: tuple[int, int] | None = None
                  ) -> Verdict:
    """Does the sampled preimage {x : f(x) ∈ L} agree with a family member?"""
    lo, hi = window if window is not None else (f.lo, f.hi)
    if not (f.lo <= lo <= hi <= f.hi):
        raise DomainError(f"window {lo}..{hi} not inside the table {f.lo}..{f.hi}")
    q = fam.quotient
    if q.carrier == "N" and lo < 0:
        raise DomainError("a family over N needs a window inside N")
    req = _required_window(fam, lo)
    if req[0] < lo or req[1] > hi:
        raise WindowError(f"window {lo}..{hi} does not meet every syntactic class; "
                          f"need {req[0]}..{req[1]}", required=req)
    L = fam.base
    idx = fam.class_index
    seen: dict[int, tuple[int, bool]] = {}
    for x in range(lo, hi + 1):
        v = f(x)
        inside = (v >= 0 or q.carrier == "Z") and v in L
        c = idx[q.phi(x)]
        if c in seen and seen[c][1] != inside:
            y = seen[c][0]
            wit = (y, x) if seen[c][1] else (x, y)
            return Verdict(False, "finv-in", wit,
                           f"{wit[0]} and {wit[1]} are syntactically equivalent but only "
                           f"{wit[0]} is in the sampled preimage")
        seen.setdefault(c, (x, inside))
    mask = sum(1 << c for c, (_, b) in seen.items() if b)
    if fam.contains_mask(mask):
        member = fam.to_set(mask)
        return Verdict(True, "finv-in", reason=f"matches member {member} on {lo}..{hi}",
                       info={"member": member.to_json(), "dnf": fam.dnf(mask), "window": [lo, hi]})
    # explain the failure: a class below a class of the preimage, missing from it
    gens = [g for _, g in fam.generators]
    for c in range(fam.n_classes):
        if mask >> c & 1:
            seg = fam.full
            for g in gens:
                if g >> c & 1:
                    seg &= g
            if fam.kind == "boolean":
                seg = 1 << c
            extra = seg & ~mask
            if extra:
                d = (extra & -extra).bit_length() - 1
                xc, xd = seen[c][0], seen.get(d, (None,))[0]
                return Verdict(False, "finv-in", (xc, xd) if xd is not None else (xc,),
                               f"every DUO sending {xc} into L also sends {xd} into L, "
                               f"yet only {xc} is in the sampled preimage")
    return Verdict(False, "finv-in", (), "the sampled preimage is empty but ∅ is not a member")


def check_finv_in_auto(fam: GeneratedFamily, f, lo: int | None = None) -> Verdict:
    """check_finv_in for a callable f, tabulated on an automatically sized window.

    The window meets every needed class and spans at least two passes over
    the quotient, so that each class is sampled more than once.
    """
    q = fam.quotient
    if lo is None:
        lo = 0 if q.carrier == "N" else -2 * q.k
    start, hi = _required_window(fam, lo)
    lo = min(lo, start)
    hi = max(hi, lo + 2 * q.m)
    domain = "Z" if lo < 0 else "N"
    return check_finv_in(fam, FnTable.from_function(f, lo, hi, domain))


def regular_counterexample_check(f=None, L=None, window: int = 200, shifts: int | None = None
                                 ) -> Verdict:
    """Test f^{-1}(L) against the lattice generated by translates L - t, |t| <= shifts.

    With the default L = 6+10N seen inside Z (regular, not recognizable) and f(x) = x²,
    the preimage contains negatives all the way down the window while every
    translate has none below 6 - shifts, so no lattice term can match.
    """
    f = f or (lambda x: x * x)
    if L is None:
        L = RegSetZ(UPSetN.progression(6, 10), UPSetN.empty())
    if isinstance(L, UPSetZ):
        table = FnTable.from_function(f, -window, window, "Z")
        fam = generate(L, "+", "lattice")
        return check_finv_in(fam, table)
    shifts = window // 2 if shifts is None else shifts
    pts = range(-window, window + 1)
    off = window

    def pattern(pred):
        return sum(1 << (x + off) for x in pts if pred(x))

    pre = pattern(lambda x: f(x) in L)
    gens = {pattern(lambda x, t=t: (x + t) in L): t for t in range(-shifts, shifts + 1)}
    neg_pre = sum(1 for x in pts if x < 0 and f(x) in L)
    neg_bound = max(sum(1 for x in pts if x < 0 and (x + t) in L) for t in gens.values())
    info = {"window": [-window, window], "shifts": [-shifts, shifts],
            "negatives_in_preimage": neg_pre, "max_negatives_in_a_translate": neg_bound}
    if in_lattice(list(gens), pre):
        return Verdict(True, "finv-in", reason="the preimage is a lattice term of translates "
                       "on the window", info=info)
    lowest = min((x for x in pts if f(x) in L), default=None)
    floor = min((x for g in gens for x in pts if g >> (x + off) & 1), default=None)
    return Verdict(False, "finv-in", (lowest,) if lowest is not None else (),
                   f"{lowest} is in the preimage but no translate reaches below {floor}; "
                   f"{neg_pre} negatives in the preimage versus at most {neg_bound} in any translate",
                   info=info)


def residue_family(k: int) -> list[UPSetZ]:
    """{G + kZ : G ⊆ {0..k-1}}, listed by bitmask."""
    return [UPSetZ(k, G).normalize() for G in range(1 << k)]


def division_table(L) -> dict[int, frozenset[int]]:
    """L/a for each a dividing some element of a finite L ⊆ N \\ {0}, on explicit sets."""
    L = frozenset(L)
    divs = sorted({d for x in L for d in range(1, x + 1) if x % d == 0})
    return {a: frozenset(x // a for x in L if x % a == 0) for a in divs}


def finite_mult_lattice(L) -> list[frozenset[int]]:
    """L_×(L) for finite L ⊆ N \\ {0}, closing explicit sets under ∪ and ∩."""
    gens = set(division_table(L).values()) | {frozenset()}
    found = set(gens)
    frontier = list(found)
    while frontier:
        nxt = []
        for x in frontier:
            for y in list(found):
                for z in (x | y, x & y):
                    if z not in found:
                        found.add(z)
                        nxt.append(z)
        frontier = nxt
    return sorted(found, key=lambda s: (len(s), sorted(s)))
