"""p-adic integers at fixed precision: residues mod p^n.

A PAdicApprox is one level of the inverse system Z/p^nZ; "the" p-adic
integer is the tower of compatible approximations. Digits are listed
least significant first, so carries run left to right.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import DomainError, WindowError
from .exactint import is_prime
from .natint import Verdict

__all__ = ["PAdicApprox", "AtLeast", "Inconclusive", "RecSetZp", "valuation_p", "inverse",
           "divides", "check_cp_Zp", "cp_extend", "padic_lattice", "finv_in_lattice"]


@dataclass(frozen=True)
class AtLeast:
    """Valuation not resolvable at this precision: it is >= n."""
    n: int


@dataclass(frozen=True)
class Inconclusive:
    reason: str

    def __bool__(self):
        raise TypeError("an inconclusive divisibility test has no truth value")


@dataclass(frozen=True)
class PAdicApprox:
    p: int
    n: int
    value: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise DomainError(f"{self.p} is not prime")
        if self.n < 1:
            raise DomainError(f"precision must be >= 1, got {self.n}")
        object.__setattr__(self, "value", self.value % self.p ** self.n)

    @property
    def modulus(self) -> int:
        return self.p ** self.n

    @classmethod
    def from_int(cls, x: int, p: int, n: int) -> "PAdicApprox":
        return cls(p, n, x)

    @classmethod
    def from_digits(cls, digits, p: int, n: int, tail: int = 0) -> "PAdicApprox":
        """Digits least significant first, followed by ``tail`` repeated forever."""
        ds = list(digits) + [tail] * max(0, n - len(digits))
        if any(not 0 <= d < p for d in ds):
            raise DomainError(f"digits must lie in 0..{p - 1}")
        return cls(p, n, sum(d * p ** i for i, d in enumerate(ds[:n])))

    def digits(self) -> list[int]:
        v, out = self.value, []
        for _ in range(self.n):
            v, d = divmod(v, self.p)
            out.append(d)
        return out

    def render(self) -> str:
        sep = "" if self.p <= 10 else ","
        return sep.join(str(d) for d in self.digits())

    def reduce(self, m: int) -> "PAdicApprox":
        """Projection Z/p^n -> Z/p^m."""
        if not 1 <= m <= self.n:
            raise DomainError(f"cannot reduce precision {self.n} to {m}")
        return PAdicApprox(self.p, m, self.value)

    def _check(self, other: "PAdicApprox"):
        if not isinstance(other, PAdicApprox) or (self.p, self.n) != (other.p, other.n):
            raise DomainError("operands must share p and precision")

    def __add__(self, other):
        self._check(other)
        return PAdicApprox(self.p, self.n, self.value + other.value)

    def __sub__(self, other):
        self._check(other)
        return PAdicApprox(self.p, self.n, self.value - other.value)

    def __mul__(self, other):
        self._check(other)
        return PAdicApprox(self.p, self.n, self.value * other.value)

    def __neg__(self):
        return PAdicApprox(self.p, self.n, -self.value)

    def to_json(self) -> dict:
        return {"schema": 1, "p": self.p, "n": self.n, "value": self.value,
                "digits": self.render()}

    @classmethod
    def from_json(cls, data) -> "PAdicApprox":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(int(data["p"]), int(data["n"]), int(data["value"]))

    def __str__(self):
        return f"{self.render()}... (p={self.p}, n={self.n})"


def add(x: PAdicApprox, y: PAdicApprox) -> PAdicApprox:
    return x + y


def sub(x: PAdicApprox, y: PAdicApprox) -> PAdicApprox:
    return x - y


def mul(x: PAdicApprox, y: PAdicApprox) -> PAdicApprox:
    return x * y


def add_digits(x: PAdicApprox, y: PAdicApprox) -> PAdicApprox:
    """Schoolbook addition with carries, digit by digit (checks the residue route)."""
    x._check(y)
    out, carry = [], 0
    for a, b in zip(x.digits(), y.digits()):
        carry, d = divmod(a + b + carry, x.p)
        out.append(d)
    return PAdicApprox.from_digits(out, x.p, x.n)


def valuation_p(x: PAdicApprox) -> int | AtLeast:
    if x.value == 0:
        return AtLeast(x.n)
    v, n = x.value, 0
    while v % x.p == 0:
        v //= x.p
        n += 1
    return n


def inverse(x: PAdicApprox) -> PAdicApprox:
    v = valuation_p(x)
    if v != 0:
        raise DomainError(f"{x.value} is not a unit mod {x.p}^{x.n} (valuation {v})")
    return PAdicApprox(x.p, x.n, pow(x.value, -1, x.modulus))


def divides(x: PAdicApprox, y: PAdicApprox) -> bool | Inconclusive:
    """x | y in Z_p iff val(x) <= val(y), since units divide everything."""
    x._check(y)
    vx = valuation_p(x)
    if isinstance(vx, AtLeast):
        return Inconclusive(f"divisor is 0 mod {x.p}^{x.n}: valuation at least {x.n}")
    vy = valuation_p(y)
    return True if isinstance(vy, AtLeast) else vx <= vy


def check_cp_Zp(f, p: int, n: int) -> Verdict:
    """Divisibility test over every pair of residues mod p^n."""
    m = p ** n
    vals = [int(f(x)) % m for x in range(m)] if callable(f) else [int(v) % m for v in f]
    if len(vals) != m:
        raise DomainError(f"need {m} values, got {len(vals)}")
    for x in range(m):
        for y in range(x):
            d = divides(PAdicApprox(p, n, x - y), PAdicApprox(p, n, vals[x] - vals[y]))
            if d is not True:
                return Verdict(False, "cp", (x, y), f"{x} - {y} does not divide "
                               f"f({x}) - f({y}) in Z_{p} at precision {n}")
    return Verdict(True, "cp", reason=f"all pairs mod {p}^{n} pass")


def cp_extend(f, x: PAdicApprox) -> PAdicApprox:
    """The extension of a CP function on N to Z_p, evaluated at precision n.

    f is an FnTable over N, or any table with lo, hi and a ``modulus``
    divisible by p^n. Any natural x_n ≡ x (mod p^n) in the window gives
    f(x_n) ≡ f-hat(x) (mod p^n).
    """
    m = x.modulus
    lo, hi = f.lo, f.hi
    if getattr(f, "domain", "N") != "N":
        raise DomainError("cp_extend expects a function on N")
    modulus = getattr(f, "modulus", None)
    if modulus is not None and modulus % m:
        raise DomainError(f"table is known mod {modulus}, not mod {x.p}^{x.n}")
    rep = x.value + -(-(lo - x.value) // m) * m if lo > x.value else x.value
    if rep > hi:
        raise WindowError(f"no representative of {x.value} mod {m} in {lo}..{hi}; "
                          f"the window must reach {rep}", required=(lo, rep))
    return PAdicApprox(x.p, x.n, f(rep))


@dataclass(frozen=True, init=False)
class RecSetZp:
    """F + p^n Z_p with F a set of residues mod p^n (bitmask)."""
    p: int
    n: int
    F: int

    def __init__(self, p: int, n: int, F=0):
        if not is_prime(p) or n < 1:
            raise DomainError("need a prime p and n >= 1")
        m = p ** n
        mask = F if isinstance(F, int) else sum({1 << (r % m) for r in F})
        if mask >> m:
            raise DomainError("residue outside 0..p^n - 1")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "F", mask)

    @property
    def modulus(self) -> int:
        return self.p ** self.n

    def __contains__(self, x) -> bool:
        if isinstance(x, PAdicApprox):
            if x.p != self.p or x.n < self.n:
                raise DomainError("element has the wrong prime or too little precision")
            x = x.value
        return bool(self.F >> (x % self.modulus) & 1)

    def residues(self) -> list[int]:
        return [r for r in range(self.modulus) if self.F >> r & 1]

    def _check(self, other):
        if (self.p, self.n) != (other.p, other.n):
            raise DomainError("sets must share p and n")

    def union(self, other):
        self._check(other)
        return RecSetZp(self.p, self.n, self.F | other.F)

    def inter(self, other):
        self._check(other)
        return RecSetZp(self.p, self.n, self.F & other.F)

    def complement(self):
        return RecSetZp(self.p, self.n, ~self.F & ((1 << self.modulus) - 1))

    def translate_preimage(self, t: int):
        """{x : x + t ∈ L}."""
        return RecSetZp(self.p, self.n, [r - t for r in self.residues()])

    def homothety_preimage(self, c: int):
        """{x : c x ∈ L}, by a scan of the residues."""
        m = self.modulus
        return RecSetZp(self.p, self.n, [x for x in range(m) if (c * x) % m in self])

    def as_upset(self):
        from .recsets import UPSetZ
        return UPSetZ(self.modulus, self.F)

    def __str__(self):
        return "{" + ",".join(map(str, self.residues())) + f"}}+{self.p}^{self.n}Z_{self.p}"


def padic_lattice(L: RecSetZp, kind: str = "lattice"):
    """The lattice (or Boolean algebra) generated by L under the affine DUOs of Z_p.

    Z_p and Z have the same quotient Z/p^nZ, so the family is computed by
    the same engine as for G + p^n Z over (Z, +, ×).
    """
    from .latgen import generate
    return generate(L.as_upset(), "+,×", kind)


def finv_in_lattice(L: RecSetZp, f, kind: str = "lattice") -> bool:
    """Is {x : f(x) ∈ L} (read mod p^n) a member of the family of L?"""
    from .recsets import UPSetZ
    fam = padic_lattice(L, kind)
    m = L.modulus
    pre = UPSetZ(m, [x for x in range(m) if f(x) % m in L])
    mask = fam.mask_of(pre)
    return mask is not None and fam.contains_mask(mask)
