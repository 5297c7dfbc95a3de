"""Constructions of nontrivial congruence preserving functions on N.

floor_e_factorial   x -> floor(e * x!)  (1 at x = 0)
zigzag_f            an alternating sum whose CP lift is not monotone
cp_window_lift      the CP function below a target, one CRT class at a time
appendix_F          F(0)=0, F(1)=F(2)=2, F(2^n - 1) ≡ 0 mod 2^n, CP
appendix_F_mod      F modulo a power of two, fast enough for x up to 2^16
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import gmpy2
import numpy as np
from gmpy2 import mpz

from .errors import DomainError, InvariantViolation
from .exactint import ResidueConstraint, crt_merge, lcm_upto, primes_upto
from .natint import FnTable

__all__ = ["CPWitnessTable", "ResidueTable", "floor_e_factorial", "zigzag_f",
           "cp_window_lift", "appendix_F", "appendix_F_values", "appendix_F_mod",
           "divisibility_witness", "lift_constraint", "extend_divisible"]


@dataclass(frozen=True)
class CPWitnessTable:
    table: FnTable
    certificates: dict
    meta: dict = field(default_factory=dict)

    @property
    def certified(self) -> bool:
        return all(self.certificates.values())

    def __call__(self, x: int) -> int:
        return self.table(x)

    def to_json(self) -> dict:
        out = self.table.to_json()
        out["certificate"] = dict(self.certificates)
        if self.meta:
            out["meta"] = dict(self.meta)
        return out


@dataclass(frozen=True)
class ResidueTable:
    """Values of f modulo ``modulus`` on lo..hi (used where exact values are too big)."""
    lo: int
    hi: int
    modulus: int
    values: tuple
    meta: dict = field(default_factory=dict)

    def __call__(self, x: int) -> int:
        if not self.lo <= x <= self.hi:
            raise DomainError(f"{x} is outside the window {self.lo}..{self.hi}")
        return self.values[x - self.lo]


def divisibility_witness(values, lo: int = 0):
    """First (x, y), y < x, with (x - y) not dividing f(x) - f(y); None if there is none."""
    vals = [mpz(v) for v in values]
    for i in range(1, len(vals)):
        vi = vals[i]
        for j in range(i):
            if (vi - vals[j]) % (i - j):
                return (lo + i, lo + j)
    return None


def floor_e_factorial(x: int) -> int:
    """floor(e * x!) for x >= 1 and 1 for x = 0, via sum_{j<=x} x!/j!."""
    if x < 0:
        raise DomainError("x must be a natural number")
    total, term = 0, 1
    # term runs through x!/x!, x!/(x-1)!, ..., x!/0!
    for j in range(x, -1, -1):
        total += term
        term *= j
    return total


def zigzag_f(x: int) -> int:
    """sum over even y <= x of 2^(y+2) lcm(y+2), minus sum over odd z <= x of 2^z lcm(z)."""
    if x < 0:
        raise DomainError("x must be a natural number")
    total = 0
    for y in range(0, x + 1):
        if y % 2 == 0:
            total += 2 ** (y + 2) * lcm_upto(y + 2)
        else:
            total -= 2 ** y * lcm_upto(y)
    return total


def lift_constraint(values, x: int) -> ResidueConstraint:
    """Merge g(x) ≡ g(x - d) (mod d) for d = 1..x into one constraint."""
    acc = ResidueConstraint(0, 1)
    for d in range(1, x + 1):
        nxt = crt_merge(acc, ResidueConstraint(values[x - d] % d, d))
        if nxt is None:
            raise InvariantViolation(f"incompatible constraints at x={x}, d={d}: "
                                     f"{acc} against {values[x - d] % d} mod {d}")
        acc = nxt
    return acc


def extend_divisible(seed, x_max: int) -> FnTable:
    """Extend seed values on 0..len(seed)-1 to 0..x_max by the least value >= 0
    satisfying every divisibility constraint with the earlier points."""
    g = [int(v) for v in seed]
    if divisibility_witness(g) is not None:
        raise DomainError("the seed itself violates pairwise divisibility")
    for x in range(len(g), x_max + 1):
        g.append(lift_constraint(g, x).r)
    return FnTable("N", 0, x_max, tuple(g[: x_max + 1]))


def cp_window_lift(target: FnTable) -> CPWitnessTable:
    """Largest CP-compatible value <= target(x) at each x, built left to right."""
    if target.lo != 0 or target.domain != "N":
        raise DomainError("the target must be a table over N starting at 0")
    g: list[int] = []
    for x in target.points():
        c = lift_constraint(g, x)
        if x and c.m != lcm_upto(x):
            raise InvariantViolation(f"merged modulus {c.m} != lcm(1..{x}) at x={x}")
        t = target(x)
        g.append(t - (t - c.r) % c.m)
    table = FnTable("N", 0, target.hi, tuple(g))
    certs = {
        "pairwise_divisible": divisibility_witness(g) is None,
        "within_lcm_of_target": all(target(x) - (lcm_upto(x) if x else 1) < v <= target(x)
                                    for x, v in table.items()),
        "over_linear": all(v >= x for x, v in table.items()),
    }
    return CPWitnessTable(table, certs, {"policy": "largest value <= target"})


# -- the appendix function F -------------------------------------------------

def _prime_power_below(p: int, x: int) -> int:
    q = p
    while q * p <= x:
        q *= p
    return q


def appendix_F_values(x_max: int) -> list[int]:
    """Exact F(0..x_max): for each prime p <= x one constraint mod the largest p^a <= x.

    F(x) ≡ F(x - q) (mod q) carries every F(x) ≡ F(x - d) (mod d) with p-part of d
    dividing q; for x = 2^n - 1 the 2-part is replaced by F(x) ≡ 0 (mod 2^n).
    The CRT class is then represented by its least element >= x.
    """
    if x_max < 0:
        raise DomainError("x_max must be >= 0")
    F = [mpz(0), mpz(2), mpz(2)][: x_max + 1]
    primes = primes_upto(x_max)
    for x in range(3, x_max + 1):
        r, m = mpz(0), mpz(1)
        for p in primes:
            if p > x:
                break
            if p == 2 and (x + 1) & x == 0:
                q, c = x + 1, 0
            else:
                q = _prime_power_below(p, x)
                c = F[x - q] % q
            k = (c - r) * gmpy2.invert(m % q, q) % q
            r += m * k
            m *= q
        if r < x:
            r += m
        F.append(r)
    return [int(v) for v in F]


def appendix_F(x_max: int, certify: bool = True) -> CPWitnessTable:
    if x_max < 3:
        raise DomainError("x_max must be >= 3")
    vals = appendix_F_values(x_max)
    table = FnTable("N", 0, x_max, tuple(vals))
    certs = {}
    if certify:
        n = 1
        ok2 = True
        while (1 << n) - 1 <= x_max:
            ok2 &= vals[(1 << n) - 1] % (1 << n) == 0
            n += 1
        certs = {
            "pairwise_divisible": divisibility_witness(vals) is None,
            "zero_mod_2n_at_2n_minus_1": ok2,
            "over_linear_from_3": all(vals[x] >= x for x in range(3, x_max + 1)),
        }
    return CPWitnessTable(table, certs, {"policy": "least CRT solution >= x",
                                         "seeds": [0, 2, 2]})


# fast residue route

def _vinv(a: np.ndarray, m: np.ndarray) -> np.ndarray:
    """Elementwise inverse of a modulo m (extended Euclid on int64 arrays)."""
    a = a % m
    r0, r1 = m.copy(), a.copy()
    s0, s1 = np.zeros_like(m), np.ones_like(m)
    while True:
        nz = r1 != 0
        if not nz.any():
            break
        d = np.where(nz, r1, 1)
        qq = np.where(nz, r0 // d, 0)
        r0, r1 = np.where(nz, r1, r0), np.where(nz, r0 - qq * r1, r1)
        s0, s1 = np.where(nz, s1, s0), np.where(nz, s0 - qq * s1, s1)
    return s0 % m


def _product_tree(vals) -> list[list]:
    levels = [[mpz(v) for v in vals]]
    while len(levels[-1]) > 1:
        cur = levels[-1]
        nxt = [a * b for a, b in zip(cur[0::2], cur[1::2])]
        if len(cur) % 2:
            nxt.append(cur[-1])
        levels.append(nxt)
    return levels


def _remainders(n, tree, count: int) -> list:
    """n mod each of the first ``count`` leaves of a product tree."""
    rs = [n % tree[-1][0]]
    for lvl in range(len(tree) - 2, -1, -1):
        level = tree[lvl]
        need = min(-(-count // (1 << lvl)), len(level))
        rs = [rs[i >> 1] % level[i] for i in range(need)]
    return rs


def _blocks3(a: np.ndarray, fill: int = 1) -> np.ndarray:
    pad = (-len(a)) % 3
    return np.concatenate([a, np.full(pad, fill, dtype=np.int64)]).reshape(-1, 3)


def appendix_F_mod(x_max: int, modulus: int | None = None) -> ResidueTable:
    """F(0..x_max) modulo ``modulus`` (exact values when modulus is None).

    Same constraints and representative policy as appendix_F_values, but the
    odd residues of earlier values are kept in tables (F(i) mod Q_p only for
    the i that can still be looked up) and the CRT runs over product trees.
    When modulus is a power of two, steps whose value is never looked up
    again are finished by base extension modulo a power of two, which
    avoids the big-integer reconstruction.
    """
    if x_max < 3:
        raise DomainError("x_max must be >= 3")
    N = x_max
    odd = primes_upto(N)[1:]
    Q, Lneed = [], []
    for p in odd:
        Q.append(_prime_power_below(p, N))
        best, pa = 0, p
        while pa <= N:
            # F(i) mod p^a is read back at i = x mod p^a < p^a, and only while x <= N
            best = max(best, min(pa, N - pa + 1))
            pa *= p
        Lneed.append(best)
    order = sorted(range(len(odd)), key=lambda j: -Lneed[j])
    L_sorted = [Lneed[j] for j in order]
    Q_sorted = np.array([Q[j] for j in order], dtype=np.int64)
    rtree = _product_tree(np.prod(_blocks3(Q_sorted), axis=1).tolist()) if odd else None
    off = np.zeros(len(odd), dtype=np.int64)
    total = 0
    for j in range(len(odd)):
        off[j] = total
        total += Lneed[j]
    flat = np.zeros(total, dtype=np.uint16 if N < 65536 else np.uint32)
    off_sorted = off[order] if odd else off
    K = N.bit_length() + 1
    F2 = np.zeros(N + 1, dtype=np.int64)  # F mod 2^K, enough for every 2-part lookup
    out: list[int] = [0] * (N + 1)

    def record(i: int, v) -> None:
        F2[i] = int(v % (1 << K))
        out[i] = int(v % modulus) if modulus else int(v)
        lo, hi = 0, len(L_sorted)
        while lo < hi:
            mid = (lo + hi) // 2
            if L_sorted[mid] > i:
                lo = mid + 1
            else:
                hi = mid
        cnt = lo
        if cnt:
            rs = _remainders(mpz(v), rtree, -(-cnt // 3))
            rb = np.array([int(r) for r in rs], dtype=np.int64)
            flat[off_sorted[:cnt] + i] = np.repeat(rb, 3)[:cnt] % Q_sorted[:cnt]

    for i, v in enumerate((0, 2, 2)):
        record(i, v)

    events = {}
    for j, p in enumerate(odd):
        pk = p
        while pk <= N:
            events[pk] = j
            pk *= p
    q = np.ones(len(odd), dtype=np.int64)
    t = np.zeros(len(odd), dtype=np.int64)
    M_odd = mpz(1)
    active = 0
    ptree, qblocks = None, None
    q2 = 1
    q2max = 1 << (N.bit_length() - 1)
    use_ext = modulus is not None and modulus & (modulus - 1) == 0
    BM = 1 << max(K, modulus.bit_length() if modulus else 0)
    e = np.zeros(len(odd), dtype=np.int64)  # (M_odd / q_j) mod BM
    Mm = 1
    shortcuts = 0
    for x in range(3, N + 1):
        j = events.get(x)
        if j is not None:
            p = odd[j]
            old = int(q[j])
            cof = M_odd // old
            if old == 1:
                active = j + 1
            others = np.ones(active, dtype=bool)
            others[j] = False
            if active > 1:
                qa = q[:active][others]
                t[:active][others] = t[:active][others] * _vinv(np.full_like(qa, p), qa) % qa
                e[:active][others] = e[:active][others] * p % BM
            q[j] = old * p
            t[j] = pow(int(cof % int(q[j])), -1, int(q[j]))
            e[j] = int(cof % BM)
            M_odd *= p
            Mm = int(M_odd % BM)
            qblocks = _blocks3(q[:active])
            ptree = _product_tree(np.prod(qblocks, axis=1).tolist())
        if q2 * 2 <= x:
            q2 *= 2
        if (x + 1) & x == 0:
            m2, c2 = x + 1, 0
        else:
            m2, c2 = q2, int(F2[x % q2] % q2)
        qa = q[:active]
        c = flat[off[:active] + x % qa].astype(np.int64) % qa
        y = c * t[:active] % qa
        if (use_ext and x >= q2max and (not L_sorted or L_sorted[0] <= x)
                and M_odd > (10 ** 10) * (x + 1)):
            # r_odd = sum y_j M/q_j - k M with k = floor(sum y_j/q_j); the float
            # estimate is trusted only away from an integer, which also puts
            # r_odd above 1e-9 M_odd > x, so no "+ M" correction is needed
            s = math.fsum((y / qa).tolist())
            k = math.floor(s)
            if 1e-9 < s - k < 1 - 1e-9:
                ro = (int((y * e[:active] % BM).sum()) - k * Mm) % BM
                k2 = (c2 - ro) * pow(Mm % m2, -1, m2) % m2 if m2 > 1 else 0
                out[x] = (ro + Mm * k2) % BM % modulus
                shortcuts += 1
                continue
        yb = _blocks3(y, fill=0)
        qb = qblocks
        bs = (yb[:, 0] * (qb[:, 1] * qb[:, 2]) + yb[:, 1] * (qb[:, 0] * qb[:, 2])
              + yb[:, 2] * (qb[:, 0] * qb[:, 1]))
        S = [mpz(v) for v in bs.tolist()]
        for P in ptree[:-1]:
            nS = [a * d + b * cc for a, b, cc, d in zip(S[0::2], S[1::2], P[0::2], P[1::2])]
            if len(S) % 2:
                nS.append(S[-1])
            S = nS
        r_odd = S[0] % M_odd if S else mpz(0)
        k2 = (c2 - r_odd) * gmpy2.invert(M_odd % m2, m2) % m2 if m2 > 1 else 0
        r = r_odd + M_odd * k2
        if r < x:
            r += M_odd * m2
        record(x, r)
    return ResidueTable(0, N, modulus or 0, tuple(out),
                        {"policy": "least CRT solution >= x", "shortcut_steps": shortcuts})
