"""Narrow-part Gram-matrix enumeration for the nine configuration types.

Each type AI1 .. BIII is an exhaustive scan over integer pairing matrices
(diagonal 4, entries alpha_ij) within floating-point loop bounds, followed
by divisor-loop factorization into generalized Cartan matrices and
symmetrization into a primitive Gram matrix B.  Counts deliberately
include every factorization emitted (no deduplication), and the float
thresholds keep the historical slack margins (+0.1, -0.1, +0.000001)
exactly, because the published totals depend on them.

The per-record invariants are
    a  = largest nonzero elementary divisor of B,
    a1 = product of the distinct odd primes of a,
    a2 = largest odd prime of a (1 if none),
while summaries track the max of a, a1 and of the largest prime factor
including 2 (the historical aggregation rule; identical here since every
type's maximum is odd).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import acosh, cosh, floor, gcd, isqrt, sqrt
from typing import Callable, Iterable, Iterator, Sequence

NARROW_TYPES = ("AI1", "AI0", "AII1", "AII0", "AIII", "BI", "BII1", "BII2", "BIII")

# Literal bound tables with the historical slack handling (10 significant
# digits).  bounds.BoundConstants reproduces these to 1e-6; tests pin that.
_RH1_2D = (
    (12.25000000, 13.37793021, 14.23012096, 14.94097150),
    (13.37793021, 14.57106781, 15.47225159, 16.22381115),
    (14.23012096, 15.47225159, 16.41025403, 17.19241152),
    (14.94097150, 16.22381115, 17.19241152, 18.00000000),
)
_RH1_1D = (9.412375826, 10.37390342, 11.10113930, 11.70820393)
_RH2_1D = (38.68043607, 41.73090517, 44.05297726, 46.0)
_RH4_1D = (1.191398091, 1.095286061, 1.022736500, 0.962423650)
_RH3 = 68.1815011826
_RH2_90 = 31.15549442
_RH4_90 = 1.429914377
_RBIII = 31.70820393
_ETA0_10 = 1.9248473002

_B_SEVEN_SQ = (7 + 0.1) ** 2  # 50.41


@dataclass(frozen=True)
class NarrowRecord:
    type_tag: str
    k: int
    b: tuple[int, ...]  # row-major, k*k entries, content 1
    a: int
    a1: int
    a2: int


@dataclass(frozen=True)
class EnumerationSummary:
    type_tag: str
    n: int
    max_a: int
    max_a1: int
    max_a2: int

    def as_line(self) -> str:
        return f"{self.type_tag}\t{self.n}\t{self.max_a}\t{self.max_a1}\t{self.max_a2}"


# ----------------------------------------------------------------------
# small cached number theory tuned for the hot loop

_div_cache: dict[int, tuple[int, ...]] = {}


def _divisors(n: int) -> tuple[int, ...]:
    ds = _div_cache.get(n)
    if ds is None:
        small, large = [], []
        i = 1
        while i * i <= n:
            if n % i == 0:
                small.append(i)
                if i * i != n:
                    large.append(n // i)
            i += 1
        small.extend(reversed(large))
        ds = tuple(small)
        _div_cache[n] = ds
    return ds


_rad_cache: dict[int, tuple[int, int, int]] = {}


def _rad_maxp_oddmax(n: int) -> tuple[int, int, int]:
    """(odd radical, largest prime, largest odd prime) of n >= 1."""
    r = _rad_cache.get(n)
    if r is None:
        m = n
        rad = 1
        maxp = 1
        oddmax = 1
        while m % 2 == 0:
            maxp = 2
            m //= 2
        p = 3
        while p * p <= m:
            if m % p == 0:
                rad *= p
                maxp = oddmax = p
                while m % p == 0:
                    m //= p
            p += 2
        if m > 1:
            rad *= m
            maxp = oddmax = m
        r = (rad, maxp, oddmax)
        _rad_cache[n] = r
    return r


def _gcd_all(vals: Iterable[int]) -> int:
    g = 0
    for v in vals:
        g = gcd(g, v)
        if g == 1:
            return 1
    return g


# ----------------------------------------------------------------------
# determinant divisors D2, D3 per matrix size (all minors, no symmetry
# assumption, matching a general Smith normal form)

def _d2_d3_3(b: Sequence[int]) -> tuple[int, int]:
    b0, b1, b2, b3, b4, b5, b6, b7, b8 = b
    g = _gcd_all((
        b0 * b4 - b1 * b3, b0 * b5 - b2 * b3, b1 * b5 - b2 * b4,
        b0 * b7 - b1 * b6, b0 * b8 - b2 * b6, b1 * b8 - b2 * b7,
        b3 * b7 - b4 * b6, b3 * b8 - b5 * b6, b4 * b8 - b5 * b7,
    ))
    det = (b0 * (b4 * b8 - b5 * b7) - b1 * (b3 * b8 - b5 * b6)
           + b2 * (b3 * b7 - b4 * b6))
    return g, abs(det)


_TRIPLES4 = ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3))
_PAIRS4 = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


def _d2_d3_4(b: Sequence[int]) -> tuple[int, int]:
    rows = (b[0:4], b[4:8], b[8:12], b[12:16])
    g2 = 0
    for i, j in _PAIRS4:
        ri, rj = rows[i], rows[j]
        for k, l in _PAIRS4:
            m = ri[k] * rj[l] - ri[l] * rj[k]
            if m:
                g2 = gcd(g2, m)
                if g2 == 1:
                    break
        if g2 == 1:
            break
    g3 = 0
    for ri_, rj_, rk_ in _TRIPLES4:
        r0, r1, r2 = rows[ri_], rows[rj_], rows[rk_]
        for c0, c1, c2 in _TRIPLES4:
            m = (r0[c0] * (r1[c1] * r2[c2] - r1[c2] * r2[c1])
                 - r0[c1] * (r1[c0] * r2[c2] - r1[c2] * r2[c0])
                 + r0[c2] * (r1[c0] * r2[c1] - r1[c1] * r2[c0]))
            if m:
                g3 = gcd(g3, m)
    return g2, g3


_TRIPLES5 = tuple((i, j, k) for i in range(5) for j in range(i + 1, 5)
                  for k in range(j + 1, 5))
_PAIRS5 = tuple((i, j) for i in range(5) for j in range(i + 1, 5))


def _d2_d3_5(b: Sequence[int]) -> tuple[int, int]:
    rows = tuple(b[5 * i:5 * i + 5] for i in range(5))
    g2 = 0
    for i, j in _PAIRS5:
        ri, rj = rows[i], rows[j]
        for k, l in _PAIRS5:
            m = ri[k] * rj[l] - ri[l] * rj[k]
            if m:
                g2 = gcd(g2, m)
                if g2 == 1:
                    break
        if g2 == 1:
            break
    g3 = 0
    for ri_, rj_, rk_ in _TRIPLES5:
        r0, r1, r2 = rows[ri_], rows[rj_], rows[rk_]
        for c0, c1, c2 in _TRIPLES5:
            m = (r0[c0] * (r1[c1] * r2[c2] - r1[c2] * r2[c1])
                 - r0[c1] * (r1[c0] * r2[c2] - r1[c2] * r2[c0])
                 + r0[c2] * (r1[c0] * r2[c1] - r1[c1] * r2[c0]))
            if m:
                g3 = gcd(g3, m)
    return g2, g3


_D2D3 = {3: _d2_d3_3, 4: _d2_d3_4, 5: _d2_d3_5}


# ----------------------------------------------------------------------
# emissions: candidate pairing matrix -> stream of primitive B
#
# Each emitter yields (bflat, ctx) where ctx carries the alpha values the
# main-lattice filter branches on.

def _emit_chain3(alpha12: int, alpha23: int, alpha13: int, r: int) -> Iterator[tuple]:
    """Types AI1/BI (alpha12 >= 1) and AI0 (alpha12 == 0)."""
    ctx = (alpha12, alpha23)
    if alpha12 == 0:
        div12: tuple[int, ...] = (0,)
    else:
        div12 = _divisors(alpha12)
    for a12 in div12:
        a21 = alpha12 // a12 if a12 else 0
        for a23 in _divisors(alpha23):
            a32 = alpha23 // a23
            for a13 in _divisors(alpha13):
                a31 = alpha13 // a13
                if a12 * a23 * a31 != a21 * a13 * a32:
                    continue
                d0 = a13 * a32
                d1 = a23 * a31
                d2 = a31 * a32
                bflat = (-2 * d0, a12 * d1, a13 * d2,
                         a21 * d0, -2 * d1, a23 * d2,
                         a31 * d0, a32 * d1, -2 * d2)
                c = _gcd_all(bflat)
                if c > 1:
                    bflat = tuple(x // c for x in bflat)
                yield bflat, ctx


def _emit_quad_chain(alpha13: int, alpha34: int, alpha24: int, alpha14: int,
                     root_u: int) -> Iterator[tuple]:
    """Types AII1, BII1, BIII: edges (1,3),(3,4),(2,4),(1,4) with the
    4-point product condition a13 a34 a41 = root_u."""
    ctx = (alpha34,)
    for a34 in _divisors(alpha34):
        a43 = alpha34 // a34
        for a13 in _divisors(alpha13):
            a31 = alpha13 // a13
            den = a13 * a34
            if root_u % den:
                continue
            a41 = root_u // den
            if alpha14 % a41:
                continue
            a14 = alpha14 // a41
            for a24 in _divisors(alpha24):
                a42 = alpha24 // a24
                d0 = a13 * a34 * a42
                d1 = a31 * a43 * a24
                d2 = a31 * a34 * a42
                d3 = a31 * a43 * a42
                bflat = (-2 * d0, 0, a13 * d2, a14 * d3,
                         0, -2 * d1, 0, a24 * d3,
                         a31 * d0, 0, -2 * d2, a34 * d3,
                         a41 * d0, a42 * d1, a43 * d2, -2 * d3)
                c = _gcd_all(bflat)
                if c > 1:
                    bflat = tuple(x // c for x in bflat)
                yield bflat, ctx


def _emit_quad_tree(alpha13: int, alpha24: int, alpha14: int) -> Iterator[tuple]:
    """Type AII0: edges (1,3),(1,4),(2,4) form a tree, no cycle condition."""
    ctx = ()
    for a13 in _divisors(alpha13):
        a31 = alpha13 // a13
        for a24 in _divisors(alpha24):
            a42 = alpha24 // a24
            for a14 in _divisors(alpha14):
                a41 = alpha14 // a14
                d0 = a13 * a14 * a42
                d1 = a13 * a41 * a24
                d2 = a31 * a14 * a42
                d3 = a13 * a42 * a41
                bflat = (-2 * d0, 0, a13 * d2, a14 * d3,
                         0, -2 * d1, 0, a24 * d3,
                         a31 * d0, 0, -2 * d2, 0,
                         a41 * d0, a42 * d1, 0, -2 * d3)
                c = _gcd_all(bflat)
                if c > 1:
                    bflat = tuple(x // c for x in bflat)
                yield bflat, ctx


def _emit_quad_cycle(alpha13: int, alpha23: int, alpha24: int, alpha14: int,
                     u: int) -> Iterator[tuple]:
    """Type BII2: 4-cycle 1-3-2-4-1 with a13 a32 a24 a41 = u (u may be
    negative on the minus branch of the quadratic)."""
    ctx = ()
    for a13 in _divisors(alpha13):
        a31 = alpha13 // a13
        for a32 in _divisors(alpha23):
            a23 = alpha23 // a32
            for a24 in _divisors(alpha24):
                a42 = alpha24 // a24
                den = a13 * a32 * a24
                if u % den:
                    continue
                a41 = u // den
                if alpha14 % a41:
                    continue
                a14 = alpha14 // a41
                d0 = a13 * a14 * a32
                d1 = a31 * a14 * a23
                d2 = a31 * a14 * a32
                d3 = a13 * a41 * a32
                bflat = (-2 * d0, 0, a13 * d2, a14 * d3,
                         0, -2 * d1, a23 * d2, a24 * d3,
                         a31 * d0, a32 * d1, -2 * d2, 0,
                         a41 * d0, a42 * d1, 0, -2 * d3)
                c = _gcd_all(bflat)
                if c > 1:
                    bflat = tuple(x // c for x in bflat)
                yield bflat, ctx


def _emit_penta(al13: int, al35: int, al15: int, al14: int, al24: int,
                al25: int, rq: int, rq1: int) -> Iterator[tuple]:
    """Type AIII, 5 x 5.  Two of the Cartan entries (a51, a52) are only
    constrained through integrality of a15 and a25, so they are carried as
    exact fractions; the final matrix is cleared to a primitive integer one.
    """
    ctx = ()
    for a13 in _divisors(al13):
        a31 = al13 // a13
        for a35 in _divisors(al35):
            a53 = al35 // a35
            # a51 = rq / (a13 a35) as an exact fraction p51/q51
            den = a13 * a35
            g0 = gcd(rq, den)
            p51, q51 = rq // g0, den // g0
            # a15 = al15 / a51 must be an integer
            if (al15 * q51) % p51:
                continue
            a15 = (al15 * q51) // p51
            for a14 in _divisors(al14):
                a41 = al14 // a14
                for a24 in _divisors(al24):
                    a42 = al24 // a24
                    # a52 = rq1 * a14 / (a13 a35 a24 al14), fraction p52/q52
                    num = rq1 * a14
                    den2 = a13 * a35 * a24 * al14
                    g1 = gcd(num, den2)
                    p52, q52 = num // g1, den2 // g1
                    if (al25 * q52) % p52:
                        continue
                    a25 = (al25 * q52) // p52
                    d0 = a14 * a13 * a42 * a25
                    d1 = a41 * a13 * a24 * a25
                    d2 = a14 * a31 * a42 * a25
                    d3 = a41 * a13 * a42 * a25
                    # d4 carries the a52 fraction: p52/q52 * (a41 a13 a24)
                    d4num = a41 * a13 * a24 * p52
                    # scale everything by L = lcm(q51, q52_eff)
                    d4g = gcd(d4num, q52)
                    d4num //= d4g
                    d4den = q52 // d4g
                    # row 5 entries a51*d0 and a52*d1 are fractional too
                    r50num, r50den = p51 * d0, q51
                    g2 = gcd(r50num, r50den)
                    r50num //= g2
                    r50den //= g2
                    r51num, r51den = p52 * d1, q52
                    g3 = gcd(r51num, r51den)
                    r51num //= g3
                    r51den //= g3
                    L = _lcm3(d4den, r50den, r51den)
                    bflat = (
                        -2 * d0 * L, 0, a13 * d2 * L, a14 * d3 * L,
                        a15 * d4num * (L // d4den),
                        0, -2 * d1 * L, 0, a24 * d3 * L,
                        a25 * d4num * (L // d4den),
                        a31 * d0 * L, 0, -2 * d2 * L, 0, a35 * d4num * (L // d4den),
                        a41 * d0 * L, a42 * d1 * L, 0, -2 * d3 * L, 0,
                        r50num * (L // r50den), r51num * (L // r51den),
                        a53 * d2 * L, 0, -2 * d4num * (L // d4den),
                    )
                    c = _gcd_all(bflat)
                    if c > 1:
                        bflat = tuple(x // c for x in bflat)
                    yield bflat, ctx


def _lcm3(a: int, b: int, c: int) -> int:
    l = a * b // gcd(a, b)
    return l * c // gcd(l, c)


# ----------------------------------------------------------------------
# candidate scans (program loop structure, float bounds verbatim)

def _scan_ai1(outer: range) -> Iterator[tuple]:
    for alpha12 in outer:  # 1..4
        for alpha23 in range(alpha12, 5):
            # slack sits outside the square here: the published total counts
            # the boundary case (1,4,225) out, unlike the row-bound style
            # used by the other scans
            u = _RH1_2D[alpha12 - 1][alpha23 - 1] ** 2 + 0.1
            for alpha13 in range(5, int(floor(u)) + 1):
                m = alpha12 * alpha23 * alpha13
                r = isqrt(m)
                if r * r != m:
                    continue
                if -8 + 2 * r + 2 * alpha12 + 2 * alpha13 + 2 * alpha23 <= 0:
                    continue
                yield "chain3", (alpha12, alpha23, alpha13, r)


def _scan_ai0(outer: range) -> Iterator[tuple]:
    for alpha23 in outer:  # 1..4
        w = (_RH1_1D[alpha23 - 1] + 0.1) ** 2
        for alpha13 in range(5, int(floor(w)) + 1):
            # alpha12 = 0: the triple product is 0 = 0^2 and the
            # hyperbolicity margin -8 + 2 alpha13 + 2 alpha23 is positive
            yield "chain3", (0, alpha23, alpha13, 0)


def _scan_aii1(outer: range) -> Iterator[tuple]:
    for alpha34 in outer:  # 1..4
        w = (_RH2_1D[alpha34 - 1] + 0.1) ** 2
        lo24 = (_RH1_1D[alpha34 - 1] - 0.1) ** 2
        wmax = int(floor(w))
        for alpha14 in range(5, wmax + 1):
            for alpha13 in range(5, int(floor(_B_SEVEN_SQ)) + 1):
                u = alpha13 * alpha34 * alpha14
                r = isqrt(u)
                if r * r != u:
                    continue
                num = 4 * (alpha14 + alpha34 + r)
                if num % (alpha13 - 4):
                    continue
                alpha24 = 4 + num // (alpha13 - 4)
                if alpha24 <= lo24:
                    continue
                yield "quad_chain", (alpha13, alpha34, alpha24, alpha14, r)


def _scan_aii0(outer: range) -> Iterator[tuple]:
    for alpha14 in outer:  # 5..976
        m4 = 4 * alpha14
        for aa in _divisors(m4):
            if aa * aa > m4:
                continue
            alpha13 = 4 + aa
            if alpha13 > _B_SEVEN_SQ:
                continue
            alpha24 = m4 // aa + 4
            yield "quad_tree", (alpha13, alpha24, alpha14)


def _scan_aiii(outer: range) -> Iterator[tuple]:
    lo = (_RH2_90 - 0.1) ** 2
    cap = int(floor(_B_SEVEN_SQ))
    for al15 in outer:  # 5..4662
        for al13 in range(5, cap + 1):
            for al35 in range(al13, cap + 1):
                q = al13 * al35 * al15
                rq = isqrt(q)
                if rq * rq != q:
                    continue
                d4 = (al13 + al35 + al15 - 4 + rq) * 4
                if d4 % (al35 - 4):
                    continue
                al14 = d4 // (al35 - 4)
                if al14 <= lo:
                    continue
                if d4 % (al13 - 4):
                    continue
                al25 = d4 // (al13 - 4)
                if al25 <= lo:
                    continue
                num24 = (al13 * al35 + 4 * al15 + 4 * rq) * 4
                den24 = (al35 - 4) * (al13 - 4)
                if num24 % den24:
                    continue
                al24 = num24 // den24
                q1 = al13 * al35 * al25 * al24 * al14
                rq1 = isqrt(q1)
                if rq1 * rq1 != q1:
                    continue
                yield "penta", (al13, al35, al15, al14, al24, al25, rq, rq1)


def _scan_bi(outer: range) -> Iterator[tuple]:
    for alpha12 in outer:  # 1..4
        budget = _RH4_1D[alpha12 - 1] + 0.1
        for alpha23 in range(5, 485):
            x2 = sqrt(alpha23) / 8 - 1.25
            ach2 = 0.0 if x2 < 1.000001 else acosh(x2)
            for alpha13 in range(5, alpha23 + 1):
                x1 = sqrt(alpha13) / 8 - 1.25
                ach1 = 0.0 if x1 < 1.000001 else acosh(x1)
                if ach1 + ach2 > budget:
                    continue
                m = alpha12 * alpha23 * alpha13
                r = isqrt(m)
                if r * r != m:
                    continue
                if -8 + 2 * r + 2 * alpha12 + 2 * alpha13 + 2 * alpha23 <= 0:
                    continue
                yield "chain3", (alpha12, alpha23, alpha13, r)


def _scan_bii1(outer: range) -> Iterator[tuple]:
    for alpha24 in outer:  # 5..484
        x = sqrt(alpha24) / 8 - 1.25
        ach2 = 0.0 if x < 1.000001 else acosh(x)
        vv = min((8 * (cosh(_RH4_90 - ach2) + 1.25)) ** 2 + 0.1, 484.0)
        vmax = int(floor(vv))
        base = alpha24 - 4
        for alpha14 in range(5, vmax + 1):
            s0 = alpha14 + alpha24 - 4
            for alpha34 in range(alpha14, vmax + 1):
                p = alpha14 * alpha34
                disc = p * (p + base * (s0 + alpha34))
                r = isqrt(disc)
                if r * r != disc:
                    continue
                num = 2 * p + 2 * r
                if num % base:
                    continue
                u = num // base
                if (u * u) % p:
                    continue
                alpha13 = (u * u) // p
                yield "quad_chain", (alpha13, alpha34, alpha24, alpha14, u)


def _scan_bii2(outer: range) -> Iterator[tuple]:
    for alpha23 in outer:  # 5..484
        x = sqrt(alpha23) / 8 - 1.25
        ach2 = 0.0 if x < 1.000001 else acosh(x)
        vv = min((8 * (cosh(_RH4_90 - ach2) + 1.25)) ** 2 + 0.1, 484.0)
        vmax = int(floor(vv))
        base = alpha23 - 4
        for alpha13 in range(5, vmax + 1):
            for alpha24 in range(alpha13, vmax + 1):
                p = alpha13 * alpha23 * alpha24
                disc = p * (p - base * ((alpha13 - 4) * (alpha24 - 4) - 4 * alpha23))
                if disc < 0:
                    continue
                r = isqrt(disc)
                if r * r != disc:
                    continue
                for tau in (-1, 1):
                    num = p + tau * r
                    if num % base:
                        continue
                    u = num // base
                    if (u * u) % p:
                        continue
                    alpha14 = (u * u) // p
                    if alpha14 <= 4:
                        continue
                    yield "quad_cycle", (alpha13, alpha23, alpha24, alpha14, u)


def _scan_biii(outer: range) -> Iterator[tuple]:
    hard_cap = _RBIII ** 2 + 0.1
    cap13 = int(floor(_B_SEVEN_SQ))
    for alpha14 in outer:  # 5..1005
        x = sqrt(alpha14) / 8 - 1.25
        ach1 = 0.0 if x < 1.000001 else acosh(x)
        vv = min((8 * (cosh(_ETA0_10 - ach1) + 1.25)) ** 2 + 0.1, hard_cap)
        vmax = int(floor(vv))
        for alpha34 in range(alpha14, vmax + 1):
            for alpha13 in range(5, cap13 + 1):
                u = alpha13 * alpha34 * alpha14
                r = isqrt(u)
                if r * r != u:
                    continue
                num = 4 * (alpha14 + alpha34 + r)
                if num % (alpha13 - 4):
                    continue
                alpha24 = 4 + num // (alpha13 - 4)
                yield "quad_chain", (alpha13, alpha34, alpha24, alpha14, r)


_EMITTERS = {
    "chain3": _emit_chain3,
    "quad_chain": _emit_quad_chain,
    "quad_tree": _emit_quad_tree,
    "quad_cycle": _emit_quad_cycle,
    "penta": _emit_penta,
}

_SCANS: dict[str, tuple[Callable[[range], Iterator[tuple]], range, int]] = {
    # tag -> (scan, full outer range, matrix size k)
    "AI1": (_scan_ai1, range(1, 5), 3),
    "AI0": (_scan_ai0, range(1, 5), 3),
    "AII1": (_scan_aii1, range(1, 5), 4),
    "AII0": (_scan_aii0, range(5, 977), 4),
    "AIII": (_scan_aiii, range(5, 4663), 5),
    "BI": (_scan_bi, range(1, 5), 3),
    "BII1": (_scan_bii1, range(5, 485), 4),
    "BII2": (_scan_bii2, range(5, 485), 4),
    "BIII": (_scan_biii, range(5, 1006), 4),
}


def outer_range(tag: str) -> range:
    return _SCANS[tag][1]


def matrix_size(tag: str) -> int:
    return _SCANS[tag][2]


def _iter_emissions(tag: str, outer: range) -> Iterator[tuple]:
    scan = _SCANS[tag][0]
    emitters = _EMITTERS
    for kind, cand in scan(outer):
        yield from emitters[kind](*cand)


def iter_records(tag: str, outer: range | None = None) -> Iterator[NarrowRecord]:
    """Stream NarrowRecords in deterministic scan order."""
    if tag not in _SCANS:
        raise ValueError(f"unknown narrow-part type {tag!r}")
    k = matrix_size(tag)
    d2d3 = _D2D3[k]
    rng = outer if outer is not None else outer_range(tag)
    for bflat, _ctx in _iter_emissions(tag, rng):
        d2, d3 = d2d3(bflat)
        a = d3 // d2
        rad, _maxp, oddmax = _rad_maxp_oddmax(a)
        yield NarrowRecord(tag, k, bflat, a, rad, oddmax)


def process_chunk(tag: str, lo: int, hi: int, main_mode: bool = False):
    """Count/max aggregation over one slice of the outer loop.

    Returns (n, max_a, max_a1, max_a2_hist, triplets) where triplets is a
    frozenset of (d, eta, h) when main_mode else None.  max_a2_hist uses
    the historical rule (largest prime factor incl. 2).
    """
    k = matrix_size(tag)
    d2d3 = _D2D3[k]
    full = outer_range(tag)
    step = full.step
    rng = range(lo, hi, step)
    n = 0
    max_a = max_a1 = max_a2 = 1
    rad_cache = _rad_maxp_oddmax
    filt = None
    triplets: set | None = None
    if main_mode:
        from .mainfilter import make_main_filter
        filt = make_main_filter(tag)
        triplets = set()
    for bflat, ctx in _iter_emissions(tag, rng):
        n += 1
        d2, d3 = d2d3(bflat)
        a = d3 // d2
        if a > max_a:
            max_a = a
        rad, maxp, _oddmax = rad_cache(a)
        if rad > max_a1:
            max_a1 = rad
        if a > 1 and maxp > max_a2:
            max_a2 = maxp
        if filt is not None:
            filt(bflat, ctx, d3, triplets)
    return n, max_a, max_a1, max_a2, (frozenset(triplets) if triplets is not None else None)


def _chunk_bounds(rng: range, pieces: int) -> list[tuple[int, int]]:
    vals = len(rng)
    pieces = max(1, min(pieces, vals))
    out = []
    for i in range(pieces):
        lo = rng.start + (vals * i // pieces) * rng.step
        hi = rng.start + (vals * (i + 1) // pieces) * rng.step
        out.append((lo, hi))
    return out


def run_type(tag: str, workers: int | None = None, main_mode: bool = False):
    """Full enumeration, parallel over the outer loop.

    Returns (EnumerationSummary, sorted tuple of (d, eta, h) or None).
    """
    import os

    if tag not in _SCANS:
        raise ValueError(f"unknown narrow-part type {tag!r}")
    if workers is None:
        workers = os.cpu_count() or 1
    rng = outer_range(tag)
    pieces = 1 if workers <= 1 else min(len(rng), 8 * workers)
    chunks = _chunk_bounds(rng, pieces)
    results = []
    if workers <= 1 or len(chunks) == 1:
        for lo, hi in chunks:
            results.append(process_chunk(tag, lo, hi, main_mode))
    else:
        import multiprocessing as mp

        with mp.get_context("fork").Pool(workers) as pool:
            results = pool.starmap(
                process_chunk, [(tag, lo, hi, main_mode) for lo, hi in chunks])
    n = sum(r[0] for r in results)
    max_a = max(r[1] for r in results)
    max_a1 = max(r[2] for r in results)
    max_a2 = max(r[3] for r in results)
    summary = EnumerationSummary(tag, n, max_a, max_a1, max_a2)
    trips = None
    if main_mode:
        u: set = set()
        for r in results:
            u |= r[4]
        trips = tuple(sorted(u))
    return summary, trips


def global_bounds(summaries: Sequence[EnumerationSummary]) -> tuple[int, int, int]:
    """(max a, max a1, max a2) over the nine types."""
    if not summaries:
        raise ValueError("no summaries to aggregate")
    missing = set(NARROW_TYPES) - {s.type_tag for s in summaries}
    if missing:
        raise ValueError(f"missing summaries for {sorted(missing)}")
    return (max(s.max_a for s in summaries),
            max(s.max_a1 for s in summaries),
            max(s.max_a2 for s in summaries))


def record_line(rec: NarrowRecord) -> str:
    b = ",".join(str(x) for x in rec.b)
    return f"{rec.type_tag}\t{rec.k}\t{b}\t{rec.a}\t{rec.a1}\t{rec.a2}"
