"""Refined enumeration: which invariant triplets (d, eta, h) survive the
main-lattice conditions on a narrow-part Gram matrix B.

For every emitted B the filter checks, in this order: square-free
diagonal entries, the per-type gcd bounds on adjacent diagonal pairs, the
2-adic window on det(B), the odd-prime parity condition, then runs the
admissible rescalings lambda (1 or 2 when a small pairing is present, a
divisor loop otherwise), computes d as the square-free part of the scaled
determinant, the Kronecker bitmask eta, and keeps the triplet when the
class-count oracle reports h = 0 or 2.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd
from typing import Callable

from .intmath import factor, kronecker

HClass = int | str  # 0, 1, 2 or ">2"
HOracle = Callable[[int, int], HClass]

_DIAG_IDX = {3: (0, 4, 8), 4: (0, 5, 10, 15), 5: (0, 6, 12, 18, 24)}

_sqfree_cache: dict[int, bool] = {}


def _sqfree(n: int) -> bool:
    v = _sqfree_cache.get(n)
    if v is None:
        v = True
        m = n
        if m % 4 == 0:
            v = False
        else:
            if m % 2 == 0:
                m //= 2
            p = 3
            while p * p <= m:
                if m % p == 0:
                    m //= p
                    if m % p == 0:
                        v = False
                        break
                p += 2
        _sqfree_cache[n] = v
    return v


_factor_cache: dict[int, tuple[tuple[int, int], ...]] = {}


def _factor(n: int) -> tuple[tuple[int, int], ...]:
    f = _factor_cache.get(n)
    if f is None:
        f = factor(n)
        _factor_cache[n] = f
    return f


def _sqfree_part_f(fd) -> int:
    d = 1
    for p, e in fd:
        if e % 2:
            d *= p
    return d


def _odd_primes_of(d: int) -> tuple[int, ...]:
    return tuple(p for p, _ in _factor(d) if p != 2)


def _eta_cond5(d: int, b11: int, b22: int) -> int:
    """Orthogonal-pair eta: branch on which diagonal the prime divides."""
    if d <= 2:
        return 0
    eta = 0
    for idx, p in enumerate(_odd_primes_of(d)):
        if b11 % p == 0:
            s = kronecker(b11 // p, p)
        elif b22 % p == 0:
            s = kronecker(b22 // p, p)
        else:
            s = kronecker(d * b11 * b22 // p, p)
        if s != 1:
            eta |= 1 << idx
    return eta


def _eta_small_angle(alpha12: int, d: int) -> int:
    """eta for a pair at angle code alpha12 in {1, 2, 3}."""
    if d <= 2:
        return 0
    eta = 0
    for idx, p in enumerate(_odd_primes_of(d)):
        if alpha12 == 1:
            s = kronecker(3 * d // p, p)
        elif alpha12 == 2:
            s = kronecker(d // p, p)
        else:  # alpha12 == 3: the 3-bit stays 0
            if p == 3:
                continue
            s = kronecker(3 * d // p, p)
        if s != 1:
            eta |= 1 << idx
    return eta


def _eta_isotropic(d: int) -> int:
    """eta for the ideal-vertex pair (alpha12 = 4): Kronecker of -d/p."""
    if d <= 2:
        return 0
    eta = 0
    for idx, p in enumerate(_odd_primes_of(d)):
        if kronecker(-d // p, p) != 1:
            eta |= 1 << idx
    return eta


def _keep(h: HClass) -> bool:
    return h == 0 or h == 2


def _lambda12_pass(detb: int, diag_signed, all_odd: bool, oracle: HOracle,
                   out: set, lambda2: bool = True) -> None:
    """lambda in {1, 2}: 1 unless the determinant parity forbids it, 2 only
    when every diagonal entry is odd (and only for types whose historical
    published list includes the doubled branch at all)."""
    fd = _factor(detb)
    nu2_odd = bool(fd) and fd[0][0] == 2 and fd[0][1] % 2 == 1
    b11, b22 = diag_signed[0], diag_signed[1]
    if not (all_odd and nu2_odd):
        d = _sqfree_part_f(fd)
        eta = _eta_cond5(d, b11, b22)
        h = oracle(d, eta)
        if _keep(h):
            out.add((d, eta, h))
    if all_odd and lambda2:
        d = _sqfree_part_f(_factor(2 * detb))  # nu_2 of 8 detb is odd iff of 2 detb
        eta = _eta_cond5(d, 2 * b11, 2 * b22)
        h = oracle(d, eta)
        if _keep(h):
            out.add((d, eta, h))


def _lambda_divisor_pass(detb: int, prod: int, oracle: HOracle, out: set) -> None:
    """The ideal-vertex branch: lambda runs over the admissible divisor set."""
    fd = _factor(detb)
    d2 = 1
    for p, e in fd:
        if p != 2 and e % 2 == 0:
            d2 *= p
    d2 = 2 * d2 // gcd(2 * d2, prod)
    nu2_odd = bool(fd) and fd[0][0] == 2 and fd[0][1] % 2 == 1
    skip_odd_t = d2 % 2 == 0 and nu2_odd
    t = None
    from .intmath import divisors

    for t in divisors(d2):
        if skip_odd_t and t % 2 == 1:
            continue
        d = _sqfree_part_f(_factor(detb * t))  # t^3 and t agree mod squares
        eta = _eta_isotropic(d)
        h = oracle(d, eta)
        if _keep(h):
            out.add((d, eta, h))


def make_main_filter(tag: str, oracle: HOracle | None = None):
    """Per-record main-lattice filter for one narrow-part type.

    The returned callable has signature filt(bflat, ctx, d3, out_set)
    where d3 is the product of the nonzero elementary divisors of B.
    """
    if oracle is None:
        oracle = default_h_oracle()
    from .narrow import matrix_size

    k = matrix_size(tag)
    didx = _DIAG_IDX[k]
    chain3 = tag in ("AI1", "BI")
    skip_unimodular = tag not in ("AI1", "BI")
    # the published AII0 list never exercises the doubled rescaling (the
    # historical loop guard assigns instead of comparing), so mirror that
    lambda2 = tag != "AII0"

    def filt(bflat, ctx, detb: int, out: set) -> None:
        diag_signed = tuple(bflat[i] for i in didx)
        pdiag = tuple(abs(x) for x in diag_signed)
        for p in pdiag:
            if not _sqfree(p):
                return
        # adjacent-pair gcd bounds
        if chain3:
            alpha12, alpha23 = ctx
            if alpha12 < 4 and gcd(pdiag[0], pdiag[1]) > 2:
                return
            if tag == "AI1" and alpha23 < 4 and gcd(pdiag[1], pdiag[2]) > 2:
                return
        elif tag == "AI0":
            alpha23 = ctx[1]
            if gcd(pdiag[0], pdiag[1]) > 2:
                return
            if alpha23 < 4 and gcd(pdiag[1], pdiag[2]) > 2:
                return
        elif tag == "AII1":
            alpha34 = ctx[0]
            if gcd(pdiag[0], pdiag[1]) > 2 or gcd(pdiag[1], pdiag[2]) > 2:
                return
            if alpha34 < 4 and gcd(pdiag[2], pdiag[3]) > 2:
                return
        elif tag == "AII0":
            if (gcd(pdiag[0], pdiag[1]) > 2 or gcd(pdiag[1], pdiag[2]) > 2
                    or gcd(pdiag[2], pdiag[3]) > 2):
                return
        elif tag == "AIII":
            if (gcd(pdiag[0], pdiag[1]) > 2 or gcd(pdiag[1], pdiag[2]) > 2
                    or gcd(pdiag[2], pdiag[3]) > 2 or gcd(pdiag[3], pdiag[4]) > 2):
                return
        elif tag in ("BII1", "BIII"):
            alpha34 = ctx[0]
            if gcd(pdiag[0], pdiag[1]) > 2 or gcd(pdiag[1], pdiag[2]) > 2:
                return
            if alpha34 == 2 and gcd(pdiag[2], pdiag[3]) > 1:
                return
            if alpha34 == 3 and gcd(pdiag[2], pdiag[3]) > 2:
                return
        elif tag == "BII2":
            if gcd(pdiag[0], pdiag[1]) > 2 or gcd(pdiag[2], pdiag[3]) > 2:
                return
        if skip_unimodular and detb == 1:
            return
        prod = 1
        for p in pdiag:
            prod *= p
        fd = _factor(detb)
        nu2_odd = bool(fd) and fd[0][0] == 2 and fd[0][1] % 2 == 1
        n_even = sum(1 for p in pdiag if p % 2 == 0)
        if 0 < n_even < k and nu2_odd:
            return
        for p, e in fd:
            if p != 2 and e % 2 == 0 and prod % p == 0:
                return
        if chain3:
            alpha12 = ctx[0]
            if alpha12 < 4:
                d = _sqfree_part_f(fd)
                if alpha12 == 1 and d % 3 != 2:
                    return
                eta = _eta_small_angle(alpha12, d)
                h = oracle(d, eta)
                if _keep(h):
                    out.add((d, eta, h))
            else:
                _lambda_divisor_pass(detb, prod, oracle, out)
        else:
            _lambda12_pass(detb, diag_signed, n_even == 0, oracle, out, lambda2)

    return filt


# ----------------------------------------------------------------------
# class-count oracle backed by the bundled tables

class UnknownClassCount(ValueError):
    """The oracle has no record for an in-range (d, eta)."""


@lru_cache(maxsize=1)
def _table_h_map() -> dict[tuple[int, int], int]:
    from .tables import load_tables

    tables = load_tables()
    out: dict[tuple[int, int], int] = {}
    for e in tables.table6:
        out[(e.d, e.eta)] = 2
    for e in tables.table7:
        if e.h == 0:
            out[(e.d, e.eta)] = 0
    return out


def default_h_oracle() -> HOracle:
    """(d, eta) -> 0 | 2 from the bundled classification data, '>2' otherwise."""
    table = _table_h_map()

    def oracle(d: int, eta: int) -> HClass:
        return table.get((d, eta), ">2")

    return oracle


def enumerate_main(tag: str, workers: int | None = None,
                   oracle: HOracle | None = None):
    """Sorted tuple of surviving (d, eta, h) triplets for one type."""
    from . import narrow

    if oracle is not None:
        raise NotImplementedError(
            "custom oracles are supported through make_main_filter; the "
            "parallel runner uses the bundled-table oracle")
    _summary, trips = narrow.run_type(tag, workers=workers, main_mode=True)
    return trips
