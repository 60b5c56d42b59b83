"""Rank-3 lattices in the three standard shapes, their roots and invariants.

A lattice is presented by an integer generator Gram matrix plus optional
rational glue vectors (coordinates in the generator basis):

    U+<d>                hyperbolic plane plus <-d>, no glue
    diag(n1,-n2,-n3[;e1/2,e2/2,e3/2])   diagonal form, optional half-glue
    a2(n)                <3n> plus the A2 block with (1/3,1/3,-1/3) glue

All arithmetic is exact (ints and Fractions); no floating point here.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .intmath import (exponent_invariants, factor, is_squarefree, kronecker,
                      odd_primes, smith_divisors, squarefree_part)

Vec = tuple[Fraction, Fraction, Fraction]
Mat3 = tuple[tuple[int, int, int], ...]

U_PLUS_NEG = "U_PLUS_NEG"
DIAG_GLUE = "DIAG_GLUE"
A2_GLUE = "A2_GLUE"


def _vec(v: Sequence) -> Vec:
    if len(v) != 3:
        raise ValueError(f"need a coordinate triple, got {v!r}")
    return tuple(Fraction(x) for x in v)  # type: ignore[return-value]


class NotInLattice(ValueError):
    """Vector is not an element of the lattice."""


@dataclass(frozen=True)
class LatticeForm:
    """One of the three standard rank-3 shapes."""

    shape: str
    params: tuple[int, ...]
    eps: tuple[int, int, int] = (0, 0, 0)

    # -- constructors ------------------------------------------------

    @staticmethod
    def u_plus_neg(d: int) -> "LatticeForm":
        if d <= 0:
            raise ValueError(f"U+<d> needs d > 0, got {d}")
        return LatticeForm(U_PLUS_NEG, (d,))

    @staticmethod
    def diag(n1: int, n2: int, n3: int,
             eps: tuple[int, int, int] = (0, 0, 0)) -> "LatticeForm":
        if min(n1, n2, n3) <= 0:
            raise ValueError("diag() needs positive n1, n2, n3")
        if any(e not in (0, 1) for e in eps):
            raise ValueError(f"glue bits must be 0 or 1, got {eps}")
        form = LatticeForm(DIAG_GLUE, (n1, n2, n3), tuple(eps))
        form._check_diag_legal()
        return form

    @staticmethod
    def a2(n: int) -> "LatticeForm":
        if n <= 0:
            raise ValueError(f"a2(n) needs n > 0, got {n}")
        if n % 3 != 2:
            raise ValueError(f"a2(n) needs n = 2 mod 3, got n = {n}")
        return LatticeForm(A2_GLUE, (n,))

    def _check_diag_legal(self) -> None:
        n1, n2, n3 = self.params
        e1, e2, e3 = self.eps
        for n, e in zip(self.params, self.eps):
            if e == 1 and n % 2 != 0:
                raise ValueError(f"glue bit set on odd entry {n}")
        if any(self.eps):
            s = n1 * e1 - n2 * e2 - n3 * e3
            if s % 4 != 0:
                raise ValueError("(n1 e1 - n2 e2 - n3 e3)/4 is not integral")

    def is_even(self) -> bool:
        """True iff every lattice vector has even square."""
        if self.shape == U_PLUS_NEG:
            return self.params[0] % 2 == 0
        if self.shape == A2_GLUE:
            return (self.params[0] - 2) % 6 == 0
        n1, n2, n3 = self.params
        if any(n % 2 for n in self.params):
            return False
        e1, e2, e3 = self.eps
        return ((n1 * e1 - n2 * e2 - n3 * e3) // 4) % 2 == 0 if any(self.eps) else True

    def is_main(self) -> bool:
        """Main means even whenever the determinant is even."""
        return self.det() % 2 == 1 or self.is_even()

    # -- basic data --------------------------------------------------

    def gram(self) -> Mat3:
        """Generator Gram matrix."""
        if self.shape == U_PLUS_NEG:
            d = self.params[0]
            return ((0, 1, 0), (1, 0, 0), (0, 0, -d))
        if self.shape == DIAG_GLUE:
            n1, n2, n3 = self.params
            return ((n1, 0, 0), (0, -n2, 0), (0, 0, -n3))
        n = self.params[0]
        return ((3 * n, 0, 0), (0, -2, 1), (0, 1, -2))

    def glue(self) -> tuple[Vec, ...]:
        """Glue vectors presenting the full lattice over the generators."""
        if self.shape == DIAG_GLUE and any(self.eps):
            return (_vec([Fraction(e, 2) for e in self.eps]),)
        if self.shape == A2_GLUE:
            return (_vec([Fraction(1, 3), Fraction(1, 3), Fraction(-1, 3)]),)
        return ()

    def glue_order(self) -> int:
        if self.shape == A2_GLUE:
            return 3
        if self.shape == DIAG_GLUE and any(self.eps):
            return 2
        return 1

    def det(self) -> int:
        """Determinant of the full lattice, up to sign: always the positive d."""
        if self.shape == U_PLUS_NEG:
            return self.params[0]
        if self.shape == DIAG_GLUE:
            n1, n2, n3 = self.params
            p = n1 * n2 * n3
            return p // 4 if any(self.eps) else p
        return self.params[0]

    # -- exact bilinear form ------------------------------------------

    def inner(self, v: Sequence, w: Sequence) -> Fraction:
        a, b = _vec(v), _vec(w)
        g = self.gram()
        return sum(a[i] * g[i][j] * b[j] for i in range(3) for j in range(3))

    def norm(self, v: Sequence) -> Fraction:
        return self.inner(v, v)

    # -- membership and primitivity -----------------------------------

    def membership_index(self, v: Sequence) -> int | None:
        """k with v - k*glue integral (None if v is not in the lattice)."""
        a = _vec(v)
        m = self.glue_order()
        gl = self.glue()
        for k in range(m):
            if gl:
                w = tuple(a[i] - k * gl[0][i] for i in range(3))
            else:
                w = a
            if all(x.denominator == 1 for x in w):
                return k
        return None

    def contains(self, v: Sequence) -> bool:
        return self.membership_index(v) is not None

    def coords_in_lattice_basis(self, v: Sequence) -> tuple[int, int, int]:
        """Integer coordinates of v in a fixed basis of the full lattice."""
        a = _vec(v)
        k = self.membership_index(a)
        if k is None:
            raise NotInLattice(f"{tuple(map(str, a))} is not in the lattice")
        gl = self.glue()
        if not gl:
            return tuple(int(x) for x in a)  # type: ignore[return-value]
        g = gl[0]
        # basis: g plus the generators whose glue coordinate vanishes,
        # completed by doubling/tripling relations; use (g, e_j, e_k) with
        # e_i the pivot coordinate of g.
        pivot = next(i for i in range(3) if g[i] != 0)
        rest = [i for i in range(3) if i != pivot]
        c0 = a[pivot] / g[pivot]
        out = [Fraction(0)] * 3
        out[0] = c0
        for slot, i in enumerate(rest, start=1):
            out[slot] = a[i] - c0 * g[i]
        if any(x.denominator != 1 for x in out):
            raise NotInLattice(f"{tuple(map(str, a))} is not in the lattice")
        return tuple(int(x) for x in out)  # type: ignore[return-value]

    def is_primitive(self, v: Sequence) -> bool:
        c = self.coords_in_lattice_basis(v)
        if c == (0, 0, 0):
            return False
        return gcd(gcd(abs(c[0]), abs(c[1])), abs(c[2])) == 1

    # -- roots ---------------------------------------------------------

    def is_root(self, v: Sequence) -> bool:
        """True iff v is a primitive vector of negative square whose
        reflection preserves the lattice.  Raises NotInLattice if v is
        not a lattice vector at all."""
        a = _vec(v)
        if not self.contains(a):
            raise NotInLattice(f"{tuple(map(str, a))} is not in the lattice")
        sq = self.norm(a)
        if sq >= 0:
            return False
        if not self.is_primitive(a):
            return False
        basis = [(1, 0, 0), (0, 1, 0), (0, 0, 1)] + [tuple(g) for g in self.glue()]
        for x in basis:
            t = 2 * self.inner(a, x) / sq
            if t.denominator != 1:
                return False
        return True

    # -- genus invariants ----------------------------------------------

    def invariants_d_eta(self) -> tuple[int, int]:
        """(d, eta) with d the square-free determinant and eta the bitmask
        of Kronecker-symbol signs over the ascending odd primes of d."""
        d = self.det()
        if not is_squarefree(d):
            raise ValueError(f"determinant {d} is not square-free")
        eta = 0
        for k, p in enumerate(odd_primes(d)):
            if self.shape == U_PLUS_NEG:
                sym = kronecker(-d // p, p)
            elif self.shape == A2_GLUE:
                sym = kronecker(3 * d // p, p)
            else:
                n1, n2, n3 = self.params
                if n1 % p == 0:
                    sym = kronecker(n1 // p, p)
                elif n2 % p == 0:
                    sym = kronecker(-(n2 // p), p)
                else:
                    sym = kronecker(-(n3 // p), p)
            if sym != 1:
                eta |= 1 << k
        return d, eta

    # -- text form -------------------------------------------------------

    def spec_text(self) -> str:
        if self.shape == U_PLUS_NEG:
            return f"u+{self.params[0]}"
        if self.shape == A2_GLUE:
            return f"a2({self.params[0]})"
        n1, n2, n3 = self.params
        base = f"diag({n1},-{n2},-{n3}"
        if any(self.eps):
            parts = ",".join("1/2" if e else "0" for e in self.eps)
            return f"{base};{parts})"
        return base + ")"

    def __str__(self) -> str:  # pragma: no cover - convenience
        return self.spec_text()


_U_RE = re.compile(r"^u\+(\d+)$")
_A2_RE = re.compile(r"^a2\((\d+)\)$")
_DIAG_RE = re.compile(r"^diag\((\d+),-(\d+),-(\d+)(?:;([01]/?2?),([01]/?2?),([01]/?2?))?\)$")


def parse_form(text: str) -> LatticeForm:
    """Parse the standard-form syntax (case-insensitive, whitespace ignored)."""
    s = re.sub(r"\s+", "", text).lower()
    m = _U_RE.match(s)
    if m:
        return LatticeForm.u_plus_neg(int(m.group(1)))
    m = _A2_RE.match(s)
    if m:
        return LatticeForm.a2(int(m.group(1)))
    m = _DIAG_RE.match(s)
    if m:
        n1, n2, n3 = (int(m.group(i)) for i in (1, 2, 3))
        if m.group(4) is None:
            eps = (0, 0, 0)
        else:
            eps = tuple(1 if g.startswith("1") else 0 for g in m.groups()[3:6])
        return LatticeForm.diag(n1, n2, n3, eps)  # type: ignore[arg-type]
    raise ValueError(f"unrecognized form syntax: {text!r}")


# -- rescaling (elementary lattices S^{*,m}(m)) --------------------------


def _lattice_basis_rows(form: LatticeForm) -> list[Vec]:
    rows = [_vec((1, 0, 0)), _vec((0, 1, 0)), _vec((0, 0, 1))]
    if form.glue():
        g = form.glue()[0]
        pivot = next(i for i in range(3) if g[i] != 0)
        rows[pivot] = g
    return rows


def _hnf_rows(rows: list[list[Fraction]]) -> list[list[Fraction]]:
    """Row span basis (Hermite-style) of a full-rank set of rational rows."""
    den = 1
    for r in rows:
        for x in r:
            den = den * x.denominator // gcd(den, x.denominator)
    m = [[int(x * den) for x in r] for r in rows]
    # integer HNF by column elimination
    cols = 3
    h: list[list[int]] = []
    pivot_row = 0
    for c in range(cols):
        nz = [r for r in m if r[c] != 0]
        if not nz:
            continue
        while True:
            nz = sorted((r for r in m if r[c] != 0), key=lambda r: abs(r[c]))
            if len(nz) <= 1:
                break
            small = nz[0]
            for r in nz[1:]:
                q = r[c] // small[c]
                for j in range(cols):
                    r[j] -= q * small[j]
            m = [r for r in m if any(r)]
        m = [r for r in m if any(r)]
        piv = next((r for r in m if r[c] != 0), None)
        if piv is None:
            continue
        if piv[c] < 0:
            for j in range(cols):
                piv[j] = -piv[j]
        h.append(piv)
        m = [r for r in m if r is not piv]
    if len(h) != 3:
        raise ValueError("rescale basis is not full rank")
    return [[Fraction(x, den) for x in r] for r in h]


def elementary_rescale(form: LatticeForm, m: int):
    """Rescaled lattice S^{*,m}(m) with det d*m, plus the root map.

    Returns (gram_f, to_f) where gram_f is an integer Gram matrix of the
    rescaled lattice in some basis, and to_f maps a root alpha of S to the
    pair (alpha / k, k) with k the greatest divisor of m moving alpha into
    the dual.  Pairings transform as (a, b) -> (a, b) * m / (k_a k_b).
    """
    d = form.det()
    if m < 1 or d % m != 0:
        raise ValueError(f"m = {m} does not divide d = {d}")
    basis = [list(r) for r in _lattice_basis_rows(form)]
    g = form.gram()

    def pair(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
        return sum(a[i] * g[i][j] * b[j] for i in range(3) for j in range(3))

    def dual_rows(rows: list[list[Fraction]]) -> list[list[Fraction]]:
        gl = [[pair(rows[i], rows[j]) for j in range(3)] for i in range(3)]
        det_gl = (gl[0][0] * (gl[1][1] * gl[2][2] - gl[1][2] * gl[2][1])
                  - gl[0][1] * (gl[1][0] * gl[2][2] - gl[1][2] * gl[2][0])
                  + gl[0][2] * (gl[1][0] * gl[2][1] - gl[1][1] * gl[2][0]))
        inv = [[(gl[(j + 1) % 3][(i + 1) % 3] * gl[(j + 2) % 3][(i + 2) % 3]
                 - gl[(j + 1) % 3][(i + 2) % 3] * gl[(j + 2) % 3][(i + 1) % 3]) / det_gl
                for j in range(3)] for i in range(3)]
        return [[sum(inv[i][k] * rows[k][j] for k in range(3)) for j in range(3)]
                for i in range(3)]

    # S^{*,m} = S* meet (1/m)S is the form-dual of S + m S*.
    dual = dual_rows(basis)
    stacked = [list(r) for r in basis] + [[m * x for x in r] for r in dual]
    t_basis = _hnf_rows(stacked)
    sub = dual_rows(t_basis)
    gram_f = [[m * pair(sub[i], sub[j]) for j in range(3)] for i in range(3)]
    if any(x.denominator != 1 for row in gram_f for x in row):
        raise AssertionError("rescaled Gram is not integral")
    gram_fi = tuple(tuple(int(x) for x in row) for row in gram_f)

    def to_f(alpha: Sequence) -> tuple[Vec, int]:
        a = _vec(alpha)
        t = 0
        for b in basis:
            val = pair(a, b)
            if val.denominator != 1:
                raise NotInLattice("root is not in the lattice")
            t = gcd(t, int(val))
        k = gcd(t, m)
        return tuple(x / k for x in a), k  # type: ignore[return-value]

    return gram_fi, to_f


# -- Lemma-style predicates on root pairs ---------------------------------


@dataclass(frozen=True)
class RootPairVerdict:
    ratio: Fraction
    squarefree_ok: bool
    gcd_ok: bool
    represents_zero: bool
    notes: tuple[str, ...]


def lemma912_predicates(form: LatticeForm, r1: Sequence, r2: Sequence) -> RootPairVerdict:
    """Structured consistency checks for a pair of primitive roots.

    Verifies the square-free property of the root squares, the gcd bound
    for crystallographic pairs, and flags the represents-zero cases that
    force the U+<d> shape.
    """
    a, b = _vec(r1), _vec(r2)
    if not form.is_root(a) or not form.is_root(b):
        raise ValueError("both vectors must be roots")
    s1, s2 = form.norm(a), form.norm(b)
    cross = (a[0] * b[1] - a[1] * b[0], a[0] * b[2] - a[2] * b[0],
             a[1] * b[2] - a[2] * b[1])
    if all(x == 0 for x in cross):
        raise ValueError("r2 must not be proportional to r1")
    p12 = form.inner(a, b)
    ratio = 4 * p12 * p12 / (s1 * s2)
    d = form.det()
    notes: list[str] = []
    sq_ok = True
    for s in (s1, s2):
        k = int(-s)
        if not is_squarefree(k):
            sq_ok = False
            notes.append(f"root square -{k} is not square-free")
        for p in odd_primes(k):
            if d % p != 0:
                sq_ok = False
                notes.append(f"odd prime {p} of root square does not divide d={d}")
    g = gcd(int(-s1), int(-s2))
    gcd_ok = True
    if ratio in (0, 1, 2, 3):
        gcd_ok = g <= 2
        if not gcd_ok:
            notes.append(f"gcd of root squares is {g} > 2")
        if ratio == 1 and d % 3 != 2:
            gcd_ok = False
            notes.append(f"angle pi/3 pair needs d = 2 mod 3, got d = {d}")
    rep0 = False
    if ratio == 4:
        rep0 = True
        notes.append("pair spans an isotropic vector: lattice is U+<d>")
    if form.norm(tuple(a[i] + b[i] for i in range(3))) == 0:
        rep0 = True
        notes.append("(r1+r2)^2 = 0: lattice represents 0")
    return RootPairVerdict(ratio=ratio, squarefree_ok=sq_ok, gcd_ok=gcd_ok,
                           represents_zero=rep0, notes=tuple(notes))


__all__ = [
    "LatticeForm", "NotInLattice", "RootPairVerdict", "U_PLUS_NEG",
    "DIAG_GLUE", "A2_GLUE", "parse_form", "elementary_rescale",
    "lemma912_predicates", "smith_divisors", "exponent_invariants",
    "factor", "squarefree_part",
]
