"""Hyperbolic-plane bound functions behind the narrow-part enumeration.

All functions work in double precision.  Angles are restricted in practice
to the five crystallographic values pi/2, pi/3, pi/4, pi/6 and 0, encoded
by the integer (2 cos alpha)^2 in {0, 1, 2, 3, 4}; the coefficient
a = cos^2(alpha/2) = (2 + sqrt(code)) / 4 is what the formulas consume.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import acosh, asinh, cosh, sinh, sqrt

ANGLE_CODES = (0, 1, 2, 3, 4)  # (2 cos alpha)^2 for alpha = pi/2, pi/3, pi/4, pi/6, 0


def angle_from_code(code: int) -> float:
    """Angle alpha in radians with (2 cos alpha)^2 == code."""
    if code not in ANGLE_CODES:
        raise ValueError(f"angle code must be one of {ANGLE_CODES}, got {code}")
    return math.acos(sqrt(code) / 2)


def coeff_from_code(code: int) -> float:
    """a = cos^2(alpha/2) = (2 + sqrt(code)) / 4."""
    if code not in ANGLE_CODES:
        raise ValueError(f"angle code must be one of {ANGLE_CODES}, got {code}")
    return (2.0 + sqrt(code)) / 4.0


def coeff_from_angle(alpha: float) -> float:
    return (1.0 + math.cos(alpha)) / 2.0


def ach(x: float) -> float:
    """arccosh clamped to 0 below 1."""
    return 0.0 if x < 1.0 else acosh(x)


def solve_g(a: float, u: float, v: float) -> float:
    """Smallest x with sinh(u-x) sinh(v-x) = a sinh(u) sinh(v).

    a = cos^2(alpha/2) in [0, 1]; u, v >= 0.  Closed form via the
    tanh of the root of the associated quadratic.
    """
    if not 0.0 <= a <= 1.0 + 1e-15:
        raise ValueError(f"coefficient a must lie in [0, 1], got {a}")
    if u < 0 or v < 0:
        raise ValueError(f"u, v must be nonnegative, got u={u}, v={v}")
    if u == 0.0 or v == 0.0:
        return 0.0
    cp = cosh(u + v)
    cm = cosh(u - v)
    w = a * cp + (1.0 - a) * cm
    disc = w * w - 1.0
    if disc < 0.0:  # roundoff at a ~ 1, u ~ v
        disc = 0.0
    t = (sinh(u + v) - sqrt(disc)) / ((a + 1.0) * cp + (1.0 - a) * cm)
    if t <= 0.0:
        return 0.0
    return math.atanh(t)


def solve_g_code(code: int, u: float, v: float) -> float:
    return solve_g(coeff_from_code(code), u, v)


def g_infinity(a: float, u: float) -> float:
    """Limit of solve_g(a, u, v) as v -> infinity: u - arcsinh(a sinh u)."""
    if u < 0:
        raise ValueError(f"u must be nonnegative, got {u}")
    return u - asinh(a * sinh(u))


def f_h1(a1: float, a2: float, theta: float) -> float:
    if theta <= 0:
        raise ValueError(f"theta must be positive, got {theta}")
    q = theta / 4.0
    g = solve_g(a1, q, q) + solve_g(a2, q, q)
    return (sinh(theta / 2.0 - g) / sinh(q)) ** 2


def f_h2(a1: float, a2: float, a3: float, theta: float, t: float) -> float:
    if theta <= 0:
        raise ValueError(f"theta must be positive, got {theta}")
    if not 0.0 <= t <= theta:
        raise ValueError(f"t must lie in [0, theta], got {t}")
    p, m, q = (theta + t) / 4.0, (theta - t) / 4.0, theta / 4.0
    g = solve_g(a1, p, m) + solve_g(a2, m, p) + solve_g(a3, p, q)
    return (sinh(3.0 * theta / 4.0 + t / 4.0 - g)
            * sinh(3.0 * theta / 4.0 - g)) / (sinh(p) * sinh(q))


def f_h3(a1: float, a2: float, a3: float, a4: float,
         theta: float, z: float, w: float) -> float:
    if theta <= 0:
        raise ValueError(f"theta must be positive, got {theta}")
    if not 0.0 <= w <= z <= theta:
        raise ValueError(f"need 0 <= w <= z <= theta, got z={z}, w={w}")
    pz, mz = (theta + z) / 4.0, (theta - z) / 4.0
    pw, mw = (theta + w) / 4.0, (theta - w) / 4.0
    g = (solve_g(a1, pz, mz) + solve_g(a2, mz, pz)
         + solve_g(a3, pz, mw) + solve_g(a4, mw, pw))
    return (sinh(theta + (z - w) / 4.0 - g) * sinh(theta - g)) / (sinh(pz) * sinh(pw))


ETA0 = 2.0 * acosh(1.5)

_A_HALF_PI = 0.5  # a at alpha = pi/2


def r_h1(code1: int, code2: int) -> float:
    """Bound on (delta_1, delta_3) over two consecutive angles."""
    return 4.0 * f_h1(coeff_from_code(code1), coeff_from_code(code2), ETA0) - 2.0


def r_h2(code3: int) -> float:
    """Bound on (delta_1, delta_4) with two right angles then angle code3."""
    a3 = coeff_from_code(code3)
    return 4.0 * max(f_h2(_A_HALF_PI, _A_HALF_PI, a3, ETA0, 0.0),
                     f_h2(_A_HALF_PI, _A_HALF_PI, a3, ETA0, ETA0)) - 2.0


def r_h3() -> float:
    """Bound on (delta_1, delta_5) across four right angles."""
    h = _A_HALF_PI
    return 4.0 * max(f_h3(h, h, h, h, ETA0, 0.0, 0.0),
                     f_h3(h, h, h, h, ETA0, ETA0, 0.0),
                     f_h3(h, h, h, h, ETA0, ETA0, ETA0)) - 2.0


def r_h4(code: int) -> float:
    """Axis-distance budget eta0/2 + 2 g(alpha, eta0/4, +inf)."""
    return ETA0 / 2.0 + 2.0 * g_infinity(coeff_from_code(code), ETA0 / 4.0)


def r_bIII() -> float:
    """Bound on (delta_1, delta_4) in the two-sided three-plus-one case."""
    c = cosh(ETA0 / 2.0)
    g = solve_g(_A_HALF_PI, ETA0 / 4.0, ETA0 / 4.0)
    return 4.0 * (c + cosh(ETA0 - 2.0 * g)) / (c - 1.0) - 2.0


def _bisect(f, lo: float, hi: float, tol: float = 1e-13) -> float:
    flo = f(lo)
    if flo == 0.0:
        return lo
    if flo * f(hi) > 0:
        raise ValueError(f"no sign change on [{lo}, {hi}]")
    while hi - lo > tol:
        mid = (lo + hi) / 2.0
        fm = f(mid)
        if fm == 0.0:
            return mid
        if flo * fm < 0:
            hi = mid
        else:
            lo = mid
            flo = fm
    return (lo + hi) / 2.0


def solve_beta_constants() -> tuple[float, float, float, float]:
    """(beta1, bound1, beta2, bound2) for the two global narrow-part bounds.

    beta1 solves 32(ch^3 + ch^2) - 2 = 8 ch + 10 + 8/(ch - 1) in ch = ch(eta/2);
    bound1 is the common value.  beta2 equates the three-corner f_h3 maximum
    with (ch(eta/2) + ch(eta - 2 g(pi/2, eta/4, eta/4))) / (ch(eta/2) - 1);
    bound2 is four times that ratio minus 2 (the normalized pairing bound).
    """
    def res1(eta: float) -> float:
        c = cosh(eta / 2.0)
        return 32.0 * (c ** 3 + c ** 2) - 2.0 - (8.0 * c + 10.0 + 8.0 / (c - 1.0))

    beta1 = _bisect(res1, 0.5, 1.5)
    c1 = cosh(beta1 / 2.0)
    bound1 = 32.0 * (c1 ** 3 + c1 ** 2) - 2.0

    h = _A_HALF_PI

    def ratio(eta: float) -> float:
        c = cosh(eta / 2.0)
        g = solve_g(h, eta / 4.0, eta / 4.0)
        return (c + cosh(eta - 2.0 * g)) / (c - 1.0)

    def res2(eta: float) -> float:
        m = max(f_h3(h, h, h, h, eta, 0.0, 0.0),
                f_h3(h, h, h, h, eta, eta, 0.0),
                f_h3(h, h, h, h, eta, eta, eta))
        return m - ratio(eta)

    beta2 = _bisect(res2, 1.0, 2.0)
    bound2 = 4.0 * ratio(beta2) - 2.0
    return beta1, bound1, beta2, bound2


def crossratio_pairing(theta1: float, theta2: float, theta12: float,
                       same_side: bool, intersecting: bool) -> float:
    """Inner product of two square -2 wall vectors from axis angles.

    theta1 and theta2 are the axis angles of the two lines; theta12 the
    angle between them along the axis (for the intersecting case it is the
    overlap angle theta21).  Both lines on the same side of the axis give
    the sinh formulas; opposite sides give the cosh formula and the lines
    cannot intersect.
    """
    if theta1 <= 0 or theta2 <= 0:
        raise ValueError("theta1 and theta2 must be positive")
    s1, s2 = sinh(theta1 / 2.0), sinh(theta2 / 2.0)
    if same_side:
        if intersecting:
            return 4.0 * sinh((theta1 - theta12) / 2.0) * sinh((theta2 - theta12) / 2.0) / (s1 * s2) - 2.0
        return 4.0 * sinh((theta1 + theta12) / 2.0) * sinh((theta2 + theta12) / 2.0) / (s1 * s2) - 2.0
    if intersecting:
        raise ValueError("lines on opposite sides of the axis cannot intersect")
    return 4.0 * cosh((theta1 + theta12) / 2.0) * cosh((theta2 - theta12) / 2.0) / (s1 * s2) - 2.0


@dataclass(frozen=True)
class BoundConstants:
    """All derived constants, computed once."""

    eta0: float
    rh1: dict[tuple[int, int], float]
    rh2: dict[int, float]
    rh3: float
    rh4: dict[int, float]
    r_biii: float
    beta1: float
    bound1: float
    beta2: float
    bound2: float

    @staticmethod
    def compute() -> "BoundConstants":
        rh1 = {(c1, c2): r_h1(c1, c2)
               for c1 in ANGLE_CODES for c2 in ANGLE_CODES if c1 <= c2}
        rh2 = {c: r_h2(c) for c in ANGLE_CODES}
        rh4 = {c: r_h4(c) for c in ANGLE_CODES}
        b1, bd1, b2, bd2 = solve_beta_constants()
        return BoundConstants(eta0=ETA0, rh1=rh1, rh2=rh2, rh3=r_h3(),
                              rh4=rh4, r_biii=r_bIII(),
                              beta1=b1, bound1=bd1, beta2=b2, bound2=bd2)

    def lines(self) -> list[str]:
        """Fixed-order text table, 10 significant digits."""
        def fmt(x: float) -> str:
            return f"{x:#.10g}"

        out = [f"eta0 {fmt(self.eta0)}"]
        for (c1, c2), val in sorted(self.rh1.items()):
            out.append(f"rh1[{c1},{c2}] {fmt(val)}")
        for c in ANGLE_CODES:
            out.append(f"rh2[{c}] {fmt(self.rh2[c])}")
        out.append(f"rh3 {fmt(self.rh3)}")
        for c in ANGLE_CODES:
            out.append(f"rh4[{c}] {fmt(self.rh4[c])}")
        out.append(f"rbIII {fmt(self.r_biii)}")
        out.append(f"beta1 {fmt(self.beta1)}")
        out.append(f"bound1 {fmt(self.bound1)}")
        out.append(f"beta2 {fmt(self.beta2)}")
        out.append(f"bound2 {fmt(self.bound2)}")
        return out
