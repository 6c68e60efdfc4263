"""Root finding with residual certificates and exact real-root brackets."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import mpmath
import numpy as np

from . import kernels
from .indpoly import IntPoly

RESIDUAL_TOL = 1e-6
WIDE_SPREAD = 1e15
EXTENDED_DPS = (40, 80, 160, 320)
ROOT_REL_ACC = 1e-11
BATCH_REL_ACC = 1e-8


class RootFindingError(RuntimeError):
    """The simultaneous iteration failed to converge within its cap."""


@dataclass
class RootReport:
    degree: int
    roots: list[complex]
    residuals: list[float]
    max_modulus: float
    certified_bracket: Optional[tuple[Fraction, Fraction]] = None
    extended_precision: bool = False
    multiplicities: dict = field(default_factory=dict)

    def witness(self) -> complex:
        return max(self.roots, key=abs)

    def to_dict(self) -> dict:
        bracket = None
        if self.certified_bracket is not None:
            lo, hi = self.certified_bracket
            bracket = {"lo": str(lo), "hi": str(hi)}
        return {
            "degree": self.degree,
            "roots": [
                {"re": z.real, "im": z.imag, "residual": r}
                for z, r in zip(self.roots, self.residuals)
            ],
            "max_modulus": self.max_modulus,
            "bracket": bracket,
        }


# --- exact polynomial helpers over Q --------------------------------------

def _trim(a: list) -> list:
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _divmod_q(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(a) >= len(b) and any(a):
        shift = len(a) - len(b)
        f = a[-1] / lead
        q[shift] = f
        for i, c in enumerate(b):
            a[i + shift] -= f * c
        a.pop()
        _trim(a)
        if len(a) == 1 and a[0] == 0:
            break
    return _trim(q), _trim(a or [Fraction(0)])


def _gcd_q(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    while any(b):
        _, r = _divmod_q(a, b)
        a, b = b, r
    return [c / a[-1] for c in a]


def _deriv(a: list[Fraction]) -> list[Fraction]:
    return [k * c for k, c in enumerate(a)][1:] or [Fraction(0)]


def _primitive(a: list[Fraction]) -> list[int]:
    den = math.lcm(*(c.denominator for c in a))
    ints = [int(c * den) for c in a]
    g = math.gcd(*ints)
    if ints[-1] < 0:
        g = -g
    return [c // g for c in ints]


def squarefree_factors(p: IntPoly) -> list[tuple[list[int], int]]:
    """Yun's decomposition: [(squarefree integer factor, multiplicity), ...]."""
    f = [Fraction(c) for c in p.coeffs]
    df = _deriv(f)
    g = _gcd_q(f, df)
    if len(g) == 1:
        return [(list(p.coeffs), 1)]
    b, _ = _divmod_q(f, g)
    c, _ = _divmod_q(df, g)
    d = [x - y for x, y in zip(c + [Fraction(0)] * (len(b) - len(c)), _deriv(b) + [Fraction(0)] * len(b))]
    d = _trim(d[:max(len(c), len(b) - 1)])
    out = []
    i = 1
    while len(b) > 1:
        a = _gcd_q(b, d)
        if len(a) > 1:
            out.append((_primitive(a), i))
        b, _ = _divmod_q(b, a)
        c, _ = _divmod_q(d, a)
        db = _deriv(b)
        width = max(len(c), len(db))
        d = _trim([(c[k] if k < len(c) else 0) - (db[k] if k < len(db) else 0) for k in range(width)])
        i += 1
    return out


# --- numerical solve ------------------------------------------------------

def _spread(coeffs) -> float:
    mags = [abs(c) for c in coeffs if c]
    return max(mags) / min(mags)


def _polish(coeffs: list[int], z: np.ndarray, steps: int = 2) -> np.ndarray:
    a = np.array(coeffs, dtype=np.float64)
    a = a / np.abs(a).max()
    out = z.copy()
    for k, zk in enumerate(out):
        for _ in range(steps):
            p, dp = _horner(a, zk)
            if dp == 0:
                break
            cand = zk - p / dp
            if abs(_horner(a, cand)[0]) < abs(p):
                zk = cand
            else:
                break
        out[k] = zk
    return out


def _horner(a, z):
    p = complex(a[-1])
    dp = 0j
    for c in a[-2::-1]:
        dp = dp * z + p
        p = p * z + c
    return p, dp


def _aberth_extended(coeffs: list[int], start, dps: int) -> list:
    d = len(coeffs) - 1
    with mpmath.workdps(dps):
        a = [mpmath.mpf(c) for c in coeffs]
        if start is None:
            radius = (abs(a[0]) / abs(a[d])) ** (mpmath.mpf(1) / d)
            z = [radius * mpmath.expj(2 * mpmath.pi * k / d + kernels.ANGLE_OFFSET) for k in range(d)]
        else:
            z = [mpmath.mpc(s) for s in start]
        tol = mpmath.mpf(10) ** (-(dps - 8))
        eps = mpmath.mpf(10) ** (-dps)
        absa = [abs(c) for c in a]
        for _ in range(kernels.MAX_ITER):
            steps = []
            for k in range(d):
                p, dp, bound = a[d], mpmath.mpc(0), absa[d]
                r = abs(z[k])
                for j in range(d - 1, -1, -1):
                    dp = dp * z[k] + p
                    p = p * z[k] + a[j]
                    bound = bound * r + absa[j]
                if abs(p) <= 4 * (d + 1) * eps * bound:
                    steps.append(mpmath.mpc(0))
                    continue
                s = mpmath.fsum(1 / (z[k] - z[j]) for j in range(d) if j != k)
                w = p / dp
                steps.append(w / (1 - w * s))
            z = [zk - sk for zk, sk in zip(z, steps)]
            if all(abs(sk) <= tol * (1 + abs(zk)) for sk, zk in zip(steps, z)):
                return z
    raise RootFindingError(f"extended-precision iteration did not converge for {coeffs}")


def _forward_errors(coeffs, z, eps: float) -> np.ndarray:
    """Rounding-error bound of Horner at each root divided by |p'(root)|."""
    a = np.asarray(coeffs, dtype=np.float64)
    a = a / np.abs(a).max()
    z = np.asarray(z, dtype=np.complex128)
    d = len(a) - 1
    p = np.full(z.shape, a[d], dtype=np.complex128)
    dp = np.zeros_like(p)
    bound = np.full(z.shape, abs(a[d]))
    r = np.abs(z)
    for j in range(d - 1, -1, -1):
        dp = dp * z + p
        p = p * z + a[j]
        bound = bound * r + abs(a[j])
    with np.errstate(divide="ignore", invalid="ignore"):
        return 4.0 * (d + 1) * eps * bound / np.abs(dp)


def _mp_forward_errors(coeffs, z, dps: int) -> list:
    d = len(coeffs) - 1
    with mpmath.workdps(dps):
        eps = mpmath.mpf(10) ** (-dps)
        out = []
        for zk in z:
            p, dp, bound = mpmath.mpf(coeffs[d]), mpmath.mpc(0), mpmath.mpf(abs(coeffs[d]))
            r = abs(zk)
            for j in range(d - 1, -1, -1):
                dp = dp * zk + p
                p = p * zk + coeffs[j]
                bound = bound * r + abs(coeffs[j])
            out.append(float(4 * (d + 1) * eps * bound / abs(dp)) if dp != 0 else math.inf)
        return out


def _accurate(z, errors) -> bool:
    z = np.asarray(z)
    errors = np.asarray(errors, dtype=float)
    return bool(np.all(np.isfinite(z)) and np.all(errors <= ROOT_REL_ACC * np.maximum(1.0, np.abs(z))))


def _solve_extended(coeffs: list[int], start) -> np.ndarray:
    for dps in EXTENDED_DPS:
        z = _aberth_extended(coeffs, start, dps)
        zc = np.array([complex(zk) for zk in z])
        if _accurate(zc, _mp_forward_errors(coeffs, z, dps)):
            return zc
        start = z
    raise RootFindingError(f"roots of {coeffs} not resolved at {EXTENDED_DPS[-1]} digits")


def _solve_squarefree(coeffs: list[int]) -> tuple[np.ndarray, bool]:
    d = len(coeffs) - 1
    if coeffs[0] == 0:
        rest, extended = _solve_squarefree(coeffs[1:]) if d > 1 else (np.zeros(0, complex), False)
        return np.concatenate([[0j], rest]), extended
    if d == 1:
        return np.array([complex(-Fraction(coeffs[0], coeffs[1]))]), False
    start = None
    if _spread(coeffs) <= WIDE_SPREAD:
        z, ok, _ = kernels.aberth_batch(np.array([coeffs], dtype=np.float64))
        z = z[0]
        if ok[0]:
            z = _polish(coeffs, z)
            if _accurate(z, _forward_errors(coeffs, z, kernels.EPS)):
                return z, False
        if np.all(np.isfinite(z)):
            start = [complex(zk) for zk in z]
    return _solve_extended(coeffs, start), True


def exact_residual(p: IntPoly, z: complex) -> float:
    """|p(z)| evaluated exactly at the double-precision point ``z``."""
    xr, yi = Fraction(z.real), Fraction(z.imag)
    D = math.lcm(xr.denominator, yi.denominator)
    re, im = int(xr * D), int(yi * D)
    d = p.degree
    qr, qi = p.coeffs[d], 0
    scale = 1
    for j in range(d - 1, -1, -1):
        scale *= D
        qr, qi = qr * re - qi * im + p.coeffs[j] * scale, qr * im + qi * re
    denom = D ** d
    return math.hypot(float(Fraction(qr, denom)), float(Fraction(qi, denom)))


def residual_scale(p: IntPoly, z: complex) -> float:
    return max(abs(c) for c in p.coeffs) * max(1.0, abs(z)) ** p.degree


def _symmetrize(roots: np.ndarray) -> np.ndarray:
    """Snap self-conjugate roots onto the real axis and average conjugate pairs.

    Roots of a real squarefree polynomial are real or come in conjugate
    pairs; a root is taken as real when its own conjugate is nearer to it
    than any other computed root.
    """
    out = roots.astype(complex)
    free = set(range(len(out)))
    for i in range(len(out)):
        if i not in free:
            continue
        zi = out[i]
        others = [j for j in free if j != i]
        j = min(others, key=lambda j: abs(out[j] - zi.conjugate()), default=None)
        if j is None or 2 * abs(zi.imag) <= abs(out[j] - zi.conjugate()):
            out[i] = complex(zi.real, 0.0)
            free.discard(i)
            continue
        mid = (zi + out[j].conjugate()) / 2
        if mid.imag < 0:
            mid = mid.conjugate()
        out[i], out[j] = mid, mid.conjugate()
        free -= {i, j}
    return out


def find_roots(p: IntPoly, tol: float = RESIDUAL_TOL, certify_extreme: bool = False) -> RootReport:
    """All complex roots with multiplicity, each with a scaled exact residual."""
    if p.degree < 1:
        raise ValueError("root finding needs degree >= 1")
    roots: list[complex] = []
    mults: dict = {}
    extended = False
    for factor, mult in squarefree_factors(p):
        z, ext = _solve_squarefree(factor)
        extended |= ext
        z = _symmetrize(z)
        for zk in z:
            roots.extend([complex(zk)] * mult)
            if mult > 1:
                mults[complex(zk)] = mult
    roots.sort(key=lambda z: (round(z.real, 12), round(z.imag, 12)))
    residuals = [exact_residual(p, z) / residual_scale(p, z) for z in roots]
    bad = [(z, r) for z, r in zip(roots, residuals) if not r <= tol]
    if bad:
        raise RootFindingError(f"residual above {tol} for roots {bad} of {p.coeffs}")
    report = RootReport(
        degree=p.degree,
        roots=roots,
        residuals=residuals,
        max_modulus=max(abs(z) for z in roots),
        extended_precision=extended,
        multiplicities=mults,
    )
    if certify_extreme:
        w = report.witness()
        if abs(w.imag) <= 1e-9 * max(1.0, abs(w)) and w.real < 0:
            margin = Fraction(max(abs(w.real), 1.0)) / (1 << 20)
            cert = certify_real_root_left_of(p, _dyadic_above(w.real + float(margin)))
            if cert.status == "bracket":
                report.certified_bracket = (cert.lo, cert.hi)
    return report


def _dyadic_above(x: float, bits: int = 20) -> Fraction:
    return Fraction(math.ceil(x * (1 << bits)), 1 << bits)


def max_modulus_root(p: IntPoly) -> tuple[float, complex]:
    report = find_roots(p)
    w = report.witness()
    return abs(w), w


# --- batched survey path --------------------------------------------------

def _batch_forward_errors(a: np.ndarray, z: np.ndarray) -> np.ndarray:
    d = a.shape[1] - 1
    p = np.zeros(z.shape, dtype=np.complex128) + a[:, d:d + 1]
    dp = np.zeros_like(p)
    r = np.abs(z)
    bound = np.zeros(z.shape) + np.abs(a[:, d:d + 1])
    for j in range(d - 1, -1, -1):
        dp = dp * z + p
        p = p * z + a[:, j:j + 1]
        bound = bound * r + np.abs(a[:, j:j + 1])
    with np.errstate(divide="ignore", invalid="ignore"):
        err = 4.0 * (d + 1) * kernels.EPS * bound / np.abs(dp)
    return np.where(np.isfinite(err), err, np.inf)

def max_moduli_batch(rows: np.ndarray, return_roots: bool = False):
    """Max root modulus of every integer coefficient row (zero padded).

    Rows are grouped by degree and solved with the batched kernel.  Rows that
    did not converge, fail the residual check, or have a root whose rounding
    error estimate is too large are re-solved through :func:`find_roots`.
    Without ``return_roots`` only the dominant root is held to full accuracy;
    the rest merely have to be provably smaller.
    """
    rows = np.asarray(rows)
    m = rows.shape[0]
    moduli = np.zeros(m)
    all_roots: list = [None] * m
    nz = rows != 0
    degrees = np.where(nz.any(axis=1), rows.shape[1] - 1 - np.argmax(nz[:, ::-1], axis=1), 0)
    for d in np.unique(degrees):
        idx = np.nonzero(degrees == d)[0]
        if d == 0:
            raise ValueError("constant polynomial has no roots")
        block = rows[idx, :d + 1].astype(np.float64)
        z, ok, _ = kernels.aberth_batch(block)
        a = block / np.abs(block).max(axis=1, keepdims=True)
        pz = np.zeros(z.shape, dtype=np.complex128) + a[:, d:d + 1]
        for j in range(d - 1, -1, -1):
            pz = pz * z + a[:, j:j + 1]
        scale = np.maximum(1.0, np.abs(z)) ** d
        good = ok & np.all(np.abs(pz) <= RESIDUAL_TOL * scale, axis=1)
        err = _batch_forward_errors(a, z)
        r = np.abs(z)
        if return_roots:
            good &= np.all(err <= BATCH_REL_ACC * np.maximum(1.0, r), axis=1)
        else:
            # only the dominant root must be sharp; the others need only stay below it
            top = r.max(axis=1)
            at_top = r >= top[:, None] * (1 - 1e-9)
            sharp = np.where(at_top, err <= BATCH_REL_ACC * np.maximum(1.0, r), r + d * err < top[:, None])
            good &= np.all(sharp, axis=1)
        moduli[idx] = np.abs(z).max(axis=1)
        if return_roots:
            for t, i in enumerate(idx):
                all_roots[i] = z[t]
        for t in np.nonzero(~good)[0]:
            i = idx[t]
            rep = find_roots(IntPoly(int(c) for c in rows[i]))
            moduli[i] = rep.max_modulus
            if return_roots:
                all_roots[i] = np.array(rep.roots)
    if return_roots:
        return moduli, all_roots
    return moduli


# --- exact real-root certification ----------------------------------------

@dataclass(frozen=True)
class RealRootCertificate:
    status: str  # "bracket", "absent" or "inconclusive"
    lo: Optional[Fraction] = None
    hi: Optional[Fraction] = None
    threshold: Optional[Fraction] = None
    reason: str = ""

    @property
    def ok(self) -> bool:
        return self.status == "bracket"

    def verify(self, p: IntPoly) -> bool:
        """Re-check the bracket's sign change in exact arithmetic."""
        if self.status != "bracket":
            return False
        sl, sh = p.sign_at(self.lo), p.sign_at(self.hi)
        return self.lo <= self.hi <= self.threshold and (sl * sh < 0 or sl == 0 or sh == 0)

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "lo": None if self.lo is None else str(self.lo),
            "hi": None if self.hi is None else str(self.hi),
            "threshold": None if self.threshold is None else str(self.threshold),
            "reason": self.reason,
        }


def root_modulus_bound(p: IntPoly) -> Fraction:
    """EK outer radius for positive coefficients, Cauchy's bound otherwise."""
    cs = p.coeffs
    if all(c > 0 for c in cs):
        return max(Fraction(cs[i], cs[i + 1]) for i in range(len(cs) - 1))
    return 1 + max(Fraction(abs(c), abs(cs[-1])) for c in cs[:-1])


def sturm_count_left_of(p: IntPoly, t: Fraction) -> int:
    """Number of distinct real roots in (-inf, t]."""
    seq = [[Fraction(c) for c in p.coeffs]]
    seq.append(_deriv(seq[0]))
    while len(seq[-1]) > 1 or seq[-1][0] != 0:
        _, r = _divmod_q(seq[-2], seq[-1])
        if len(r) == 1 and r[0] == 0:
            break
        seq.append([-c for c in r])

    def changes(signs):
        signs = [s for s in signs if s]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    def sign_inf(q):
        deg = len(q) - 1
        s = (q[-1] > 0) - (q[-1] < 0)
        return s if deg % 2 == 0 else -s

    def sign_at(q):
        v = Fraction(0)
        for c in reversed(q):
            v = v * t + c
        return (v > 0) - (v < 0)

    return changes([sign_inf(q) for q in seq]) - changes([sign_at(q) for q in seq])


def certify_real_root_left_of(p: IntPoly, threshold, rel_width: Fraction = Fraction(1, 1 << 20)) -> RealRootCertificate:
    """Exact IVT search for a root of ``p`` on (-inf, threshold).

    Samples p at the threshold and then at ``t - (2**j - 1) * max(|t|, 1)``.
    The first sign change is narrowed by bisection until the bracket is at
    most ``rel_width * |threshold|`` wide.  All signs are exact.
    """
    if p.degree < 1:
        raise ValueError("certification needs degree >= 1")
    t = Fraction(threshold)
    unit = max(abs(t), Fraction(1))
    width = rel_width * (abs(t) if t else 1)
    bound = root_modulus_bound(p)
    start = t
    s_start = p.sign_at(start)
    nudge = width
    while s_start == 0:
        start -= nudge
        s_start = p.sign_at(start)
    prev, s_prev = start, s_start
    j = 1
    lo = hi = None
    while True:
        x = start - ((1 << j) - 1) * unit
        s = p.sign_at(x)
        if s == 0:
            return RealRootCertificate("bracket", x, x, t, "exact root at a sample point")
        if s != s_prev:
            lo, hi = x, prev
            break
        if x < -bound:
            break
        prev, s_prev = x, s
        j += 1
    if lo is None:
        if t <= -bound and s_start != 0:
            return RealRootCertificate("absent", threshold=t, reason=f"every root has modulus <= {bound}")
        count = sturm_count_left_of(p, start)
        if count == 0:
            return RealRootCertificate("absent", threshold=t, reason="Sturm count is zero")
        return RealRootCertificate(
            "inconclusive", threshold=t, reason=f"{count} real roots without a sign change")
    s_lo = p.sign_at(lo)
    while hi - lo > width:
        mid = (lo + hi) / 2
        s = p.sign_at(mid)
        if s == 0:
            return RealRootCertificate("bracket", mid, mid, t, "exact root at a bisection point")
        if s == s_lo:
            lo = mid
        else:
            hi = mid
    return RealRootCertificate("bracket", lo, hi, t, "sign change")
