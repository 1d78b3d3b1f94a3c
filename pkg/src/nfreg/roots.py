"""Certified complex roots of squarefree integer polynomials.

Aberth's simultaneous iteration runs in double precision from a perturbed
circle, Newton's method then polishes each approximation at the working
precision, and every root gets an inclusion radius from the bound

    some root lies within  n * |p(z)| / |p'(z)|  of z

(p'/p is the sum of 1/(z - zeta_i)), inflated by the rounding error of the
evaluation. Pairwise disjoint discs certify that the d approximations
isolate d distinct roots. If double precision cannot separate a cluster the
whole iteration is rerun in multiprecision.
"""
from __future__ import annotations

from dataclasses import dataclass

import mpmath
import numpy as np

from .poly import IntPolynomial

GUARD_BITS = 40


class RootFindingError(ArithmeticError):
    pass


@dataclass(frozen=True)
class CertifiedRoot:
    value: mpmath.mpc
    radius: mpmath.mpf

    @property
    def is_real(self) -> bool:
        return self.value.imag == 0


def _aberth_float(coeffs: list[int], maxiter: int = 500) -> np.ndarray:
    n = len(coeffs) - 1
    p = np.array([float(c) for c in reversed(coeffs)], dtype=complex)  # big-endian
    dp = np.polyder(p)
    lead = abs(float(coeffs[-1]))
    cauchy = 1 + max(abs(float(c)) for c in coeffs[:-1]) / lead
    radius = min(cauchy, 2 * max(abs(float(c) / lead) ** (1.0 / (n - i)) for i, c in enumerate(coeffs[:-1])) + 1e-3)
    z = radius * np.exp(2j * np.pi * (np.arange(n) + 0.25) / n + 0.4j)
    for _ in range(maxiter):
        pv = np.polyval(p, z)
        dv = np.polyval(dp, z)
        with np.errstate(all="ignore"):
            ratio = pv / dv
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, 1.0)
            s = (1.0 / diff).sum(axis=1) - 1.0
            w = ratio / (1.0 - ratio * s)
        w = np.where(np.isfinite(w), w, 0.0)
        z = z - w
        if np.all(np.abs(w) <= 1e-14 * np.maximum(1.0, np.abs(z))):
            break
    return z


def _aberth_mp(coeffs: list[int], wp: int, maxiter: int = 2000) -> list:
    n = len(coeffs) - 1
    with mpmath.workprec(wp):
        lead = mpmath.mpf(coeffs[-1])
        cauchy = 1 + max(abs(mpmath.mpf(c)) for c in coeffs[:-1]) / abs(lead)
        z = [cauchy * mpmath.expjpi(mpmath.mpf(2 * k + 0.5) / n + mpmath.mpf(0.13)) for k in range(n)]
        tol = mpmath.ldexp(1, -wp + 8)
        for _ in range(maxiter):
            biggest = mpmath.mpf(0)
            for i in range(n):
                pv, dv = mpmath.polyval(list(reversed(coeffs)), z[i], derivative=True)
                if pv == 0:
                    continue
                ratio = pv / dv
                s = mpmath.fsum(1 / (z[i] - z[j]) for j in range(n) if j != i)
                w = ratio / (1 - ratio * s)
                z[i] -= w
                biggest = max(biggest, abs(w) / max(1, abs(z[i])))
            if biggest < tol:
                break
        else:
            raise RootFindingError("Aberth iteration did not converge")
    return z


def _eval_with_bound(coeffs: list[int], z, wp: int):
    """p(z), p'(z) and an upper bound on the rounding error of both."""
    pv, dv = mpmath.polyval(list(reversed(coeffs)), z, derivative=True)
    az = abs(z)
    mag = mpmath.fsum(abs(c) * az ** i for i, c in enumerate(coeffs))
    dmag = mpmath.fsum(i * abs(c) * az ** (i - 1) for i, c in enumerate(coeffs) if i)
    n = len(coeffs)
    eps = mpmath.ldexp(4 * n, -wp)
    return pv, dv, eps * mag, eps * dmag


def find_roots(poly: IntPolynomial, precision: int = 128) -> list[CertifiedRoot]:
    """Certified roots of a squarefree integer polynomial, in canonical order.

    Ordering: real roots ascending, then conjugate pairs by ascending real
    part (ties by ascending imaginary part), each pair listed with its
    positive-imaginary member first. Every radius is at most
    2**(-precision + 16).
    """
    coeffs = list(poly.coeffs)
    n = poly.degree
    if n < 1:
        raise ValueError("constant polynomial has no roots")
    target = mpmath.ldexp(1, -precision + 16)
    mag_bits = max(1, max(abs(c) for c in coeffs).bit_length())
    wp = precision + GUARD_BITS + 2 * mag_bits
    if n == 1:
        with mpmath.workprec(wp):
            x = mpmath.mpf(-coeffs[0]) / coeffs[1]
            return [CertifiedRoot(mpmath.mpc(x, 0), mpmath.ldexp(1, -wp + 2) * max(1, abs(x)))]

    try:
        approx = [complex(z) for z in _aberth_float(coeffs)]
        roots = _polish_and_certify(coeffs, approx, wp, target)
    except RootFindingError:
        roots = None
    if roots is None:
        approx = _aberth_mp(coeffs, wp)
        roots = _polish_and_certify(coeffs, approx, wp, target)
        if roots is None:
            raise RootFindingError(f"could not isolate the roots of {poly} at {precision} bits")
    with mpmath.workprec(wp):
        return _canonical_order(roots)


def _polish_and_certify(coeffs, approx, wp, target):
    n = len(coeffs) - 1
    with mpmath.workprec(wp):
        zs = []
        for z0 in approx:
            z = mpmath.mpc(z0)
            for _ in range(200):
                pv, dv = mpmath.polyval(list(reversed(coeffs)), z, derivative=True)
                if dv == 0:
                    raise RootFindingError("vanishing derivative during Newton polish")
                step = pv / dv
                z -= step
                if abs(step) <= mpmath.ldexp(abs(z) + 1, -wp + 6):
                    break
            zs.append(z)
        radii = []
        for z in zs:
            pv, dv, perr, derr = _eval_with_bound(coeffs, z, wp)
            denom = abs(dv) - derr
            if denom <= 0:
                return None
            radii.append(n * (abs(pv) + perr) / denom)
        if max(radii) > target:
            return None
        for i in range(n):
            for j in range(i + 1, n):
                if abs(zs[i] - zs[j]) <= radii[i] + radii[j]:
                    return None
        out = []
        for z, r in zip(zs, radii):
            # a disc isolating one root and meeting the real axis: the root is
            # real, since its conjugate lies in the mirrored (same) disc
            if abs(z.imag) <= r:
                z = mpmath.mpc(z.real, 0)
            out.append(CertifiedRoot(z, r))
    return out


def _canonical_order(roots: list[CertifiedRoot]) -> list[CertifiedRoot]:
    reals = sorted((r for r in roots if r.is_real), key=lambda r: r.value.real)
    uppers = sorted((r for r in roots if r.value.imag > 0), key=lambda r: (r.value.real, r.value.imag))
    lowers = [r for r in roots if r.value.imag < 0]
    ordered = list(reals)
    used = set()
    for up in uppers:
        target = mpmath.conj(up.value)
        j = min(
            (k for k in range(len(lowers)) if k not in used),
            key=lambda k: abs(lowers[k].value - target),
            default=None,
        )
        if j is None or abs(lowers[j].value - target) > up.radius + lowers[j].radius:
            raise RootFindingError("root multiset is not closed under conjugation")
        used.add(j)
        # pair members share one value up to conjugation; keep the two radii
        ordered.append(up)
        ordered.append(CertifiedRoot(target, max(up.radius, lowers[j].radius)))
    if len(used) != len(lowers):
        raise RootFindingError("unpaired non-real root")
    return ordered
