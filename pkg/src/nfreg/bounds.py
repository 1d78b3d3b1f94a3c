"""Explicit lower bounds for regulators in terms of the discriminant.

Each evaluator takes the degree d, absolute discriminant D, unit rank r and
rho (largest unit rank of a proper subfield), and returns a BoundReport.
Pass a regulator to get a verdict; without one the verdict is "unchecked".
"""
from __future__ import annotations

import math

import mpmath

from .field import NumberField
from .heights import weil_height_places
from .reports import FAILED, HYPOTHESIS_FAILED, UNCHECKED, VACUOUS, VERIFIED, BoundReport
from .towers import SubfieldLattice, rho as lattice_rho
from .units import RegulatorValue, UnitSystem, regulator as unit_regulator

BITS = 256
# minimum regulator over all number fields (degree 6, discriminant -10051)
FRIEDMAN_FLOOR = "0.2052"

THEOREM_IDS = (
    "amoroso-explicit",
    "dhm",
    "friedman-floor",
    "quadratic",
    "silverman",
    "small-disc-theorem1",
    "small-disc-theorem2",
    "theorem1",
    "theorem2",
)


class InapplicableError(ValueError):
    """The bound's standing assumptions (degree, CM status) exclude this input."""


def _value_and_error(reg):
    if reg is None:
        return None, mpmath.mpf(0)
    if isinstance(reg, RegulatorValue):
        return reg.value, reg.error_bound
    return mpmath.mpf(reg), mpmath.mpf(0)


def _rounding(x):
    return abs(x) * mpmath.ldexp(1, -BITS + 24) if x is not None else mpmath.mpf(0)


def _judge(bound, value, error, hypotheses: dict) -> str:
    if not all(hypotheses.values()):
        return HYPOTHESIS_FAILED
    if value is None:
        return UNCHECKED
    if value - bound < -error:
        return FAILED
    return VACUOUS if bound <= 0 else VERIFIED


def _report(theorem, hypotheses, bound, reg, label, notes=(), quantity="Reg") -> BoundReport:
    value, err = _value_and_error(reg)
    err = err + _rounding(bound)
    verdict = _judge(bound, value, err, hypotheses) if bound is not None else HYPOTHESIS_FAILED
    return BoundReport(theorem, dict(hypotheses), bound, value, err, verdict, label, quantity, list(notes))


def log_gamma_theorem1(d: int):
    """log of d^(-d)."""
    return -d * mpmath.log(d)


def log_gamma_theorem2(d: int):
    """log of d^(-d^(log2 d) / 2)."""
    return -(mpmath.mpf(d) ** mpmath.log(d, 2)) / 2 * mpmath.log(d)


def log_gamma_silverman(d: int):
    """log of d^(-d^(log2 8d))."""
    return -(mpmath.mpf(d) ** mpmath.log(8 * d, 2)) * mpmath.log(d)


GAMMAS = {"theorem1": log_gamma_theorem1, "theorem2": log_gamma_theorem2, "silverman": log_gamma_silverman}


def voutier_constant(d: int):
    """(1/4) (log log d / log d)^3; negative at d = 2."""
    if d < 2:
        raise ValueError("Voutier constant needs d >= 2")
    with mpmath.workprec(BITS):
        return (mpmath.log(mpmath.log(d)) / mpmath.log(d)) ** 3 / 4


def _check_common(d, D, r, rho_):
    if d < 1 or D < 1 or r < 0 or rho_ < 0 or rho_ > r:
        raise ValueError(f"invalid field data d={d}, D={D}, r={r}, rho={rho_}")


def silverman_bound(d: int, D: int, r: int, rho_: int, regulator=None, label: str = "") -> BoundReport:
    """2^(-4 d^2) (log gamma D)^(r - rho), gamma = d^(-d^(log2 8d)), assuming gamma D > 1."""
    _check_common(d, D, r, rho_)
    if d < 2:
        raise InapplicableError("degree must be at least 2")
    with mpmath.workprec(BITS):
        lg = mpmath.log(D) + log_gamma_silverman(d)
        hyp = {"gamma_D_gt_1": bool(lg > 0)}
        bound = mpmath.ldexp(1, -4 * d * d) * lg ** (r - rho_) if lg > 0 else None
        return _report("silverman", hyp, bound, regulator, label, [f"log(gamma*D) = {mpmath.nstr(lg, 15)}"])


def theorem1_bound(d: int, D: int, r: int, rho_: int, regulator=None, label: str = "") -> BoundReport:
    """(2r)!/(r!)^3 (loglog d / 2 log d)^(3 rho) (log(gamma D) / 4d)^(r - rho), gamma = d^(-d)."""
    _check_common(d, D, r, rho_)
    if d < 3:
        raise InapplicableError("degree must be at least 3")
    if rho_ == r:
        raise InapplicableError("CM field (rho = r)")
    with mpmath.workprec(BITS):
        hyp = {"gamma_D_gt_1": D > d**d, "non_cm": True, "d_ge_3": True}
        lg = mpmath.log(D) + log_gamma_theorem1(d)
        bound = None
        if hyp["gamma_D_gt_1"]:
            c = mpmath.mpf(math.factorial(2 * r)) / math.factorial(r) ** 3
            bound = c * (mpmath.log(mpmath.log(d)) / (2 * mpmath.log(d))) ** (3 * rho_) * (lg / (4 * d)) ** (r - rho_)
        return _report("theorem1", hyp, bound, regulator, label)


def theorem2_bound(d: int, D: int, r: int, rho_: int, regulator=None, label: str = "") -> BoundReport:
    """0.2/r! (2d log(gamma D) / ((d-2) d^(log2 d)))^(r - rho), gamma = d^(-d^(log2 d)/2)."""
    _check_common(d, D, r, rho_)
    if d < 3:
        raise InapplicableError("degree must be at least 3")
    if rho_ == r:
        raise InapplicableError("CM field (rho = r)")
    with mpmath.workprec(BITS):
        lg = mpmath.log(D) + log_gamma_theorem2(d)
        hyp = {"gamma_D_gt_1": bool(lg > 0), "non_cm": True, "d_ge_3": True}
        bound = None
        if lg > 0:
            x = 2 * d * lg / ((d - 2) * mpmath.mpf(d) ** mpmath.log(d, 2))
            bound = mpmath.mpf("0.2") / math.factorial(r) * x ** (r - rho_)
        return _report("theorem2", hyp, bound, regulator, label)


def _amoroso(d, D, r, rho_, log_term):
    c = mpmath.mpf(math.factorial(2 * r)) / math.factorial(r) ** 3
    den = (1050 * mpmath.mpf(rho_) ** 5 * log_term) ** (rho_**2 * (rho_ + 1) ** 2)
    tail = ((mpmath.log(D) - d * mpmath.log(d)) / (4 * d)) ** (r - rho_)
    return c * mpmath.mpf(d) ** (rho_ - 1) / den * tail


def amoroso_explicit_bound(d: int, D: int, r: int, rho_: int, regulator=None, label: str = "") -> BoundReport:
    """Explicit Amoroso-David refinement, reading the log factor as log(1.5 d).

    The alternative reading (log 1.5) * d is evaluated and recorded in the notes.
    """
    _check_common(d, D, r, rho_)
    if d < 3:
        raise InapplicableError("degree must be at least 3")
    if rho_ == r:
        raise InapplicableError("CM field (rho = r)")
    with mpmath.workprec(BITS):
        hyp = {"gamma_D_gt_1": D > d**d, "rho_positive": rho_ >= 1, "d_ge_3": True}
        bound = alt = None
        if hyp["gamma_D_gt_1"]:
            bound = _amoroso(d, D, r, rho_, mpmath.log(mpmath.mpf("1.5") * d))
            alt = _amoroso(d, D, r, rho_, mpmath.log(mpmath.mpf("1.5")) * d)
        notes = ["log factor read as log(1.5*d)"]
        if alt is not None:
            notes.append(f"alternative reading (log 1.5)*d gives {mpmath.nstr(alt, 20)}")
        if rho_ == 0:
            notes.append("rho = 0: the height product behind this bound is empty")
        return _report("amoroso-explicit", hyp, bound, regulator, label, notes)


def quadratic_bound(D: int, regulator=None, label: str = "", signature=(2, 0)) -> BoundReport:
    """(1/2) log(D/4) <= Reg for real quadratic fields."""
    if tuple(signature) != (2, 0):
        raise InapplicableError("not a real quadratic field")
    if D < 1:
        raise ValueError("discriminant must be positive")
    with mpmath.workprec(BITS):
        bound = (mpmath.log(D) - mpmath.log(4)) / 2
        return _report("quadratic", {"real_quadratic": True}, bound, regulator, label)


def small_disc_bound(d: int, D: int, gamma_choice: str, regulator, label: str = "") -> BoundReport:
    """log D < 5 log(1/gamma) Reg when gamma D <= 1; reported as Reg >= log D / (5 log(1/gamma))."""
    if gamma_choice not in ("theorem1", "theorem2"):
        raise ValueError(f"unknown gamma choice {gamma_choice!r}")
    with mpmath.workprec(BITS):
        lgam = GAMMAS[gamma_choice](d)
        if mpmath.log(D) + lgam > 0:
            raise InapplicableError("gamma * D > 1: use the main theorems")
        bound = mpmath.log(D) / (5 * -lgam)
        value, err = _value_and_error(regulator)
        rep = _report(f"small-disc-{gamma_choice}", {"gamma_D_le_1": True}, bound, regulator, label)
        # the inequality is strict; equality within error is not a proof
        if rep.verdict == VERIFIED and value - bound <= err:
            rep.verdict = FAILED
        return rep


def friedman_floor_report(regulator, label: str = "") -> BoundReport:
    with mpmath.workprec(BITS):
        return _report("friedman-floor", {}, mpmath.mpf(FRIEDMAN_FLOOR), regulator, label)


def dhm_report(fld: NumberField) -> BoundReport:
    """h(theta) >= log(D / d^d) / (2 d (d-1)) for the generator theta of k."""
    if fld.d < 2:
        raise InapplicableError("needs an irrational generator")
    h = weil_height_places(fld.gen())
    d, D = fld.d, fld.abs_disc
    with mpmath.workprec(BITS):
        bound = (mpmath.log(D) - d * mpmath.log(d)) / (2 * d * (d - 1))
    return _report("dhm", {}, bound, RegulatorValue(h.value, h.error_bound), fld.label, quantity="h(theta)")


def _inapplicable(theorem, label, reason) -> BoundReport:
    return BoundReport(theorem, {"applicable": False}, None, None, 0, HYPOTHESIS_FAILED, label, "Reg", [f"inapplicable: {reason}"])


def verify_field(fld: NumberField, lattice: SubfieldLattice, units: UnitSystem) -> list[BoundReport]:
    """Every applicable bound for one field, ordered by theorem id."""
    reg = unit_regulator(units)
    d, D, r = fld.d, fld.abs_disc, fld.unit_rank
    rh = lattice_rho(lattice)
    lbl = fld.label
    out = [friedman_floor_report(reg, lbl)]
    if d >= 2:
        out.append(silverman_bound(d, D, r, rh, reg, lbl))
        out.append(dhm_report(fld))
    if fld.signature == (2, 0):
        out.append(quadratic_bound(D, reg, lbl))
    for theorem, fn in (("theorem1", theorem1_bound), ("theorem2", theorem2_bound), ("amoroso-explicit", amoroso_explicit_bound)):
        try:
            out.append(fn(d, D, r, rh, reg, lbl))
        except InapplicableError as exc:
            out.append(_inapplicable(theorem, lbl, str(exc)))
    if d >= 3:
        for choice in ("theorem1", "theorem2"):
            with mpmath.workprec(BITS):
                small = mpmath.log(D) + GAMMAS[choice](d) <= 0
            if small:
                out.append(small_disc_bound(d, D, choice, reg, lbl))
    for rep in out:
        rep.hypotheses.setdefault("cm", rh == r)
    out.sort(key=lambda rep: rep.theorem)
    return out
