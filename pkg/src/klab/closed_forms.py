"""Closed-form values of the invariants for S^2_n and S^2_{n,r}.

The S^2_{n,r} forms with the center edge kept exist in two variants.
``"proof"`` (default) carries the denominator and exponent that the Vieta
derivation produces; ``"statement"`` keeps an alternative reading that fails
against the oracle.  For the Wiener index ``"statement"`` is the uniform
W(S^2_n) + r, which is wrong for every deletion; the default is the direct count.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidParameter

VARIANTS = ("proof", "statement")


@dataclass(frozen=True)
class FormulaValue:
    value: Fraction | int
    formula: str
    variant: str = "proof"


def _check_n(n: int) -> None:
    if n < 2:
        raise InvalidParameter(f"n must be >= 2, got {n}")


def _check_nr(n: int, r: int, center_deleted: bool, variant: str = "proof") -> None:
    _check_n(n)
    if not 0 <= r <= n - 1:
        raise InvalidParameter(f"r must lie in [0, {n - 1}], got {r}")
    if r == 0 and center_deleted:
        raise InvalidParameter("center_deleted requires r >= 1")
    if variant not in VARIANTS:
        raise InvalidParameter(f"variant must be one of {VARIANTS}, got {variant!r}")


def kf_sn2(n: int) -> Fraction:
    _check_n(n)
    return Fraction(8 * n**3 + 3 * n**2 - 14 * n + 12, 3 * n + 6)


def tau_sn2(n: int) -> int:
    _check_n(n)
    return (n + 2) * 3 ** (n - 2)


def kfstar_sn2(n: int) -> Fraction:
    _check_n(n)
    return Fraction(48 * n**3 + 25 * n**2 - 180 * n + 116, 3 * n + 6)


def wiener_sn2(n: int) -> int:
    _check_n(n)
    return 5 * n**2 - 8 * n + 4


def gutman_sn2(n: int) -> int:
    _check_n(n)
    return 33 * n**2 - 68 * n + 36


def transmission_sn2(n: int, center: bool) -> int:
    _check_n(n)
    return 3 * n - 2 if center else 5 * n - 6


def degree_transmission_sn2(n: int, center: bool) -> int:
    _check_n(n)
    return 7 * n**2 - 6 * n if center else 26 * n - 36


def kf_case11(n: int) -> Fraction:
    """Kf for r = 1 with the center edge deleted, from the explicit quadratic roots."""
    _check_n(n)
    return Fraction(8 * n**3 - 21 * n**2 + 28 * n - 6, 3 * (n - 1))


def kf_snr2(n: int, r: int, center_deleted: bool, variant: str = "proof") -> FormulaValue:
    _check_nr(n, r, center_deleted, variant)
    if r == 0:
        return FormulaValue(kf_sn2(n), "kf_sn2", variant)
    if center_deleted:
        num = 8 * n**3 - (4 * r + 17) * n**2 - (4 * r**2 - 26 * r - 6) * n - 6 * r
        return FormulaValue(Fraction(num, 3 * (n - r)), "kf_snr2/center-deleted", variant)
    num = 8 * n**3 - (4 * r - 3) * n**2 - (4 * r**2 - 30 * r + 14) * n + 12 - 6 * r
    den = 3 * (n - r + 2) if variant == "proof" else 3 * (n - r - 2)
    if den == 0:
        raise InvalidParameter(f"statement variant has a zero denominator at n={n}, r={r}")
    return FormulaValue(Fraction(num, den), "kf_snr2/center-kept", variant)


def tau_snr2(n: int, r: int, center_deleted: bool, variant: str = "proof") -> FormulaValue:
    _check_nr(n, r, center_deleted, variant)
    if r == 0:
        return FormulaValue(tau_sn2(n), "tau_sn2", variant)
    if center_deleted:
        return FormulaValue((n - r) * 3 ** (n - r - 1), "tau_snr2/center-deleted", variant)
    exponent = n - r - 2 if variant == "proof" else n - r + 2
    # exponent is -1 at r = n - 1; (n - r + 2) = 3 then cancels it
    value = (n - r + 2) * Fraction(3) ** exponent
    if value.denominator != 1:
        raise InvalidParameter(f"tau formula is not integral at n={n}, r={r}")
    return FormulaValue(int(value), "tau_snr2/center-kept", variant)


def wiener_snr2(n: int, r: int, center_deleted: bool = False, variant: str = "proof") -> FormulaValue:
    """Wiener index of S^2_{n,r}.

    ``statement``: 5n^2 - 8n + r + 4 for every deletion.
    ``proof`` (default): counted directly.  Each deleted leaf edge ii' adds 2
    (d(i, i') goes 1 -> 3).  Without the center edge, paths through the two
    centers must detour over a surviving leaf rung, which adds
    2 + 8(r-1) + 2(r-1)(r-2) = 2r^2 + 2r - 2 in total.
    """
    _check_nr(n, r, center_deleted, variant)
    base = wiener_sn2(n)
    if variant == "statement":
        return FormulaValue(base + r, "wiener_snr2/statement", variant)
    if r == 0:
        return FormulaValue(base, "wiener_sn2", variant)
    if center_deleted:
        return FormulaValue(base + 2 * r * r + 2 * r - 2, "wiener_snr2/center-deleted", variant)
    return FormulaValue(base + 2 * r, "wiener_snr2/center-kept", variant)


def ratio_kf_wiener(n: int, r: int = 0, center_deleted: bool = False) -> Fraction:
    return Fraction(kf_snr2(n, r, center_deleted).value) / wiener_snr2(n, r, center_deleted).value


def ratio_kfstar_gutman(n: int) -> Fraction:
    return kfstar_sn2(n) / gutman_sn2(n)


KF_W_LIMIT = Fraction(8, 15)
KFSTAR_GUT_LIMIT = Fraction(16, 33)
