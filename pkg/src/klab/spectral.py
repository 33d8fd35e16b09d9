"""Laplacian matrices, the mirror block split, and spectra.

Exact spectra are kept as rational (value, multiplicity) pairs plus at most
one polynomial factor whose roots are known only through their elementary
symmetric functions.  Invariants consume those through Vieta's relations,
so no root is ever extracted on an exact path.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from .errors import (
    InvalidInput,
    InvalidParameter,
    NotConnectedSpectrum,
    NotMirrorSymmetric,
    SingularCubic,
)
from .graphs import Graph

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class RationalMatrix:
    """Dense square matrix.  ``exact=False`` means entries are floats."""

    entries: tuple[tuple, ...]
    exact: bool = True

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.entries)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise InvalidInput("matrix must be square")
        conv = Fraction if self.exact else float
        object.__setattr__(self, "entries", tuple(tuple(conv(x) for x in r) for r in rows))

    @property
    def order(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def block(self, rows: range, cols: range) -> RationalMatrix:
        return RationalMatrix([[self.entries[i][j] for j in cols] for i in rows], self.exact)

    def _combine(self, other: RationalMatrix, sign: int) -> RationalMatrix:
        if self.order != other.order:
            raise InvalidInput("order mismatch")
        return RationalMatrix(
            [[a + sign * b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)],
            self.exact and other.exact,
        )

    def __add__(self, other: RationalMatrix) -> RationalMatrix:
        return self._combine(other, 1)

    def __sub__(self, other: RationalMatrix) -> RationalMatrix:
        return self._combine(other, -1)

    def trace(self):
        return sum(self.entries[i][i] for i in range(self.order))

    def row_sums(self) -> list:
        return [sum(r) for r in self.entries]

    def is_symmetric(self, tol: float = 0.0) -> bool:
        n = self.order
        for i in range(n):
            for j in range(i + 1, n):
                a, b = self.entries[i][j], self.entries[j][i]
                if (a != b) if self.exact else abs(a - b) > tol:
                    return False
        return True

    def to_numpy(self) -> np.ndarray:
        return np.array([[float(x) for x in r] for r in self.entries], dtype=float).reshape(self.order, self.order)

    def to_int_rows(self) -> list[list[int]]:
        if not self.exact or any(x.denominator != 1 for r in self.entries for x in r):
            raise InvalidInput("matrix has non-integer entries")
        return [[int(x) for x in r] for r in self.entries]


@dataclass(frozen=True)
class MirrorPairing:
    """Pairs vertex i with i + shift; covers a matrix of order 2 * shift."""

    shift: int

    def __post_init__(self):
        if self.shift < 1:
            raise InvalidParameter("mirror shift must be positive")

    def permutation(self) -> list[int]:
        k = self.shift
        return [i + k for i in range(k)] + [i for i in range(k)]

    def is_automorphism(self, g: Graph) -> bool:
        if g.vertex_count != 2 * self.shift:
            return False
        perm = self.permutation()
        return all(g.has_edge(perm[u], perm[v]) for u, v in g.edges)


# -- factors known through Vieta -------------------------------------------


def _divisors(k: int) -> list[int]:
    k = abs(k)
    small = [d for d in range(1, math.isqrt(k) + 1) if k % d == 0]
    return sorted(set(small + [k // d for d in small]))


def _rational_roots(coeffs: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    """Split off every rational root (with multiplicity); return (roots, remaining coeffs)."""
    found = []
    coeffs = list(coeffs)
    while len(coeffs) > 1:
        if coeffs[-1] == 0:
            found.append(Fraction(0))
            coeffs.pop()
            continue
        lcm = math.lcm(*(c.denominator for c in coeffs))
        ints = [int(c * lcm) for c in coeffs]
        root = None
        for p in _divisors(ints[-1]):
            for q in _divisors(ints[0]):
                for cand in (Fraction(p, q), Fraction(-p, q)):
                    if sum(c * cand ** (len(ints) - 1 - i) for i, c in enumerate(ints)) == 0:
                        root = cand
                        break
                if root is not None:
                    break
            if root is not None:
                break
        if root is None:
            break
        found.append(root)
        quotient = [coeffs[0]]
        for c in coeffs[1:-1]:
            quotient.append(c + root * quotient[-1])
        coeffs = quotient
    return found, coeffs


def _real_roots(coeffs: list[Fraction]) -> tuple[float, ...]:
    """Real roots of a polynomial with rational coefficients, ascending.

    Rational roots are deflated exactly first, so repeated rational roots come
    out exact; whatever is left is solved numerically and Newton-polished.
    """
    exact, rest = _rational_roots(coeffs)
    out = [float(x) for x in exact]
    if len(rest) > 1:
        fc = [float(c) for c in rest]
        roots = np.roots(fc)
        scale = max(1.0, max(abs(c) for c in fc))
        if np.max(np.abs(roots.imag), initial=0.0) > 1e-7 * scale:
            raise InvalidInput(f"polynomial {rest} has non-real roots")
        dfc = np.polyder(fc)
        for x in roots.real:
            for _ in range(2):
                dp = np.polyval(dfc, x)
                if dp != 0:
                    x = x - np.polyval(fc, x) / dp
            out.append(float(x))
    return tuple(sorted(out))


@dataclass(frozen=True)
class CubicFactor:
    """Monic cubic  x^3 - e1 x^2 + e2 x - e3  given by the symmetric functions of its roots."""

    e1: Fraction
    e2: Fraction
    e3: Fraction

    degree = 3

    def __post_init__(self):
        for name in ("e1", "e2", "e3"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    def coefficients(self) -> list[Fraction]:
        return [Fraction(1), -self.e1, self.e2, -self.e3]

    def __call__(self, x):
        return ((x - self.e1) * x + self.e2) * x - self.e3

    def reciprocal_sum(self) -> Fraction:
        return vieta_reciprocal_sum(self)

    def product(self) -> Fraction:
        return self.e3

    def roots(self) -> tuple[float, ...]:
        return _real_roots(self.coefficients())

    def deflate(self, root) -> QuadraticFactor:
        """Divide out the rational root ``root``."""
        root = Fraction(root)
        q1 = -self.e1 + root
        q2 = self.e2 + root * q1
        if -self.e3 + root * q2 != 0:
            raise InvalidInput(f"{root} is not a root of {self}")
        return QuadraticFactor(-q1, q2)

    def to_dict(self) -> dict:
        return {k: _frac_json(getattr(self, k)) for k in ("e1", "e2", "e3")}


@dataclass(frozen=True)
class QuadraticFactor:
    """Monic quadratic  x^2 - e1 x + e2."""

    e1: Fraction
    e2: Fraction

    degree = 2

    def __post_init__(self):
        object.__setattr__(self, "e1", Fraction(self.e1))
        object.__setattr__(self, "e2", Fraction(self.e2))

    def coefficients(self) -> list[Fraction]:
        return [Fraction(1), -self.e1, self.e2]

    def __call__(self, x):
        return (x - self.e1) * x + self.e2

    def reciprocal_sum(self) -> Fraction:
        if self.e2 == 0:
            raise SingularCubic("factor has a zero root")
        return self.e1 / self.e2

    def product(self) -> Fraction:
        return self.e2

    def roots(self) -> tuple[float, ...]:
        return _real_roots(self.coefficients())

    def to_dict(self) -> dict:
        return {k: _frac_json(getattr(self, k)) for k in ("e1", "e2")}


def vieta_reciprocal_sum(c: CubicFactor) -> Fraction:
    """1/x1 + 1/x2 + 1/x3 = e2 / e3."""
    if c.e3 == 0:
        raise SingularCubic("cubic has a zero root; reciprocal sum undefined")
    return c.e2 / c.e3


def _frac_json(x: Fraction) -> dict:
    return {"num": x.numerator, "den": x.denominator}


def _frac_from_json(d) -> Fraction:
    if isinstance(d, dict):
        return Fraction(d["num"], d["den"])
    return Fraction(d)


# -- spectra ---------------------------------------------------------------


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalue multiset.

    Exact form: ``entries`` are ascending (value, multiplicity) pairs and
    ``cubic`` optionally holds the factor for the remaining eigenvalues.
    Floating form: ``floating`` holds all eigenvalues sorted ascending.
    """

    entries: tuple[tuple[Fraction, int], ...] = ()
    cubic: CubicFactor | QuadraticFactor | None = None
    floating: tuple[float, ...] | None = None
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        if self.floating is not None:
            if self.entries or self.cubic is not None:
                raise InvalidInput("a spectrum is either exact or floating, not both")
            object.__setattr__(self, "floating", tuple(sorted(float(x) for x in self.floating)))
            return
        merged: Counter = Counter()
        for v, m in self.entries:
            merged[Fraction(v)] += int(m)
        if any(m < 0 for m in merged.values()):
            raise InvalidInput("negative multiplicity")
        object.__setattr__(self, "entries", tuple(sorted((v, m) for v, m in merged.items() if m > 0)))

    @classmethod
    def from_values(cls, values: Iterable, cubic=None) -> Spectrum:
        return cls(tuple(Counter(Fraction(v) for v in values).items()), cubic)

    @classmethod
    def from_floats(cls, values: Iterable[float], tol: float = DEFAULT_TOL) -> Spectrum:
        return cls(floating=tuple(values), tol=tol)

    @property
    def is_exact(self) -> bool:
        return self.floating is None

    @property
    def representation(self) -> str:
        return "exact-rational" if self.is_exact else "floating"

    @property
    def order(self) -> int:
        if not self.is_exact:
            return len(self.floating)
        return sum(m for _, m in self.entries) + (self.cubic.degree if self.cubic else 0)

    def multiplicity(self, value) -> int:
        if self.is_exact:
            value = Fraction(value)
            count = dict(self.entries).get(value, 0)
            if self.cubic is not None and self.cubic(value) == 0:
                count += sum(1 for x in self.cubic.roots() if abs(x - float(value)) <= self.tol)
            return count
        return sum(1 for x in self.floating if abs(x - float(value)) <= self.tol)

    def values(self) -> list[float]:
        """All eigenvalues as floats, sorted (cubic roots extracted numerically)."""
        if not self.is_exact:
            return list(self.floating)
        out = [float(v) for v, m in self.entries for _ in range(m)]
        if self.cubic is not None:
            out.extend(self.cubic.roots())
        return sorted(out)

    def trace(self):
        if not self.is_exact:
            return sum(self.floating)
        total = sum((v * m for v, m in self.entries), Fraction(0))
        return total + (self.cubic.e1 if self.cubic else 0)

    def _check_single_zero(self) -> None:
        if self.is_exact:
            zeros = dict(self.entries).get(Fraction(0), 0)
            if self.cubic is not None and self.cubic.product() == 0:
                zeros += 1
        else:
            scale = max(1.0, max(abs(x) for x in self.floating))
            zeros = sum(1 for x in self.floating if abs(x) <= self.tol * scale)
        if zeros != 1:
            raise NotConnectedSpectrum(f"expected exactly one zero eigenvalue, found {zeros}")

    def reciprocal_sum(self):
        """Sum of 1/x over the nonzero eigenvalues (exactly one zero required)."""
        self._check_single_zero()
        if not self.is_exact:
            return sum(1.0 / x for x in self.floating[1:])
        total = sum((Fraction(m) / v for v, m in self.entries if v != 0), Fraction(0))
        if self.cubic is not None:
            total += self.cubic.reciprocal_sum()
        return total

    def nonzero_product(self):
        self._check_single_zero()
        if not self.is_exact:
            return math.prod(self.floating[1:])
        total = Fraction(1)
        for v, m in self.entries:
            if v != 0:
                total *= v**m
        if self.cubic is not None:
            total *= self.cubic.product()
        return total

    def union(self, other: Spectrum) -> Spectrum:
        if self.is_exact and other.is_exact:
            if self.cubic is not None and other.cubic is not None:
                raise InvalidInput("cannot merge two factored spectra")
            return Spectrum(self.entries + other.entries, self.cubic or other.cubic, tol=self.tol)
        return Spectrum.from_floats(self.values() + other.values(), min(self.tol, other.tol))

    def to_dict(self) -> dict:
        if not self.is_exact:
            return {"exact": None, "cubic": None, "floating": list(self.floating)}
        return {
            "exact": [[v.numerator, v.denominator, m] for v, m in self.entries],
            "cubic": self.cubic.to_dict() if self.cubic else None,
            "floating": None,
        }

    @classmethod
    def from_dict(cls, data: dict) -> Spectrum:
        if data.get("floating") is not None:
            return cls.from_floats(data["floating"])
        cubic = None
        if data.get("cubic"):
            c = {k: _frac_from_json(v) for k, v in data["cubic"].items()}
            cubic = CubicFactor(c["e1"], c["e2"], c["e3"]) if "e3" in c else QuadraticFactor(c["e1"], c["e2"])
        return cls(tuple((Fraction(p, q), m) for p, q, m in data.get("exact") or ()), cubic)


def spectra_match(a: Spectrum, b: Spectrum, tol: float = DEFAULT_TOL) -> bool:
    """Multiset equality: exact when both sides are exact and unfactored, else sorted within tol."""
    if a.order != b.order:
        return False
    if a.is_exact and b.is_exact and a.cubic is None and b.cubic is None:
        return a.entries == b.entries
    va, vb = a.values(), b.values()
    scale = max([1.0] + [abs(x) for x in va + vb])
    return all(abs(x - y) <= tol * scale for x, y in zip(va, vb))


# -- matrices --------------------------------------------------------------


def laplacian(g: Graph) -> RationalMatrix:
    n = g.vertex_count
    rows = [[0] * n for _ in range(n)]
    for u, v in g.edges:
        rows[u][v] = rows[v][u] = -1
    for i, d in enumerate(g.degrees):
        rows[i][i] = d
    return RationalMatrix(rows)


def normalized_laplacian(g: Graph) -> RationalMatrix:
    """D^-1/2 L D^-1/2.  Exact only when every d_i d_j over an edge is a perfect square."""
    deg = g.degrees
    if any(d == 0 for d in deg) and g.vertex_count > 1:
        raise InvalidInput("normalized Laplacian is undefined with an isolated vertex")
    n = g.vertex_count
    exact = all(math.isqrt(deg[u] * deg[v]) ** 2 == deg[u] * deg[v] for u, v in g.edges)
    one = Fraction(1) if exact else 1.0
    rows = [[one * 0] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = one
    for u, v in g.edges:
        p = deg[u] * deg[v]
        rows[u][v] = rows[v][u] = Fraction(-1, math.isqrt(p)) if exact else -1.0 / math.sqrt(p)
    return RationalMatrix(rows, exact)


def mirror_split(m: RationalMatrix, p: MirrorPairing) -> tuple[RationalMatrix, RationalMatrix]:
    """Return (M11 + M12, M11 - M12) after checking M11 == M22 and M12 == M21."""
    k = p.shift
    if m.order != 2 * k:
        raise NotMirrorSymmetric(f"pairing shift {k} does not cover a matrix of order {m.order}")
    top, bottom = range(k), range(k, 2 * k)
    m11, m12 = m.block(top, top), m.block(top, bottom)
    m21, m22 = m.block(bottom, top), m.block(bottom, bottom)
    for x, y, name in ((m11, m22, "M11 != M22"), (m12, m21, "M12 != M21")):
        if m.exact:
            ok = x.entries == y.entries
        else:
            ok = np.allclose(x.to_numpy(), y.to_numpy(), rtol=0, atol=1e-12)
        if not ok:
            raise NotMirrorSymmetric(name)
    return m11 + m12, m11 - m12


def numeric_spectrum(m: RationalMatrix, tol: float = DEFAULT_TOL, return_vectors: bool = False):
    """Eigenvalues of a symmetric matrix with LAPACK's symmetric solver.

    With ``return_vectors`` the orthonormal eigenvectors come back as well, and
    every pair is checked to satisfy ||M v - x v|| <= tol * ||M||.
    """
    if tol <= 0:
        raise InvalidParameter("tolerance must be positive")
    a = m.to_numpy()
    norm = float(np.linalg.norm(a, 2)) if a.size else 0.0
    if not np.allclose(a, a.T, rtol=0, atol=1e-12 * max(1.0, norm)):
        raise InvalidInput("matrix is not symmetric")
    if not return_vectors:
        return Spectrum.from_floats(np.linalg.eigvalsh(a), tol)
    vals, vecs = np.linalg.eigh(a)
    residual = np.linalg.norm(a @ vecs - vecs * vals, axis=0)
    if np.any(residual > tol * max(norm, 1.0)):
        raise InvalidInput(f"eigenpair residual {residual.max():.3e} exceeds tolerance")
    return Spectrum.from_floats(vals, tol), vecs


# -- closed-form spectra for the family ------------------------------------


def analytic_spectrum_L_sn2(n: int) -> Spectrum:
    if n < 2:
        raise InvalidParameter(f"n must be >= 2, got {n}")
    return Spectrum(((0, 1), (1, n - 2), (2, 1), (3, n - 2), (n, 1), (n + 2, 1)))


def analytic_spectrum_NL_sn2(n: int) -> Spectrum:
    if n < 2:
        raise InvalidParameter(f"n must be >= 2, got {n}")
    half, three_half = Fraction(1, 2), Fraction(3, 2)
    return Spectrum(
        (
            (0, 1),
            (half, n - 2),
            (Fraction(n + 2, 2 * n), 1),
            (Fraction(3 * n - 2, 2 * n), 1),
            (three_half, n - 2),
            (2, 1),
        )
    )


def snr2_cubic(n: int, r: int, center_deleted: bool) -> CubicFactor:
    """Cubic factor of the antisymmetric block's characteristic polynomial."""
    if center_deleted:
        return CubicFactor(n + 3, 3 * n, 2 * n - 2 * r)
    return CubicFactor(n + 5, 3 * n + 8, 2 * n - 2 * r + 4)


def analytic_spectrum_L_snr2(n: int, r: int, center_deleted: bool) -> Spectrum:
    """Laplacian spectrum of any graph in S^2_{n,r} with the given center status.

    The rational part is the symmetric block's {0, 1^(n-2), n} joined with the
    antisymmetric block's powers of (x - 1) and (x - 3).  At the boundaries
    (n=2 with the center deleted, r=n-1 with it kept) one of those powers is
    formally -1; the cubic then has that value as a root and is deflated to a
    quadratic instead.
    """
    if n < 2:
        raise InvalidParameter(f"n must be >= 2, got {n}")
    if not 1 <= r <= n - 1:
        raise InvalidParameter(f"r must lie in [1, {n - 1}], got {r}")
    if center_deleted:
        formal = [(0, 1), (1, n + r - 4), (n, 1), (3, n - r - 1)]
    else:
        formal = [(0, 1), (1, n + r - 3), (n, 1), (3, n - r - 2)]
    merged: Counter = Counter()
    for v, m in formal:
        merged[Fraction(v)] += m
    factor: CubicFactor | QuadraticFactor = snr2_cubic(n, r, center_deleted)
    negative = [v for v, m in merged.items() if m < 0]
    if len(negative) > 1 or any(merged[v] < -1 for v in negative):
        raise InvalidParameter(f"no closed-form spectrum for n={n}, r={r}")
    for v in negative:
        factor = factor.deflate(v)
        merged[v] = 0
    return Spectrum(tuple(merged.items()), factor)


def case11_quadratic_roots(n: int) -> tuple[float, float]:
    """Explicit roots (n+2 -+ sqrt(n^2-4n+12))/2 for one deleted edge, the center's."""
    s = math.sqrt(n * n - 4 * n + 12)
    return ((n + 2 - s) / 2, (n + 2 + s) / 2)


def case11_spectrum(n: int) -> Spectrum:
    """Floating spectrum for r=1 with the center edge deleted, from the explicit quadratic."""
    if n < 2:
        raise InvalidParameter(f"n must be >= 2, got {n}")
    vals = [0.0] + [1.0] * (n - 2) + [float(n)] + [3.0] * (n - 2) + list(case11_quadratic_roots(n))
    return Spectrum.from_floats(vals)
