"""Brute-force oracle for the resistance and distance invariants.

Everything here works from the graph itself (exact resistances, cofactor
determinants, BFS) and never looks at a closed form.  The ``*_from_spectrum``
functions are the eigenvalue routes that the oracle is checked against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import Inconsistency, InvalidParameter, NotConnected
from .exact import bareiss_det, fraction_free_inverse
from .graphs import Graph, distance_matrix, is_connected
from .spectral import Spectrum, laplacian

ROUTES = ("grounded", "pinv")


@dataclass(frozen=True)
class ResistanceMatrix:
    entries: tuple[tuple[Fraction, ...], ...]

    @property
    def order(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.entries[i][j]

    def pair_sum(self, weights=None) -> Fraction:
        """Sum of r_ij over i < j, optionally weighted by weights[i] * weights[j]."""
        n = self.order
        total = Fraction(0)
        for i in range(n):
            row = self.entries[i]
            for j in range(i + 1, n):
                total += row[j] if weights is None else weights[i] * weights[j] * row[j]
        return total


def _require_connected(g: Graph) -> None:
    if not is_connected(g):
        raise NotConnected("graph is not connected")


def resistance_matrix(g: Graph, route: str = "grounded", ground: int = 0) -> ResistanceMatrix:
    """Exact effective resistances with unit edge resistors.

    ``grounded`` inverts the Laplacian with vertex ``ground`` removed; ``pinv``
    inverts n L + J, which equals n (L + J/n) whose inverse is L^+ + J/n.
    Either way r_ij = G_ii + G_jj - 2 G_ij and the result is exact.
    """
    _require_connected(g)
    n = g.vertex_count
    if n == 1:
        return ResistanceMatrix(((Fraction(0),),))
    lap = laplacian(g).to_int_rows()
    if route == "grounded":
        if not 0 <= ground < n:
            raise InvalidParameter(f"ground vertex {ground} out of range")
        keep = [i for i in range(n) if i != ground]
        inv, det = fraction_free_inverse([[lap[i][j] for j in keep] for i in keep])
        full = [[0] * n for _ in range(n)]
        for a, i in enumerate(keep):
            for b, j in enumerate(keep):
                full[i][j] = inv[a][b]
        scale = 1
    elif route == "pinv":
        full, det = fraction_free_inverse([[n * lap[i][j] + 1 for j in range(n)] for i in range(n)])
        scale = n
    else:
        raise InvalidParameter(f"unknown route {route!r}; expected one of {ROUTES}")
    rows = []
    for i in range(n):
        fi, fii = full[i], full[i][i]
        rows.append(tuple(Fraction(scale * (fii + full[j][j] - 2 * fi[j]), det) for j in range(n)))
    return ResistanceMatrix(tuple(rows))


def resistance_matrix_float(g: Graph) -> np.ndarray:
    """Floating resistances through the Moore-Penrose pseudoinverse; for graphs too big to do exactly."""
    _require_connected(g)
    lp = np.linalg.pinv(laplacian(g).to_numpy(), hermitian=True)
    d = np.diag(lp)
    return d[:, None] + d[None, :] - 2 * lp


def kirchhoff_index(g: Graph) -> Fraction:
    return resistance_matrix(g).pair_sum()


def mult_deg_kirchhoff_index(g: Graph) -> Fraction:
    return resistance_matrix(g).pair_sum(g.degrees)


def kf_from_spectrum(s: Spectrum, n_vertices: int):
    """Kf = n * sum(1/mu) over the nonzero Laplacian eigenvalues.

    The order factor n is required for the identity to hold (C_4 has Kf = 5
    and reciprocal sum 5/4).
    """
    return n_vertices * s.reciprocal_sum()


def kfstar_from_spectrum(s: Spectrum, m_edges: int):
    """Kf* = 2m * sum(1/nu) over the nonzero normalized-Laplacian eigenvalues."""
    return 2 * m_edges * s.reciprocal_sum()


def spanning_trees(g: Graph, drop: int = 0) -> int:
    """Matrix-tree theorem: the determinant of L with row/column ``drop`` removed."""
    n = g.vertex_count
    if not 0 <= drop < n:
        raise InvalidParameter(f"row index {drop} out of range")
    if not is_connected(g):
        return 0
    if n == 1:
        return 1
    lap = laplacian(g).to_int_rows()
    keep = [i for i in range(n) if i != drop]
    return bareiss_det([[lap[i][j] for j in keep] for i in keep])


def log_spanning_trees_float(g: Graph) -> float:
    if not is_connected(g):
        return -math.inf
    lap = laplacian(g).to_numpy()[1:, 1:]
    sign, logdet = np.linalg.slogdet(lap)
    return float(logdet)


def tau_from_spectrum(s: Spectrum, n_vertices: int) -> int:
    """tau = (1/n) * product of the nonzero Laplacian eigenvalues; must be a positive integer."""
    value = s.nonzero_product() / n_vertices
    if s.is_exact:
        if value.denominator != 1 or value <= 0:
            raise Inconsistency(f"spectral spanning-tree count {value} is not a positive integer")
        return int(value)
    rounded = round(value)
    if rounded <= 0 or abs(value - rounded) > 1e-6 * max(1.0, abs(value)):
        raise Inconsistency(f"spectral spanning-tree count {value} is not close to an integer")
    return rounded


def transmissions(g: Graph) -> list[int]:
    """w_i = sum_j d_ij."""
    return [sum(row) for row in distance_matrix(g)]


def degree_transmissions(g: Graph) -> list[int]:
    """g_i = sum_j d_i d_j d_ij."""
    deg = g.degrees
    return [deg[i] * sum(deg[j] * dij for j, dij in enumerate(row)) for i, row in enumerate(distance_matrix(g))]


def wiener_index(g: Graph) -> int:
    return sum(transmissions(g)) // 2


def gutman_index(g: Graph) -> int:
    return sum(degree_transmissions(g)) // 2
