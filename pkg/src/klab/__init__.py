"""Exact resistance, spanning-tree and distance invariants of S_n x K_2 and its rung-deleted variants."""

from .closed_forms import (
    gutman_sn2,
    kf_sn2,
    kf_snr2,
    kfstar_sn2,
    tau_sn2,
    tau_snr2,
    wiener_sn2,
    wiener_snr2,
)
from .graphs import FamilySpec, Graph, cartesian_product, make_snr2, sn2, star, strong_product
from .invariants import (
    gutman_index,
    kirchhoff_index,
    mult_deg_kirchhoff_index,
    resistance_matrix,
    spanning_trees,
    wiener_index,
)
from .report import build_report
from .spectral import (
    Spectrum,
    analytic_spectrum_L_sn2,
    analytic_spectrum_L_snr2,
    analytic_spectrum_NL_sn2,
    laplacian,
    mirror_split,
    normalized_laplacian,
    numeric_spectrum,
)

__version__ = "0.1.0"

__all__ = [
    "FamilySpec",
    "Graph",
    "Spectrum",
    "analytic_spectrum_L_sn2",
    "analytic_spectrum_L_snr2",
    "analytic_spectrum_NL_sn2",
    "build_report",
    "cartesian_product",
    "gutman_index",
    "gutman_sn2",
    "kf_sn2",
    "kf_snr2",
    "kfstar_sn2",
    "kirchhoff_index",
    "laplacian",
    "make_snr2",
    "mirror_split",
    "mult_deg_kirchhoff_index",
    "normalized_laplacian",
    "numeric_spectrum",
    "resistance_matrix",
    "sn2",
    "spanning_trees",
    "star",
    "strong_product",
    "tau_sn2",
    "tau_snr2",
    "wiener_index",
    "wiener_sn2",
    "wiener_snr2",
]
