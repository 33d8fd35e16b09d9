"""Per-graph invariant reports: oracle, spectral and closed-form values side by side."""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational

from . import closed_forms as cf
from .errors import InvalidParameter
from .graphs import FamilySpec, Graph, make_snr2
from .invariants import (
    gutman_index,
    kf_from_spectrum,
    kfstar_from_spectrum,
    kirchhoff_index,
    log_spanning_trees_float,
    mult_deg_kirchhoff_index,
    resistance_matrix_float,
    spanning_trees,
    tau_from_spectrum,
    wiener_index,
)
from .spectral import (
    analytic_spectrum_L_sn2,
    analytic_spectrum_L_snr2,
    analytic_spectrum_NL_sn2,
    laplacian,
    normalized_laplacian,
    numeric_spectrum,
)

DEFAULT_MAX_EXACT = 200
REL_TOL = 1e-8
CSV_FIELDS = ("family", "n", "r", "center_deleted", "deleted", "invariant", "oracle", "spectral", "formula", "agree")


def max_exact_vertices() -> int:
    raw = os.environ.get("KLAB_MAX_EXACT")
    if raw is None:
        return DEFAULT_MAX_EXACT
    try:
        return int(raw)
    except ValueError:
        raise InvalidParameter(f"KLAB_MAX_EXACT must be an integer, got {raw!r}") from None


def values_agree(a, b, rel_tol: float = REL_TOL) -> bool:
    """Exact equality when both sides are rational, relative tolerance otherwise."""
    if isinstance(a, Rational) and isinstance(b, Rational):
        return a == b
    return math.isclose(float(a), float(b), rel_tol=rel_tol, abs_tol=rel_tol)


@dataclass
class InvariantRow:
    invariant: str
    oracle: object = None
    spectral: object = None
    formula: object = None

    @property
    def agree(self) -> bool:
        present = [v for v in (self.oracle, self.spectral, self.formula) if v is not None]
        return all(values_agree(present[0], v) for v in present[1:])


@dataclass
class InvariantReport:
    family: str
    spec: FamilySpec | None = None
    rows: list[InvariantRow] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def all_agree(self) -> bool:
        return all(row.agree for row in self.rows)

    def row(self, name: str) -> InvariantRow:
        for row in self.rows:
            if row.invariant == name:
                return row
        raise KeyError(name)

    def _key(self) -> dict:
        s = self.spec
        return {
            "family": self.family,
            "n": s.n if s else "",
            "r": s.r if s else "",
            "center_deleted": s.center_deleted if s else "",
            "deleted": ",".join(map(str, sorted(s.deleted))) if s else "",
        }

    def csv_rows(self) -> list[dict]:
        out = []
        for row in self.rows:
            d = self._key()
            d.update(
                invariant=row.invariant,
                oracle=render_csv(row.oracle),
                spectral=render_csv(row.spectral),
                formula=render_csv(row.formula),
                agree=row.agree,
            )
            out.append(d)
        return out

    def to_dict(self) -> dict:
        d = self._key()
        d["deleted"] = sorted(self.spec.deleted) if self.spec else []
        d["invariants"] = [
            {
                "invariant": row.invariant,
                "oracle": render_json(row.oracle),
                "spectral": render_json(row.spectral),
                "formula": render_json(row.formula),
                "agree": row.agree,
            }
            for row in self.rows
        ]
        d["all_agree"] = self.all_agree
        d["notes"] = list(self.notes)
        return d


def render_csv(x) -> str:
    if x is None:
        return ""
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, float):
        return repr(x)
    return str(x)


def render_json(x):
    if x is None or isinstance(x, (bool, float)):
        return x
    if isinstance(x, Rational):
        return {"num": int(x.numerator), "den": int(x.denominator)}
    return x


def _log(x) -> float:
    x = Fraction(x)
    return math.log(x.numerator) - math.log(x.denominator)


KF_NOTE = "Kf from the Laplacian spectrum uses Kf = n * sum(1/mu_i); the order factor n is required."


def build_report(
    graph: Graph | None = None,
    spec: FamilySpec | None = None,
    mode: str = "exact",
    variant: str = "proof",
    oracle: bool = True,
    tol: float = 1e-9,
) -> InvariantReport:
    """Compute every invariant for a family member (``spec``) or an arbitrary graph."""
    if mode not in ("exact", "float"):
        raise InvalidParameter(f"mode must be 'exact' or 'float', got {mode!r}")
    if spec is None and graph is None:
        raise InvalidParameter("need a graph or a family spec")
    if spec is not None:
        graph = make_snr2(spec)
    nv, m = graph.vertex_count, graph.edge_count
    if mode == "exact" and oracle and nv > max_exact_vertices():
        raise InvalidParameter(
            f"{nv} vertices exceeds the exact-arithmetic cap of {max_exact_vertices()}; "
            "use float mode or raise KLAB_MAX_EXACT"
        )
    report = InvariantReport(spec.describe() if spec else "graph", spec, notes=[KF_NOTE])
    rows = {name: InvariantRow(name) for name in ("Kf", "Kf*", "tau", "W", "Gut")}
    if mode == "float":
        rows["log_tau"] = rows.pop("tau")
        rows["log_tau"].invariant = "log_tau"

    if oracle:
        if mode == "exact":
            rows["Kf"].oracle = kirchhoff_index(graph)
            rows["Kf*"].oracle = mult_deg_kirchhoff_index(graph)
            rows["tau"].oracle = spanning_trees(graph)
        else:
            res = resistance_matrix_float(graph)
            deg = graph.degrees
            rows["Kf"].oracle = float(res.sum() / 2)
            rows["Kf*"].oracle = float(sum(deg[i] * deg[j] * res[i, j] for i in range(nv) for j in range(i + 1, nv)))
            rows["log_tau"].oracle = log_spanning_trees_float(graph)
        rows["W"].oracle = wiener_index(graph)
        rows["Gut"].oracle = gutman_index(graph)

    def as_mode(x):
        return float(x) if (mode == "float" and x is not None) else x

    if spec is not None:
        n, r, cd = spec.n, spec.r, spec.center_deleted
        lap_spec = analytic_spectrum_L_sn2(n) if r == 0 else analytic_spectrum_L_snr2(n, r, cd)
        rows["Kf"].spectral = as_mode(kf_from_spectrum(lap_spec, nv))
        rows["Kf"].formula = as_mode(cf.kf_snr2(n, r, cd, variant).value)
        tau_f = cf.tau_snr2(n, r, cd, variant).value
        if mode == "exact":
            rows["tau"].spectral = tau_from_spectrum(lap_spec, nv)
            rows["tau"].formula = tau_f
        else:
            rows["log_tau"].spectral = _log(lap_spec.nonzero_product() / nv)
            rows["log_tau"].formula = _log(tau_f)
        rows["W"].formula = cf.wiener_snr2(n, r, cd, variant).value
        if r == 0:
            rows["Kf*"].spectral = as_mode(kfstar_from_spectrum(analytic_spectrum_NL_sn2(n), m))
            rows["Kf*"].formula = as_mode(cf.kfstar_sn2(n))
            rows["Gut"].formula = cf.gutman_sn2(n)
        elif oracle and nv <= max_exact_vertices():
            rows["Kf*"].spectral = kfstar_from_spectrum(numeric_spectrum(normalized_laplacian(graph), tol), m)
        kf_w = InvariantRow("Kf/W")
        if rows["Kf"].oracle is not None:
            kf_w.oracle = rows["Kf"].oracle / rows["W"].oracle
        kf_w.formula = as_mode(Fraction(cf.kf_snr2(n, r, cd, variant).value) / rows["W"].formula)
        rows["Kf/W"] = kf_w
    elif oracle and nv <= max_exact_vertices():
        lap_spec = numeric_spectrum(laplacian(graph), tol)
        rows["Kf"].spectral = kf_from_spectrum(lap_spec, nv)
        rows["Kf*"].spectral = kfstar_from_spectrum(numeric_spectrum(normalized_laplacian(graph), tol), m)
        if mode == "exact":
            tau_from_spectrum(lap_spec, nv)  # raises if the product is not near an integer
            rows["tau"].spectral = lap_spec.nonzero_product() / nv
        else:
            rows["log_tau"].spectral = math.log(lap_spec.nonzero_product() / nv)
    report.rows = list(rows.values())
    return report
