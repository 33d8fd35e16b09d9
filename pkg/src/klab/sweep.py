"""Parameter grids over S^2_{n,r} and the formula-clause verification driver."""

from __future__ import annotations

import csv
import io
import json
import random
from collections import OrderedDict
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterator

from . import closed_forms as cf
from .errors import InvalidParameter, KlabError
from .graphs import FamilySpec
from .report import CSV_FIELDS, InvariantReport, build_report, values_agree

ALL_SUBSETS_MAX_N = 12


def parse_int_set(text: str) -> tuple[int, ...]:
    """'2..10' (inclusive), '5', or '2,4,7'."""
    out: list[int] = []
    try:
        for part in text.split(","):
            part = part.strip()
            if ".." in part:
                lo, hi = part.split("..")
                out.extend(range(int(lo), int(hi) + 1))
            elif part:
                out.append(int(part))
    except ValueError:
        raise InvalidParameter(f"cannot parse integer range {text!r}") from None
    if not out:
        raise InvalidParameter(f"empty integer range {text!r}")
    return tuple(sorted(set(out)))


@dataclass(frozen=True)
class SweepConfig:
    n_values: tuple[int, ...]
    r_values: tuple[int, ...] | None = None  # None means every r in [0, n-1]
    subsets: str | int = "all"
    seed: int | None = None
    mode: str = "exact"
    variant: str = "proof"
    tol: float = 1e-9
    fmt: str = "csv"
    out: str | None = None
    oracle: bool = True

    def __post_init__(self):
        if not self.n_values or min(self.n_values) < 2:
            raise InvalidParameter("every n must be >= 2")
        if self.subsets != "all":
            if not isinstance(self.subsets, int) or self.subsets < 1:
                raise InvalidParameter(f"--subsets must be 'all' or a positive integer, got {self.subsets!r}")
            if self.seed is None:
                raise InvalidParameter("sampled subsets need an explicit --seed")
        elif self.oracle and self._explodes():
            raise InvalidParameter(f"all-subsets mode is capped at n <= {ALL_SUBSETS_MAX_N}; use --subsets k --seed s")
        if self.mode not in ("exact", "float"):
            raise InvalidParameter(f"mode must be exact or float, got {self.mode!r}")
        if self.variant not in cf.VARIANTS:
            raise InvalidParameter(f"variant must be one of {cf.VARIANTS}, got {self.variant!r}")
        if self.fmt not in ("csv", "json"):
            raise InvalidParameter(f"format must be csv or json, got {self.fmt!r}")
        if self.tol <= 0:
            raise InvalidParameter("tolerance must be positive")


    def _explodes(self) -> bool:
        # only r = 0 (a single graph per n) is allowed past the cap
        for n in self.n_values:
            if n > ALL_SUBSETS_MAX_N:
                rs = range(n) if self.r_values is None else self.r_values
                if any(0 < r < n for r in rs):
                    return True
        return False


def _representatives(n: int, r: int) -> list[tuple[int, ...]]:
    if r == 0:
        return [()]
    return [tuple(range(2, r + 2)), tuple(range(1, r + 1))]  # center kept, center deleted


def iter_specs(config: SweepConfig) -> Iterator[FamilySpec]:
    """Family members in deterministic grid order: n, then r, then subset."""
    rng = random.Random(config.seed)
    for n in config.n_values:
        rs = range(n) if config.r_values is None else [r for r in config.r_values if 0 <= r <= n - 1]
        for r in rs:
            if not config.oracle:
                subsets = _representatives(n, r)
            elif config.subsets == "all" or comb(n, r) <= config.subsets:
                subsets = list(combinations(range(1, n + 1), r))
            else:
                chosen: set[tuple[int, ...]] = set()
                while len(chosen) < config.subsets:
                    chosen.add(tuple(sorted(rng.sample(range(1, n + 1), r))))
                subsets = sorted(chosen)
            for subset in subsets:
                yield FamilySpec(n, frozenset(subset))


def run_reports(config: SweepConfig) -> list[InvariantReport]:
    return [
        build_report(spec=s, mode=config.mode, variant=config.variant, oracle=config.oracle, tol=config.tol)
        for s in iter_specs(config)
    ]


def render_reports(reports: list[InvariantReport], fmt: str) -> str:
    if fmt == "json":
        return json.dumps([r.to_dict() for r in reports], indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for rep in reports:
        writer.writerows(rep.csv_rows())
    return buf.getvalue()


def clause_name(spec: FamilySpec, invariant: str) -> str | None:
    if invariant not in ("Kf", "tau", "W", "Kf*", "Gut"):
        return None
    if spec.r == 0:
        return f"S2_n {invariant}"
    if invariant in ("Kf*", "Gut"):
        return None
    status = "center deleted" if spec.center_deleted else "center kept"
    return f"S2_n,r {invariant} [{status}]"


@dataclass
class ClauseTally:
    passed: int = 0
    failed: int = 0
    first_failure: str = ""


def verify(config: SweepConfig) -> OrderedDict[str, ClauseTally]:
    """Check oracle == closed form for every formula clause over the grid."""
    tallies: OrderedDict[str, ClauseTally] = OrderedDict()
    for spec in iter_specs(config):
        try:
            report = build_report(spec=spec, mode=config.mode, variant=config.variant, tol=config.tol)
            rows = {row.invariant: row for row in report.rows}
        except KlabError as exc:
            # only the statement variant can hit an undefined formula
            for inv in ("Kf", "tau", "W"):
                tally = tallies.setdefault(clause_name(spec, inv), ClauseTally())
                tally.failed += 1
                tally.first_failure = tally.first_failure or f"{spec.describe()}: {exc}"
            continue
        for inv, row in rows.items():
            if inv == "log_tau":
                inv = "tau"
            name = clause_name(spec, inv)
            if name is None or row.formula is None:
                continue
            tally = tallies.setdefault(name, ClauseTally())
            if row.agree and values_agree(row.oracle, row.formula):
                tally.passed += 1
            else:
                tally.failed += 1
                if not tally.first_failure:
                    tally.first_failure = f"{spec.describe()}: oracle {row.oracle} vs formula {row.formula}"
    return tallies


def ratio_table(n_values) -> list[dict]:
    rows = []
    for n in n_values:
        kw = cf.ratio_kf_wiener(n)
        kg = cf.ratio_kfstar_gutman(n)
        rows.append(
            {
                "n": n,
                "kf_over_w": kw,
                "kf_over_w_gap": abs(kw - cf.KF_W_LIMIT),
                "kfstar_over_gut": kg,
                "kfstar_over_gut_gap": abs(kg - cf.KFSTAR_GUT_LIMIT),
            }
        )
    return rows


def ratio_envelope_ok(row: dict) -> bool:
    n = row["n"]
    return row["kf_over_w_gap"] <= Fraction(2, n) and row["kfstar_over_gut_gap"] <= Fraction(4, n)
