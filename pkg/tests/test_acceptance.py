"""Acceptance criteria, one test (or a small group) per criterion.

Run alone with ``python tests/test_acceptance.py`` or ``pytest tests/test_acceptance.py``;
either way a PASS/FAIL line per criterion is printed at the end.
"""

import random
import sys
import time
from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest

from klab import closed_forms as cf
from klab.graphs import FamilySpec, Graph, make_snr2, sn2
from klab.invariants import (
    kfstar_from_spectrum,
    kirchhoff_index,
    mult_deg_kirchhoff_index,
    resistance_matrix,
    spanning_trees,
    wiener_index,
)
from klab.spectral import (
    MirrorPairing,
    analytic_spectrum_L_sn2,
    analytic_spectrum_NL_sn2,
    laplacian,
    mirror_split,
    normalized_laplacian,
    numeric_spectrum,
)

from conftest import random_connected_graph

F = Fraction


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


# 1 -------------------------------------------------------------------------------


def test_c1_sn2_kirchhoff_and_spanning_trees():
    with Timer() as t:
        for n in range(2, 13):
            g = sn2(n)
            assert kirchhoff_index(g) == F(8 * n**3 + 3 * n**2 - 14 * n + 12, 3 * n + 6)
            assert spanning_trees(g) == (n + 2) * 3 ** (n - 2)
        assert kirchhoff_index(sn2(2)) == 5 and spanning_trees(sn2(2)) == 4
        assert kirchhoff_index(sn2(3)) == F(71, 5) and spanning_trees(sn2(3)) == 15
    assert t.elapsed < 10


# 2 -------------------------------------------------------------------------------


def test_c2_sn2_mult_deg_kirchhoff():
    with Timer() as t:
        for n in range(2, 13):
            g = sn2(n)
            expected = F(48 * n**3 + 25 * n**2 - 180 * n + 116, 3 * n + 6)
            assert mult_deg_kirchhoff_index(g) == expected
            analytic = kfstar_from_spectrum(analytic_spectrum_NL_sn2(n), g.edge_count)
            assert analytic == expected
            numeric = kfstar_from_spectrum(numeric_spectrum(normalized_laplacian(g)), g.edge_count)
            assert abs(numeric - float(expected)) <= 1e-8 * float(expected)
        assert mult_deg_kirchhoff_index(sn2(2)) == 20
    assert t.elapsed < 30


# 3 -------------------------------------------------------------------------------


def test_c3_snr2_exhaustive_proof_corrected():
    """Every deletion subset for n = 2..10 against the proof-corrected forms (W: corrected count)."""
    with Timer() as t:
        for n in range(2, 11):
            for r in range(n):
                seen = {}
                for deleted in combinations(range(1, n + 1), r):
                    spec = FamilySpec(n, frozenset(deleted))
                    g = make_snr2(spec)
                    cd = spec.center_deleted
                    values = (kirchhoff_index(g), spanning_trees(g), wiener_index(g))
                    assert values == (
                        cf.kf_snr2(n, r, cd).value,
                        cf.tau_snr2(n, r, cd).value,
                        cf.wiener_snr2(n, r, cd).value,
                    ), (n, deleted)
                    # depends only on (r, center status)
                    assert seen.setdefault(cd, values) == values
    assert t.elapsed < 300


def test_c3_spot_values_n2():
    for deleted in ({1}, {2}):
        g = make_snr2(FamilySpec(2, frozenset(deleted)))
        assert kirchhoff_index(g) == 10
        assert spanning_trees(g) == 1


def test_c3_spot_values_n4_by_center_status():
    """The two n=4, r=2 value pairs, attached to the center status the oracle assigns them."""
    kept = make_snr2(FamilySpec(4, frozenset({2, 3})))
    gone = make_snr2(FamilySpec(4, frozenset({1, 2})))
    assert (kirchhoff_index(gone), spanning_trees(gone)) == (F(134, 3), 6)
    assert (kirchhoff_index(kept), spanning_trees(kept)) == (46, 4)


def test_c3_spot_values_n4_as_labelled():
    """Literal criterion: (134/3, 6) with the center edge kept, (46, 4) with it deleted."""
    kept = make_snr2(FamilySpec(4, frozenset({2, 3})))
    gone = make_snr2(FamilySpec(4, frozenset({1, 2})))
    assert (kirchhoff_index(kept), spanning_trees(kept)) == (F(134, 3), 6)
    assert (kirchhoff_index(gone), spanning_trees(gone)) == (46, 4)


def test_c3_wiener_stated_closed_form():
    """W(S2_n,r) = W(S2_n) + r in the statement variant, checked over every subset for n = 2..10."""
    mismatches = []
    for n in range(2, 11):
        for r in range(1, n):
            for deleted in combinations(range(1, n + 1), r):
                spec = FamilySpec(n, frozenset(deleted))
                w = wiener_index(make_snr2(spec))
                stated = cf.wiener_snr2(n, r, spec.center_deleted, "statement").value
                if w != stated:
                    mismatches.append((n, deleted, w, stated))
    assert not mismatches, f"{len(mismatches)} mismatches, first {mismatches[0]}"


# 4 -------------------------------------------------------------------------------


def test_c4_statement_variant_disagrees():
    g = make_snr2(FamilySpec(2, frozenset({2})))
    oracle_kf, oracle_tau = kirchhoff_index(g), spanning_trees(g)
    assert (oracle_kf, oracle_tau) == (10, 1)
    stated_kf = cf.kf_snr2(2, 1, False, "statement").value
    stated_tau = cf.tau_snr2(2, 1, False, "statement").value
    assert (stated_kf, stated_tau) == (-30, 81)
    assert stated_kf != oracle_kf and stated_tau != oracle_tau
    assert cf.kf_snr2(2, 1, False).value == oracle_kf
    assert cf.tau_snr2(2, 1, False).value == oracle_tau


# 5 -------------------------------------------------------------------------------


def test_c5_mirror_decomposition():
    rng = random.Random(20240501)
    for n in range(2, 11):
        pairing = MirrorPairing(n)
        for r in range(n):
            for _ in range(5):
                g = make_snr2(FamilySpec(n, frozenset(rng.sample(range(1, n + 1), r))))
                lap = laplacian(g)
                a, s = mirror_split(lap, pairing)
                union = np.sort(numeric_spectrum(a).values() + numeric_spectrum(s).values())
                full = np.array(numeric_spectrum(lap).values())
                assert np.max(np.abs(union - full)) <= 1e-9


# 6 -------------------------------------------------------------------------------


def test_c6_analytic_spectra():
    for n in range(2, 13):
        g = sn2(n)
        lap = analytic_spectrum_L_sn2(n)
        nl = analytic_spectrum_NL_sn2(n)
        assert lap.is_exact and nl.is_exact
        assert lap.trace() == 2 * g.edge_count
        assert nl.trace() == g.vertex_count
        assert np.max(np.abs(np.array(lap.values()) - numeric_spectrum(laplacian(g)).values())) <= 1e-9
        assert np.max(np.abs(np.array(nl.values()) - numeric_spectrum(normalized_laplacian(g)).values())) <= 1e-9


# 7 -------------------------------------------------------------------------------


def test_c7_asymptotic_ratios():
    assert cf.KF_W_LIMIT == F(8, 15) and cf.KFSTAR_GUT_LIMIT == F(16, 33)
    for n in (10, 100, 1000, 10000):
        assert abs(cf.ratio_kf_wiener(n) - F(8, 15)) <= F(2, n)
        assert abs(cf.ratio_kfstar_gutman(n) - F(16, 33)) <= F(4, n)
    assert abs(cf.ratio_kf_wiener(1000) / F(8, 15) - 1) <= F(1, 100)
    assert abs(cf.ratio_kfstar_gutman(1000) / F(16, 33) - 1) <= F(1, 100)


# 8 -------------------------------------------------------------------------------


def _corpus():
    rng = random.Random(7)
    graphs = []
    for _ in range(50):
        graphs.append(random_connected_graph(rng, rng.randint(2, 9), rng.choice([0.3, 0.5, 0.8])))
    for _ in range(30):
        n = rng.randint(2, 10)
        graphs.append(Graph.from_edges(n, [(rng.randrange(v), v) for v in range(1, n)]))
    for _ in range(30):
        n = rng.randint(2, 6)
        graphs.append(make_snr2(FamilySpec(n, frozenset(rng.sample(range(1, n + 1), rng.randrange(n))))))
    return graphs


def test_c8_oracle_self_consistency():
    with Timer() as t:
        corpus = _corpus()
        assert len(corpus) >= 100
        for g in corpus:
            n = g.vertex_count
            res = resistance_matrix(g, route="grounded")
            assert res == resistance_matrix(g, route="pinv")
            for i in range(n):
                for j in range(n):
                    assert res[i, j] == res[j, i]
                    for k in range(n):
                        assert res[i, j] <= res[i, k] + res[k, j]
            if g.edge_count == n - 1:
                assert kirchhoff_index(g) == wiener_index(g)
                assert all(res[u, v] == 1 for u, v in g.edges)
            counts = {spanning_trees(g, drop) for drop in range(n)}
            assert len(counts) == 1
    assert t.elapsed < 120


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
