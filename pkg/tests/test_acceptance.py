"""Acceptance criteria, one test per criterion.

Each test records a single PASS/FAIL line, collected in the terminal summary.
Run with ``pytest tests/test_acceptance.py -v``.
"""
import itertools
import math
import os

import numpy as np
import pytest

from morseposet import kernels
from morseposet.classify import LABELS, classify_tetrahedron, labels_from_status
from morseposet.cli import stats_csv
from morseposet.errors import CriticalEpsilon, NonGeneric, NonGenericEndpoint, NotRealizable, UnresolvedCluster
from morseposet.geometry import Configuration, circumcenter, circumradius_from_lengths, perturb, random_rotation
from morseposet.morse import CechFiltration, batch_spectra, morse_partial_sum, morse_poset
from morseposet.ratio import INFIMA, edelsbrunner_ratio, infimum_witness, min_edge_activity_scan, per_type_min_scan
from morseposet.sampling import SamplerConfig, run_statistics, sample_tetrahedra
from morseposet.transitions import PathSpec, check_event, scan_path

pytestmark = pytest.mark.slow

SAMPLES = 10**6
SEED = 2024
WORKERS = min(8, os.cpu_count() or 1)

PAPER_COUNTS = {
    "4300L": 17_807_919,
    "4300T": 898_689,
    "4410O": 26_224_574,
    "4410P": 16_421_773,
    "4520": 24_350_101,
    "4421O": 3_266_345,
    "4630": 1_797_721,
    "4531": 2_697_783,
    "4641": 6_535_095,
}
SIGMAS = 5.0


@pytest.fixture(scope="module")
def histogram():
    return run_statistics(SamplerConfig(SAMPLES, SEED, WORKERS))


def test_c1_frequencies(histogram, acceptance):
    paper_total = sum(PAPER_COUNTS.values())
    n = histogram.classified()
    freqs = histogram.frequencies()
    worst, worst_label = 0.0, None
    for label in LABELS:
        p = PAPER_COUNTS[label] / paper_total
        z = abs(freqs[label] - p) / math.sqrt(p * (1 - p) / n)
        if z > worst:
            worst, worst_label = z, label
    ok = paper_total == 10**8 and worst <= SIGMAS
    acceptance(1, ok, f"nine frequencies within {SIGMAS:g} sigma at n={n}; worst {worst_label} at {worst:.2f} sigma")
    assert ok


def test_c2_completeness(histogram, acceptance):
    missing = [k for k in LABELS if histogram.counts[k] == 0]
    ok = histogram.violations == 0 and not missing
    acceptance(2, ok, f"{histogram.violations} violations, {len(LABELS) - len(missing)}/9 labels, "
                      f"rarest 4300T={histogram.counts['4300T']}")
    assert ok


def test_c3_euler_identity(acceptance):
    rng = np.random.default_rng(SEED)
    target, done, bad = 10**5, 0, 0
    groups = [(N, n) for n in (2, 3) for N in range(3, 9)]
    per_group = math.ceil(target / len(groups))
    for N, n in groups:
        need = per_group
        while need > 0:
            status, _ = kernels.subset_status(rng.normal(size=(need + need // 50 + 10, N, n)), 1e-9)
            counts, generic = batch_spectra(status, N, n)
            alt = counts[generic][:need] @ ((-1) ** np.arange(n + 1))
            bad += int(np.sum(alt != 1))
            done += alt.size
            need -= alt.size
    ok = bad == 0 and done >= target
    acceptance(3, ok, f"alternating sum 1 on {done} generic configurations (N 3..8, n 2..3); {bad} failures")
    assert ok


def test_c4_cech_oracle(acceptance):
    rng = np.random.default_rng(SEED + 4)
    configs = checks = mismatches = 0
    while configs < 1000:
        N, n = int(rng.integers(3, 8)), int(rng.integers(2, 4))
        config = Configuration(rng.normal(size=(N, n)))
        try:
            poset = morse_poset(config)
        except NonGeneric:
            continue
        configs += 1
        cech = CechFiltration(config)
        top = max(e.critical_value for e in poset.elements)
        radii = 0
        while radii < 10:
            eps = float(rng.uniform(0.0, 1.25 * top))
            try:
                chi = cech.euler_characteristic(eps)
            except (CriticalEpsilon, ValueError):
                continue
            radii += 1
            checks += 1
            mismatches += chi != morse_partial_sum(poset, eps)
    ok = mismatches == 0
    acceptance(4, ok, f"nerve Euler characteristic equals Morse partial sum on {configs} x 10 = {checks} radii; "
                      f"{mismatches} mismatches")
    assert ok


def test_c5_ratio_bounds(acceptance):
    found = per_type_min_scan(SamplerConfig(SAMPLES, SEED, WORKERS))
    below = [k for k, (rho, _) in found.items() if rho < INFIMA[k][0] - 1e-9]
    witness = {}
    for label in LABELS:
        w = infimum_witness(label, 1e-3)
        witness[label] = (classify_tetrahedron(w).label, edelsbrunner_ratio(w).rho)
    off = [k for k, (lbl, rho) in witness.items() if lbl != k or not abs(rho - INFIMA[k][0]) <= 0.05]
    ok = not below and len(found) == 9 and not off
    worst = max(abs(rho - INFIMA[k][0]) for k, (_, rho) in witness.items())
    acceptance(5, ok, f"minima over {SAMPLES} samples above infima ({len(below)} below); witnesses at delta=1e-3 "
                      f"classify correctly ({len(off)} off), max |rho - bound| = {worst:.4f}")
    assert ok


def test_c6_min_edge_active(acceptance):
    generic, inactive = min_edge_activity_scan(SamplerConfig(10**5, SEED, WORKERS))
    ok = inactive == 0 and generic > 0
    acceptance(6, ok, f"shortest edge active in {generic - inactive}/{generic} generic samples")
    assert ok


def test_c7_transitions(acceptance):
    rng = np.random.default_rng(SEED + 7)
    pts = sample_tetrahedra(4000, SEED + 7)
    paths = events = invalid = retries = 0
    i = 0
    while paths < 1000:
        a, b = pts[i], pts[i + 1]
        i += 2
        for attempt in range(5):
            try:
                found = scan_path(PathSpec(a, b))
                break
            except UnresolvedCluster:
                retries += 1
                b = perturb(b, 1e-6, int(rng.integers(2**32))).points
            except NonGenericEndpoint:
                found = None
                break
        else:
            found = None
        if found is None:
            continue
        paths += 1
        events += len(found)
        invalid += sum(not check_event(e) for e in found)
    ok = invalid == 0
    acceptance(7, ok, f"{events} events on {paths} paths, {invalid} invalid ({retries} cluster retries)")
    assert ok


def test_c8_similarity_invariance(acceptance):
    rng = np.random.default_rng(SEED + 8)
    pts = sample_tetrahedra(2000, SEED + 8)
    done = changed = 0
    for P in pts:
        if done == 1000:
            break
        try:
            poset, label = morse_poset(P).subsets(), classify_tetrahedron(P).label
        except NonGeneric:
            continue
        scale = 10 ** rng.uniform(-3, 3)
        moved = Configuration(P).transformed(random_rotation(rng, 3), scale, rng.uniform(-100, 100, 3) * scale)
        done += 1
        changed += morse_poset(moved).subsets() != poset or classify_tetrahedron(moved).label != label
    ok = changed == 0 and done == 1000
    acceptance(8, ok, f"poset and label unchanged under {done} random similarities; {changed} changed")
    assert ok


def _random_simplices(rng, count):
    for _ in range(count):
        k = int(rng.integers(2, 5))
        yield rng.normal(size=(k + 1, k))


def test_c9a_cayley_menger(acceptance):
    rng = np.random.default_rng(SEED + 9)
    errors = []
    for P in _random_simplices(rng, 10**4):
        d = np.linalg.norm(P[:, None] - P[None], axis=-1)
        R_geo = circumcenter(Configuration(P), range(len(P))).radius
        errors.append(abs(circumradius_from_lengths(d) - R_geo) / R_geo)
    errors = np.array(errors)
    over = int(np.sum(errors > 1e-10))
    ok = over == 0
    acceptance("9a", ok, f"Cayley-Menger vs geometric circumradius on 10^4 simplices within 1e-10: "
                         f"{over} exceed (max rel err {errors.max():.2e}, median {np.median(errors):.1e})")
    assert ok


def test_c9b_positive_partials(acceptance):
    h = 1e-6
    tets = negative = outside = skipped = 0
    for P in sample_tetrahedra(10**4, SEED + 9):
        d = np.linalg.norm(P[:, None] - P[None], axis=-1)
        grads = []
        try:
            for i, j in itertools.combinations(range(4), 2):
                up, dn = d.copy(), d.copy()
                up[i, j] = up[j, i] = d[i, j] * (1 + h)
                dn[i, j] = dn[j, i] = d[i, j] * (1 - h)
                grads.append(circumradius_from_lengths(up) - circumradius_from_lengths(dn))
        except NotRealizable:
            skipped += 1  # too flat to nudge an edge
            continue
        tets += 1
        if min(grads) <= 0:
            negative += 1
            outside += bool(np.any(circumcenter(Configuration(P), range(4)).barycentric < 0))
    ok = negative == 0
    acceptance("9b", ok, f"finite-difference dR/dd_ij > 0 for every edge: {negative}/{tets} tetrahedra have a "
                         f"non-positive partial, {outside} of them with the circumcenter outside ({skipped} too flat)")
    assert ok


def test_c10_determinism(acceptance):
    outs = {w: stats_csv(run_statistics(SamplerConfig(SAMPLES, SEED, w))) for w in (1, 2, 4, 8)}
    ok = len(set(outs.values())) == 1
    acceptance(10, ok, f"stats CSV at seed {SEED}, {SAMPLES} samples identical for workers 1/2/4/8")
    assert ok
