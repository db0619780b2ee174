"""Acceptance criteria 1-7, each at its stated tolerance.

Every test records one PASS/FAIL line (printed in the terminal summary).
Criterion 3 is a strict xfail: the printed three-qubit S_dfs has +a3 at
entry (7,7) where every consistent computation gives -a3 (the J=3/2 block
of a sum of generators must be traceless; the printed one has trace 2 a3).
"""

import sys
import time

import numpy as np
import pytest

from oracles import commutant_null_space
from qudit_dfs.codes import (
    compute_label,
    label_residuals,
    phi_prime_state,
    phi_state,
    printed_qubit_sdfs,
    printed_qutrit_s0,
    sdfs_matrix,
    singlet_state,
    three_qubit_code,
    three_qutrit_code,
)
from qudit_dfs.collective import SiteConfig, collective_set
from qudit_dfs.dfs_finder import commutant_dimension, decompose_hilbert_space
from qudit_dfs.noise_sim import SimConfig, commutator_residual, random_density_matrix, run_trials, twirl
from qudit_dfs.tableaux import decompose_chain


def test_criterion_1_tableau_reproduction(record):
    cases = [
        (2, ["f", "f"], {(2,): 1, (0,): 1}),
        (2, ["f", "f", "f"], {(1,): 2, (3,): 1}),
        (3, ["f", "f"], {(0, 1): 1, (2, 0): 1}),
        (3, ["af", "f"], {(1, 1): 1, (0, 0): 1}),
        (3, ["f", "f", "f"], {(1, 1): 2, (0, 0): 1, (3, 0): 1}),
        (3, ["af", "f", "f"], {(2, 1): 1, (1, 0): 2, (0, 2): 1}),
        (3, ["f", "f", "f", "f"], {(1, 0): 3, (0, 2): 2, (2, 1): 3, (4, 0): 1}),
    ]
    t0 = time.perf_counter()
    results = [decompose_chain(f, d) for d, f, _ in cases]
    elapsed = time.perf_counter() - t0
    matches = [r.as_dict() == exp for r, (_, _, exp) in zip(results, cases)]
    total = results[-1].total_dimension
    ok = all(matches) and total == 81 and elapsed < 1.0
    record(1, "tableau reproduction", ok, f"{sum(matches)}/7 exact, 3^4 total {total}, {elapsed:.3f}s < 1s")
    assert ok


def test_criterion_2_printed_states(record):
    worst_ortho, worst_label, mismatches = 0.0, 0.0, []
    for code in (three_qubit_code(), three_qutrit_code()):
        v = code.vectors
        worst_ortho = max(worst_ortho, float(np.abs(v.conj() @ v.T - np.eye(len(v))).max()))
        worst_label = max(worst_label, float(label_residuals(code).max()))
        for name, vec, qn in zip(code.names, v, code.labels):
            if compute_label(vec, code.config, qn.lam) != qn:
                mismatches.append(name)
    ok = worst_ortho < 1e-12 and worst_label < 1e-10 and not mismatches
    record(
        2, "printed-state verification", ok,
        f"35 states, orthonormality {worst_ortho:.1e} < 1e-12, CSCO residual {worst_label:.1e} < 1e-10, "
        f"label mismatches {mismatches or 'none'}",
    )
    assert ok


@pytest.mark.xfail(strict=True, reason="printed three-qubit S_dfs entry (7,7) reads +a3; computed value is -a3")
def test_criterion_3_matrix_reproduction(record):
    qubit, qutrit = three_qubit_code(), three_qutrit_code()
    rng = np.random.default_rng(2024)
    t0 = time.perf_counter()
    qb = off = same = s0 = 0.0
    worst = None
    for _ in range(100):
        a2 = rng.normal(size=3)
        diff = np.abs(sdfs_matrix(qubit, a2).full - printed_qubit_sdfs(a2))
        if diff.max() > qb:
            qb, worst = float(diff.max()), tuple(int(i) for i in np.unravel_index(diff.argmax(), diff.shape))
        a3 = rng.normal(size=8)
        r = sdfs_matrix(qutrit, a3)
        off = max(off, r.off_block)
        same = max(same, float(np.abs(r.blocks["S_0"] - r.blocks["S_1"]).max()))
        s0 = max(s0, float(np.abs(r.blocks["S_0"] - printed_qutrit_s0(a3)).max()))
    elapsed = time.perf_counter() - t0
    qutrit_ok = off < 1e-10 and same < 1e-12 and s0 < 1e-12
    ok = qb < 1e-12 and qutrit_ok and elapsed < 10
    record(
        3, "matrix reproduction", ok,
        f"qubit S_dfs vs printed {qb:.2e} (worst entry {worst}, tol 1e-12); qutrit off-block {off:.1e}, "
        f"S0-S1 {same:.1e}, S0 vs printed {s0:.1e}; {elapsed:.2f}s < 10s",
    )
    assert qutrit_ok
    assert ok


def test_criterion_4_singlet_discrimination(record):
    ops_fa = collective_set(SiteConfig.parse(3, "f,af"))
    ops_ff = collective_set(SiteConfig.parse(3, "f,f"))
    ops_3 = collective_set(SiteConfig.uniform(3, 3))
    phi_p = max(float(np.linalg.norm(op @ phi_prime_state().amplitudes)) for op in ops_fa)
    phi = max(float(np.linalg.norm(op @ phi_state().amplitudes)) for op in ops_ff)
    psi_s = max(float(np.linalg.norm(op @ singlet_state().amplitudes)) for op in ops_3)
    ok = phi_p < 1e-12 and phi > 0.5 and psi_s < 1e-12
    record(4, "singlet discrimination", ok, f"|phi'> {phi_p:.1e} < 1e-12, |phi> {phi:.3f} > 0.5, psi_s {psi_s:.1e} < 1e-12")
    assert ok


def _configs():
    out = [SiteConfig.uniform(2, n) for n in (2, 3, 4)]
    for n in (2, 3, 4):
        out.append(SiteConfig.uniform(3, n))
        for pos in range(n):
            kinds = ["f"] * n
            kinds[pos] = "af"
            out.append(SiteConfig(3, tuple(kinds)))
    return out


def test_criterion_5_oracle_equivalence(record):
    t0 = time.perf_counter()
    failures = []
    for config in _configs():
        report = decompose_hilbert_space(config)
        expected = decompose_chain(config.kind_codes, config.d)
        if report.decomposition().as_dict() != expected.as_dict():
            failures.append(f"content {','.join(config.kind_codes)}")
        comm = commutant_dimension(collective_set(config))
        if comm != sum(m * m for m in expected.as_dict().values()):
            failures.append(f"commutant {','.join(config.kind_codes)}")
    # independent Gram-kernel solve for the two printed codes
    oracle = {}
    for d in (2, 3):
        ops = collective_set(SiteConfig.uniform(d, 3))
        oracle[d] = commutant_null_space([ops.dense(a) for a in range(len(ops))])
    elapsed = time.perf_counter() - t0
    ok = not failures and oracle == {2: 5, 3: 6} and elapsed < 60
    record(
        5, "oracle equivalence", ok,
        f"{len(_configs())} configurations, failures {failures or 'none'}, "
        f"linear-solve commutant 3 qubits {oracle[2]}, 3 qutrits {oracle[3]}; {elapsed:.1f}s < 60s",
    )
    assert ok


def test_criterion_6_ns_dynamics(record):
    t0 = time.perf_counter()
    dfs = run_trials(SimConfig("qutrit3", trials=1000, seed=7, scale=1.0, time=1.0, encoding="dfs"))
    bare = run_trials(SimConfig("qutrit3", trials=1000, seed=7, scale=1.0, time=1.0, encoding="bare"))
    elapsed = time.perf_counter() - t0
    ok = dfs.min >= 1 - 1e-9 and dfs.leakage_max < 1e-10 and bare.mean < 0.999 and elapsed < 120
    record(
        6, "NS dynamics", ok,
        f"dfs min fidelity 1-{1 - dfs.min:.1e}, leakage {dfs.leakage_max:.1e} < 1e-10, "
        f"bare mean {bare.mean:.4f} < 0.999; {elapsed:.1f}s < 120s",
    )
    assert ok


def test_criterion_7_twirl_fixed_points(record):
    ops_fa = collective_set(SiteConfig.parse(3, "f,af"))
    psi = phi_prime_state().amplitudes
    rho_s = np.outer(psi, psi.conj())
    fix_s = float(np.abs(twirl(rho_s, ops_fa, 10_000, seed=1) - rho_s).max())
    mixed = np.eye(9) / 9
    fix_m = float(np.abs(twirl(mixed, ops_fa, 10_000, seed=1) - mixed).max())
    ops_ff = collective_set(SiteConfig.uniform(3, 2))
    comm = max(
        commutator_residual(twirl(random_density_matrix(9, s), ops_ff, 10_000, seed=s), ops_ff) for s in range(3)
    )
    ok = fix_s < 1e-6 and fix_m < 1e-6 and comm < 1e-3
    record(7, "twirl fixed points", ok, f"|phi'><phi'| {fix_s:.1e}, I/9 {fix_m:.1e} < 1e-6; commutator {comm:.1e} < 1e-3")
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-rxX"]))
