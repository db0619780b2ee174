import numpy as np
import pytest

from oracles import commutant_null_space
from qudit_dfs.collective import SiteConfig, StateVector, collective_set
from qudit_dfs.dfs_finder import (
    DecompositionError,
    DecompositionReport,
    cartan_operators,
    commutant_dimension,
    decompose_hilbert_space,
    generate_copy_basis,
    highest_weight_subspace,
    identify_irrep,
    verify_block_structure,
)
from qudit_dfs.tableaux import decompose_chain

CONFIGS = [
    (2, "f,f"),
    (2, "f,f,f"),
    (3, "f"),
    (3, "af"),
    (3, "f,f"),
    (3, "f,af"),
    (3, "f,f,f"),
    (3, "af,f,f"),
    (4, "f,f"),
    (4, "f,af"),
]


@pytest.fixture(scope="module")
def reports():
    return {(d, k): decompose_hilbert_space(SiteConfig.parse(d, k)) for d, k in CONFIGS}


@pytest.mark.parametrize("d, kinds", CONFIGS)
def test_sector_content_matches_tableaux(reports, d, kinds):
    report = reports[(d, kinds)]
    assert report.decomposition().as_dict() == decompose_chain(kinds.split(","), d).as_dict()
    assert sum(s.dim * s.mult for s in report.sectors) == d ** len(kinds.split(","))
    assert not report.flags


@pytest.mark.parametrize("d, kinds", CONFIGS)
def test_change_of_basis_unitary(reports, d, kinds):
    v = reports[(d, kinds)].V
    assert np.abs(v @ v.conj().T - np.eye(len(v))).max() < 1e-10


@pytest.mark.parametrize("d, kinds", CONFIGS)
def test_block_structure_random_a(reports, d, kinds):
    report = reports[(d, kinds)]
    rng = np.random.default_rng(11)
    for _ in range(5):
        check = verify_block_structure(report, rng.normal(size=d * d - 1))
        assert check.ok, (check.off_block, check.copy_mismatch)


def test_block_structure_zero_coefficients(reports):
    check = verify_block_structure(reports[(3, "f,f,f")], np.zeros(8))
    assert check.ok and check.off_block == 0


def test_highest_weight_subspace_sizes():
    assert len(highest_weight_subspace(collective_set(SiteConfig.uniform(2, 3)))) == 3
    assert len(highest_weight_subspace(collective_set(SiteConfig.uniform(3, 3)))) == 4
    assert len(highest_weight_subspace(collective_set(SiteConfig.parse(3, "f,af")))) == 2


def test_identify_irrep_examples():
    e = np.eye(3)
    assert identify_irrep(e[0], collective_set(SiteConfig.uniform(3, 1))) == (1, 0)
    assert identify_irrep(e[1], collective_set(SiteConfig.parse(3, "af"))) == (0, 1)
    config = SiteConfig.uniform(3, 3)
    ops = collective_set(config)
    singlet = StateVector.from_kets(config, {"012": 1, "021": -1, "102": -1, "120": 1, "201": 1, "210": -1})
    assert identify_irrep(singlet.amplitudes, ops) == (0, 0)
    assert identify_irrep(StateVector.basis(config, "000").amplitudes, ops) == (3, 0)
    with pytest.raises(DecompositionError):
        identify_irrep(np.ones(27), ops)


def test_adjoint_extremal_weight(reports):
    # extremal vector of the octet under {T+, V+, U-} carries t3 = 1, y = 0
    octet = reports[(3, "f,f,f")].sector((1, 1))
    top = octet.labels[0][0]
    assert (top.t3, top.y) == (1, 0)


def test_copies_give_identical_blocks(reports):
    report = reports[(3, "f,f,f")]
    octet = report.sector((1, 1))
    ops = collective_set(report.config)
    for a in range(8):
        s = ops.dense(a)
        b0 = octet.copies[0].conj().T @ s @ octet.copies[0]
        b1 = octet.copies[1].conj().T @ s @ octet.copies[1]
        assert np.abs(b0 - b1).max() < 1e-10


def test_generated_vectors_match_labels(reports):
    for key in [(3, "f,f,f"), (3, "af,f,f")]:
        report = reports[key]
        ops = collective_set(report.config)
        cartan = cartan_operators(ops)
        for s in report.sectors:
            for copy, labels in zip(s.copies, s.labels):
                for v, qn in zip(copy.T, labels):
                    assert np.linalg.norm(cartan["T3"] @ v - float(qn.t3) * v) < 1e-9
                    assert np.linalg.norm(cartan["Y"] @ v - float(qn.y) * v) < 1e-9


def test_singlet_copy_basis():
    config = SiteConfig.parse(3, "f,af")
    ops = collective_set(config)
    hw = StateVector.from_kets(config, {"00": 1, "11": 1, "22": 1}).amplitudes
    basis = generate_copy_basis(hw, ops)
    assert basis.vectors.shape == (9, 1)
    for op in ops:
        assert np.linalg.norm(op @ basis.vectors[:, 0]) < 1e-12


@pytest.mark.parametrize("d, kinds, expected", [(2, "f,f,f", 5), (3, "f,f,f", 6), (3, "f,af", 2), (3, "f", 1), (4, "f", 1)])
def test_commutant_dimension(d, kinds, expected):
    ops = collective_set(SiteConfig.parse(d, kinds))
    assert commutant_dimension(ops) == expected
    assert commutant_dimension(ops, "full") == expected
    assert commutant_dimension(ops, "weights") == expected
    assert commutant_null_space([ops.dense(a) for a in range(len(ops))]) == expected


def test_commutant_method_validation():
    with pytest.raises(ValueError):
        commutant_dimension(collective_set(SiteConfig.uniform(2, 2)), "magic")


def test_report_json_roundtrip(reports):
    report = reports[(3, "f,f,f")]
    again = DecompositionReport.from_json(report.to_json(include_v=True))
    assert again.decomposition() == report.decomposition()
    assert np.allclose(again.V, report.V)
    assert again.labels() == report.labels()
    no_v = DecompositionReport.from_json(report.to_json())
    assert no_v.V is None
