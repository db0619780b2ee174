import itertools

import numpy as np
import pytest

from qudit_dfs.su_algebra import (
    RepKind,
    casimir2,
    casimir3,
    d_symbol,
    generator_index_map,
    generators,
    intertwiner_dimension,
    ladder_ops,
    rep_generators,
    structure_constants,
)


def comm(a, b):
    return a @ b - b @ a


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_generators_hermitian_traceless_orthonormal(d):
    gens = generators(d)
    assert len(gens) == d * d - 1
    for g in gens:
        assert np.allclose(g, g.conj().T)
        assert abs(np.trace(g)) < 1e-14
    gram = np.array([[np.trace(a @ b) for b in gens] for a in gens])
    assert np.allclose(gram, 2 * np.eye(len(gens)), atol=1e-14)


def test_gell_mann_order():
    g = generators(3)
    assert np.allclose(g[7], np.diag([1, 1, -2]) / np.sqrt(3))
    assert np.allclose(g[2], np.diag([1, -1, 0]))
    assert np.allclose(g[1], [[0, -1j, 0], [1j, 0, 0], [0, 0, 0]])


def test_pauli_for_qubits():
    x, y, z = generators(2)
    assert np.allclose(z, np.diag([1, -1]))
    assert np.allclose(x @ y, 1j * z)


def test_index_map_matches_matrices():
    for d in (3, 4):
        gens = generators(d)
        idx = generator_index_map(d)
        for (j, k), a in idx["sym"].items():
            assert gens[a][j, k] == 1
        for (j, k), a in idx["anti"].items():
            assert gens[a][j, k] == -1j


def test_bad_d():
    with pytest.raises(ValueError):
        generators(1)
    with pytest.raises(ValueError):
        RepKind.parse("x")


def test_antifundamental_examples():
    af = rep_generators(3, "af")
    assert np.allclose(af[2], np.diag([-1, 1, 0]))
    assert np.allclose(af[7], np.diag([-1, -1, 2]) / np.sqrt(3))


@pytest.mark.parametrize("d", [2, 3, 4])
def test_antifundamental_has_same_structure_constants(d):
    f = structure_constants(generators(d))
    af = rep_generators(d, RepKind.ANTIFUNDAMENTAL)
    for a, b in itertools.combinations(range(len(af)), 2):
        rhs = 2j * sum(f[a, b, c] * af[c] for c in range(len(af)))
        assert np.allclose(comm(af[a], af[b]), rhs, atol=1e-13)


def test_su3_structure_constants():
    f = structure_constants(generators(3))
    assert f[0, 1, 2] == pytest.approx(1.0)
    assert f[3, 4, 7] == pytest.approx(np.sqrt(3) / 2)
    assert f[1, 0, 2] == pytest.approx(-1.0)


def test_ladder_action():
    lad = ladder_ops()
    e = np.eye(3)
    assert np.allclose(lad["T+"] @ e[1], e[0])
    assert np.allclose(np.diag(lad["Y"]).real, [1 / 3, 1 / 3, -2 / 3])
    assert abs(e[2] @ lad["T2"] @ e[2]) < 1e-15
    for up, down in (("T+", "T-"), ("U+", "U-"), ("V+", "V-")):
        assert np.allclose(lad[up].conj().T, lad[down])


def test_ladder_commutators():
    lad = ladder_ops()
    assert np.allclose(comm(lad["T3"], lad["T+"]), lad["T+"])
    assert np.allclose(comm(lad["T3"], lad["T-"]), -lad["T-"])
    assert np.allclose(comm(lad["Y"], lad["T+"]), 0)
    # U+ = |1><2| raises hypercharge by one
    assert np.allclose(comm(lad["Y"], lad["U+"]), lad["U+"])
    assert np.allclose(comm(lad["Y"], lad["U-"]), -lad["U-"])


def test_ladder_needs_eight():
    with pytest.raises(ValueError):
        ladder_ops(generators(2))


@pytest.mark.parametrize("kind", ["f", "af"])
def test_casimirs(kind):
    reps = rep_generators(3, kind)
    c2 = casimir2(reps)
    c3 = casimir3(reps)
    assert np.allclose(c2, 16 / 3 * np.eye(3))
    for g in reps:
        assert np.linalg.norm(comm(c2, g)) < 1e-12
        assert np.linalg.norm(comm(c3, g)) < 1e-12
    # frozen from direct computation: +80/9 on 3, -80/9 on 3bar
    expected = 80 / 9 if kind == "f" else -80 / 9
    assert np.allclose(c3, expected * np.eye(3))


def test_casimir_shape_mismatch():
    with pytest.raises(ValueError):
        casimir2([np.eye(2), np.eye(3)])


def test_d_symbol():
    assert d_symbol(1, 1, 8) == pytest.approx(1 / np.sqrt(3))
    assert d_symbol(1, 2, 3) == 0
    assert d_symbol(1, 4, 6) == pytest.approx(0.5)
    assert d_symbol(8, 8, 8) == pytest.approx(-1 / np.sqrt(3))
    for i, j, k in itertools.product(range(1, 9), repeat=3):
        v = d_symbol(i, j, k)
        for p in itertools.permutations((i, j, k)):
            assert d_symbol(*p) == pytest.approx(v, abs=1e-14)
    with pytest.raises(ValueError):
        d_symbol(0, 1, 1)
    with pytest.raises(ValueError):
        d_symbol(1, 1, 9)


def test_intertwiners():
    assert intertwiner_dimension(rep_generators(3, "f"), rep_generators(3, "f")) == 1
    assert intertwiner_dimension(rep_generators(3, "f"), rep_generators(3, "af")) == 0
    assert intertwiner_dimension(rep_generators(2, "f"), rep_generators(2, "af")) == 1
    with pytest.raises(ValueError):
        intertwiner_dimension(generators(2), generators(3)[:3])
