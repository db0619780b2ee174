"""Single-site su(d) operators: Gell-Mann generators, ladder operators,
Casimirs and a numerical intertwiner test."""

from __future__ import annotations

from enum import Enum
from functools import lru_cache
from typing import Sequence

import numpy as np

SQRT3 = np.sqrt(3.0)

# singular values below RANK_RTOL * max are treated as zero
RANK_RTOL = 1e-10


class RepKind(str, Enum):
    FUNDAMENTAL = "f"
    ANTIFUNDAMENTAL = "af"

    @classmethod
    def parse(cls, value: "RepKind | str") -> "RepKind":
        if isinstance(value, RepKind):
            return value
        try:
            return cls(str(value).strip())
        except ValueError:
            raise ValueError(f"rep kind must be 'f' or 'af', got {value!r}") from None


def _gell_mann_3() -> list[np.ndarray]:
    j = 1j
    mats = [
        [[0, 1, 0], [1, 0, 0], [0, 0, 0]],
        [[0, -j, 0], [j, 0, 0], [0, 0, 0]],
        [[1, 0, 0], [0, -1, 0], [0, 0, 0]],
        [[0, 0, 1], [0, 0, 0], [1, 0, 0]],
        [[0, 0, -j], [0, 0, 0], [j, 0, 0]],
        [[0, 0, 0], [0, 0, 1], [0, 1, 0]],
        [[0, 0, 0], [0, 0, -j], [0, j, 0]],
    ]
    out = [np.array(m, dtype=complex) for m in mats]
    out.append(np.diag([1, 1, -2]).astype(complex) / SQRT3)
    return out


def generator_index_map(d: int) -> dict[str, dict]:
    """Positions of the symmetric/antisymmetric pair generators and the
    diagonal generators in ``generators(d)``.

    Returns ``{"sym": {(j, k): a}, "anti": {(j, k): a}, "diag": [a, ...]}``
    with ``j < k`` zero-based basis labels.
    """
    if d == 3:
        return {
            "sym": {(0, 1): 0, (0, 2): 3, (1, 2): 5},
            "anti": {(0, 1): 1, (0, 2): 4, (1, 2): 6},
            "diag": [2, 7],
        }
    pairs = [(j, k) for j in range(d) for k in range(j + 1, d)]
    npairs = len(pairs)
    return {
        "sym": {p: i for i, p in enumerate(pairs)},
        "anti": {p: npairs + i for i, p in enumerate(pairs)},
        "diag": [2 * npairs + i for i in range(d - 1)],
    }


@lru_cache(maxsize=None)
def _generators(d: int) -> tuple[np.ndarray, ...]:
    if d == 3:
        return tuple(_gell_mann_3())
    pairs = [(j, k) for j in range(d) for k in range(j + 1, d)]
    sym, anti, diag = [], [], []
    for j, k in pairs:
        m = np.zeros((d, d), dtype=complex)
        m[j, k] = m[k, j] = 1
        sym.append(m)
        m = np.zeros((d, d), dtype=complex)
        m[j, k], m[k, j] = -1j, 1j
        anti.append(m)
    for l in range(1, d):
        entries = [1.0] * l + [-float(l)] + [0.0] * (d - l - 1)
        diag.append(np.sqrt(2.0 / (l * (l + 1))) * np.diag(entries).astype(complex))
    return tuple(sym + anti + diag)


def generators(d: int) -> list[np.ndarray]:
    """The d**2 - 1 generalized Gell-Mann matrices, Tr(g_a g_b) = 2 delta_ab.

    For d=3 these are lambda_1..lambda_8 in the usual order; for d=2 the
    Pauli matrices x, y, z. For other d: symmetric pairs, antisymmetric
    pairs, then diagonals.
    """
    if int(d) != d or d < 2:
        raise ValueError(f"d must be an integer >= 2, got {d}")
    return [g.copy() for g in _generators(int(d))]


def rep_generators(d: int, kind: RepKind | str = RepKind.FUNDAMENTAL) -> list[np.ndarray]:
    """Generators of the fundamental (g) or antifundamental (-g^T) rep."""
    kind = RepKind.parse(kind)
    gens = generators(d)
    if kind is RepKind.ANTIFUNDAMENTAL:
        return [-g.T for g in gens]
    return gens


def structure_constants(gens: Sequence[np.ndarray]) -> np.ndarray:
    """f_abc with [g_a, g_b] = 2i f_abc g_c, using the trace normalisation of ``gens``."""
    gens = [np.asarray(g) for g in gens]
    n = len(gens)
    norms = np.array([np.trace(g @ g).real for g in gens])
    f = np.zeros((n, n, n))
    for a in range(n):
        for b in range(n):
            comm = gens[a] @ gens[b] - gens[b] @ gens[a]
            for c in range(n):
                f[a, b, c] = (np.trace(comm @ gens[c]) / (2j * norms[c])).real
    return f


def ladder_ops(gens: Sequence | None = None) -> dict[str, object]:
    """SU(3) ladder and CSCO operators built from eight generators.

    Works for single-site matrices (default: the Gell-Mann matrices) and for
    collective generators, dense or sparse.
    """
    if gens is None:
        gens = generators(3)
    if len(gens) != 8:
        raise ValueError(f"ladder_ops needs the 8 su(3) generators, got {len(gens)}")
    l1, l2, l3, l4, l5, l6, l7, l8 = gens
    return {
        "T+": (l1 + 1j * l2) / 2,
        "T-": (l1 - 1j * l2) / 2,
        "V+": (l4 + 1j * l5) / 2,
        "V-": (l4 - 1j * l5) / 2,
        "U+": (l6 + 1j * l7) / 2,
        "U-": (l6 - 1j * l7) / 2,
        "T3": l3 / 2,
        "Y": l8 / SQRT3,
        "T2": (l1 @ l1 + l2 @ l2 + l3 @ l3) / 4,
    }


def casimir2(reps: Sequence) -> object:
    """C2 = sum_a g_a^2."""
    reps = list(reps)
    if not reps:
        raise ValueError("empty generator list")
    shapes = {r.shape for r in reps}
    if len(shapes) != 1:
        raise ValueError(f"generators have mismatched shapes {shapes}")
    out = reps[0] @ reps[0]
    for g in reps[1:]:
        out = out + g @ g
    return out


@lru_cache(maxsize=None)
def _d_tensor(d: int) -> np.ndarray:
    gens = _generators(d)
    n = len(gens)
    out = np.zeros((n, n, n))
    for i in range(n):
        for j in range(i, n):
            anti = gens[i] @ gens[j] + gens[j] @ gens[i]
            for k in range(n):
                val = np.trace(anti @ gens[k]).real / 4
                out[i, j, k] = out[j, i, k] = val
    out[np.abs(out) < 1e-14] = 0.0
    return out


def d_symbol(i: int, j: int, k: int, d: int = 3) -> float:
    """Totally symmetric d_ijk = Tr({g_i, g_j} g_k) / 4, indices from 1."""
    n = d * d - 1
    for idx in (i, j, k):
        if not 1 <= idx <= n:
            raise ValueError(f"index {idx} outside 1..{n}")
    return float(_d_tensor(d)[i - 1, j - 1, k - 1])


def d_tensor(d: int = 3) -> np.ndarray:
    return _d_tensor(d).copy()


def casimir3(reps: Sequence | None = None, d: int = 3) -> object:
    """C3 = sum_ijk d_ijk g_i g_j g_k (defaults to the fundamental of SU(3))."""
    if reps is None:
        reps = generators(d)
    reps = list(reps)
    n = len(reps)
    d = int(round(np.sqrt(n + 1)))
    if d * d - 1 != n:
        raise ValueError(f"{n} generators is not d**2 - 1 for any d")
    dt = _d_tensor(d)
    out = None
    for i, j, k in zip(*np.nonzero(dt)):
        term = dt[i, j, k] * (reps[i] @ reps[j] @ reps[k])
        out = term if out is None else out + term
    return out


def intertwiner_basis(rep_a: Sequence[np.ndarray], rep_b: Sequence[np.ndarray], rtol: float = RANK_RTOL) -> list[np.ndarray]:
    """Basis of {X : X A_a = B_a X for all a}."""
    rep_a = [np.asarray(m, dtype=complex) for m in rep_a]
    rep_b = [np.asarray(m, dtype=complex) for m in rep_b]
    if len(rep_a) != len(rep_b):
        raise ValueError(f"generator counts differ: {len(rep_a)} vs {len(rep_b)}")
    if not rep_a:
        raise ValueError("empty representation")
    n = rep_a[0].shape[0]
    m = rep_b[0].shape[0]
    if n != m:
        raise ValueError(f"representation dimensions differ: {n} vs {m}")
    eye = np.eye(n)
    # vec (column-major): vec(X A) = (A^T kron I) vec X, vec(B X) = (I kron B) vec X
    blocks = [np.kron(a.T, eye) - np.kron(eye, b) for a, b in zip(rep_a, rep_b)]
    mat = np.vstack(blocks)
    _, s, vh = np.linalg.svd(mat, full_matrices=False)
    smax = s[0] if s.size else 0.0
    if smax == 0.0:
        null = np.eye(n * n)
    else:
        rank = int(np.sum(s > rtol * smax))
        null = vh[rank:].conj().T
    return [null[:, i].reshape((n, n), order="F") for i in range(null.shape[1])]


def intertwiner_dimension(rep_a: Sequence[np.ndarray], rep_b: Sequence[np.ndarray], rtol: float = RANK_RTOL) -> int:
    """Dimension of the space of intertwiners between two generator sets."""
    return len(intertwiner_basis(rep_a, rep_b, rtol))
