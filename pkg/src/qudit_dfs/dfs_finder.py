"""Numerical decomposition of an n-qudit space into collective irrep sectors.

The pipeline finds the joint kernel of the collective raising operators
(one highest-weight vector per irrep copy), identifies each copy's Dynkin
label from its weight, grows every copy into a full orthonormal basis by
applying lowering operators, and assembles the unitary change of basis.
Every copy of the same irrep is grown with the same recipe, so the blocks of
a collective operator in the new basis coincide across copies.
"""

from __future__ import annotations

import warnings
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
import scipy.sparse as sp

from .collective import CollectiveOperatorSet, SiteConfig, collective_set, generic_error
from .su_algebra import RANK_RTOL
from .tableaux import Decomposition, YoungDiagram, dimension

EIGEN_TOL = 1e-8
LABEL_TOL = 1e-8
ACCEPT_TOL = 1e-8
# eigenvalues of the commutator Gram matrix are squared singular values
GRAM_RTOL = 1e-9


class RankAmbiguityWarning(UserWarning):
    """A singular value fell close to the rank threshold."""


class DecompositionError(RuntimeError):
    pass


def _dense(op) -> np.ndarray:
    return op.toarray() if sp.issparse(op) else np.asarray(op)


def _require_materialised(ops: CollectiveOperatorSet) -> None:
    if ops.matrix_free:
        raise MemoryError(
            f"dimension {ops.config.dim} exceeds the dense bound; raise QDK_MAX_DIM to decompose"
        )


def raising_operators(ops: CollectiveOperatorSet) -> list:
    """Collective raising operators whose joint kernel holds the highest weights.

    d=3 uses the triple T+, V+, U-; other d use E_{i,i+1}.
    """
    if ops.d == 3:
        return [ops.root(0, 1), ops.root(0, 2), ops.root(2, 1)]
    return [ops.root(i, i + 1) for i in range(ops.d - 1)]


def lowering_operators(ops: CollectiveOperatorSet) -> list:
    """Adjoints of ``raising_operators``: T-, V-, U+ for d=3."""
    if ops.d == 3:
        return [ops.root(1, 0), ops.root(2, 0), ops.root(1, 2)]
    return [ops.root(i + 1, i) for i in range(ops.d - 1)]


def cartan_operators(ops: CollectiveOperatorSet) -> dict:
    """Diagonal operators used for weight labels.

    d=3: T3 and Y; d=2: T3 = S^z / 2; otherwise H_i = [E_{i,i+1}, E_{i+1,i}].
    """
    if ops.d == 3:
        lad = ops.ladder()
        return {"T3": lad["T3"], "Y": lad["Y"]}
    if ops.d == 2:
        return {"T3": ops[2] / 2}
    out = {}
    for i in range(ops.d - 1):
        up, down = ops.root(i, i + 1), ops.root(i + 1, i)
        out[f"H{i + 1}"] = up @ down - down @ up
    return out


def _fraction(x: float, max_den: int = 6, tol: float = LABEL_TOL) -> Fraction:
    fr = Fraction(x).limit_denominator(max_den)
    if abs(float(fr) - x) > tol:
        raise DecompositionError(f"eigenvalue {x!r} is not a rational with denominator <= {max_den}")
    return fr


def _rayleigh(op, v: np.ndarray) -> tuple[float, float]:
    w = op @ v
    val = np.vdot(v, w).real / np.vdot(v, v).real
    return float(val), float(np.linalg.norm(w - val * v))


def _phase_fix(v: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    idx = np.flatnonzero(np.abs(v) > tol)
    if idx.size == 0:
        return v
    z = v[idx[0]]
    return v * (abs(z) / z)


def _null_space(mat: np.ndarray, rtol: float = RANK_RTOL) -> tuple[np.ndarray, bool]:
    """Orthonormal kernel basis (columns) and whether the rank was ambiguous."""
    ncols = mat.shape[1]
    if mat.size == 0 or not np.any(mat):
        return np.eye(ncols, dtype=complex), False
    # a square vh is needed for the kernel rows, so reduced SVD only for tall inputs
    _, s, vh = np.linalg.svd(mat, full_matrices=mat.shape[0] < ncols)
    thresh = rtol * s[0]
    rank = int(np.sum(s > thresh))
    ambiguous = bool(np.any((s > thresh / 10) & (s < thresh * 10)))
    return vh[rank:].conj().T, ambiguous


@dataclass(frozen=True)
class QuantumNumbers:
    """Labels of a basis vector: irrep, copy index and in-irrep labels.

    ``t``, ``t3`` and ``y`` are set for d=3 (isospin, its projection and
    hypercharge) and ``t``, ``t3`` for d=2 (total spin and its projection);
    ``weight`` carries the Cartan eigenvalues for every d.
    """

    dynkin: tuple[int, ...]
    lam: int
    weight: tuple[Fraction, ...]
    t: Fraction | None = None
    t3: Fraction | None = None
    y: Fraction | None = None

    @property
    def p(self) -> int:
        return self.dynkin[0]

    @property
    def q(self) -> int:
        return self.dynkin[1] if len(self.dynkin) > 1 else 0

    def as_tuple(self) -> tuple:
        if len(self.dynkin) == 2:
            return (self.p, self.q, self.lam, self.t, self.t3, self.y)
        return (self.dynkin, self.lam, self.t, self.t3)

    def __str__(self) -> str:
        if len(self.dynkin) == 2 and self.y is not None:
            return f"|{self.p},{self.q};{self.lam};{self.t},{self.t3},{self.y}>"
        if len(self.dynkin) == 1:
            return f"|{Fraction(self.dynkin[0], 2)},{self.lam},{self.t3}>"
        return f"|{self.dynkin};{self.lam};{tuple(str(w) for w in self.weight)}>"

    def to_json(self) -> dict:
        def s(x):
            return None if x is None else str(x)

        return {
            "dynkin": list(self.dynkin),
            "lam": self.lam,
            "weight": [str(w) for w in self.weight],
            "t": s(self.t),
            "t3": s(self.t3),
            "y": s(self.y),
        }

    @classmethod
    def from_json(cls, data: dict) -> "QuantumNumbers":
        def f(x):
            return None if x is None else Fraction(x)

        return cls(
            tuple(data["dynkin"]),
            int(data["lam"]),
            tuple(Fraction(w) for w in data["weight"]),
            f(data.get("t")),
            f(data.get("t3")),
            f(data.get("y")),
        )


def _weight_groups(config: SiteConfig) -> dict[tuple[int, ...], np.ndarray]:
    groups: dict[tuple[int, ...], list[int]] = defaultdict(list)
    for idx, w in enumerate(map(tuple, config.weights())):
        groups[w].append(idx)
    return {w: np.array(ix) for w, ix in sorted(groups.items(), reverse=True)}


def _highest_weight_blocks(ops: CollectiveOperatorSet) -> tuple[list[tuple[tuple, np.ndarray]], bool]:
    """Per-weight kernels of the raising operators.

    The collective Cartan operators are diagonal in the computational basis,
    so the kernel splits over weight spaces and is computed on each one.
    """
    _require_materialised(ops)
    raising = [sp.csc_matrix(r) for r in raising_operators(ops)]
    dim = ops.config.dim
    blocks = []
    any_ambiguous = False
    for w, cols in _weight_groups(ops.config).items():
        stacked = np.vstack([r[:, cols].toarray() for r in raising])
        null, ambiguous = _null_space(stacked)
        any_ambiguous |= ambiguous
        if null.shape[1] == 0:
            continue
        vecs = np.zeros((dim, null.shape[1]), dtype=complex)
        vecs[cols, :] = null
        blocks.append((w, vecs))
    return blocks, any_ambiguous


def highest_weight_subspace(ops: CollectiveOperatorSet) -> list[np.ndarray]:
    """Orthonormal basis of the joint kernel of the collective raising operators.

    Its dimension equals the total number of irrep copies. A
    ``RankAmbiguityWarning`` is issued when a singular value lies within a
    factor of ten of the rank threshold.
    """
    blocks, ambiguous = _highest_weight_blocks(ops)
    if ambiguous:
        warnings.warn("highest-weight kernel rank is ambiguous", RankAmbiguityWarning, stacklevel=2)
    out = []
    for _, vecs in blocks:
        for i in range(vecs.shape[1]):
            out.append(_phase_fix(vecs[:, i]))
    return out


def identify_irrep(hw: np.ndarray, ops: CollectiveOperatorSet) -> tuple[int, ...]:
    """Dynkin label of the irrep whose highest-weight vector is ``hw``.

    For d=3, (p, q) solve t3 = (p+q)/2 and y = (p-q)/3.
    """
    _require_materialised(ops)
    hw = np.asarray(hw, dtype=complex)
    hw = hw / np.linalg.norm(hw)
    cartan = cartan_operators(ops)
    vals = {}
    for name, op in cartan.items():
        val, resid = _rayleigh(op, hw)
        if resid > EIGEN_TOL:
            raise DecompositionError(f"vector is not an eigenvector of {name} (residual {resid:.2e})")
        vals[name] = val
    if ops.d == 3:
        t3, y = vals["T3"], vals["Y"]
        raw = (t3 + 1.5 * y, t3 - 1.5 * y)
    elif ops.d == 2:
        raw = (2 * vals["T3"],)
    else:
        raw = tuple(vals[f"H{i + 1}"] for i in range(ops.d - 1))
    labels = []
    for x in raw:
        k = round(x)
        if abs(x - k) > LABEL_TOL or k < 0:
            raise DecompositionError(f"weight gives non-integral or negative Dynkin label {x!r}")
        labels.append(int(k))
    return tuple(labels)


@dataclass
class CopyBasis:
    """Orthonormal basis of one irrep copy plus the recipe that grew it.

    ``recipe[k] = (parent, op)`` means vector k+1 was obtained from vector
    ``parent`` by lowering operator ``op`` followed by Gram-Schmidt.
    ``rotation`` is the in-copy unitary applied afterwards (isospin
    refinement for d=3).
    """

    vectors: np.ndarray
    recipe: list[tuple[int, int]]
    rotation: np.ndarray | None = None


def _gram_schmidt_step(cand: np.ndarray, basis: list[np.ndarray]) -> tuple[np.ndarray, float]:
    for _ in range(2):
        for b in basis:
            cand = cand - np.vdot(b, cand) * b
    nrm = float(np.linalg.norm(cand))
    return cand, nrm


def generate_copy_basis(
    hw: np.ndarray,
    ops: CollectiveOperatorSet,
    recipe: Sequence[tuple[int, int]] | None = None,
    expected_dim: int | None = None,
) -> CopyBasis:
    """Grow an irrep copy from its highest-weight vector.

    Lowering operators are applied breadth-first in a fixed order with
    Gram-Schmidt in generation order. Passing the ``recipe`` of an earlier
    copy replays exactly the same sequence, which keeps the per-copy blocks
    of collective operators identical.
    """
    _require_materialised(ops)
    lowering = lowering_operators(ops)
    hw = np.asarray(hw, dtype=complex)
    basis = [hw / np.linalg.norm(hw)]
    if expected_dim is None:
        expected_dim = dimension(YoungDiagram.from_dynkin(identify_irrep(hw, ops)))
    if recipe is not None:
        for parent, k in recipe:
            cand, nrm = _gram_schmidt_step(lowering[k] @ basis[parent], basis)
            if nrm < ACCEPT_TOL:
                raise DecompositionError(f"recipe step {(parent, k)} produced no new direction")
            basis.append(cand / nrm)
        used = list(recipe)
    else:
        used = []
        i = 0
        while i < len(basis):
            for k, low in enumerate(lowering):
                cand, nrm = _gram_schmidt_step(low @ basis[i], basis)
                if nrm > ACCEPT_TOL:
                    basis.append(cand / nrm)
                    used.append((i, k))
            i += 1
    if len(basis) != expected_dim:
        raise DecompositionError(
            f"generated {len(basis)} vectors for an irrep of dimension {expected_dim}"
        )
    return CopyBasis(np.column_stack(basis), used)


def _isospin_rotation(vectors: np.ndarray, ops: CollectiveOperatorSet) -> np.ndarray:
    """Unitary diagonalising T^2 inside repeated-weight groups of one copy."""
    lad = ops.ladder()
    t3 = np.array([_rayleigh(lad["T3"], v)[0] for v in vectors.T])
    y = np.array([_rayleigh(lad["Y"], v)[0] for v in vectors.T])
    t2 = vectors.conj().T @ (lad["T2"] @ vectors)
    rot = np.eye(vectors.shape[1], dtype=complex)
    keys = [(round(a * 6), round(b * 6)) for a, b in zip(t3, y)]
    groups: dict = defaultdict(list)
    for i, key in enumerate(keys):
        groups[key].append(i)
    for idx in groups.values():
        if len(idx) < 2:
            continue
        sub = t2[np.ix_(idx, idx)]
        _, evecs = np.linalg.eigh((sub + sub.conj().T) / 2)
        # descending t keeps the stretched isospin state first
        evecs = evecs[:, ::-1]
        rot[np.ix_(idx, idx)] = evecs
    return rot


def label_vector(v: np.ndarray, ops: CollectiveOperatorSet, dynkin: tuple[int, ...], lam: int) -> QuantumNumbers:
    """Exact labels of a weight vector inside a known irrep copy."""
    cartan = cartan_operators(ops)
    weight = []
    for name, op in cartan.items():
        val, resid = _rayleigh(op, v)
        if resid > 1e-9:
            raise DecompositionError(f"basis vector is not an eigenvector of {name} (residual {resid:.2e})")
        weight.append(_fraction(val))
    if ops.d == 3:
        t2, resid = _rayleigh(ops.ladder()["T2"], v)
        t = _fraction((-1 + np.sqrt(1 + 4 * max(t2, 0.0))) / 2, 2) if resid < 1e-9 else None
        return QuantumNumbers(dynkin, lam, tuple(weight), t, weight[0], weight[1])
    if ops.d == 2:
        return QuantumNumbers(dynkin, lam, tuple(weight), Fraction(dynkin[0], 2), weight[0], None)
    return QuantumNumbers(dynkin, lam, tuple(weight))


@dataclass
class Sector:
    dynkin: tuple[int, ...]
    dim: int
    mult: int
    copies: list[np.ndarray] = field(default_factory=list)
    labels: list[list[QuantumNumbers]] = field(default_factory=list)
    recipe: list[tuple[int, int]] = field(default_factory=list)

    @property
    def diagram(self) -> YoungDiagram:
        return YoungDiagram.from_dynkin(self.dynkin)

    def name(self) -> str:
        return f"({','.join(map(str, self.dynkin))}) [{self.dim}]"


@dataclass
class DecompositionReport:
    """Irrep sectors of a configuration and the change of basis.

    ``V`` has the new basis vectors as conjugated rows, so a collective
    operator S becomes ``V @ S @ V.conj().T``; sectors are laid out in
    order, all copies of a sector consecutively.
    """

    config: SiteConfig
    sectors: list[Sector]
    V: np.ndarray | None
    residuals: dict[str, float] = field(default_factory=dict)
    flags: list[str] = field(default_factory=list)

    def decomposition(self) -> Decomposition:
        from collections import Counter

        counts = Counter({YoungDiagram.from_dynkin(s.dynkin): s.mult for s in self.sectors})
        return Decomposition.from_counter(self.config.d, counts, self.config.kind_codes)

    def blocks(self) -> list[tuple[Sector, int, slice]]:
        """(sector, copy index, row slice of V) for every irrep copy."""
        out = []
        start = 0
        for s in self.sectors:
            for lam in range(s.mult):
                out.append((s, lam, slice(start, start + s.dim)))
                start += s.dim
        return out

    def basis(self) -> np.ndarray:
        """Basis vectors as columns (V^dagger)."""
        if self.V is None:
            raise ValueError("report carries no change of basis")
        return self.V.conj().T

    def labels(self) -> list[QuantumNumbers]:
        return [qn for s in self.sectors for copy in s.labels for qn in copy]

    def sector(self, dynkin: Sequence[int]) -> Sector:
        for s in self.sectors:
            if s.dynkin == tuple(dynkin):
                return s
        raise KeyError(f"no sector with Dynkin label {tuple(dynkin)}")

    def to_json(self, include_v: bool = False) -> dict:
        from .serialization import matrix_to_json

        data = {
            "schema_version": 1,
            "d": self.config.d,
            "kinds": self.config.kind_codes,
            "sectors": [
                {"dynkin": list(s.dynkin), "dim": s.dim, "mult": s.mult,
                 "labels": [[qn.to_json() for qn in copy] for copy in s.labels]}
                for s in self.sectors
            ],
            "residuals": {k: float(v) for k, v in self.residuals.items()},
            "flags": list(self.flags),
        }
        if include_v and self.V is not None:
            data["V"] = matrix_to_json(self.V)
        return data

    @classmethod
    def from_json(cls, data: dict) -> "DecompositionReport":
        from .serialization import matrix_from_json

        config = SiteConfig(int(data["d"]), tuple(data["kinds"]))
        V = matrix_from_json(data["V"]) if "V" in data else None
        sectors = []
        start = 0
        for entry in data["sectors"]:
            s = Sector(tuple(entry["dynkin"]), int(entry["dim"]), int(entry["mult"]))
            s.labels = [[QuantumNumbers.from_json(q) for q in copy] for copy in entry.get("labels", [])]
            if V is not None:
                for _ in range(s.mult):
                    s.copies.append(V[start:start + s.dim].conj().T)
                    start += s.dim
            sectors.append(s)
        return cls(config, sectors, V, dict(data.get("residuals", {})), list(data.get("flags", [])))


def _sector_order(sector: Sector) -> tuple:
    return (-sector.mult, sector.dim, sector.dynkin)


def decompose_hilbert_space(config: SiteConfig, ops: CollectiveOperatorSet | None = None) -> DecompositionReport:
    """Split the n-site space into irrep sectors and build V_dfs."""
    if ops is None:
        ops = collective_set(config)
    _require_materialised(ops)
    flags: list[str] = []
    blocks, ambiguous = _highest_weight_blocks(ops)
    if ambiguous:
        flags.append("rank-ambiguous highest-weight kernel")
        warnings.warn("highest-weight kernel rank is ambiguous", RankAmbiguityWarning, stacklevel=2)

    c2 = ops.casimir2()
    c3 = ops.casimir3() if ops.d >= 3 else None
    casimir_resid = 0.0
    by_irrep: dict[tuple[int, ...], list[np.ndarray]] = defaultdict(list)
    casimir_vals: dict[tuple[int, ...], list[tuple[float, float]]] = defaultdict(list)
    for _, vecs in blocks:
        for i in range(vecs.shape[1]):
            hw = _phase_fix(vecs[:, i])
            dynkin = identify_irrep(hw, ops)
            v2, r2 = _rayleigh(c2, hw)
            v3, r3 = _rayleigh(c3, hw) if c3 is not None else (0.0, 0.0)
            casimir_resid = max(casimir_resid, r2, r3)
            casimir_vals[dynkin].append((v2, v3))
            by_irrep[dynkin].append(hw)

    casimir_spread = 0.0
    for vals in casimir_vals.values():
        arr = np.array(vals)
        casimir_spread = max(casimir_spread, float(np.ptp(arr, axis=0).max()))
    if casimir_spread > EIGEN_TOL:
        flags.append("Casimir eigenvalues disagree within a cluster")

    sectors = []
    for dynkin, hws in by_irrep.items():
        dim = dimension(YoungDiagram.from_dynkin(dynkin))
        sector = Sector(dynkin, dim, len(hws))
        first = generate_copy_basis(hws[0], ops, expected_dim=dim)
        sector.recipe = first.recipe
        rot = _isospin_rotation(first.vectors, ops) if ops.d == 3 else None
        for lam, hw in enumerate(hws):
            copy = first if lam == 0 else generate_copy_basis(hw, ops, recipe=first.recipe, expected_dim=dim)
            vectors = copy.vectors @ rot if rot is not None else copy.vectors
            sector.copies.append(vectors)
            sector.labels.append([label_vector(v, ops, dynkin, lam) for v in vectors.T])
        sectors.append(sector)
    sectors.sort(key=_sector_order)

    basis = np.column_stack([c for s in sectors for c in s.copies])
    V = basis.conj().T
    total = sum(s.dim * s.mult for s in sectors)
    if total != config.dim:
        raise DecompositionError(f"sectors span {total} dimensions, expected {config.dim}")
    residuals = {
        "unitarity": float(np.abs(V @ basis - np.eye(config.dim)).max()),
        "casimir_eigen": float(casimir_resid),
        "casimir_spread": float(casimir_spread),
    }
    report = DecompositionReport(config, sectors, V, residuals, flags)
    residuals["copy_mismatch"] = verify_block_structure(report, np.ones(config.d ** 2 - 1), ops=ops).copy_mismatch
    return report


@dataclass
class BlockCheck:
    off_block: float
    copy_mismatch: float
    per_sector: dict[tuple[int, ...], float]
    tol: float
    matrix: np.ndarray

    @property
    def ok(self) -> bool:
        return self.off_block < self.tol and self.copy_mismatch < self.tol


def verify_block_structure(
    report: DecompositionReport,
    a: Sequence[float],
    tol: float = 1e-10,
    ops: CollectiveOperatorSet | None = None,
) -> BlockCheck:
    """Conjugate S = sum a_a S^a into the sector basis and measure how far it
    is from block diagonal with identical blocks across copies.

    Failures are reported in the returned record, never raised.
    """
    if report.V is None:
        raise ValueError("report carries no change of basis")
    if ops is None:
        ops = collective_set(report.config)
    s = generic_error(ops, a)
    V = report.V
    m = V @ _dense(s @ V.conj().T)
    mask = np.zeros(m.shape, dtype=bool)
    per_sector = {}
    blocks = report.blocks()
    for _, _, sl in blocks:
        mask[sl, sl] = True
    by_sector: dict = defaultdict(list)
    for sector, lam, sl in blocks:
        by_sector[sector.dynkin].append(m[sl, sl])
    for dynkin, mats in by_sector.items():
        per_sector[dynkin] = max((float(np.abs(x - mats[0]).max()) for x in mats[1:]), default=0.0)
    off = float(np.abs(m[~mask]).max()) if (~mask).any() else 0.0
    return BlockCheck(off, max(per_sector.values(), default=0.0), per_sector, tol, m)


def _commutant_full(ops: CollectiveOperatorSet) -> int:
    dim = ops.config.dim
    eye = np.eye(dim)
    rows = []
    for op in ops:
        a = _dense(op)
        rows.append(np.kron(a.T, eye) - np.kron(eye, a))
    null, ambiguous = _null_space(np.vstack(rows))
    if ambiguous:
        warnings.warn("commutant rank is ambiguous", RankAmbiguityWarning, stacklevel=3)
    return null.shape[1]


def _commutant_weight_restricted(ops: CollectiveOperatorSet) -> int:
    # X commuting with every S^a commutes with the diagonal Cartan part, so X
    # is block diagonal over weight spaces; only those entries are unknowns.
    dim = ops.config.dim
    groups = list(_weight_groups(ops.config).values())
    var_i, var_j = [], []
    for cols in groups:
        ii, jj = np.meshgrid(cols, cols, indexing="ij")
        var_i.append(ii.ravel())
        var_j.append(jj.ravel())
    var_i = np.concatenate(var_i)
    var_j = np.concatenate(var_j)
    nvar = var_i.size
    gram = np.zeros((nvar, nvar), dtype=complex)
    for op in ops:
        a = sp.csr_matrix(op)
        at = sp.csr_matrix(a.T)
        # column v of the map is vec([A, E_ij]) = A[:, i] e_j^T - e_i A[j, :]
        left = a[:, var_i].tocoo()
        right = at[:, var_j].tocoo()
        rows_l = left.row * dim + var_j[left.col]
        rows_r = var_i[right.col] * dim + right.row
        data = np.concatenate([left.data, -right.data])
        rows = np.concatenate([rows_l, rows_r])
        cols = np.concatenate([left.col, right.col])
        m = sp.csc_matrix((data, (rows, cols)), shape=(dim * dim, nvar))
        gram += (m.conj().T @ m).toarray()
    evals = np.linalg.eigvalsh((gram + gram.conj().T) / 2)
    top = evals[-1] if evals.size else 0.0
    if top <= 0:
        return nvar
    thresh = GRAM_RTOL * top
    if np.any((evals > thresh / 10) & (evals < thresh * 10)):
        warnings.warn("commutant rank is ambiguous", RankAmbiguityWarning, stacklevel=3)
    return int(np.sum(evals <= thresh))


def commutant_dimension(ops: CollectiveOperatorSet, method: str = "auto") -> int:
    """Dimension of {X : [X, S^a] = 0 for all a}.

    ``method="full"`` solves the stacked commutator map on all dim**2
    entries; ``"weights"`` restricts the unknowns to weight-preserving
    operators first. ``"auto"`` picks ``full`` for dim <= 16.
    """
    _require_materialised(ops)
    if method == "auto":
        method = "full" if ops.config.dim <= 16 else "weights"
    if method == "full":
        return _commutant_full(ops)
    if method == "weights":
        return _commutant_weight_restricted(ops)
    raise ValueError(f"unknown method {method!r}")
