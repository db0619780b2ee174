"""Collective operators S^a = sum_i g^a_i on n qudit sites.

Basis ordering: site 1 is the most significant base-d digit, so the ket
|012> of three qutrits is index 0*9 + 1*3 + 2.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np
import scipy.linalg
import scipy.sparse as sp
from scipy.sparse.linalg import LinearOperator, expm_multiply

from .su_algebra import RepKind, generator_index_map, ladder_ops, rep_generators

DEFAULT_MAX_DIM = 2187
EIGH_MAX_DIM = 1000
NORM_TOL = 1e-12


def max_dense_dim() -> int:
    """Largest Hilbert-space dimension materialised as sparse matrices.

    Overridden by the ``QDK_MAX_DIM`` environment variable.
    """
    raw = os.environ.get("QDK_MAX_DIM")
    if raw is None:
        return DEFAULT_MAX_DIM
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"QDK_MAX_DIM must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"QDK_MAX_DIM must be positive, got {value}")
    return value


@dataclass(frozen=True)
class SiteConfig:
    d: int
    kinds: tuple[RepKind, ...]

    def __post_init__(self) -> None:
        if int(self.d) != self.d or self.d < 2:
            raise ValueError(f"d must be an integer >= 2, got {self.d}")
        kinds = tuple(RepKind.parse(k) for k in self.kinds)
        if not kinds:
            raise ValueError("a configuration needs at least one site")
        object.__setattr__(self, "kinds", kinds)

    @classmethod
    def uniform(cls, d: int, n: int, kind: RepKind | str = RepKind.FUNDAMENTAL) -> "SiteConfig":
        if n < 1:
            raise ValueError(f"n must be >= 1, got {n}")
        return cls(d, (RepKind.parse(kind),) * n)

    @classmethod
    def parse(cls, d: int, kinds: str | Iterable[str]) -> "SiteConfig":
        items = kinds.split(",") if isinstance(kinds, str) else list(kinds)
        return cls(d, tuple(RepKind.parse(k) for k in items))

    @property
    def n(self) -> int:
        return len(self.kinds)

    @property
    def dim(self) -> int:
        return self.d ** self.n

    @property
    def kind_codes(self) -> list[str]:
        return [k.value for k in self.kinds]

    def index(self, ket: str | Sequence[int]) -> int:
        digits = [int(c) for c in ket]
        if len(digits) != self.n or any(not 0 <= x < self.d for x in digits):
            raise ValueError(f"ket {ket!r} is not a basis label for {self.n} sites of dimension {self.d}")
        idx = 0
        for x in digits:
            idx = idx * self.d + x
        return idx

    def label(self, index: int) -> str:
        digits = np.unravel_index(index, (self.d,) * self.n)
        return "".join(str(int(x)) for x in digits)

    def weights(self) -> np.ndarray:
        """Signed occupation numbers of each basis state, shape (dim, d).

        A fundamental site in state j contributes +1 to entry j, an
        antifundamental site -1.
        """
        digits = np.array(list(itertools.product(range(self.d), repeat=self.n)), dtype=int)
        signs = np.array([1 if k is RepKind.FUNDAMENTAL else -1 for k in self.kinds])
        out = np.zeros((self.dim, self.d), dtype=int)
        rows = np.arange(self.dim)
        for site in range(self.n):
            np.add.at(out, (rows, digits[:, site]), signs[site])
        return out


@dataclass
class StateVector:
    config: SiteConfig
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size != self.config.dim:
            raise ValueError(f"expected {self.config.dim} amplitudes, got {amps.size}")
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        self.amplitudes = amps

    @classmethod
    def from_kets(cls, config: SiteConfig, terms: Mapping[str, complex], normalize: bool = True) -> "StateVector":
        amps = np.zeros(config.dim, dtype=complex)
        for ket, c in terms.items():
            amps[config.index(ket)] += c
        state = cls(config, amps)
        return state.normalized() if normalize else state

    @classmethod
    def basis(cls, config: SiteConfig, ket: str) -> "StateVector":
        return cls.from_kets(config, {ket: 1.0})

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> "StateVector":
        nrm = self.norm
        if nrm == 0.0:
            raise ValueError("cannot normalise the zero vector")
        return StateVector(self.config, self.amplitudes / nrm)

    def is_normalized(self, tol: float = NORM_TOL) -> bool:
        return abs(self.norm - 1.0) < tol

    def inner(self, other: "StateVector") -> complex:
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def to_json(self) -> dict:
        return {
            "schema_version": 1,
            "d": self.config.d,
            "kinds": self.config.kind_codes,
            "amps": [[float(z.real), float(z.imag)] for z in self.amplitudes],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "StateVector":
        config = SiteConfig(int(data["d"]), tuple(data["kinds"]))
        amps = np.array([complex(re, im) for re, im in data["amps"]], dtype=complex)
        return cls(config, amps)


def _kron_sum_sparse(g: np.ndarray, site: int, n: int, d: int) -> sp.csr_matrix:
    left = sp.identity(d ** site, dtype=complex, format="csr")
    right = sp.identity(d ** (n - site - 1), dtype=complex, format="csr")
    return sp.kron(sp.kron(left, sp.csr_matrix(g)), right, format="csr")


def _apply_site(g: np.ndarray, psi: np.ndarray, site: int, n: int, d: int) -> np.ndarray:
    t = psi.reshape((d,) * n)
    t = np.tensordot(g, t, axes=([1], [site]))
    return np.moveaxis(t, 0, site).reshape(-1)


class CollectiveOperatorSet:
    """The d**2 - 1 collective generators of a site configuration.

    Below ``max_dense_dim()`` the generators are materialised as sparse CSR
    matrices; above it they are matrix-free ``LinearOperator`` objects.
    """

    def __init__(self, config: SiteConfig, matrix_free: bool | None = None):
        self.config = config
        self.site_generators = {
            kind: rep_generators(config.d, kind) for kind in set(config.kinds)
        }
        if matrix_free is None:
            matrix_free = config.dim > max_dense_dim()
        self.matrix_free = bool(matrix_free)
        self.ops: list = [self._build(a) for a in range(config.d ** 2 - 1)]

    def _site_ops(self, a: int) -> list[np.ndarray]:
        return [self.site_generators[k][a] for k in self.config.kinds]

    def _build(self, a: int):
        n, d = self.config.n, self.config.d
        site_ops = self._site_ops(a)
        if not self.matrix_free:
            total = sp.csr_matrix((self.config.dim, self.config.dim), dtype=complex)
            for i, g in enumerate(site_ops):
                total = total + _kron_sum_sparse(g, i, n, d)
            total.eliminate_zeros()
            return total

        def matvec(v, site_ops=site_ops):
            v = np.asarray(v, dtype=complex).reshape(-1)
            out = np.zeros_like(v)
            for i, g in enumerate(site_ops):
                out += _apply_site(g, v, i, n, d)
            return out

        def rmatvec(v, site_ops=site_ops):
            v = np.asarray(v, dtype=complex).reshape(-1)
            out = np.zeros_like(v)
            for i, g in enumerate(site_ops):
                out += _apply_site(g.conj().T, v, i, n, d)
            return out

        shape = (self.config.dim, self.config.dim)
        return LinearOperator(shape, matvec=matvec, rmatvec=rmatvec, dtype=complex)

    def __len__(self) -> int:
        return len(self.ops)

    def __getitem__(self, a: int):
        return self.ops[a]

    def __iter__(self):
        return iter(self.ops)

    @property
    def d(self) -> int:
        return self.config.d

    def apply(self, a: int, vec: np.ndarray) -> np.ndarray:
        return self.ops[a] @ np.asarray(vec, dtype=complex)

    def dense(self, a: int) -> np.ndarray:
        if self.matrix_free:
            raise MemoryError("operator set is matrix-free; dense form unavailable")
        return self.ops[a].toarray()

    def root(self, j: int, k: int):
        """Collective E_jk = (S^{sym jk} +/- i S^{anti jk}) / 2 for j != k."""
        if j == k:
            raise ValueError("root operator needs j != k")
        idx = generator_index_map(self.d)
        lo, hi = min(j, k), max(j, k)
        sym = self.ops[idx["sym"][(lo, hi)]]
        anti = self.ops[idx["anti"][(lo, hi)]]
        return (sym + 1j * anti) / 2 if j < k else (sym - 1j * anti) / 2

    def ladder(self) -> dict:
        if self.d != 3:
            raise ValueError("SU(3) ladder operators need d=3")
        if self.matrix_free:
            raise MemoryError("ladder operators need materialised generators")
        return ladder_ops(self.ops)

    def casimir2(self):
        from .su_algebra import casimir2

        if self.matrix_free:
            raise MemoryError("Casimir needs materialised generators")
        return casimir2(self.ops)

    def casimir3(self):
        from .su_algebra import casimir3

        if self.matrix_free:
            raise MemoryError("Casimir needs materialised generators")
        return casimir3(self.ops)

    def single_site_exponent(self, a: Sequence[float], t: float = 1.0) -> dict[RepKind, np.ndarray]:
        """exp(-i t sum_a a_a g_a) for each site kind."""
        a = _check_coefficients(a, self.d)
        out = {}
        for kind, gens in self.site_generators.items():
            h = sum(x * g for x, g in zip(a, gens))
            out[kind] = scipy.linalg.expm(-1j * t * h)
        return out


def collective_set(config: SiteConfig, matrix_free: bool | None = None) -> CollectiveOperatorSet:
    return CollectiveOperatorSet(config, matrix_free)


def _check_coefficients(a: Sequence[float], d: int) -> np.ndarray:
    a = np.asarray(a, dtype=float).reshape(-1)
    if a.size != d * d - 1:
        raise ValueError(f"expected {d * d - 1} coefficients, got {a.size}")
    if not np.all(np.isfinite(a)):
        raise ValueError("coefficients must be finite")
    return a


def generic_error(ops: CollectiveOperatorSet, a: Sequence[float]):
    """S = sum_a a_a S^a, sparse when the set is materialised."""
    a = _check_coefficients(a, ops.d)
    if ops.matrix_free:
        terms = [(x, op) for x, op in zip(a, ops.ops) if x != 0.0]

        def matvec(v):
            v = np.asarray(v, dtype=complex).reshape(-1)
            out = np.zeros_like(v)
            for x, op in terms:
                out += x * (op @ v)
            return out

        shape = (ops.config.dim,) * 2
        return LinearOperator(shape, matvec=matvec, rmatvec=matvec, dtype=complex)
    total = sp.csr_matrix((ops.config.dim, ops.config.dim), dtype=complex)
    for x, op in zip(a, ops.ops):
        if x != 0.0:
            total = total + x * op
    return total


def collective_unitary(config: SiteConfig, u: np.ndarray) -> np.ndarray:
    """Dense U acting as u on fundamental sites and conj(u) on antifundamental ones."""
    u = np.asarray(u, dtype=complex)
    out = np.ones((1, 1), dtype=complex)
    for kind in config.kinds:
        out = np.kron(out, u if kind is RepKind.FUNDAMENTAL else u.conj())
    return out


def evolve(state: StateVector, ops: CollectiveOperatorSet, a: Sequence[float], t: float) -> StateVector:
    """exp(-i t S) |psi> with S = sum_a a_a S^a."""
    if state.config != ops.config:
        raise ValueError("state and operator set have different site configurations")
    if not np.isfinite(t):
        raise ValueError(f"time must be finite, got {t}")
    if not state.is_normalized(1e-10):
        raise ValueError(f"state is not normalised (norm {state.norm})")
    a = _check_coefficients(a, ops.d)
    psi = state.amplitudes
    if t == 0.0 or not np.any(a):
        return StateVector(state.config, psi.copy())
    s = generic_error(ops, a)
    if ops.config.dim < EIGH_MAX_DIM and not ops.matrix_free:
        w, v = np.linalg.eigh(s.toarray())
        out = v @ (np.exp(-1j * t * w) * (v.conj().T @ psi))
    else:
        out = expm_multiply(-1j * t * s, psi, traceA=0.0)
    return StateVector(state.config, out)
