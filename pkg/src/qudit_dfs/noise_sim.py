"""Monte Carlo harness: random collective errors on encoded and bare states,
and the group twirl over collective unitaries."""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
import time
import warnings
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np
import scipy.linalg
from scipy.stats import unitary_group

from .codes import CodeBasis, LogicalState, decode, encode, get_code
from .collective import CollectiveOperatorSet, SiteConfig, StateVector, collective_set, collective_unitary, evolve
from .su_algebra import generators

DISTRIBUTIONS = ("gaussian", "uniform")
ENCODINGS = ("dfs", "bare")
SAMPLERS = ("haar", "exp-words")
DENSITY_TOL = 1e-10
# Weyl group averaging switches from S_d to the cyclic group above this order
MAX_PERMUTATIONS = 24


class NonPSDWarning(UserWarning):
    """A density matrix has a negative eigenvalue beyond tolerance."""


@dataclass(frozen=True)
class SimConfig:
    """One simulation run.

    ``scale`` is sigma for gaussian coefficients and the half-width of the
    interval [-scale, scale] for uniform ones.
    """

    code: str = "qutrit3"
    trials: int = 1000
    seed: int = 0
    distribution: str = "gaussian"
    scale: float = 1.0
    time: float = 1.0
    encoding: str = "dfs"

    def validate(self) -> None:
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.distribution not in DISTRIBUTIONS:
            raise ValueError(f"distribution must be one of {DISTRIBUTIONS}, got {self.distribution!r}")
        if not math.isfinite(self.scale) or self.scale < 0:
            raise ValueError(f"scale must be finite and >= 0, got {self.scale}")
        if not math.isfinite(self.time):
            raise ValueError(f"time must be finite, got {self.time}")
        if self.encoding not in ENCODINGS:
            raise ValueError(f"encoding must be one of {ENCODINGS}, got {self.encoding!r}")
        try:
            get_code(self.code)
        except KeyError as exc:
            raise ValueError(str(exc.args[0])) from None

    def to_json(self) -> dict:
        return asdict(self)


@dataclass
class FidelityReport:
    config: SimConfig
    fidelities: np.ndarray
    leakages: np.ndarray
    runtime: float = 0.0

    @property
    def mean(self) -> float:
        return float(np.mean(self.fidelities))

    @property
    def min(self) -> float:
        return float(np.min(self.fidelities))

    @property
    def max(self) -> float:
        return float(np.max(self.fidelities))

    @property
    def leakage_max(self) -> float:
        return float(np.max(self.leakages))

    @property
    def leakage_mean(self) -> float:
        return float(np.mean(self.leakages))

    def summary(self) -> dict:
        # runtime is left out so that files are byte-identical across runs
        return {
            "schema_version": 1,
            "config": self.config.to_json(),
            "trials": int(self.fidelities.size),
            "fidelity_mean": self.mean,
            "fidelity_min": self.min,
            "fidelity_max": self.max,
            "leakage_mean": self.leakage_mean,
            "leakage_max": self.leakage_max,
        }

    def to_json(self) -> str:
        return json.dumps(self.summary(), indent=2, sort_keys=True) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(f"# config: {json.dumps(self.config.to_json(), sort_keys=True)}\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["trial", "fidelity", "leakage"])
        for i, (f, l) in enumerate(zip(self.fidelities, self.leakages)):
            writer.writerow([i, repr(float(f)), repr(float(l))])
        return buf.getvalue()

    def write(self, csv_path: str | Path | None = None, json_path: str | Path | None = None) -> None:
        if csv_path is not None:
            Path(csv_path).write_text(self.to_csv())
        if json_path is not None:
            Path(json_path).write_text(self.to_json())

    @classmethod
    def from_csv(cls, text: str) -> "FidelityReport":
        lines = text.splitlines()
        header = [l for l in lines if l.startswith("#")]
        if not header or not header[0].startswith("# config: "):
            raise ValueError("CSV lacks the '# config:' header line")
        config = SimConfig(**json.loads(header[0][len("# config: "):]))
        rows = list(csv.DictReader(l for l in lines if not l.startswith("#")))
        fid = np.array([float(r["fidelity"]) for r in rows])
        leak = np.array([float(r["leakage"]) for r in rows])
        return cls(config, fid, leak)


def read_summary(path: str | Path) -> dict:
    data = json.loads(Path(path).read_text())
    if data.get("schema_version") != 1:
        raise ValueError(f"unsupported summary schema {data.get('schema_version')!r}")
    SimConfig(**data["config"]).validate()
    return data


def draw_coefficients(rng: np.random.Generator, d: int, distribution: str, scale: float) -> np.ndarray:
    n = d * d - 1
    if distribution == "gaussian":
        return rng.normal(0.0, scale, size=n) if scale > 0 else np.zeros(n)
    if distribution == "uniform":
        return rng.uniform(-scale, scale, size=n)
    raise ValueError(f"unknown distribution {distribution!r}")


def _bare_indices(config: SiteConfig) -> tuple[int, int]:
    rest = ("2" if config.d > 2 else "0") * (config.n - 1)
    return config.index("0" + rest), config.index("1" + rest)


def bare_encode(config: SiteConfig, logical: LogicalState) -> StateVector:
    """Logical amplitudes on site 1's |0>, |1>; other sites in |2> (|0> for qubits)."""
    i0, i1 = _bare_indices(config)
    amps = np.zeros(config.dim, dtype=complex)
    amps[i0], amps[i1] = logical.c0, logical.c1
    return StateVector(config, amps)


def bare_decode(state: StateVector) -> tuple[np.ndarray, float]:
    i0, i1 = _bare_indices(state.config)
    c = state.amplitudes[[i0, i1]]
    rho = np.outer(c, c.conj())
    return rho, max(0.0, 1.0 - float(np.trace(rho).real))


def logical_fidelity(code: CodeBasis | None, logical: LogicalState, rho: np.ndarray) -> float:
    """<c|rho|c> for the pure logical input c; rho may be subnormalised by leakage."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (2, 2):
        raise ValueError(f"expected a 2x2 logical density matrix, got shape {rho.shape}")
    if np.abs(rho - rho.conj().T).max() > DENSITY_TOL:
        raise ValueError("logical density matrix is not Hermitian")
    if np.linalg.eigvalsh(rho).min() < -DENSITY_TOL:
        warnings.warn("logical density matrix is not positive semidefinite", NonPSDWarning, stacklevel=2)
    c = logical.vector
    return float(np.clip(np.vdot(c, rho @ c).real, 0.0, 1.0))


def _trial(config: SimConfig, code: CodeBasis, ops: CollectiveOperatorSet, seq: np.random.SeedSequence):
    # draw order is fixed (a, logical state, gauge) so dfs and bare runs see the same noise
    rng = np.random.default_rng(seq)
    a = draw_coefficients(rng, code.config.d, config.distribution, config.scale)
    logical = LogicalState.random(rng, code.gauge_dim)
    if config.encoding == "dfs":
        out = evolve(encode(code, logical), ops, a, config.time)
        rho, leak = decode(code, out)
    else:
        out = evolve(bare_encode(code.config, logical), ops, a, config.time)
        rho, leak = bare_decode(out)
    return logical_fidelity(code, logical, rho), leak


def run_trials(config: SimConfig) -> FidelityReport:
    """Independent seeded trials, one child seed per trial index."""
    config.validate()
    t0 = time.perf_counter()
    code = get_code(config.code)
    ops = collective_set(code.config)
    children = np.random.SeedSequence(config.seed).spawn(config.trials)
    results = [_trial(config, code, ops, s) for s in children]
    fid = np.array([r[0] for r in results])
    leak = np.array([r[1] for r in results])
    return FidelityReport(config, fid, leak, time.perf_counter() - t0)


def check_density_matrix(rho: np.ndarray, tol: float = DENSITY_TOL) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"density matrix must be square, got shape {rho.shape}")
    if np.abs(rho - rho.conj().T).max() > tol:
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho).real - 1) > tol:
        raise ValueError(f"density matrix has trace {np.trace(rho).real}, expected 1")
    if np.linalg.eigvalsh(rho).min() < -tol:
        raise ValueError("density matrix is not positive semidefinite")
    return rho


def _weyl_permutations(d: int) -> list[tuple[int, ...]]:
    if math.factorial(d) <= MAX_PERMUTATIONS:
        return list(itertools.permutations(range(d)))
    return [tuple((i + s) % d for i in range(d)) for s in range(d)]


class _Symmetriser:
    """Average over the maximal torus and the Weyl permutations.

    Both are subgroups of the collective group, so composing them with the
    Monte Carlo average leaves its mean (the exact twirl) unchanged while
    removing most of the sampling noise.
    """

    def __init__(self, config: SiteConfig):
        w = config.weights()
        self.mask = np.all(w[:, None, :] == w[None, :, :], axis=2)
        digits = np.array(list(itertools.product(range(config.d), repeat=config.n)))
        place = config.d ** np.arange(config.n - 1, -1, -1)
        self.perms = [np.array(p)[digits] @ place for p in _weyl_permutations(config.d)]

    def __call__(self, rho: np.ndarray) -> np.ndarray:
        rho = np.where(self.mask, rho, 0.0)
        out = np.zeros_like(rho)
        for idx in self.perms:
            out += rho[np.ix_(idx, idx)]
        return out / len(self.perms)


def _sample_site_unitary(rng: np.random.Generator, d: int, sampler: str) -> np.ndarray:
    if sampler == "haar":
        return unitary_group.rvs(d, random_state=rng)
    # words of three exponentials exp(-i sum_a x_a g_a), x_a ~ N(0, pi)
    gens = generators(d)
    u = np.eye(d, dtype=complex)
    for _ in range(3):
        x = rng.normal(0.0, np.pi, size=len(gens))
        u = scipy.linalg.expm(-1j * sum(c * g for c, g in zip(x, gens))) @ u
    return u


def twirl(
    rho: np.ndarray,
    ops: CollectiveOperatorSet,
    samples: int,
    seed: int | None = None,
    sampler: str = "haar",
    symmetrise: bool = True,
) -> np.ndarray:
    """Monte Carlo estimate of the integral of U rho U^dagger over collective U.

    U = u x u x ... with u conj on antifundamental sites. ``sampler`` picks
    exact Haar draws of u or words of three random exponentials.
    """
    if samples < 1:
        raise ValueError(f"samples must be >= 1, got {samples}")
    if sampler not in SAMPLERS:
        raise ValueError(f"sampler must be one of {SAMPLERS}, got {sampler!r}")
    config = ops.config
    rho = check_density_matrix(rho)
    if rho.shape[0] != config.dim:
        raise ValueError(f"rho has dimension {rho.shape[0]}, configuration has {config.dim}")
    rng = np.random.default_rng(seed)
    sym = _Symmetriser(config) if symmetrise else (lambda m: m)
    base = sym(rho)
    acc = np.zeros_like(base)
    for _ in range(samples):
        u = collective_unitary(config, _sample_site_unitary(rng, config.d, sampler))
        acc += u @ base @ u.conj().T
    out = sym(acc / samples)
    out = (out + out.conj().T) / 2
    return out / np.trace(out).real


def commutator_residual(rho: np.ndarray, ops: CollectiveOperatorSet) -> float:
    """max_a ||[rho, S^a]||_F."""
    out = 0.0
    for a in range(len(ops)):
        s = ops.dense(a)
        out = max(out, float(np.linalg.norm(rho @ s - s @ rho)))
    return out


def random_density_matrix(dim: int, seed: int | None = None) -> np.ndarray:
    rng = np.random.default_rng(seed)
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real
