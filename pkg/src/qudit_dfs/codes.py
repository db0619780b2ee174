"""The three-qubit and three-qutrit noiseless-subsystem codes.

The printed basis states are kept as literal ket expansions. Three printing
errors make the literal three-qutrit list unusable as a code basis, so the
code basis applies these corrections (all recorded in ``CodeBasis.notes``):

* psi^{8,0}_3 and psi^{8,0}_6 are negated. The literal signs are
  inconsistent with the printed S_0 block and with psi^{8,1}, so the two
  octets would not transform identically.
* psi_s gains the missing +|201> term, making it the six-term totally
  antisymmetric singlet.
* psi^{10}_6 gains the missing +|201> term, making it the six-term symmetric
  state.

``three_qutrit_code(literal=True)`` returns the states exactly as printed,
with the two five-term states renormalised.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Sequence

import numpy as np

from .collective import SiteConfig, StateVector, collective_set, generic_error
from .dfs_finder import (
    DecompositionReport,
    QuantumNumbers,
    cartan_operators,
    decompose_hilbert_space,
    identify_irrep,
    label_vector,
    raising_operators,
)

R2, R3, R6, R12 = np.sqrt(2.0), np.sqrt(3.0), np.sqrt(6.0), np.sqrt(12.0)
F = Fraction

# (name, {ket: integer coefficient}, normalisation divisor)
PRINTED_QUBIT_STATES = [
    ("|1/2,0,1/2>", {"010": 1, "100": -1}, R2),
    ("|1/2,0,-1/2>", {"011": 1, "101": -1}, R2),
    ("|1/2,1,1/2>", {"001": 2, "010": -1, "100": -1}, R6),
    ("|1/2,1,-1/2>", {"110": -2, "011": 1, "101": 1}, R6),
    ("|3/2,0,3/2>", {"000": 1}, 1.0),
    ("|3/2,0,1/2>", {"001": 1, "010": 1, "100": 1}, R3),
    ("|3/2,0,-1/2>", {"011": 1, "101": 1, "110": 1}, R3),
    ("|3/2,0,-3/2>", {"111": 1}, 1.0),
]

PRINTED_QUTRIT_STATES = [
    ("psi^{8,0}_1", {"200": 1, "020": -1}, R2),
    ("psi^{8,0}_2", {"100": 1, "010": -1}, R2),
    ("psi^{8,0}_3", {"011": 1, "101": -1}, R2),
    ("psi^{8,0}_4", {"211": 1, "121": -1}, R2),
    ("psi^{8,0}_5", {"212": 1, "122": -1}, R2),
    ("psi^{8,0}_6", {"022": 1, "202": -1}, R2),
    ("psi^{8,0}_7", {"021": -1, "120": -1, "201": 1, "210": 1}, 2.0),
    ("psi^{8,0}_8", {"012": 2, "021": 1, "102": -2, "120": -1, "201": -1, "210": 1}, R12),
    ("psi^{8,1}_1", {"002": 2, "020": -1, "200": -1}, R6),
    ("psi^{8,1}_2", {"001": 2, "010": -1, "100": -1}, R6),
    ("psi^{8,1}_3", {"110": -2, "011": 1, "101": 1}, R6),
    ("psi^{8,1}_4", {"112": 2, "121": -1, "211": -1}, R6),
    ("psi^{8,1}_5", {"221": -2, "122": 1, "212": 1}, R6),
    ("psi^{8,1}_6", {"220": -2, "022": 1, "202": 1}, R6),
    ("psi^{8,1}_7", {"012": 2, "021": -1, "102": 2, "120": -1, "201": -1, "210": -1}, R12),
    ("psi^{8,1}_8", {"021": -1, "120": 1, "201": -1, "210": 1}, 2.0),
    ("psi_s", {"012": 1, "021": -1, "102": -1, "120": 1, "210": -1}, R6),
    ("psi^{10}_1", {"111": 1}, 1.0),
    ("psi^{10}_2", {"011": 1, "101": 1, "110": 1}, R3),
    ("psi^{10}_3", {"001": 1, "010": 1, "100": 1}, R3),
    ("psi^{10}_4", {"000": 1}, 1.0),
    ("psi^{10}_5", {"112": 1, "121": 1, "211": 1}, R3),
    ("psi^{10}_6", {"012": 1, "021": 1, "102": 1, "120": 1, "210": 1}, R6),
    ("psi^{10}_7", {"002": 1, "020": 1, "200": 1}, R3),
    ("psi^{10}_8", {"122": 1, "212": 1, "221": 1}, R3),
    ("psi^{10}_9", {"022": 1, "202": 1, "220": 1}, R3),
    ("psi^{10}_10", {"222": 1}, 1.0),
]

SINGLET_SIX_TERM = {"012": 1, "021": -1, "102": -1, "120": 1, "201": 1, "210": -1}

# name -> (sign, extra kets) applied on top of the printed expansion
QUTRIT_ERRATA = {
    "psi^{8,0}_3": (-1, {}),
    "psi^{8,0}_6": (-1, {}),
    "psi_s": (1, {"201": 1}),
    "psi^{10}_6": (1, {"201": 1}),
}

# (t, t3, y) per octet member, as printed
_OCTET_LABELS = [
    (F(1), F(1), F(0)),
    (F(1, 2), F(1, 2), F(1)),
    (F(1, 2), F(-1, 2), F(1)),
    (F(1), F(-1), F(0)),
    (F(1, 2), F(-1, 2), F(-1)),
    (F(1, 2), F(1, 2), F(-1)),
    (F(1), F(0), F(0)),
    (F(0), F(0), F(0)),
]

# decuplet labels are not printed; these follow from additive site weights
_DECUPLET_LABELS = [
    (F(3, 2), F(-3, 2), F(1)),
    (F(3, 2), F(-1, 2), F(1)),
    (F(3, 2), F(1, 2), F(1)),
    (F(3, 2), F(3, 2), F(1)),
    (F(1), F(-1), F(0)),
    (F(1), F(0), F(0)),
    (F(1), F(1), F(0)),
    (F(1, 2), F(-1, 2), F(-1)),
    (F(1, 2), F(1, 2), F(-1)),
    (F(0), F(0), F(-2)),
]


def _su3_label(dynkin, lam, t, t3, y) -> QuantumNumbers:
    return QuantumNumbers(tuple(dynkin), lam, (t3, y), t, t3, y)


def _su2_label(j, lam, mu) -> QuantumNumbers:
    return QuantumNumbers((int(2 * j),), lam, (mu,), F(j), F(mu), None)


def _expand(config: SiteConfig, terms: dict, norm: float) -> np.ndarray:
    amps = np.zeros(config.dim, dtype=complex)
    for ket, c in terms.items():
        amps[config.index(ket)] += c
    return amps / norm


@dataclass
class CodeBasis:
    """Ordered, labelled basis of a code with its logical blocks.

    ``vectors`` holds one basis state per row; ``blocks`` lists the diagonal
    blocks (name, slice) in which collective operators act.
    """

    name: str
    config: SiteConfig
    vectors: np.ndarray
    labels: list[QuantumNumbers]
    names: list[str]
    logical_blocks: dict[int, list[int]]
    blocks: list[tuple[str, slice]]
    notes: list[str] = field(default_factory=list)

    @property
    def V(self) -> np.ndarray:
        """Change of basis: computational coordinates -> code coordinates."""
        return self.vectors.conj()

    @property
    def gauge_dim(self) -> int:
        return len(self.logical_blocks[0])

    def state(self, i: int) -> StateVector:
        return StateVector(self.config, self.vectors[i])

    def by_name(self, name: str) -> StateVector:
        return self.state(self.names.index(name))

    def to_json(self) -> dict:
        return {
            "schema_version": 1,
            "name": self.name,
            "d": self.config.d,
            "kinds": self.config.kind_codes,
            "states": [
                {"name": nm, "label": qn.to_json(),
                 "amps": [[float(z.real), float(z.imag)] for z in vec]}
                for nm, qn, vec in zip(self.names, self.labels, self.vectors)
            ],
            "logical_blocks": {str(k): v for k, v in self.logical_blocks.items()},
            "blocks": [[nm, sl.start, sl.stop] for nm, sl in self.blocks],
            "notes": list(self.notes),
        }

    @classmethod
    def from_json(cls, data: dict) -> "CodeBasis":
        config = SiteConfig(int(data["d"]), tuple(data["kinds"]))
        vectors = np.array([[complex(re, im) for re, im in s["amps"]] for s in data["states"]])
        return cls(
            data["name"],
            config,
            vectors,
            [QuantumNumbers.from_json(s["label"]) for s in data["states"]],
            [s["name"] for s in data["states"]],
            {int(k): list(v) for k, v in data["logical_blocks"].items()},
            [(nm, slice(a, b)) for nm, a, b in data["blocks"]],
            list(data.get("notes", [])),
        )


def three_qubit_code() -> CodeBasis:
    config = SiteConfig.uniform(2, 3)
    vectors = np.array([_expand(config, t, n) for _, t, n in PRINTED_QUBIT_STATES])
    labels = [
        _su2_label(F(1, 2), 0, F(1, 2)),
        _su2_label(F(1, 2), 0, F(-1, 2)),
        _su2_label(F(1, 2), 1, F(1, 2)),
        _su2_label(F(1, 2), 1, F(-1, 2)),
        _su2_label(F(3, 2), 0, F(3, 2)),
        _su2_label(F(3, 2), 0, F(1, 2)),
        _su2_label(F(3, 2), 0, F(-1, 2)),
        _su2_label(F(3, 2), 0, F(-3, 2)),
    ]
    return CodeBasis(
        "qubit3",
        config,
        vectors,
        labels,
        [nm for nm, _, _ in PRINTED_QUBIT_STATES],
        {0: [0, 1], 1: [2, 3]},
        [("S_0", slice(0, 2)), ("S_1", slice(2, 4)), ("S_3/2", slice(4, 8))],
    )


def three_qutrit_code(literal: bool = False) -> CodeBasis:
    """The 27-state three-qutrit basis in the printed column order.

    With ``literal=True`` the printed expansions are used unchanged (the two
    five-term states renormalised); otherwise ``QUTRIT_ERRATA`` is applied.
    """
    config = SiteConfig.uniform(3, 3)
    vectors = []
    notes = []
    for name, terms, norm in PRINTED_QUTRIT_STATES:
        if literal:
            vec = _expand(config, terms, 1.0)
            vec = vec / np.linalg.norm(vec)
        elif name in QUTRIT_ERRATA:
            sign, extra = QUTRIT_ERRATA[name]
            fixed = dict(terms)
            for ket, c in extra.items():
                fixed[ket] = fixed.get(ket, 0) + c
            vec = sign * _expand(config, fixed, norm)
            change = "negated" if sign < 0 else "added " + ", ".join(f"+|{k}>" for k in extra)
            notes.append(f"{name}: {change} relative to the printed expansion")
        else:
            vec = _expand(config, terms, norm)
        vectors.append(vec)
    labels = [_su3_label((1, 1), 0, *lab) for lab in _OCTET_LABELS]
    labels += [_su3_label((1, 1), 1, *lab) for lab in _OCTET_LABELS]
    labels.append(_su3_label((0, 0), 0, F(0), F(0), F(0)))
    labels += [_su3_label((3, 0), 0, *lab) for lab in _DECUPLET_LABELS]
    if literal:
        notes.append("literal printed expansions; five-term psi_s and psi^{10}_6 renormalised")
    return CodeBasis(
        "qutrit3-literal" if literal else "qutrit3",
        config,
        np.array(vectors),
        labels,
        [nm for nm, _, _ in PRINTED_QUTRIT_STATES],
        {0: list(range(0, 8)), 1: list(range(8, 16))},
        [("S_0", slice(0, 8)), ("S_1", slice(8, 16)), ("S_s", slice(16, 17)), ("S_10", slice(17, 27))],
        notes,
    )


def code_from_report(report: DecompositionReport, dynkin: Sequence[int] | None = None) -> CodeBasis:
    """Code basis built from a numerical decomposition.

    The logical qubit lives in the first two copies of ``dynkin`` (default:
    the first sector with multiplicity >= 2).
    """
    if report.V is None:
        raise ValueError("report carries no change of basis")
    if dynkin is None:
        candidates = [s for s in report.sectors if s.mult >= 2]
        if not candidates:
            raise ValueError("no irrep occurs more than once; no noiseless qubit")
        dynkin = candidates[0].dynkin
    target = report.sector(dynkin)
    if target.mult < 2:
        raise ValueError(f"sector {tuple(dynkin)} has multiplicity {target.mult} < 2")
    logical: dict[int, list[int]] = {}
    blocks = []
    names = []
    for sector, lam, sl in report.blocks():
        blocks.append((f"{sector.name()} lambda={lam}", sl))
        names += [f"{sector.name()}:{lam}:{i}" for i in range(sector.dim)]
        if sector.dynkin == target.dynkin and lam < 2:
            logical[lam] = list(range(sl.start, sl.stop))
    return CodeBasis(
        f"generated-{report.config.d}^{report.config.n}",
        report.config,
        report.V.conj(),
        report.labels(),
        names,
        logical,
        blocks,
    )


def get_code(name: str) -> CodeBasis:
    if name == "qubit3":
        return three_qubit_code()
    if name == "qutrit3":
        return three_qutrit_code()
    if name == "qutrit3-literal":
        return three_qutrit_code(literal=True)
    raise KeyError(f"unknown code {name!r}; known: qubit3, qutrit3, qutrit3-literal")


CODE_IDS = ("qubit3", "qutrit3")


@dataclass
class LogicalState:
    """Logical amplitudes (c0, c1) and the gauge vector shared by both blocks."""

    c0: complex
    c1: complex
    gauge: np.ndarray

    def __post_init__(self) -> None:
        self.gauge = np.asarray(self.gauge, dtype=complex).reshape(-1)
        if abs(abs(self.c0) ** 2 + abs(self.c1) ** 2 - 1) > 1e-10:
            raise ValueError("logical amplitudes must satisfy |c0|^2 + |c1|^2 = 1")
        if abs(np.linalg.norm(self.gauge) - 1) > 1e-10:
            raise ValueError("gauge vector must have unit norm")

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.c0, self.c1], dtype=complex)

    @classmethod
    def random(cls, rng: np.random.Generator, gauge_dim: int) -> "LogicalState":
        c = rng.normal(size=2) + 1j * rng.normal(size=2)
        c /= np.linalg.norm(c)
        g = rng.normal(size=gauge_dim) + 1j * rng.normal(size=gauge_dim)
        g /= np.linalg.norm(g)
        return cls(complex(c[0]), complex(c[1]), g)

    @classmethod
    def basis(cls, bit: int, gauge_dim: int, gauge_index: int = 0) -> "LogicalState":
        g = np.zeros(gauge_dim, dtype=complex)
        g[gauge_index] = 1
        return cls(1.0 if bit == 0 else 0.0, 0.0 if bit == 0 else 1.0, g)


class Decoded(NamedTuple):
    rho: np.ndarray
    leakage: float


def encode(code: CodeBasis, logical: LogicalState) -> StateVector:
    """sum_mu g_mu (c0 psi^{lambda=0}_mu + c1 psi^{lambda=1}_mu)."""
    if set(code.logical_blocks) != {0, 1}:
        raise ValueError("code must have exactly two logical blocks")
    b0, b1 = code.logical_blocks[0], code.logical_blocks[1]
    if logical.gauge.size != len(b0):
        raise ValueError(f"gauge has dimension {logical.gauge.size}, blocks have {len(b0)}")
    amps = logical.c0 * (logical.gauge @ code.vectors[b0]) + logical.c1 * (logical.gauge @ code.vectors[b1])
    return StateVector(code.config, amps)


def decode(code: CodeBasis, state: StateVector) -> Decoded:
    """Reduced 2x2 operator over the block index and the weight outside both blocks."""
    psi = state.amplitudes
    coeffs = np.array([code.vectors[code.logical_blocks[lam]].conj() @ psi for lam in (0, 1)])
    rho = coeffs @ coeffs.conj().T
    total = float(np.vdot(psi, psi).real)
    leakage = max(0.0, total - float(np.trace(rho).real))
    return Decoded(rho, leakage)


class SdfsResult(NamedTuple):
    full: np.ndarray
    blocks: dict[str, np.ndarray]
    off_block: float


def sdfs_matrix(code: CodeBasis, a: Sequence[float]) -> SdfsResult:
    """S in the code basis, V S V^dagger, with its diagonal blocks."""
    ops = collective_set(code.config)
    s = generic_error(ops, a)
    basis = code.vectors.T
    full = code.V @ (s @ basis)
    mask = np.zeros(full.shape, dtype=bool)
    blocks = {}
    for name, sl in code.blocks:
        blocks[name] = full[sl, sl]
        mask[sl, sl] = True
    off = float(np.abs(full[~mask]).max()) if (~mask).any() else 0.0
    return SdfsResult(full, blocks, off)


def printed_qubit_sdfs(a: Sequence[float]) -> np.ndarray:
    """The printed 8x8 three-qubit S_dfs, entry for entry."""
    a1, a2, a3 = (float(x) for x in a)
    p, m = a1 + 1j * a2, a1 - 1j * a2
    s = np.zeros((8, 8), dtype=complex)
    s[0, 0], s[0, 1] = a3, m
    s[1, 0], s[1, 1] = p, -a3
    s[2, 2], s[2, 3] = a3, m
    s[3, 2], s[3, 3] = p, -a3
    s[4, 4], s[4, 5] = 3 * a3, R3 * m
    s[5, 4], s[5, 5], s[5, 6] = R3 * p, a3, 2 * m
    s[6, 5], s[6, 6], s[6, 7] = 2 * p, a3, R3 * m
    s[7, 6], s[7, 7] = R3 * p, -3 * a3
    return s


def printed_qutrit_s0(a: Sequence[float]) -> np.ndarray:
    """The printed 8x8 block S_0 of the three-qutrit code, entry for entry."""
    a1, a2, a3, a4, a5, a6, a7, a8 = (float(x) for x in a)
    j = 1j
    t_m, t_p = a1 - j * a2, a1 + j * a2
    v_m, v_p = a4 - j * a5, a4 + j * a5
    u_m, u_p = a6 - j * a7, a6 + j * a7
    return np.array([
        [2 * a3, u_p, 0, 0, 0, v_m, R2 * t_m, 0],
        [u_m, a3 + R3 * a8, t_m, 0, 0, 0, -v_m / R2, -3 * v_m / R6],
        [0, t_p, -a3 + R3 * a8, -v_m, 0, 0, u_m / R2, -3 * u_m / R6],
        [0, 0, -v_p, -2 * a3, u_m, 0, R2 * t_p, 0],
        [0, 0, 0, u_p, -a3 - R3 * a8, t_p, v_p / R2, 3 * v_p / R6],
        [v_p, 0, 0, 0, t_m, a3 - R3 * a8, u_p / R2, -3 * u_p / R6],
        [R2 * t_p, -v_p / R2, u_p / R2, R2 * t_m, v_m / R2, u_m / R2, 0, 0],
        [0, -3 * v_p / R6, -3 * u_p / R6, 0, 3 * v_m / R6, -3 * u_m / R6, 0, 0],
    ], dtype=complex)


def phi_state() -> StateVector:
    """(|00> + |11> + |22>)/sqrt(3) on two fundamental qutrits."""
    return StateVector.from_kets(SiteConfig.parse(3, "f,f"), {"00": 1, "11": 1, "22": 1})


def phi_prime_state() -> StateVector:
    """(|0 0bar> + |1 1bar> + |2 2bar>)/sqrt(3): same amplitudes, second site antifundamental."""
    return StateVector.from_kets(SiteConfig.parse(3, "f,af"), {"00": 1, "11": 1, "22": 1})


def singlet_state(six_term: bool = True) -> StateVector:
    config = SiteConfig.uniform(3, 3)
    if six_term:
        return StateVector.from_kets(config, SINGLET_SIX_TERM)
    _, terms, _ = PRINTED_QUTRIT_STATES[16]
    return StateVector.from_kets(config, terms)


PRESETS = {
    "phi": phi_state,
    "phi-prime": phi_prime_state,
    "psi-s": singlet_state,
    "psi-s-printed": lambda: singlet_state(six_term=False),
}


def raising_chain(v: np.ndarray, ops) -> tuple[int, ...]:
    """Dynkin label reached by applying raising operators to a weight vector
    until it is annihilated."""
    raising = raising_operators(ops)
    v = np.asarray(v, dtype=complex)
    v = v / np.linalg.norm(v)
    # each raising step strictly increases the weight, so this bound is generous
    for _ in range(4 * ops.config.n * ops.config.d):
        for r in raising:
            w = r @ v
            if np.linalg.norm(w) > 1e-9:
                v = w / np.linalg.norm(w)
                break
        else:
            return identify_irrep(v, ops)
    raise RuntimeError("raising chain did not terminate")


def compute_label(v: np.ndarray, config: SiteConfig, lam: int = 0) -> QuantumNumbers:
    """Labels of a joint CSCO eigenvector, irrep read off its raising chain."""
    ops = collective_set(config)
    return label_vector(np.asarray(v, dtype=complex), ops, raising_chain(v, ops), lam)


@lru_cache(maxsize=32)
def _cached_report(config: SiteConfig) -> DecompositionReport:
    return decompose_hilbert_space(config)


@dataclass
class Discrimination:
    is_singlet: bool
    generator_norms: list[float]
    irrep_content: list[tuple[tuple[int, ...], float]]
    raising_chain_label: tuple[int, ...] | None
    is_weight_vector: bool

    def to_json(self) -> dict:
        return {
            "schema_version": 1,
            "is_singlet": self.is_singlet,
            "generator_norms": self.generator_norms,
            "irrep_content": [{"dynkin": list(k), "weight": w} for k, w in self.irrep_content],
            "raising_chain_label": None if self.raising_chain_label is None else list(self.raising_chain_label),
            "is_weight_vector": self.is_weight_vector,
        }


def discriminate(state: StateVector, singlet_tol: float = 1e-10) -> Discrimination:
    """Singlet test plus the irrep content of ``state``.

    For weight vectors the raising operators are applied until the state is
    annihilated and the Dynkin label is read off the final weight.
    """
    ops = collective_set(state.config)
    psi = state.amplitudes / state.norm
    norms = [float(np.linalg.norm(op @ psi)) for op in ops]
    is_singlet = max(norms) < singlet_tol

    report = _cached_report(state.config)
    content = []
    for sector in report.sectors:
        weight = sum(float(np.sum(np.abs(c.conj().T @ psi) ** 2)) for c in sector.copies)
        if weight > 1e-12:
            content.append((sector.dynkin, weight))

    cartan = cartan_operators(ops)
    is_weight = all(
        np.linalg.norm(op @ psi - np.vdot(psi, op @ psi) * psi) < 1e-9 for op in cartan.values()
    )
    chain = raising_chain(psi, ops) if is_weight else None
    return Discrimination(is_singlet, norms, content, chain, bool(is_weight))


def expected_eigenvalues(qn: QuantumNumbers, d: int) -> dict[str, float]:
    """CSCO eigenvalues implied by a label (C2 = sum_a S^a S^a)."""
    if d == 2:
        j = qn.dynkin[0] / 2
        return {"T3": float(qn.t3), "C2": 4 * j * (j + 1)}
    if d == 3:
        p, q = qn.dynkin
        return {
            "T2": float(qn.t * (qn.t + 1)),
            "T3": float(qn.t3),
            "Y": float(qn.y),
            "C2": 4 / 3 * (p * p + q * q + p * q + 3 * p + 3 * q),
        }
    raise ValueError(f"label residuals are defined for d=2 and d=3, got d={d}")


def label_residuals(code: CodeBasis) -> np.ndarray:
    """max over the CSCO of ||O v - o v|| for each basis vector and its label."""
    ops = collective_set(code.config)
    if code.config.d == 3:
        lad = ops.ladder()
        csco = {"T2": lad["T2"], "T3": lad["T3"], "Y": lad["Y"]}
    else:
        csco = {"T3": ops[2] / 2}
    csco["C2"] = ops.casimir2()
    out = np.zeros(len(code.vectors))
    for i, (v, qn) in enumerate(zip(code.vectors, code.labels)):
        expect = expected_eigenvalues(qn, code.config.d)
        out[i] = max(float(np.linalg.norm(op @ v - expect[k] * v)) for k, op in csco.items())
    return out


@dataclass
class InvariantResult:
    name: str
    passed: bool | None
    residual: float
    tol: float
    detail: str = ""

    @property
    def status(self) -> str:
        return "SKIP" if self.passed is None else ("PASS" if self.passed else "FAIL")


def verify_code(code: CodeBasis | str, trials: int = 100, seed: int = 0) -> list[InvariantResult]:
    """Orthonormality, labels, block structure, printed-matrix match and
    singlet annihilation for one of the built-in codes."""
    if isinstance(code, str):
        code = get_code(code)
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    results = []
    v = code.vectors
    ortho = float(np.abs(v.conj() @ v.T - np.eye(len(v))).max())
    results.append(InvariantResult("orthonormality", ortho < 1e-12, ortho, 1e-12))
    lab = float(label_residuals(code).max())
    results.append(InvariantResult("labels", lab < 1e-10, lab, 1e-10))

    rng = np.random.default_rng(seed)
    off = same = printed = 0.0
    worst = None
    for _ in range(trials):
        a = rng.normal(size=code.config.d ** 2 - 1)
        r = sdfs_matrix(code, a)
        off = max(off, r.off_block)
        same = max(same, float(np.abs(r.blocks["S_0"] - r.blocks["S_1"]).max()))
        if code.config.d == 2:
            diff = np.abs(r.full - printed_qubit_sdfs(a))
        else:
            diff = np.abs(r.blocks["S_0"] - printed_qutrit_s0(a))
        if diff.max() > printed:
            printed = float(diff.max())
            worst = tuple(int(x) for x in np.unravel_index(np.argmax(diff), diff.shape))
    results.append(InvariantResult("off-block residual", off < 1e-10, off, 1e-10))
    results.append(InvariantResult("S_0 = S_1", same < 1e-12, same, 1e-12))
    target = "S_dfs" if code.config.d == 2 else "S_0"
    results.append(InvariantResult(
        f"printed {target}", printed < 1e-12, printed, 1e-12,
        f"largest deviation at entry {worst}" if printed >= 1e-12 else "",
    ))

    if "psi_s" in code.names:
        psi = code.vectors[code.names.index("psi_s")]
        ops = collective_set(code.config)
        sing = max(float(np.linalg.norm(op @ psi)) for op in ops)
        results.append(InvariantResult("singlet annihilation", sing < 1e-12, sing, 1e-12))
    else:
        results.append(InvariantResult("singlet annihilation", None, 0.0, 1e-12, "code has no singlet state"))
    return results
