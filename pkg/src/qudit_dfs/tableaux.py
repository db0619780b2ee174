"""Young-diagram arithmetic for SU(d) irreps.

Diagrams are stored canonically: no trailing zero rows and no column of
height ``d`` (such a column is the totally antisymmetric singlet and is
stripped). Tensor products are limited to the two Pieri rules, which is all
that products of fundamental and antifundamental factors need.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

FUNDAMENTAL = "f"
ANTIFUNDAMENTAL = "af"

# enumeration is exact but exponential; above this many boxes use the product formula
_ENUMERATION_BOX_LIMIT = 9


def _canonical_rows(rows: Sequence[int], d: int) -> tuple[int, ...]:
    rows = [int(r) for r in rows]
    if any(r < 0 for r in rows):
        raise ValueError(f"row lengths must be non-negative, got {rows}")
    if any(rows[i] < rows[i + 1] for i in range(len(rows) - 1)):
        raise ValueError(f"row lengths must be weakly decreasing, got {rows}")
    while rows and rows[-1] == 0:
        rows.pop()
    if len(rows) > d:
        raise ValueError(f"diagram {tuple(rows)} has more than d={d} rows")
    if len(rows) == d:
        full = rows[-1]
        rows = [r - full for r in rows]
        while rows and rows[-1] == 0:
            rows.pop()
    return tuple(rows)


@dataclass(frozen=True)
class YoungDiagram:
    """Canonical Young diagram labelling an SU(d) irrep."""

    rows: tuple[int, ...]
    d: int

    def __post_init__(self) -> None:
        if self.d < 2:
            raise ValueError(f"d must be >= 2, got {self.d}")
        object.__setattr__(self, "rows", _canonical_rows(self.rows, self.d))

    @classmethod
    def singlet(cls, d: int) -> "YoungDiagram":
        return cls((), d)

    @classmethod
    def box(cls, d: int) -> "YoungDiagram":
        return cls((1,), d)

    @classmethod
    def from_dynkin(cls, labels: Sequence[int]) -> "YoungDiagram":
        labels = [int(x) for x in labels]
        if any(x < 0 for x in labels):
            raise ValueError(f"Dynkin labels must be non-negative, got {labels}")
        d = len(labels) + 1
        rows = [sum(labels[i:]) for i in range(d - 1)]
        return cls(tuple(rows), d)

    @property
    def dynkin(self) -> tuple[int, ...]:
        padded = list(self.rows) + [0] * (self.d - len(self.rows))
        return tuple(padded[i] - padded[i + 1] for i in range(self.d - 1))

    @property
    def boxes(self) -> int:
        return sum(self.rows)

    @property
    def dim(self) -> int:
        return dimension(self)

    def padded(self) -> tuple[int, ...]:
        return tuple(self.rows) + (0,) * (self.d - len(self.rows))

    def __str__(self) -> str:
        return f"({','.join(map(str, self.dynkin))}) [{self.dim}]"


def _as_rows(diagram: YoungDiagram | Sequence[int], d: int | None) -> tuple[tuple[int, ...], int]:
    if isinstance(diagram, YoungDiagram):
        if d is not None and d != diagram.d:
            raise ValueError(f"diagram built for d={diagram.d}, asked for d={d}")
        return diagram.rows, diagram.d
    if d is None:
        raise ValueError("d is required when passing raw row lengths")
    return YoungDiagram(tuple(diagram), d).rows, d


def _iter_semistandard(rows: tuple[int, ...], d: int) -> Iterator[list[list[int]]]:
    cells = [(i, j) for i, r in enumerate(rows) for j in range(r)]
    filling = [[0] * r for r in rows]

    def fill(k: int) -> Iterator[list[list[int]]]:
        if k == len(cells):
            yield [row[:] for row in filling]
            return
        i, j = cells[k]
        lo = 1
        if j > 0:
            lo = max(lo, filling[i][j - 1])
        if i > 0:
            lo = max(lo, filling[i - 1][j] + 1)
        # rows below need room for strictly larger entries
        hi = d - (sum(1 for r in rows[i + 1:] if r > j))
        for v in range(lo, hi + 1):
            filling[i][j] = v
            yield from fill(k + 1)
        filling[i][j] = 0

    yield from fill(0)


def semistandard_fillings(diagram: YoungDiagram | Sequence[int], d: int | None = None) -> list[list[list[int]]]:
    """All fillings with entries 1..d, weakly increasing along rows and
    strictly increasing down columns."""
    rows, d = _as_rows(diagram, d)
    return list(_iter_semistandard(rows, d))


def count_semistandard(diagram: YoungDiagram | Sequence[int], d: int | None = None) -> int:
    rows, d = _as_rows(diagram, d)
    return sum(1 for _ in _iter_semistandard(rows, d))


def hook_content_dimension(diagram: YoungDiagram | Sequence[int], d: int | None = None) -> int:
    rows, d = _as_rows(diagram, d)
    cols = [sum(1 for r in rows if r > j) for j in range(rows[0])] if rows else []
    num = Fraction(1)
    for i, r in enumerate(rows):
        for j in range(r):
            hook = (r - j) + (cols[j] - i) - 1
            num *= Fraction(d + j - i, hook)
    assert num.denominator == 1
    return int(num)


def dimension(diagram: YoungDiagram | Sequence[int], d: int | None = None) -> int:
    """Dimension of the SU(d) irrep: the number of semistandard fillings.

    Raises ``ValueError`` for diagrams with more than ``d`` rows.
    """
    rows, d = _as_rows(diagram, d)
    if sum(rows) <= _ENUMERATION_BOX_LIMIT:
        return count_semistandard(rows, d)
    return hook_content_dimension(rows, d)


def conjugate_irrep(diagram: YoungDiagram, d: int | None = None) -> YoungDiagram:
    rows, d = _as_rows(diagram, d)
    padded = list(rows) + [0] * (d - len(rows))
    width = padded[0]
    return YoungDiagram(tuple(width - padded[d - 1 - i] for i in range(d)), d)


def _horizontal_strips(rows: tuple[int, ...], k: int, d: int) -> Iterator[tuple[int, ...]]:
    lam = list(rows) + [0] * (d - len(rows))

    def grow(i: int, left: int) -> Iterator[list[int]]:
        if i == d:
            if left == 0:
                yield []
            return
        cap = left if i == 0 else min(left, lam[i - 1] - lam[i])
        for add in range(cap, -1, -1):
            for tail in grow(i + 1, left - add):
                yield [lam[i] + add] + tail

    for mu in grow(0, k):
        yield tuple(mu)


def _vertical_strips(rows: tuple[int, ...], k: int, d: int) -> Iterator[tuple[int, ...]]:
    lam = list(rows) + [0] * (d - len(rows))

    def grow(i: int, left: int, prev: int | None) -> Iterator[list[int]]:
        if i == d:
            if left == 0:
                yield []
            return
        for add in (1, 0):
            if add > left:
                continue
            new = lam[i] + add
            if prev is not None and new > prev:
                continue
            for tail in grow(i + 1, left - add, new):
                yield [new] + tail

    for mu in grow(0, k, None):
        yield tuple(mu)


@dataclass(frozen=True)
class Decomposition:
    """Direct sum of irreps with multiplicities."""

    d: int
    terms: tuple[tuple[YoungDiagram, int], ...]
    factors: tuple[str, ...] = ()

    @classmethod
    def from_counter(cls, d: int, counts: Counter, factors: Sequence[str] = ()) -> "Decomposition":
        terms = sorted(counts.items(), key=lambda kv: (-kv[0].dim, kv[0].dynkin))
        return cls(d, tuple((diag, int(m)) for diag, m in terms), tuple(factors))

    @property
    def total_dimension(self) -> int:
        return sum(diag.dim * m for diag, m in self.terms)

    def multiplicity(self, irrep: YoungDiagram | Sequence[int]) -> int:
        if not isinstance(irrep, YoungDiagram):
            irrep = YoungDiagram.from_dynkin(irrep)
        return sum(m for diag, m in self.terms if diag == irrep)

    def as_dict(self) -> dict[tuple[int, ...], int]:
        return {diag.dynkin: m for diag, m in self.terms}

    def dims(self) -> list[int]:
        """Irrep dimensions with repetition, in term order."""
        return [diag.dim for diag, m in self.terms for _ in range(m)]

    def direct_sum(self) -> str:
        return " ⊕ ".join(str(x) for x in self.dims())

    def to_json(self) -> dict:
        return {
            "schema_version": 1,
            "d": self.d,
            "factors": list(self.factors),
            "terms": [{"dynkin": list(diag.dynkin), "dim": diag.dim, "mult": m} for diag, m in self.terms],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Decomposition":
        d = int(data["d"])
        counts: Counter = Counter()
        for term in data["terms"]:
            diag = YoungDiagram.from_dynkin(term["dynkin"])
            if diag.d != d:
                raise ValueError(f"term {term} does not match d={d}")
            if "dim" in term and int(term["dim"]) != diag.dim:
                raise ValueError(f"term {term} has inconsistent dimension")
            counts[diag] += int(term["mult"])
        return cls.from_counter(d, counts, data.get("factors", ()))


def tensor_pieri(diagram: YoungDiagram, shape: tuple[str, int], d: int | None = None) -> Decomposition:
    """Multiply ``diagram`` by a single row or single column of ``k`` boxes.

    ``shape`` is ``("row", k)`` or ``("column", k)``.
    """
    rows, d = _as_rows(diagram, d)
    kind, k = shape
    k = int(k)
    if k < 1:
        raise ValueError(f"shape size must be >= 1, got {k}")
    if kind == "row":
        results = _horizontal_strips(rows, k, d)
    elif kind == "column":
        if k > d:
            raise ValueError(f"column of {k} boxes exceeds d={d}")
        results = _vertical_strips(rows, k, d)
    else:
        raise ValueError(f"shape must be 'row' or 'column', got {kind!r}")
    counts = Counter(YoungDiagram(mu, d) for mu in results)
    return Decomposition.from_counter(d, counts)


def factor_diagram(factor: str, d: int) -> YoungDiagram:
    if factor == FUNDAMENTAL:
        return YoungDiagram((1,), d)
    if factor == ANTIFUNDAMENTAL:
        return YoungDiagram((1,) * (d - 1), d)
    raise ValueError(f"factor must be 'f' or 'af', got {factor!r}")


def parse_factors(text: str | Iterable[str]) -> list[str]:
    items = text.split(",") if isinstance(text, str) else list(text)
    factors = [str(x).strip() for x in items]
    for f in factors:
        if f not in (FUNDAMENTAL, ANTIFUNDAMENTAL):
            raise ValueError(f"factor must be 'f' or 'af', got {f!r}")
    if not factors:
        raise ValueError("factor list is empty")
    return factors


def decompose_chain(factors: Sequence[str], d: int) -> Decomposition:
    """Decompose a tensor product of fundamental (``"f"``) and
    antifundamental (``"af"``) factors by iterated Pieri rules."""
    factors = list(factors)
    if not factors:
        raise ValueError("factor list is empty")
    for f in factors:
        factor_diagram(f, d)
    counts: Counter = Counter({factor_diagram(factors[0], d): 1})
    for f in factors[1:]:
        shape = ("row", 1) if f == FUNDAMENTAL else ("column", d - 1)
        nxt: Counter = Counter()
        for diag, m in counts.items():
            for sub, n in tensor_pieri(diag, shape).terms:
                nxt[sub] += m * n
        counts = nxt
    return Decomposition.from_counter(d, counts, factors)
