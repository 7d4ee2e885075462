"""Finite associative unital rings with dense integer element encodings.

Every ring encodes its elements as ``0 .. order-1`` with 0 the zero element.
Encodings are constructor specific:

- ``Z n``: the residue itself.
- ``GF(p^k)``: the integer representation used by galois (coefficient of
  x^i is the i-th base-p digit).
- ``M(n, K)``: row-major entries, entry (0, 0) is the most significant digit.
- ``dual(K)``: ``a + b*q`` for ``a + b e``.
- products: mixed radix, first factor most significant.

Arithmetic is computed on demand; addition and multiplication tables are
materialized lazily, at most once, when the order is within ``table_cap``.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum, auto
from functools import lru_cache
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import galois
import numpy as np
import regex

from distantline.core.caching import OnceCache
from distantline.core.config import get_config
from distantline.core.errors import (
    CapExceededError,
    NotInvertibleError,
    RingConstructionError,
    TheoremViolationError,
    UnsupportedRingError,
)

logger = logging.getLogger(__name__)

_GF_TERM = regex.compile(r"^(?P<coef>\d*)(?P<var>a(?:\^(?P<exp>\d+))?)?$")


@lru_cache(maxsize=None)
def galois_field(p: int, k: int = 1):
    """Return the galois field class GF(p^k) with the least irreducible modulus.

    Args:
        p: Characteristic (prime).
        k: Extension degree.

    Returns:
        A galois FieldArray subclass.
    """
    if k == 1:
        return galois.GF(p)
    poly = galois.irreducible_poly(p, k, method="min")
    return galois.GF(p**k, irreducible_poly=poly)


@lru_cache(maxsize=None)
def galois_field_of_order(q: int):
    """Return the canonical galois field of order q."""
    factors = galois.factors(q)[0]
    if len(factors) != 1:
        raise RingConstructionError(f"{q} is not a prime power")
    p = int(factors[0])
    k = round(math.log(q, p))
    return galois_field(p, k)


@dataclass
class RingTables:
    """Materialized arithmetic of a ring, as arrays and nested lists."""

    add: np.ndarray
    mul: np.ndarray
    neg: np.ndarray
    add_rows: List[List[int]] = field(repr=False, default_factory=list)
    mul_rows: List[List[int]] = field(repr=False, default_factory=list)
    neg_list: List[int] = field(repr=False, default_factory=list)

    @classmethod
    def from_arrays(cls, add: np.ndarray, mul: np.ndarray, neg: np.ndarray) -> "RingTables":
        add = np.asarray(add, dtype=np.int64)
        mul = np.asarray(mul, dtype=np.int64)
        neg = np.asarray(neg, dtype=np.int64)
        return cls(add, mul, neg, add.tolist(), mul.tolist(), neg.tolist())


class FiniteRing(OnceCache):
    """A finite associative ring with 1 != 0, elements encoded as 0..order-1.

    Subclasses implement ``_add``, ``_neg`` and ``_mul`` on encodings and may
    override ``_build_arrays`` with a vectorized table construction.
    """

    structure_tag = "ring"

    def __init__(self, order: int, name: str, one: int = 1):
        super().__init__()
        config = get_config()
        if order > config.ring_order_cap:
            raise RingConstructionError(
                f"ring {name} has order {order}, above the order cap {config.ring_order_cap}"
            )
        self.order = order
        self.name = name
        self.zero = 0
        self.one = one
        self._table_cap = config.table_cap
        self._add_rows: Optional[List[List[int]]] = None
        self._mul_rows: Optional[List[List[int]]] = None
        self._neg_list: Optional[List[int]] = None

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name} order={self.order}>"

    def elements(self) -> range:
        return range(self.order)

    # Raw arithmetic, overridden by constructors
    def _add(self, a: int, b: int) -> int:
        raise NotImplementedError

    def _neg(self, a: int) -> int:
        raise NotImplementedError

    def _mul(self, a: int, b: int) -> int:
        raise NotImplementedError

    # Table materialization
    def has_tables(self) -> bool:
        """Whether arithmetic tables are (or may be) materialized for this ring."""
        return self.order <= self._table_cap

    def tables(self) -> RingTables:
        """Return the arithmetic tables, building them on first use.

        Raises:
            CapExceededError: If the order exceeds the table cap.
        """
        if not self.has_tables():
            raise CapExceededError("arithmetic tables", self.order, self._table_cap)

        def build() -> RingTables:
            add, mul, neg = self._build_arrays()
            tables = RingTables.from_arrays(add, mul, neg)
            self._neg_list = tables.neg_list
            self._add_rows = tables.add_rows
            self._mul_rows = tables.mul_rows
            logger.debug("Materialized tables for %s (order %d)", self.name, self.order)
            return tables

        return self._cached("tables", build)

    def _build_arrays(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        n = self.order
        add = np.empty((n, n), dtype=np.int64)
        mul = np.empty((n, n), dtype=np.int64)
        for a in range(n):
            for b in range(n):
                add[a, b] = self._add(a, b)
                mul[a, b] = self._mul(a, b)
        neg = np.array([self._neg(a) for a in range(n)], dtype=np.int64)
        return add, mul, neg

    # Public arithmetic
    def add(self, a: int, b: int) -> int:
        rows = self._add_rows
        if rows is None:
            if not self.has_tables():
                return self._add(a, b)
            rows = self.tables().add_rows
        return rows[a][b]

    def neg(self, a: int) -> int:
        negs = self._neg_list
        if negs is None:
            if not self.has_tables():
                return self._neg(a)
            negs = self.tables().neg_list
        return negs[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        rows = self._mul_rows
        if rows is None:
            if not self.has_tables():
                return self._mul(a, b)
            rows = self.tables().mul_rows
        return rows[a][b]

    def scalar(self, k: int) -> int:
        """Return k * 1 for a non-negative integer k."""
        acc = self.zero
        for _ in range(k):
            acc = self.add(acc, self.one)
        return acc

    # Unit group
    def unit_inverses(self) -> Dict[int, int]:
        """Map each unit to its two-sided inverse."""
        return self._cached("unit_inverses", self._compute_unit_inverses)

    def _compute_unit_inverses(self) -> Dict[int, int]:
        if self.has_tables():
            mul = self.tables().mul
            is_one = mul == self.one
            both = is_one & is_one.T
            mask = both.any(axis=1)
            inverses = both.argmax(axis=1)
            return {int(a): int(inverses[a]) for a in np.flatnonzero(mask)}
        result: Dict[int, int] = {}
        for a in range(self.order):
            for b in range(self.order):
                if self._mul(a, b) == self.one and self._mul(b, a) == self.one:
                    result[a] = b
                    break
        return result

    def units(self) -> Tuple[int, ...]:
        return self._cached("units", lambda: tuple(sorted(self.unit_inverses())))

    # Literals
    def literal(self, x: int) -> str:
        """Constructor-syntax literal of an element."""
        return str(x)

    def parse(self, text: str) -> int:
        """Parse an element literal produced by ``literal``."""
        text = text.strip()
        if not text.isdigit() or int(text) >= self.order:
            raise ValueError(f"{text!r} is not an element of {self.name}")
        return int(text)

    def meta(self) -> Dict[str, object]:
        return {"order": self.order, "structure_tag": self.structure_tag, "name": self.name}


class ZModRing(FiniteRing):
    """The residue ring Z/n."""

    structure_tag = "zmod"

    def __init__(self, n: int):
        super().__init__(n, f"Z{n}")
        self.n = n

    def _add(self, a: int, b: int) -> int:
        return (a + b) % self.n

    def _neg(self, a: int) -> int:
        return (-a) % self.n

    def _mul(self, a: int, b: int) -> int:
        return (a * b) % self.n

    def _build_arrays(self):
        x = np.arange(self.n, dtype=np.int64)
        return (x[:, None] + x[None, :]) % self.n, (x[:, None] * x[None, :]) % self.n, (-x) % self.n

    @property
    def galois_field(self):
        if not galois.is_prime(self.n):
            raise UnsupportedRingError(f"{self.name} is not a field")
        return galois_field(self.n, 1)

    def meta(self):
        data = super().meta()
        data["n"] = self.n
        return data


class GFRing(FiniteRing):
    """The finite field GF(p^k), backed by galois."""

    structure_tag = "gf"

    def __init__(self, p: int, k: int):
        self.p = p
        self.k = k
        self.galois_field = galois_field(p, k)
        name = f"GF({p})" if k == 1 else f"GF({p}^{k})"
        super().__init__(p**k, name)

    @property
    def modulus_poly(self) -> str:
        return str(self.galois_field.irreducible_poly) if self.k > 1 else "x"

    def _add(self, a: int, b: int) -> int:
        F = self.galois_field
        return int(F(a) + F(b))

    def _neg(self, a: int) -> int:
        return int(-self.galois_field(a))

    def _mul(self, a: int, b: int) -> int:
        F = self.galois_field
        return int(F(a) * F(b))

    def _build_arrays(self):
        x = self.galois_field.elements
        add = (x[:, None] + x[None, :]).view(np.ndarray)
        mul = (x[:, None] * x[None, :]).view(np.ndarray)
        neg = (-x).view(np.ndarray)
        return add, mul, neg

    def literal(self, x: int) -> str:
        if self.k == 1:
            return str(x)
        if x == 0:
            return "0"
        terms = []
        for degree in range(self.k - 1, -1, -1):
            coef = (x // self.p**degree) % self.p
            if coef == 0:
                continue
            if degree == 0:
                terms.append(str(coef))
            else:
                var = "a" if degree == 1 else f"a^{degree}"
                terms.append(var if coef == 1 else f"{coef}{var}")
        return "+".join(terms)

    def parse(self, text: str) -> int:
        text = text.replace(" ", "")
        if self.k == 1:
            return super().parse(text)
        value = [0] * self.k
        for term in text.split("+"):
            m = _GF_TERM.match(term)
            if not term or m is None:
                raise ValueError(f"{text!r} is not an element of {self.name}")
            coef = int(m.group("coef")) if m.group("coef") else 1
            degree = 0
            if m.group("var"):
                degree = int(m.group("exp")) if m.group("exp") else 1
            if degree >= self.k:
                raise ValueError(f"{text!r} has degree above {self.k - 1}")
            value[degree] = (value[degree] + coef) % self.p
        return sum(c * self.p**i for i, c in enumerate(value))

    def meta(self):
        data = super().meta()
        data.update({"p": self.p, "k": self.k, "modulus_poly": self.modulus_poly})
        return data


def _wrap(literal: str) -> str:
    return literal if literal.isdigit() else f"({literal})"


def _unwrap(text: str) -> str:
    text = text.strip()
    if text.startswith("(") and text.endswith(")"):
        return text[1:-1]
    return text


def split_top_level(text: str, sep: str = ",") -> List[str]:
    """Split text on a separator outside brackets and parentheses."""
    parts: List[str] = []
    depth = 0
    start = 0
    for i, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == sep and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    parts.append(text[start:])
    return parts


class MatrixRing(FiniteRing):
    """The ring of n x n matrices over a finite field."""

    structure_tag = "matrix"

    def __init__(self, n: int, base: FiniteRing):
        self.n = n
        self.base = base
        self.q = base.order
        self._weights = [self.q ** (n * n - 1 - i) for i in range(n * n)]
        one_entries = [base.one if i == j else 0 for i in range(n) for j in range(n)]
        super().__init__(self.q ** (n * n), f"M({n},{base.name})", one=self._encode(one_entries))

    def _encode(self, entries: Sequence[int]) -> int:
        return sum(e * w for e, w in zip(entries, self._weights))

    def encode(self, entries: Sequence[int]) -> int:
        """Encode a flat row-major entry sequence."""
        return self._encode(entries)

    def decode(self, code: int) -> Tuple[int, ...]:
        """Decode into a flat row-major entry tuple."""
        q = self.q
        digits = []
        for _ in range(self.n * self.n):
            code, d = divmod(code, q)
            digits.append(d)
        return tuple(reversed(digits))

    def to_rows(self, code: int) -> List[List[int]]:
        entries = self.decode(code)
        n = self.n
        return [list(entries[i * n:(i + 1) * n]) for i in range(n)]

    def from_rows(self, rows: Sequence[Sequence[int]]) -> int:
        return self._encode([e for row in rows for e in row])

    def _add(self, a: int, b: int) -> int:
        B = self.base
        return self._encode([B.add(x, y) for x, y in zip(self.decode(a), self.decode(b))])

    def _neg(self, a: int) -> int:
        return self._encode([self.base.neg(x) for x in self.decode(a)])

    def _mul(self, a: int, b: int) -> int:
        B = self.base
        n = self.n
        x = self.decode(a)
        y = self.decode(b)
        out = []
        for i in range(n):
            for j in range(n):
                acc = 0
                for k in range(n):
                    acc = B.add(acc, B.mul(x[i * n + k], y[k * n + j]))
                out.append(acc)
        return self._encode(out)

    def digit_array(self) -> np.ndarray:
        """Entries of every element, shape (order, n*n)."""

        def build():
            codes = np.arange(self.order, dtype=np.int64)
            return np.stack([(codes // w) % self.q for w in self._weights], axis=1)

        return self._cached("digits", build)

    def _build_arrays(self):
        if not self.base.has_tables():
            return super()._build_arrays()
        bt = self.base.tables()
        n = self.n
        E = self.digit_array()
        weights = np.array(self._weights, dtype=np.int64)
        add = np.zeros((self.order, self.order), dtype=np.int64)
        mul = np.zeros((self.order, self.order), dtype=np.int64)
        for idx in range(n * n):
            add += bt.add[E[:, None, idx], E[None, :, idx]] * weights[idx]
        for i in range(n):
            for j in range(n):
                acc = np.zeros((self.order, self.order), dtype=np.int64)
                for k in range(n):
                    acc = bt.add[acc, bt.mul[E[:, None, i * n + k], E[None, :, k * n + j]]]
                mul += acc * weights[i * n + j]
        neg = (bt.neg[E] * weights).sum(axis=1)
        return add, mul, neg

    def literal(self, x: int) -> str:
        rows = self.to_rows(x)
        return "[" + ",".join("[" + ",".join(self.base.literal(e) for e in row) + "]" for row in rows) + "]"

    def parse(self, text: str) -> int:
        text = text.replace(" ", "")
        if not (text.startswith("[") and text.endswith("]")):
            raise ValueError(f"{text!r} is not a matrix literal")
        rows = split_top_level(text[1:-1])
        if len(rows) != self.n:
            raise ValueError(f"{text!r} does not have {self.n} rows")
        entries = []
        for row in rows:
            if not (row.startswith("[") and row.endswith("]")):
                raise ValueError(f"{row!r} is not a matrix row")
            cells = split_top_level(row[1:-1])
            if len(cells) != self.n:
                raise ValueError(f"{row!r} does not have {self.n} entries")
            entries.extend(self.base.parse(_unwrap(c)) for c in cells)
        return self._encode(entries)

    def meta(self):
        data = super().meta()
        data.update({"n": self.n, "base": self.base.meta()})
        return data


class DualRing(FiniteRing):
    """Dual numbers K[e] with e^2 = 0, encoded as a + b*q."""

    structure_tag = "dual"

    def __init__(self, base: FiniteRing):
        self.base = base
        self.q = base.order
        super().__init__(self.q * self.q, f"dual({base.name})", one=base.one)

    def parts(self, x: int) -> Tuple[int, int]:
        b, a = divmod(x, self.q)
        return a, b

    def make(self, a: int, b: int) -> int:
        return a + b * self.q

    def _add(self, x: int, y: int) -> int:
        B = self.base
        a1, b1 = self.parts(x)
        a2, b2 = self.parts(y)
        return self.make(B.add(a1, a2), B.add(b1, b2))

    def _neg(self, x: int) -> int:
        a, b = self.parts(x)
        return self.make(self.base.neg(a), self.base.neg(b))

    def _mul(self, x: int, y: int) -> int:
        B = self.base
        a1, b1 = self.parts(x)
        a2, b2 = self.parts(y)
        return self.make(B.mul(a1, a2), B.add(B.mul(a1, b2), B.mul(b1, a2)))

    def _build_arrays(self):
        if not self.base.has_tables():
            return super()._build_arrays()
        bt = self.base.tables()
        codes = np.arange(self.order, dtype=np.int64)
        A = codes % self.q
        B = codes // self.q
        add = bt.add[A[:, None], A[None, :]] + self.q * bt.add[B[:, None], B[None, :]]
        eps = bt.add[bt.mul[A[:, None], B[None, :]], bt.mul[B[:, None], A[None, :]]]
        mul = bt.mul[A[:, None], A[None, :]] + self.q * eps
        neg = bt.neg[A] + self.q * bt.neg[B]
        return add, mul, neg

    def literal(self, x: int) -> str:
        a, b = self.parts(x)
        if b == 0:
            return self.base.literal(a)
        eps = "e" if b == self.base.one else _wrap(self.base.literal(b)) + "e"
        if a == 0:
            return eps
        return f"{_wrap(self.base.literal(a))}+{eps}"

    def parse(self, text: str) -> int:
        text = text.replace(" ", "")
        a = b = 0
        for term in split_top_level(text, "+"):
            if not term:
                raise ValueError(f"{text!r} is not a dual number literal")
            if term.endswith("e"):
                coef = term[:-1]
                b = self.base.add(b, self.base.one if coef == "" else self.base.parse(_unwrap(coef)))
            else:
                a = self.base.add(a, self.base.parse(_unwrap(term)))
        return self.make(a, b)

    def meta(self):
        data = super().meta()
        data["base"] = self.base.meta()
        return data


class ProductRing(FiniteRing):
    """Direct product of rings, encoded in mixed radix."""

    structure_tag = "product"

    def __init__(self, factors: Sequence[FiniteRing]):
        self.factors: Tuple[FiniteRing, ...] = tuple(factors)
        self.sizes = [f.order for f in self.factors]
        self.weights = [math.prod(self.sizes[i + 1:]) for i in range(len(self.sizes))]
        order = math.prod(self.sizes)
        name = " x ".join(f.name for f in self.factors)
        super().__init__(order, name, one=self.compose([f.one for f in self.factors]))

    def decompose(self, x: int) -> Tuple[int, ...]:
        """Split an element into its components."""
        return tuple((x // w) % s for w, s in zip(self.weights, self.sizes))

    def compose(self, parts: Sequence[int]) -> int:
        """Join components into an element."""
        return sum(p * w for p, w in zip(parts, self.weights))

    def project(self, x: int, i: int) -> int:
        return (x // self.weights[i]) % self.sizes[i]

    def inject(self, xi: int, i: int) -> int:
        return xi * self.weights[i]

    def _add(self, x: int, y: int) -> int:
        return self.compose([f.add(a, b) for f, a, b in zip(self.factors, self.decompose(x), self.decompose(y))])

    def _neg(self, x: int) -> int:
        return self.compose([f.neg(a) for f, a in zip(self.factors, self.decompose(x))])

    def _mul(self, x: int, y: int) -> int:
        return self.compose([f.mul(a, b) for f, a, b in zip(self.factors, self.decompose(x), self.decompose(y))])

    def digit_array(self) -> np.ndarray:
        def build():
            codes = np.arange(self.order, dtype=np.int64)
            return np.stack([(codes // w) % s for w, s in zip(self.weights, self.sizes)], axis=1)

        return self._cached("digits", build)

    def _build_arrays(self):
        if not all(f.has_tables() for f in self.factors):
            return super()._build_arrays()
        D = self.digit_array()
        add = np.zeros((self.order, self.order), dtype=np.int64)
        mul = np.zeros((self.order, self.order), dtype=np.int64)
        neg = np.zeros(self.order, dtype=np.int64)
        for i, (f, w) in enumerate(zip(self.factors, self.weights)):
            ft = f.tables()
            add += ft.add[D[:, None, i], D[None, :, i]] * w
            mul += ft.mul[D[:, None, i], D[None, :, i]] * w
            neg += ft.neg[D[:, i]] * w
        return add, mul, neg

    def _compute_unit_inverses(self) -> Dict[int, int]:
        per_factor = [f.unit_inverses() for f in self.factors]
        result: Dict[int, int] = {}

        def walk(i: int, parts: List[int], invs: List[int]) -> None:
            if i == len(per_factor):
                result[self.compose(parts)] = self.compose(invs)
                return
            for u, v in per_factor[i].items():
                walk(i + 1, parts + [u], invs + [v])

        walk(0, [], [])
        return result

    def literal(self, x: int) -> str:
        return "(" + ", ".join(f.literal(a) for f, a in zip(self.factors, self.decompose(x))) + ")"

    def parse(self, text: str) -> int:
        text = text.strip()
        if not (text.startswith("(") and text.endswith(")")):
            raise ValueError(f"{text!r} is not a tuple literal")
        parts = split_top_level(text[1:-1])
        if len(parts) != len(self.factors):
            raise ValueError(f"{text!r} does not have {len(self.factors)} components")
        return self.compose([f.parse(p.strip()) for f, p in zip(self.factors, parts)])

    def meta(self):
        data = super().meta()
        data["factors"] = [f.meta() for f in self.factors]
        return data


class TableRing(FiniteRing):
    """A ring given directly by its addition and multiplication tables."""

    structure_tag = "table"

    def __init__(self, add: np.ndarray, mul: np.ndarray, one: int, name: str, tag: str = "table"):
        add = np.asarray(add, dtype=np.int64)
        mul = np.asarray(mul, dtype=np.int64)
        super().__init__(add.shape[0], name, one=one)
        self.structure_tag = tag
        neg = np.argmax(add == 0, axis=1)
        self._given = RingTables.from_arrays(add, mul, neg)

    def has_tables(self) -> bool:
        return True

    def _build_arrays(self):
        return self._given.add, self._given.mul, self._given.neg

    def _add(self, a: int, b: int) -> int:
        return self._given.add_rows[a][b]

    def _neg(self, a: int) -> int:
        return self._given.neg_list[a]

    def _mul(self, a: int, b: int) -> int:
        return self._given.mul_rows[a][b]


# Constructors

def make_zmod(n: int) -> ZModRing:
    """Construct Z/n for n >= 2.

    Raises:
        RingConstructionError: If n < 2.
    """
    if n < 2:
        raise RingConstructionError(f"Z/n needs n >= 2, got {n}")
    return ZModRing(n)


def make_gf(p: int, k: int = 1) -> GFRing:
    """Construct GF(p^k) using the least monic irreducible modulus.

    Raises:
        RingConstructionError: If p is not prime or k < 1.
    """
    if not galois.is_prime(p):
        raise RingConstructionError(f"GF(p^k) needs a prime p, got {p}")
    if k < 1:
        raise RingConstructionError(f"GF(p^k) needs k >= 1, got {k}")
    if p**k > get_config().ring_order_cap:
        raise RingConstructionError(f"GF({p}^{k}) exceeds the order cap")
    return GFRing(p, k)


def make_matrix_ring(n: int, base: FiniteRing) -> MatrixRing:
    """Construct M_n(base) over a finite field.

    Raises:
        RingConstructionError: If n < 1 or base is not a field.
    """
    if n < 1:
        raise RingConstructionError(f"matrix size must be >= 1, got {n}")
    if not is_field(base):
        raise RingConstructionError(f"{base.name} is not a field")
    if base.order ** (n * n) > get_config().ring_order_cap:
        raise RingConstructionError(f"M({n},{base.name}) exceeds the order cap")
    return MatrixRing(n, base)


def make_dual_numbers(base: FiniteRing) -> DualRing:
    """Construct the dual numbers over a field.

    Raises:
        RingConstructionError: If base is not a field.
    """
    if not is_field(base):
        raise RingConstructionError(f"{base.name} is not a field")
    return DualRing(base)


def make_product(factors: Sequence[FiniteRing]) -> ProductRing:
    """Construct the direct product of a nonempty list of rings.

    Raises:
        RingConstructionError: If the list is empty.
    """
    if not factors:
        raise RingConstructionError("a product needs at least one factor")
    if math.prod(f.order for f in factors) > get_config().ring_order_cap:
        raise RingConstructionError("product exceeds the order cap")
    return ProductRing(factors)


# Units

def units(R: FiniteRing) -> Tuple[int, ...]:
    """Return the units of R in encoding order."""
    return R.units()


def is_unit(R: FiniteRing, a: int) -> bool:
    return a in R.unit_inverses()


def inverse(R: FiniteRing, a: int) -> int:
    """Two-sided inverse of a unit.

    Raises:
        NotInvertibleError: If a is not a unit.
    """
    try:
        return R.unit_inverses()[a]
    except KeyError:
        raise NotInvertibleError(f"{R.literal(a)} is not a unit of {R.name}") from None


def is_field(R: FiniteRing) -> bool:
    if isinstance(R, GFRing):
        return True
    if isinstance(R, ZModRing):
        return bool(galois.is_prime(R.n))
    return len(R.unit_inverses()) == R.order - 1


def _generated_group_closure(R: FiniteRing, generators: Sequence[int]) -> set:
    seen = {R.one}
    frontier = [R.one]
    while frontier:
        nxt = []
        for x in frontier:
            for g in generators:
                y = R.mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def unit_group_generators(R: FiniteRing) -> Tuple[int, ...]:
    """Greedy generating set of the unit group."""

    def build():
        all_units = R.units()
        gens: List[int] = []
        span = {R.one}
        for u in all_units:
            if u not in span:
                gens.append(u)
                span = _generated_group_closure(R, gens)
            if len(span) == len(all_units):
                break
        return tuple(gens)

    return R._cached("unit_generators", build)


def additive_generators(R: FiniteRing) -> Tuple[int, ...]:
    """Greedy generating set of (R, +), starting with 1."""

    def build():
        gens: List[int] = []
        span = {R.zero}
        for x in [R.one] + [y for y in R.elements() if y != R.one]:
            if x in span:
                continue
            gens.append(x)
            new_span = set(span)
            multiple = x
            while multiple != R.zero:
                new_span.update(R.add(s, multiple) for s in span)
                multiple = R.add(multiple, x)
            span = new_span
            if len(span) == R.order:
                break
        return tuple(gens)

    return R._cached("additive_generators", build)


# Ideals and the radical

@dataclass(frozen=True)
class Ideal:
    """A two-sided ideal, held as its member set."""

    ring: FiniteRing = field(compare=False, repr=False)
    members: FrozenSet[int]

    def __contains__(self, x: int) -> bool:
        return x in self.members

    def __len__(self) -> int:
        return len(self.members)

    def sorted(self) -> List[int]:
        return sorted(self.members)


def is_two_sided_ideal(R: FiniteRing, members: FrozenSet[int]) -> bool:
    """Check additive closure and two-sided absorption."""
    if R.zero not in members:
        return False
    for x in members:
        for y in members:
            if R.sub(x, y) not in members:
                return False
        for r in R.elements():
            if R.mul(r, x) not in members or R.mul(x, r) not in members:
                return False
    return True


def jacobson_radical(R: FiniteRing) -> Ideal:
    """rad R = {x : 1 - r x is a unit for all r}."""

    def build() -> Ideal:
        inverses = R.unit_inverses()
        if R.has_tables():
            t = R.tables()
            unit_mask = np.zeros(R.order, dtype=bool)
            unit_mask[list(inverses)] = True
            one_minus = t.add[R.one, t.neg[t.mul]]
            members = np.flatnonzero(unit_mask[one_minus].all(axis=0))
            return Ideal(R, frozenset(int(x) for x in members))
        members = []
        for x in R.elements():
            if all(R.sub(R.one, R.mul(r, x)) in inverses for r in R.elements()):
                members.append(x)
        return Ideal(R, frozenset(members))

    return R._cached("radical", build)


def is_semisimple(R: FiniteRing) -> bool:
    return len(jacobson_radical(R)) == 1


def is_local(R: FiniteRing) -> bool:
    """A finite ring is local iff its non-units are exactly its radical."""
    non_units = set(R.elements()) - set(R.unit_inverses())
    return non_units == set(jacobson_radical(R).members)


# Ring maps

class MapKind(Enum):
    """Strongest class of identities a ring map satisfies."""

    HOMOMORPHISM = auto()
    ANTI_HOMOMORPHISM = auto()
    JORDAN = auto()
    ADDITIVE = auto()
    NONE = auto()


@dataclass(frozen=True)
class RingMapTable:
    """A map between rings given by its table on encodings."""

    source: FiniteRing = field(repr=False)
    target: FiniteRing = field(repr=False)
    table: Tuple[int, ...]
    kind: MapKind
    also_anti: bool = False

    def __call__(self, x: int) -> int:
        return self.table[x]

    def is_bijective(self) -> bool:
        return self.source.order == self.target.order and len(set(self.table)) == self.source.order

    @property
    def is_jordan(self) -> bool:
        return self.kind in (MapKind.HOMOMORPHISM, MapKind.ANTI_HOMOMORPHISM, MapKind.JORDAN)


def classify_map(src: FiniteRing, dst: FiniteRing, table: Sequence[int]) -> RingMapTable:
    """Assign the strongest kind whose identities the table satisfies.

    Args:
        src: Source ring.
        dst: Target ring.
        table: Image of every source encoding.

    Returns:
        RingMapTable with kind and the anti flag for maps that are both
        homomorphisms and anti-homomorphisms.
    """
    table = tuple(int(x) for x in table)
    if len(table) != src.order or any(not 0 <= x < dst.order for x in table):
        raise ValueError("map table is not a total function into the target")

    if src.has_tables() and dst.has_tables():
        flags = _classify_vectorized(src, dst, np.array(table, dtype=np.int64))
    else:
        flags = _classify_loops(src, dst, table)
    additive, unital, multiplicative, anti, jordan = flags

    if not additive:
        kind = MapKind.NONE
    elif not unital:
        kind = MapKind.ADDITIVE
    elif multiplicative:
        kind = MapKind.HOMOMORPHISM
    elif anti:
        kind = MapKind.ANTI_HOMOMORPHISM
    elif jordan:
        kind = MapKind.JORDAN
    else:
        kind = MapKind.ADDITIVE
    return RingMapTable(src, dst, table, kind, also_anti=bool(kind == MapKind.HOMOMORPHISM and anti))


def _classify_vectorized(src, dst, t):
    S = src.tables()
    D = dst.tables()
    additive = bool(np.array_equal(t[S.add], D.add[t[:, None], t[None, :]]))
    unital = int(t[src.one]) == dst.one
    image_products = D.mul[t[:, None], t[None, :]]
    multiplicative = bool(np.array_equal(t[S.mul], image_products))
    anti = bool(np.array_equal(t[S.mul], image_products.T))
    x = np.arange(src.order)
    aba = S.mul[S.mul, x[:, None]]
    image_aba = D.mul[image_products, t[:, None]]
    jordan = bool(np.array_equal(t[aba], image_aba))
    return additive, unital, multiplicative, anti, jordan


def _classify_loops(src, dst, t):
    elements = list(src.elements())
    additive = multiplicative = anti = jordan = True
    for a in elements:
        for b in elements:
            if additive and t[src.add(a, b)] != dst.add(t[a], t[b]):
                additive = False
            ab = src.mul(a, b)
            if multiplicative and t[ab] != dst.mul(t[a], t[b]):
                multiplicative = False
            if anti and t[ab] != dst.mul(t[b], t[a]):
                anti = False
            if jordan and t[src.mul(ab, a)] != dst.mul(dst.mul(t[a], t[b]), t[a]):
                jordan = False
    return additive, t[src.one] == dst.one, multiplicative, anti, jordan


def identity_ring_map(R: FiniteRing) -> RingMapTable:
    return RingMapTable(R, R, tuple(R.elements()), MapKind.HOMOMORPHISM, also_anti=_is_commutative(R))


def _is_commutative(R: FiniteRing) -> bool:
    if R.has_tables():
        mul = R.tables().mul
        return bool(np.array_equal(mul, mul.T))
    return all(R.mul(a, b) == R.mul(b, a) for a in R.elements() for b in R.elements())


def is_commutative(R: FiniteRing) -> bool:
    return R._cached("commutative", lambda: _is_commutative(R))


def compose_maps(first: RingMapTable, second: RingMapTable) -> RingMapTable:
    """Apply ``first`` then ``second``."""
    if first.target is not second.source:
        raise ValueError("ring maps are not composable")
    return classify_map(first.source, second.target, [second.table[x] for x in first.table])


def inverse_map(f: RingMapTable) -> RingMapTable:
    """Inverse of a bijective ring map.

    Raises:
        NotInvertibleError: If the map is not bijective.
    """
    if not f.is_bijective():
        raise NotInvertibleError("ring map is not bijective")
    table = [0] * f.source.order
    for x, y in enumerate(f.table):
        table[y] = x
    return classify_map(f.target, f.source, table)


def transpose_map(R: MatrixRing) -> RingMapTable:
    """The transpose anti-automorphism of a matrix ring."""
    if not isinstance(R, MatrixRing):
        raise UnsupportedRingError(f"{R.name} is not a matrix ring")
    n = R.n
    perm = [j * n + i for i in range(n) for j in range(n)]
    table = [R.encode([R.decode(x)[k] for k in perm]) for x in R.elements()]
    return classify_map(R, R, table)


def entrywise_map(R: MatrixRing, beta: RingMapTable) -> RingMapTable:
    """Apply a field automorphism to every entry of a matrix."""
    if not isinstance(R, MatrixRing) or beta.source is not R.base:
        raise UnsupportedRingError("entrywise maps need a matrix ring and a map of its base field")
    table = [R.encode([beta.table[e] for e in R.decode(x)]) for x in R.elements()]
    return classify_map(R, R, table)


def field_automorphisms(K: FiniteRing) -> List[RingMapTable]:
    """Frobenius powers x -> x^(p^i), i = 0..k-1, of a prime-power field."""

    def build():
        if isinstance(K, GFRing):
            x = K.galois_field.elements
            maps = []
            for i in range(K.k):
                table = (x ** (K.p**i)).view(np.ndarray).tolist()
                maps.append(RingMapTable(K, K, tuple(int(v) for v in table), MapKind.HOMOMORPHISM, also_anti=True))
            return maps
        if isinstance(K, ZModRing) and is_field(K):
            return [identity_ring_map(K)]
        raise UnsupportedRingError(f"field automorphisms of {K.name} are not supported")

    return K._cached("field_automorphisms", build)


# Quotients and reductions

def quotient(R: FiniteRing, I: Ideal) -> Tuple[TableRing, RingMapTable]:
    """Coset ring R/I with its canonical epimorphism.

    Cosets are indexed in the order of their least member.

    Raises:
        RingConstructionError: If I is not a two-sided ideal of R.
    """
    if not is_two_sided_ideal(R, I.members):
        raise RingConstructionError("quotient needs a two-sided ideal")
    members = sorted(I.members)
    rep_of = [min(R.add(x, i) for i in members) for x in R.elements()]
    reps = sorted(set(rep_of))
    index = {r: k for k, r in enumerate(reps)}
    pi = [index[r] for r in rep_of]
    m = len(reps)
    add = np.empty((m, m), dtype=np.int64)
    mul = np.empty((m, m), dtype=np.int64)
    for i, a in enumerate(reps):
        for j, b in enumerate(reps):
            add[i, j] = pi[R.add(a, b)]
            mul[i, j] = pi[R.mul(a, b)]
    Q = TableRing(add, mul, one=pi[R.one], name=f"{R.name}/I{len(members)}", tag="quotient")
    return Q, RingMapTable(R, Q, tuple(pi), MapKind.HOMOMORPHISM, also_anti=is_commutative(R))


def reduce_ring(R: FiniteRing) -> Tuple[FiniteRing, RingMapTable]:
    """R/rad R with the canonical epimorphism.

    Semisimple rings reduce to themselves; products reduce componentwise.
    """

    def build():
        if is_semisimple(R):
            return R, identity_ring_map(R)
        if isinstance(R, ProductRing):
            reduced = [reduce_ring(f) for f in R.factors]
            P = make_product([r for r, _ in reduced])
            table = [
                P.compose([pi.table[c] for (_, pi), c in zip(reduced, R.decompose(x))])
                for x in R.elements()
            ]
            return P, RingMapTable(R, P, tuple(table), MapKind.HOMOMORPHISM)
        Q, pi = quotient(R, jacobson_radical(R))
        return Q, pi

    return R._cached("reduction", build)


# Central decomposition and field identification

def central_idempotents(R: FiniteRing) -> List[int]:
    """All central idempotents of R in encoding order."""
    t = R.tables()
    center = np.flatnonzero((t.mul == t.mul.T).all(axis=1))
    return [int(e) for e in center if t.mul_rows[e][e] == e]


@dataclass(frozen=True)
class CentralDecomposition:
    """R split along its primitive central idempotents."""

    ring: FiniteRing = field(repr=False)
    idempotents: Tuple[int, ...]
    corners: Tuple[FiniteRing, ...]
    product: ProductRing
    iso: RingMapTable


def central_decomposition(R: FiniteRing) -> CentralDecomposition:
    """Peirce decomposition of R into indecomposable corner rings eR."""

    def build():
        central = central_idempotents(R)
        nonzero = [e for e in central if e != R.zero]
        primitive = [
            e for e in nonzero
            if not any(f != e and R.mul(f, e) == f for f in nonzero)
        ]
        total = R.zero
        for e in primitive:
            total = R.add(total, e)
        if total != R.one:
            raise TheoremViolationError("primitive central idempotents do not sum to 1")

        corners: List[FiniteRing] = []
        corner_index: List[Dict[int, int]] = []
        if len(primitive) == 1:
            corners.append(R)
            corner_index.append({x: x for x in R.elements()})
        else:
            for e in primitive:
                members = sorted({R.mul(e, x) for x in R.elements()})
                idx = {x: k for k, x in enumerate(members)}
                m = len(members)
                add = np.empty((m, m), dtype=np.int64)
                mul = np.empty((m, m), dtype=np.int64)
                for i, a in enumerate(members):
                    for j, b in enumerate(members):
                        add[i, j] = idx[R.add(a, b)]
                        mul[i, j] = idx[R.mul(a, b)]
                corners.append(TableRing(add, mul, one=idx[e], name=f"{R.name}e{e}", tag="corner"))
                corner_index.append(idx)

        P = make_product(corners)
        table = [
            P.compose([ci[R.mul(e, x)] if len(primitive) > 1 else x for e, ci in zip(primitive, corner_index)])
            for x in R.elements()
        ]
        iso = classify_map(R, P, table)
        if iso.kind != MapKind.HOMOMORPHISM or not iso.is_bijective():
            raise TheoremViolationError(f"central decomposition of {R.name} is not a ring isomorphism")
        return CentralDecomposition(R, tuple(primitive), tuple(corners), P, iso)

    return R._cached("central_decomposition", build)


def characteristic(R: FiniteRing) -> int:
    k = 1
    acc = R.one
    while acc != R.zero:
        acc = R.add(acc, R.one)
        k += 1
    return k


def field_isomorphism(R: FiniteRing) -> RingMapTable:
    """Isomorphism from a field given by tables onto the canonical GF(p^k).

    Raises:
        UnsupportedRingError: If R is not a field.
    """
    if not is_field(R):
        raise UnsupportedRingError(f"{R.name} is not a field")
    p = characteristic(R)
    k = round(math.log(R.order, p))
    K = make_gf(p, k)
    coeffs = [int(c) for c in K.galois_field.irreducible_poly.coeffs]
    scalars = [R.scalar(c) for c in range(p)]

    def evaluate(theta: int) -> int:
        acc = R.zero
        for c in coeffs:
            acc = R.add(R.mul(acc, theta), scalars[c])
        return acc

    theta = next(x for x in R.elements() if evaluate(x) == R.zero)
    powers = [R.one]
    for _ in range(1, k):
        powers.append(R.mul(powers[-1], theta))

    table = [0] * R.order
    for code in range(R.order):
        digits = [(code // p**i) % p for i in range(k)]
        x = R.zero
        for d, power in zip(digits, powers):
            x = R.add(x, R.mul(scalars[d], power))
        table[x] = code
    iso = classify_map(R, K, table)
    if iso.kind != MapKind.HOMOMORPHISM or not iso.is_bijective():
        raise TheoremViolationError(f"no field isomorphism {R.name} -> {K.name}")
    return iso


def regular_representation(R: DualRing) -> RingMapTable:
    """Right regular representation K[e] -> End_K(K[e]) = M_2(K).

    a0 + a1 e acts on row vectors (x0, x1) over the basis (1, e) by
    right multiplication, giving the matrix [[a0, a1], [0, a0]].
    """
    if not isinstance(R, DualRing):
        raise UnsupportedRingError(f"{R.name} is not a ring of dual numbers")
    M = make_matrix_ring(2, R.base)
    table = []
    for x in R.elements():
        a0, a1 = R.parts(x)
        table.append(M.encode([a0, a1, 0, a0]))
    return classify_map(R, M, table)


# Checks and metadata

def check_ring_axioms(R: FiniteRing, samples: int = 10_000, seed: int = 0) -> bool:
    """Check the ring axioms exhaustively for order <= 64, else on random triples."""
    if R.one == R.zero:
        return False
    rng = np.random.default_rng(seed)
    if R.order <= 64:
        triples = ((a, b, c) for a in R.elements() for b in R.elements() for c in R.elements())
    else:
        draws = rng.integers(0, R.order, size=(samples, 3))
        triples = (tuple(int(v) for v in row) for row in draws)
    add, mul = R.add, R.mul
    for a, b, c in triples:
        if add(add(a, b), c) != add(a, add(b, c)):
            return False
        if add(a, b) != add(b, a):
            return False
        if mul(mul(a, b), c) != mul(a, mul(b, c)):
            return False
        if mul(a, add(b, c)) != add(mul(a, b), mul(a, c)):
            return False
        if mul(add(a, b), c) != add(mul(a, c), mul(b, c)):
            return False
        if mul(R.one, a) != a or mul(a, R.one) != a or add(a, R.neg(a)) != R.zero:
            return False
    return True


def ring_meta(R: FiniteRing) -> Dict[str, object]:
    """JSON-ready description of a ring."""
    return R.meta()


def element_literal(R: FiniteRing, x: int) -> str:
    return R.literal(x)


def parse_element(R: FiniteRing, text: str) -> int:
    """Parse a constructor-syntax literal such as "[[1,0],[1,1]]" or "1+e"."""
    return R.parse(text)
