"""Ring specification parsing.

Grammar (whitespace-insensitive)::

    expr := atom { "x" atom }
    atom := "Z" n | "GF(" p ["^" k] ")" | "M(" n "," atom ")" | "dual(" atom ")"
"""

import regex as re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from distantline.core.errors import RingConstructionError, SpecParameterError, SpecSyntaxError
from distantline.core.rings import (
    FiniteRing,
    make_dual_numbers,
    make_gf,
    make_matrix_ring,
    make_product,
    make_zmod,
)

TOKEN_PATTERN = re.compile(
    r'(?P<ws>\s+)|(?P<num>\d+)|(?P<name>GF|dual|Z|M)|(?P<times>x)|(?P<punct>[(),^])'
)


@dataclass(frozen=True)
class RingSpec:
    """A node of the ring constructor tree.

    ``kind`` is one of "zmod", "gf", "matrix", "dual", "product".
    """

    kind: str
    args: Tuple[int, ...] = ()
    children: Tuple["RingSpec", ...] = ()
    offset: int = field(default=0, compare=False)

    def pretty(self) -> str:
        if self.kind == "zmod":
            return f"Z{self.args[0]}"
        if self.kind == "gf":
            p, k = self.args
            return f"GF({p})" if k == 1 else f"GF({p}^{k})"
        if self.kind == "matrix":
            return f"M({self.args[0]}, {self.children[0].pretty()})"
        if self.kind == "dual":
            return f"dual({self.children[0].pretty()})"
        return " x ".join(c.pretty() for c in self.children)

    def __str__(self) -> str:
        return self.pretty()


@dataclass
class _Token:
    kind: str
    text: str
    offset: int


def _tokenize(text: str) -> List[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = TOKEN_PATTERN.match(text, pos)
        if match is None:
            raise SpecSyntaxError(f"unexpected character {text[pos]!r}", _byte_offset(text, pos))
        if match.lastgroup != "ws":
            tokens.append(_Token(match.lastgroup, match.group(), _byte_offset(text, pos)))
        pos = match.end()
    tokens.append(_Token("end", "", _byte_offset(text, len(text))))
    return tokens


def _byte_offset(text: str, pos: int) -> int:
    return len(text[:pos].encode("utf-8"))


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    @property
    def current(self) -> _Token:
        return self.tokens[self.pos]

    def expect(self, kind: str, text: Optional[str] = None) -> _Token:
        token = self.current
        if token.kind != kind or (text is not None and token.text != text):
            wanted = repr(text) if text is not None else kind
            found = repr(token.text) if token.text else "end of input"
            raise SpecSyntaxError(f"expected {wanted}, found {found}", token.offset)
        self.pos += 1
        return token

    def number(self) -> int:
        return int(self.expect("num").text)

    def expr(self) -> RingSpec:
        start = self.current.offset
        factors = [self.atom()]
        while self.current.kind == "times":
            self.pos += 1
            factors.append(self.atom())
        if len(factors) == 1:
            return factors[0]
        return RingSpec("product", children=tuple(factors), offset=start)

    def atom(self) -> RingSpec:
        token = self.current
        if token.kind != "name":
            found = repr(token.text) if token.text else "end of input"
            raise SpecSyntaxError(f"expected a ring, found {found}", token.offset)
        self.pos += 1
        if token.text == "Z":
            return RingSpec("zmod", (self.number(),), offset=token.offset)
        self.expect("punct", "(")
        if token.text == "GF":
            p = self.number()
            k = 1
            if self.current.text == "^":
                self.pos += 1
                k = self.number()
            self.expect("punct", ")")
            return RingSpec("gf", (p, k), offset=token.offset)
        if token.text == "M":
            n = self.number()
            self.expect("punct", ",")
            base = self.atom()
            self.expect("punct", ")")
            return RingSpec("matrix", (n,), (base,), offset=token.offset)
        base = self.atom()
        self.expect("punct", ")")
        return RingSpec("dual", children=(base,), offset=token.offset)


def parse_ring_spec(text: str) -> RingSpec:
    """Parse a ring specification such as ``M(2,GF(2)) x Z4``.

    Raises:
        SpecSyntaxError: With the byte offset of the offending token.
    """
    parser = _Parser(text)
    spec = parser.expr()
    parser.expect("end")
    return spec


def build_ring(spec: RingSpec, _memo: Optional[Dict[str, FiniteRing]] = None) -> FiniteRing:
    """Construct the ring a spec describes.

    Equal subexpressions share one ring object, so factor lines of
    ``M(2,GF(2)) x M(2,GF(2))`` are literally the same line.

    Raises:
        SpecParameterError: For unsupported parameters (non-prime p, order
            cap), at the offset of the constructor that refused them.
    """
    memo = {} if _memo is None else _memo
    key = spec.pretty()
    if key in memo:
        return memo[key]
    children = [build_ring(c, memo) for c in spec.children]
    try:
        if spec.kind == "zmod":
            ring = make_zmod(spec.args[0])
        elif spec.kind == "gf":
            ring = make_gf(*spec.args)
        elif spec.kind == "matrix":
            ring = make_matrix_ring(spec.args[0], children[0])
        elif spec.kind == "dual":
            ring = make_dual_numbers(children[0])
        else:
            ring = make_product(children)
    except RingConstructionError as e:
        raise SpecParameterError(str(e), spec.offset) from e
    memo[key] = ring
    return ring


def parse_ring(text: str) -> FiniteRing:
    return build_ring(parse_ring_spec(text))
