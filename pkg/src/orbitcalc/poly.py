"""Exact multivariate polynomial arithmetic over the rationals.

Polynomials live in a fixed :class:`Ring` with three banks of variables:
``x1..x_nx`` (torus weights of the ambient group), ``y1..y_ny`` (weights of
the symmetric subgroup / bundle roots), and ``z1..z_nz`` (Chern-class
variables).  Coefficients are :class:`fractions.Fraction`, so every
computation is exact.  The module provides the Weyl-group substitution
action, divided-difference operators for the four classical root types,
exact division, elementary symmetric polynomials, determinants, rewriting
of block-symmetric polynomials in terms of elementary symmetric generators,
and a factored-form container used for human-readable output.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence


class PolyError(ValueError):
    """Raised on invalid polynomial input or an impossible exact operation."""


# ---------------------------------------------------------------------------
# Ring
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Ring:
    """A polynomial ring with ``nx`` x-variables, ``ny`` y-variables and
    ``nz`` z-variables.  Exponent vectors are tuples of width nx+ny+nz."""

    nx: int
    ny: int
    nz: int = 0

    def __post_init__(self) -> None:
        if self.nx < 0 or self.ny < 0 or self.nz < 0:
            raise PolyError("variable counts must be non-negative")

    @property
    def width(self) -> int:
        return self.nx + self.ny + self.nz

    def var_name(self, index: int) -> str:
        if 0 <= index < self.nx:
            return f"x{index + 1}"
        if index < self.nx + self.ny:
            return f"y{index - self.nx + 1}"
        if index < self.width:
            return f"z{index - self.nx - self.ny + 1}"
        raise PolyError(f"variable index {index} out of range")

    def var_index(self, bank: str, i: int) -> int:
        """0-based exponent slot of x_i / y_i / z_i (1-based i)."""
        if bank == "x":
            if not 1 <= i <= self.nx:
                raise PolyError(f"x{i} not in ring with nx={self.nx}")
            return i - 1
        if bank == "y":
            if not 1 <= i <= self.ny:
                raise PolyError(f"y{i} not in ring with ny={self.ny}")
            return self.nx + i - 1
        if bank == "z":
            if not 1 <= i <= self.nz:
                raise PolyError(f"z{i} not in ring with nz={self.nz}")
            return self.nx + self.ny + i - 1
        raise PolyError(f"unknown variable bank {bank!r}")

    def monomial(self, exps: Mapping[int, int] | Sequence[int],
                 coeff: Fraction | int = 1) -> "Polynomial":
        if isinstance(exps, Mapping):
            vec = [0] * self.width
            for idx, e in exps.items():
                vec[idx] = e
            key = tuple(vec)
        else:
            key = tuple(exps)
            if len(key) != self.width:
                raise PolyError("exponent vector has wrong width")
        c = Fraction(coeff)
        if c == 0:
            return Polynomial(self, {})
        return Polynomial(self, {key: c})

    def var(self, bank: str, i: int) -> "Polynomial":
        return self.monomial({self.var_index(bank, i): 1})

    def x(self, i: int) -> "Polynomial":
        return self.var("x", i)

    def y(self, i: int) -> "Polynomial":
        return self.var("y", i)

    def z(self, i: int) -> "Polynomial":
        return self.var("z", i)

    def const(self, c: Fraction | int) -> "Polynomial":
        return self.monomial({}, Fraction(c))

    @property
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    @property
    def one(self) -> "Polynomial":
        return self.const(1)

    def to_json(self) -> dict:
        return {"nx": self.nx, "ny": self.ny, "nz": self.nz}

    @staticmethod
    def from_json(data: dict) -> "Ring":
        return Ring(int(data["nx"]), int(data["ny"]), int(data.get("nz", 0)))


# ---------------------------------------------------------------------------
# Polynomial
# ---------------------------------------------------------------------------


def _term_sort_key(item: tuple[tuple[int, ...], Fraction]):
    exps, _ = item
    return (-sum(exps), tuple(-e for e in exps))


class Polynomial:
    """Immutable sparse polynomial: mapping exponent-vector -> Fraction."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping[tuple[int, ...], Fraction]):
        clean = {}
        for exps, coeff in terms.items():
            c = Fraction(coeff)
            if c != 0:
                clean[tuple(exps)] = c
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *_):  # pragma: no cover
        raise AttributeError("Polynomial is immutable")

    # -- basic queries ------------------------------------------------------

    @property
    def terms(self) -> Mapping[tuple[int, ...], Fraction]:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise PolyError("polynomial is not constant")
        return next(iter(self._terms.values()), Fraction(0))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self._terms}
        return len(degs) <= 1

    def used_vars(self) -> frozenset[int]:
        used = set()
        for exps in self._terms:
            for idx, e in enumerate(exps):
                if e:
                    used.add(idx)
        return frozenset(used)

    def lead(self) -> tuple[tuple[int, ...], Fraction]:
        """Graded-lex leading term (highest degree, then lex-largest)."""
        if not self._terms:
            raise PolyError("zero polynomial has no leading term")
        exps = min(self._terms, key=lambda e: _term_sort_key((e, 0)))
        return exps, self._terms[exps]

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "Polynomial") -> None:
        if self.ring != other.ring:
            raise PolyError("polynomials from different rings")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        self._check(other)
        out = dict(self._terms)
        for exps, c in other._terms.items():
            s = out.get(exps, Fraction(0)) + c
            if s:
                out[exps] = s
            else:
                out.pop(exps, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if c == 0:
                return self.ring.zero
            return Polynomial(self.ring, {e: k * c for e, k in self._terms.items()})
        self._check(other)
        out: dict[tuple[int, ...], Fraction] = {}
        small, big = (self._terms, other._terms)
        if len(small) > len(big):
            small, big = big, small
        for e1, c1 in small.items():
            for e2, c2 in big.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(key, Fraction(0)) + c1 * c2
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise PolyError("negative power")
        result = self.ring.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.ring, frozenset(self._terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    # -- substitution -------------------------------------------------------

    def map_monomials(
        self, fn: Callable[[tuple[int, ...], Fraction], tuple[tuple[int, ...], Fraction]]
    ) -> "Polynomial":
        out: dict[tuple[int, ...], Fraction] = {}
        for exps, coeff in self._terms.items():
            key, c = fn(exps, coeff)
            s = out.get(key, Fraction(0)) + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return Polynomial(self.ring, out)

    def substitute(self, images: Mapping[int, "Polynomial"]) -> "Polynomial":
        """Substitute arbitrary polynomials for variables (by exponent slot)."""
        if not images:
            return self
        ring = self.ring
        cache: dict[tuple[int, int], Polynomial] = {}

        def power(idx: int, k: int) -> Polynomial:
            key = (idx, k)
            if key not in cache:
                cache[key] = images[idx] ** k
            return cache[key]

        total = ring.zero
        for exps, coeff in self._terms.items():
            untouched = list(exps)
            piece = ring.const(coeff)
            for idx, e in enumerate(exps):
                if e and idx in images:
                    untouched[idx] = 0
                    piece = piece * power(idx, e)
            if any(untouched):
                piece = piece * ring.monomial(tuple(untouched))
            total = total + piece
        return total

    def remap_vars(self, images: Mapping[int, tuple[int, int]]) -> "Polynomial":
        """Fast substitution var -> sign * var: images[idx] = (target_idx, sign)."""
        width = self.ring.width

        def fn(exps, coeff):
            vec = [0] * width
            sign = 1
            for idx, e in enumerate(exps):
                if not e:
                    continue
                if idx in images:
                    tgt, s = images[idx]
                    vec[tgt] += e
                    if s < 0 and e % 2:
                        sign = -sign
                else:
                    vec[idx] += e
            return tuple(vec), coeff * sign

        return self.map_monomials(fn)

    # -- display ------------------------------------------------------------

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return sorted(self._terms.items(), key=_term_sort_key)

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for exps, coeff in self.sorted_terms():
            body = term_text(self.ring, exps, abs(coeff))
            if not pieces:
                pieces.append(("-" if coeff < 0 else "") + body)
            else:
                pieces.append((" - " if coeff < 0 else " + ") + body)
        return "".join(pieces)

    def __repr__(self):  # pragma: no cover
        return f"Polynomial({self.to_text()!r})"

    # -- serialization ------------------------------------------------------

    def to_json(self) -> list:
        return [
            {"exps": list(exps), "num": c.numerator, "den": c.denominator}
            for exps, c in self.sorted_terms()
        ]

    @staticmethod
    def from_json(ring: Ring, data: Iterable[dict]) -> "Polynomial":
        terms = {}
        for row in data:
            exps = tuple(int(e) for e in row["exps"])
            terms[exps] = Fraction(int(row["num"]), int(row.get("den", 1)))
        return Polynomial(ring, terms)


def term_text(ring: Ring, exps: tuple[int, ...], coeff: Fraction) -> str:
    """Render one term with a non-negative coefficient, e.g. ``2*x1*y3^2``."""
    parts = []
    for idx, e in enumerate(exps):
        if e == 1:
            parts.append(ring.var_name(idx))
        elif e > 1:
            parts.append(f"{ring.var_name(idx)}^{e}")
    if not parts:
        return str(coeff)
    if coeff != 1:
        parts.insert(0, str(coeff))
    return "*".join(parts)


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:([xyz])(\d+)|(\d+)|([()+\-*/^]))")


def _tokenize(text: str) -> list[tuple[str, object]]:
    text = text.replace("−", "-").replace("·", "*")
    tokens: list[tuple[str, object]] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise PolyError(f"cannot tokenize polynomial at: {text[pos:]!r}")
            break
        if m.group(1):
            tokens.append(("var", (m.group(1), int(m.group(2)))))
        elif m.group(3):
            tokens.append(("num", int(m.group(3))))
        else:
            tokens.append(("op", m.group(4)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens: list[tuple[str, object]], ring: Ring):
        self.tokens = tokens
        self.pos = 0
        self.ring = ring

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect_op(self, op: str):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise PolyError(f"expected {op!r} in polynomial text")

    def parse_expr(self) -> Polynomial:
        kind, val = self.peek()
        sign = 1
        if kind == "op" and val in ("+", "-"):
            self.take()
            sign = -1 if val == "-" else 1
        total = self.parse_term() * sign
        while True:
            kind, val = self.peek()
            if kind == "op" and val in ("+", "-"):
                self.take()
                term = self.parse_term()
                total = total + (term if val == "+" else -term)
            else:
                return total

    def parse_term(self) -> Polynomial:
        result = self.parse_factor()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.take()
                result = result * self.parse_factor()
            elif kind == "op" and val == "/":
                self.take()
                divisor = self.parse_factor()
                if not divisor.is_constant() or divisor.is_zero():
                    raise PolyError("division only by nonzero constants")
                result = result * (1 / divisor.constant_value())
            elif kind in ("var", "num") or (kind == "op" and val == "("):
                result = result * self.parse_factor()
            else:
                return result

    def parse_factor(self) -> Polynomial:
        base = self.parse_primary()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.take()
            k, v = self.take()
            if k != "num":
                raise PolyError("exponent must be a number")
            base = base ** int(v)
        return base

    def parse_primary(self) -> Polynomial:
        kind, val = self.take()
        if kind == "num":
            return self.ring.const(val)
        if kind == "var":
            bank, i = val
            return self.ring.var(bank, i)
        if kind == "op" and val == "(":
            inner = self.parse_expr()
            self.expect_op(")")
            return inner
        if kind == "op" and val == "-":
            return -self.parse_primary()
        raise PolyError(f"unexpected token {val!r} in polynomial text")


def parse_poly(text: str, ring: Ring) -> Polynomial:
    """Parse text like ``"2*x1*x2(x1 - y3)(x1 + y3) + 1/2"`` exactly."""
    tokens = _tokenize(text)
    if not tokens:
        raise PolyError("empty polynomial text")
    parser = _Parser(tokens, ring)
    result = parser.parse_expr()
    if parser.pos != len(tokens):
        raise PolyError(f"trailing junk in polynomial text {text!r}")
    return result


# ---------------------------------------------------------------------------
# Weyl action and divided differences
# ---------------------------------------------------------------------------


def weyl_act_x(f: Polynomial, w: Sequence[int]) -> Polynomial:
    """Signed-permutation action on the x variables: x_i -> sign(w_i) x_|w_i|."""
    ring = f.ring
    if len(w) != ring.nx:
        raise PolyError("signed permutation length must equal nx")
    images = {}
    for i, wi in enumerate(w, start=1):
        images[ring.var_index("x", i)] = (ring.var_index("x", abs(wi)), 1 if wi > 0 else -1)
    return f.remap_vars(images)


def _check_root_index(lie_type: str, rank: int, i: int) -> None:
    if lie_type == "A":
        if not 1 <= i <= rank - 1:
            raise PolyError(f"type A rank {rank} has simple roots 1..{rank - 1}")
    elif lie_type in ("B", "C", "D"):
        if not 1 <= i <= rank:
            raise PolyError(f"type {lie_type} rank {rank} has simple roots 1..{rank}")
        if lie_type == "D" and rank < 2:
            raise PolyError("type D needs rank >= 2")
    else:
        raise PolyError(f"unknown Lie type {lie_type!r}")


def reflect_x(f: Polynomial, lie_type: str, rank: int, i: int) -> Polynomial:
    """Apply the i-th simple reflection (acting on x1..x_rank) to f."""
    ring = f.ring
    if rank > ring.nx:
        raise PolyError("rank exceeds number of x variables")
    _check_root_index(lie_type, rank, i)
    xa = ring.var_index("x", i)
    if lie_type == "A" or i < rank:
        xb = ring.var_index("x", i + 1)
        return f.remap_vars({xa: (xb, 1), xb: (xa, 1)})
    if lie_type in ("B", "C"):
        return f.remap_vars({xa: (xa, -1)})
    # type D, i == rank: x_{rank-1} -> -x_rank, x_rank -> -x_{rank-1}
    xprev = ring.var_index("x", rank - 1)
    return f.remap_vars({xprev: (xa, -1), xa: (xprev, -1)})


def simple_root_poly(ring: Ring, lie_type: str, rank: int, i: int) -> Polynomial:
    """The i-th simple root as a linear polynomial in the x variables."""
    _check_root_index(lie_type, rank, i)
    if lie_type == "A" or i < rank:
        return ring.x(i) - ring.x(i + 1)
    if lie_type == "B":
        return ring.x(rank)
    if lie_type == "C":
        return ring.x(rank) * 2
    return ring.x(rank - 1) + ring.x(rank)


def _dd_swap(f: Polynomial, a: int, b: int) -> Polynomial:
    """Divided difference for alpha = x_a - x_b (0-based exponent slots)."""
    out: dict[tuple[int, ...], Fraction] = {}
    for exps, coeff in f.terms.items():
        i, j = exps[a], exps[b]
        if i == j:
            continue
        lo, hi = (j, i) if i > j else (i, j)
        sign = 1 if i > j else -1
        base = list(exps)
        for t in range(lo, hi):
            base[a] = t
            base[b] = i + j - 1 - t
            key = tuple(base)
            s = out.get(key, Fraction(0)) + sign * coeff
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return Polynomial(f.ring, out)


def _dd_single(f: Polynomial, a: int, alpha_coeff: int) -> Polynomial:
    """Divided difference for alpha = alpha_coeff * x_a (type B: 1, type C: 2)."""
    out: dict[tuple[int, ...], Fraction] = {}
    scale = Fraction(2, alpha_coeff)
    for exps, coeff in f.terms.items():
        i = exps[a]
        if i % 2 == 0:
            continue
        base = list(exps)
        base[a] = i - 1
        key = tuple(base)
        s = out.get(key, Fraction(0)) + scale * coeff
        if s:
            out[key] = s
        else:
            out.pop(key, None)
    return Polynomial(f.ring, out)


def _dd_sum(f: Polynomial, a: int, b: int) -> Polynomial:
    """Divided difference for alpha = x_a + x_b (type D branch node)."""
    out: dict[tuple[int, ...], Fraction] = {}
    for exps, coeff in f.terms.items():
        i, j = exps[a], exps[b]
        if i == j and (i + j) % 2 == 0:
            continue
        lo = min(i, j)
        d = abs(i - j)
        if (i + j) % 2 == 0:
            sign = 1 if i > j else -1
        else:
            sign = 1
        base = list(exps)
        for t in range(d):
            base[a] = lo + d - 1 - t
            base[b] = lo + t
            key = tuple(base)
            term_sign = sign * (1 if t % 2 == 0 else -1)
            s = out.get(key, Fraction(0)) + term_sign * coeff
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return Polynomial(f.ring, out)


def divided_difference(f: Polynomial, lie_type: str, rank: int, i: int) -> Polynomial:
    """The operator f -> (f - s_i f) / alpha_i for the given root system."""
    ring = f.ring
    _check_root_index(lie_type, rank, i)
    if lie_type == "A" or i < rank:
        return _dd_swap(f, ring.var_index("x", i), ring.var_index("x", i + 1))
    if lie_type == "B":
        return _dd_single(f, ring.var_index("x", rank), 1)
    if lie_type == "C":
        return _dd_single(f, ring.var_index("x", rank), 2)
    return _dd_sum(f, ring.var_index("x", rank - 1), ring.var_index("x", rank))


# ---------------------------------------------------------------------------
# Exact division
# ---------------------------------------------------------------------------


def exact_div(num: Polynomial, den: Polynomial) -> Polynomial:
    """Exact polynomial division; raises PolyError if den does not divide num."""
    if num.ring != den.ring:
        raise PolyError("polynomials from different rings")
    if den.is_zero():
        raise PolyError("division by zero polynomial")
    if num.is_zero():
        return num.ring.zero
    if den.is_constant():
        return num * (1 / den.constant_value())
    lead_exps, lead_coeff = den.lead()
    rest = den - num.ring.monomial(lead_exps, lead_coeff)
    remainder = dict(num.terms)
    quotient: dict[tuple[int, ...], Fraction] = {}
    while remainder:
        exps = min(remainder, key=lambda e: _term_sort_key((e, 0)))
        coeff = remainder[exps]
        q_exps = tuple(a - b for a, b in zip(exps, lead_exps))
        if any(e < 0 for e in q_exps):
            raise PolyError("not exactly divisible")
        q_coeff = coeff / lead_coeff
        quotient[q_exps] = quotient.get(q_exps, Fraction(0)) + q_coeff
        del remainder[exps]
        for rexps, rcoeff in rest.terms.items():
            key = tuple(a + b for a, b in zip(q_exps, rexps))
            s = remainder.get(key, Fraction(0)) - q_coeff * rcoeff
            if s:
                remainder[key] = s
            else:
                remainder.pop(key, None)
    return Polynomial(num.ring, quotient)


# ---------------------------------------------------------------------------
# Symmetric functions, determinants
# ---------------------------------------------------------------------------


def elem_sym(ring: Ring, k: int, gens: Sequence[Polynomial]) -> Polynomial:
    """Elementary symmetric polynomial e_k of the given generators."""
    if k < 0 or k > len(gens):
        return ring.zero
    table = [ring.one] + [ring.zero] * k
    for g in gens:
        for j in range(min(k, len(gens)), 0, -1):
            if not table[j - 1].is_zero():
                table[j] = table[j] + table[j - 1] * g
    return table[k]


def determinant(matrix: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Determinant of a square matrix of polynomials (cofactor with memo)."""
    m = len(matrix)
    if m == 0:
        raise PolyError("empty matrix")
    ring = matrix[0][0].ring
    all_cols = tuple(range(m))

    memo: dict[tuple[int, tuple[int, ...]], Polynomial] = {}

    def minor(row: int, cols: tuple[int, ...]) -> Polynomial:
        if row == m:
            return ring.one
        key = (row, cols)
        if key in memo:
            return memo[key]
        total = ring.zero
        for pos, col in enumerate(cols):
            entry = matrix[row][col]
            if entry.is_zero():
                continue
            sub = minor(row + 1, cols[:pos] + cols[pos + 1:])
            piece = entry * sub
            total = total + (piece if pos % 2 == 0 else -piece)
        memo[key] = total
        return total

    return minor(0, all_cols)


# ---------------------------------------------------------------------------
# Rewriting block-symmetric polynomials in elementary symmetric generators
# ---------------------------------------------------------------------------


def chern_substitute(f: Polynomial, blocks: Sequence[tuple[int, int]]) -> Polynomial:
    """Rewrite every y-variable occurrence through elementary symmetric
    polynomials of the given blocks, mapped to z-variables.

    ``blocks`` is a list of ``(start, size)`` pairs (1-based y indices,
    disjoint).  For a block starting at ``y_a``, the elementary symmetric
    polynomial ``e_k`` of that block's variables is replaced by
    ``z_{a-1+k}``.  Raises PolyError if f is not symmetric in each block
    or uses a y variable outside every block.
    """
    ring = f.ring
    covered = set()
    block_slots: list[tuple[list[int], int]] = []
    for start, size in blocks:
        slots = [ring.var_index("y", start + t) for t in range(size)]
        covered.update(slots)
        block_slots.append((slots, start - 1))
        if start - 1 + size > ring.nz:
            raise PolyError("ring has too few z variables for these blocks")

    for idx in f.used_vars():
        if ring.nx <= idx < ring.nx + ring.ny and idx not in covered:
            raise PolyError(
                f"variable {ring.var_name(idx)} is outside every symmetric block"
            )

    e_cache: dict[tuple[int, int], Polynomial] = {}

    def block_e(bi: int, k: int) -> Polynomial:
        key = (bi, k)
        if key not in e_cache:
            slots, _ = block_slots[bi]
            gens = [ring.monomial({s: 1}) for s in slots]
            e_cache[key] = elem_sym(ring, k, gens)
        return e_cache[key]

    result = ring.zero
    current = f
    while True:
        candidates = [
            (exps, coeff)
            for exps, coeff in current.terms.items()
            if any(exps[s] for slots, _ in block_slots for s in slots)
        ]
        if not candidates:
            result = result + current
            return result
        exps, coeff = min(candidates, key=_term_sort_key)
        stripped = list(exps)
        subtrahend = current.ring.const(coeff)
        image_exps = list(exps)
        for bi, (slots, zoffset) in enumerate(block_slots):
            lam = [exps[s] for s in slots]
            if any(lam[t] < lam[t + 1] for t in range(len(lam) - 1)):
                raise PolyError(
                    "polynomial is not symmetric in a variable block; "
                    f"offending monomial exponents {lam}"
                )
            for s in slots:
                stripped[s] = 0
                image_exps[s] = 0
            lam.append(0)
            for k in range(1, len(slots) + 1):
                mult = lam[k - 1] - lam[k]
                if mult:
                    subtrahend = subtrahend * (block_e(bi, k) ** mult)
                    zslot = ring.var_index("z", zoffset + k)
                    image_exps[zslot] += mult
        spectator = ring.monomial(tuple(stripped))
        current = current - subtrahend * spectator
        result = result + ring.monomial(tuple(image_exps), coeff)


# ---------------------------------------------------------------------------
# Factored form
# ---------------------------------------------------------------------------


class FactoredPoly:
    """A polynomial kept as scalar * product of factors, for display."""

    __slots__ = ("ring", "scalar", "factors")

    def __init__(self, ring: Ring, scalar: Fraction | int,
                 factors: Sequence[Polynomial] = ()):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "scalar", Fraction(scalar))
        object.__setattr__(self, "factors", tuple(factors))
        for fac in self.factors:
            if fac.ring != ring:
                raise PolyError("factor from a different ring")

    def __setattr__(self, *_):  # pragma: no cover
        raise AttributeError("FactoredPoly is immutable")

    def expand(self) -> Polynomial:
        total = self.ring.const(self.scalar)
        for fac in self.factors:
            total = total * fac
        return total

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FactoredPoly(self.ring, self.scalar * other, self.factors)
        if isinstance(other, Polynomial):
            return FactoredPoly(self.ring, self.scalar, self.factors + (other,))
        if isinstance(other, FactoredPoly):
            return FactoredPoly(
                self.ring, self.scalar * other.scalar, self.factors + other.factors
            )
        return NotImplemented

    __rmul__ = __mul__

    def to_text(self) -> str:
        if self.scalar == 0:
            return "0"
        prefix_exps = [0] * self.ring.width
        coeff = self.scalar
        wrapped: list[Polynomial] = []
        for fac in self.factors:
            if fac.is_zero():
                return "0"
            if len(fac.terms) == 1:
                exps, c = next(iter(fac.terms.items()))
                coeff *= c
                for idx, e in enumerate(exps):
                    prefix_exps[idx] += e
            else:
                wrapped.append(fac)
        body = "".join(f"({fac.to_text()})" for fac in wrapped)
        sign = "-" if coeff < 0 else ""
        mono = term_text(self.ring, tuple(prefix_exps), abs(coeff))
        if body:
            if mono == "1":
                return sign + body
            return sign + mono + body
        return sign + mono

    def __repr__(self):  # pragma: no cover
        return f"FactoredPoly({self.to_text()!r})"

    def to_json(self) -> dict:
        return {
            "scalar": [self.scalar.numerator, self.scalar.denominator],
            "factors": [fac.to_json() for fac in self.factors],
        }

    @staticmethod
    def from_json(ring: Ring, data: dict) -> "FactoredPoly":
        num, den = data["scalar"]
        return FactoredPoly(
            ring,
            Fraction(int(num), int(den)),
            [Polynomial.from_json(ring, fac) for fac in data["factors"]],
        )
