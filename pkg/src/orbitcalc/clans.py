"""Clans: sign/matching strings that index the orbits of a block subgroup on a flag variety.

A clan of shape ``(p, q)`` is a string of length ``n = p + q`` whose entries are
``'+'``, ``'-'``, or pair labels, each pair label occurring exactly twice, with
``#(+) - #(-) = p - q``.  Two clans are equal exactly when their sign positions
(and signs) agree and their pair labels induce the same matching of positions,
so every clan is stored in canonical form: pair labels are renumbered
``1, 2, ...`` in order of first occurrence.

The module also provides the rank-number tables attached to a clan, the partial
order defined by comparing those tables, the covering moves that generate it,
enumeration of all clans of a shape, the symmetry predicates and per-case clan
families for the seven supported symmetric pairs, and (de)serialization.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field
from typing import Iterator, Sequence

PLUS = "+"
MINUS = "-"

#: Tags for the seven supported symmetric pairs.
CASE_TAGS = (
    "a",            # (GL(p+q), GL(p) x GL(q))
    "b-so",         # (SO(2n+1), S(O(2p) x O(2q+1))), n = p + q
    "c-spxsp",      # (Sp(2n), Sp(2p) x Sp(2q)), n = p + q
    "c-sp-gl",      # (Sp(2n), GL(n))
    "d-oxo-even",   # (SO(2n), S(O(2p) x O(2q))), n = p + q
    "d-so-gl",      # (SO(2n), GL(n))
    "d-oxo-odd",    # (SO(2n), S(O(2p+1) x O(2q-1))), n = p + q
)


class ClanError(ValueError):
    """Raised for malformed clan strings or inconsistent rank tables."""


def _token_sort_key(sym) -> tuple[int, int]:
    """Sort key for canonical-string ordering: '+' < '-' < pair labels by number."""
    if sym == PLUS:
        return (0, 0)
    if sym == MINUS:
        return (1, 0)
    return (2, sym)


@dataclass(frozen=True)
class Clan:
    """A canonical clan.  Build instances with :func:`make_clan` or :func:`parse_clan`."""

    symbols: tuple
    p: int
    q: int

    def __post_init__(self) -> None:
        symbols, p, q = self.symbols, self.p, self.q
        if p < 0 or q < 0 or p + q < 1:
            raise ClanError(f"invalid shape ({p}, {q})")
        if len(symbols) != p + q:
            raise ClanError(
                f"clan has {len(symbols)} symbols but shape ({p}, {q}) needs {p + q}"
            )
        counts: dict = {}
        n_plus = n_minus = 0
        for sym in symbols:
            if sym == PLUS:
                n_plus += 1
            elif sym == MINUS:
                n_minus += 1
            elif isinstance(sym, int):
                counts[sym] = counts.get(sym, 0) + 1
            else:
                raise ClanError(f"invalid clan symbol {sym!r}")
        for label, cnt in counts.items():
            if cnt != 2:
                raise ClanError(f"pair label {label} occurs {cnt} times (needs exactly 2)")
        if n_plus - n_minus != p - q:
            raise ClanError(
                f"sign counts (+{n_plus}, -{n_minus}) incompatible with shape ({p}, {q})"
            )
        # Canonical labels: renumber pairs 1, 2, ... by first occurrence.
        relabel: dict[int, int] = {}
        canon = []
        for sym in symbols:
            if isinstance(sym, int):
                if sym not in relabel:
                    relabel[sym] = len(relabel) + 1
                canon.append(relabel[sym])
            else:
                canon.append(sym)
        object.__setattr__(self, "symbols", tuple(canon))

    # -- basic structure ---------------------------------------------------

    @property
    def n(self) -> int:
        return self.p + self.q

    def pairs(self) -> tuple[tuple[int, int], ...]:
        """Matched position pairs (a, b) with a < b, 1-based, sorted by a."""
        first: dict[int, int] = {}
        out = []
        for pos, sym in enumerate(self.symbols, start=1):
            if isinstance(sym, int):
                if sym in first:
                    out.append((first[sym], pos))
                else:
                    first[sym] = pos
        return tuple(sorted(out))

    def mate(self, pos: int) -> int | None:
        """The matched position of a pair endpoint (1-based); None for signs."""
        sym = self.symbols[pos - 1]
        if not isinstance(sym, int):
            return None
        for other, s in enumerate(self.symbols, start=1):
            if s == sym and other != pos:
                return other
        raise ClanError(f"unmatched pair label at position {pos}")

    def to_text(self) -> str:
        out = []
        for sym in self.symbols:
            if sym == PLUS or sym == MINUS:
                out.append(sym)
            elif sym < 10:
                out.append(str(sym))
            else:
                out.append(f"({sym})")
        return "".join(out)

    def __str__(self) -> str:  # pragma: no cover - convenience
        return self.to_text()

    def sort_key(self) -> tuple:
        """Deterministic ordering key: '+' < '-' < pair labels."""
        return tuple(_token_sort_key(sym) for sym in self.symbols)

    # -- structural transforms --------------------------------------------

    def reversed_clan(self) -> "Clan":
        """The clan read right-to-left (pair structure mirrored)."""
        return Clan(tuple(reversed(self.symbols)), self.p, self.q)

    def negated_clan(self) -> "Clan":
        """The clan with '+' and '-' exchanged; shape becomes (q, p)."""
        flip = {PLUS: MINUS, MINUS: PLUS}
        return Clan(tuple(flip.get(s, s) for s in self.symbols), self.q, self.p)

    def to_json(self) -> dict:
        return {
            "symbols": [s if isinstance(s, str) else str(s) for s in self.symbols],
            "p": self.p,
            "q": self.q,
        }

    @staticmethod
    def from_json(data: dict) -> "Clan":
        syms = tuple(
            s if s in (PLUS, MINUS) else int(s) for s in data["symbols"]
        )
        return Clan(syms, int(data["p"]), int(data["q"]))


def make_clan(symbols: Sequence, p: int, q: int) -> Clan:
    """Build a clan from a symbol sequence ('+', '-', or hashable pair labels)."""
    # Accept arbitrary hashable pair labels; map them to ints first.
    relabel: dict = {}
    out = []
    for sym in symbols:
        if sym == PLUS or sym == MINUS:
            out.append(sym)
        else:
            if sym not in relabel:
                relabel[sym] = len(relabel) + 1
            out.append(relabel[sym])
    return Clan(tuple(out), p, q)


_TOKEN_RE = re.compile(r"\+|-|[0-9]|\((\d+)\)")


def parse_clan(text: str, p: int, q: int) -> Clan:
    """Parse a clan string such as ``'1+-1'`` or ``'(10)+(10)-'`` into a clan of shape (p, q)."""
    text = text.strip().replace("−", "-").replace("–", "-")
    symbols: list = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ClanError(f"unrecognized clan token at {text[pos:]!r}")
        tok = m.group(0)
        if tok == PLUS or tok == MINUS:
            symbols.append(tok)
        elif tok.startswith("("):
            symbols.append(int(m.group(1)))
        else:
            symbols.append(int(tok))
        pos = m.end()
    return make_clan(symbols, p, q)


# ---------------------------------------------------------------------------
# Rank numbers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RankTable:
    """The three rank-number families of a clan.

    ``plus[i-1]``  counts '+' signs and completed pairs among the first i symbols;
    ``minus[i-1]`` counts '-' signs and completed pairs;
    ``cross``      stores, for 1 <= i < j <= n, the number of pairs (s, t) with
                   s <= i < j < t, as ``cross[i-1][j-i-1]``.
    """

    plus: tuple[int, ...]
    minus: tuple[int, ...]
    cross: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.plus)

    def plus_at(self, i: int) -> int:
        return self.plus[i - 1]

    def minus_at(self, i: int) -> int:
        return self.minus[i - 1]

    def cross_at(self, i: int, j: int) -> int:
        if not (1 <= i < j <= self.n):
            raise IndexError(f"cross rank needs 1 <= i < j <= n, got ({i}, {j})")
        return self.cross[i - 1][j - i - 1]

    def to_json(self) -> dict:
        return {
            "plus": list(self.plus),
            "minus": list(self.minus),
            "cross": [list(row) for row in self.cross],
        }

    @staticmethod
    def from_json(data: dict) -> "RankTable":
        return RankTable(
            tuple(data["plus"]),
            tuple(data["minus"]),
            tuple(tuple(row) for row in data["cross"]),
        )


def rank_table(c: Clan) -> RankTable:
    """Compute the rank-number table of a clan."""
    n = c.n
    pairs = c.pairs()
    plus = []
    minus = []
    for i in range(1, n + 1):
        np_ = sum(1 for s in c.symbols[:i] if s == PLUS)
        nm = sum(1 for s in c.symbols[:i] if s == MINUS)
        complete = sum(1 for (a, b) in pairs if b <= i)
        plus.append(np_ + complete)
        minus.append(nm + complete)
    cross = []
    for i in range(1, n):
        row = []
        for j in range(i + 1, n + 1):
            row.append(sum(1 for (a, b) in pairs if a <= i and b > j))
        cross.append(tuple(row))
    return RankTable(tuple(plus), tuple(minus), tuple(cross))


def clan_from_rank_table(t: RankTable) -> Clan:
    """Reconstruct the unique clan with the given rank table.

    Raises :class:`ClanError` when no clan has this table.
    """
    n = t.n
    if n < 1:
        raise ClanError("empty rank table")
    plus = (0,) + t.plus
    minus = (0,) + t.minus
    kinds = []  # '+', '-', 'F' (first of a pair), 'S' (second of a pair)
    for i in range(1, n + 1):
        dp = plus[i] - plus[i - 1]
        dm = minus[i] - minus[i - 1]
        if (dp, dm) == (1, 0):
            kinds.append(PLUS)
        elif (dp, dm) == (0, 1):
            kinds.append(MINUS)
        elif (dp, dm) == (0, 0):
            kinds.append("F")
        elif (dp, dm) == (1, 1):
            kinds.append("S")
        else:
            raise ClanError(f"rank table has invalid jump ({dp}, {dm}) at position {i}")
    symbols: list = [None] * n
    open_firsts: list[int] = []  # 1-based positions of unmatched first occurrences
    next_label = 1
    for i, kind in enumerate(kinds, start=1):
        if kind in (PLUS, MINUS):
            symbols[i - 1] = kind
        elif kind == "F":
            open_firsts.append(i)
        else:  # second occurrence: mate with the first open position i_l with cross(i_l, i) < l
            mate_pos = None
            for l, cand in enumerate(open_firsts, start=1):
                if t.cross_at(cand, i) < l:
                    mate_pos = cand
                    break
            if mate_pos is None:
                raise ClanError(f"rank table admits no mate for the pair closing at {i}")
            open_firsts.remove(mate_pos)
            symbols[mate_pos - 1] = next_label
            symbols[i - 1] = next_label
            next_label += 1
    if open_firsts:
        raise ClanError("rank table leaves unmatched pair openings")
    p = t.plus[-1]
    q = t.minus[-1]
    clan = Clan(tuple(symbols), p, q)
    if rank_table(clan) != t:
        raise ClanError("rank table is not realized by any clan")
    return clan


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------


def _matchings(positions: tuple[int, ...]) -> Iterator[tuple[tuple[int, int], ...]]:
    """All perfect matchings of an even-size position tuple, deterministically."""
    if not positions:
        yield ()
        return
    first = positions[0]
    rest = positions[1:]
    for k, other in enumerate(rest):
        remaining = rest[:k] + rest[k + 1:]
        for sub in _matchings(remaining):
            yield ((first, other),) + sub


def enumerate_clans(p: int, q: int) -> tuple[Clan, ...]:
    """All clans of shape (p, q), sorted by canonical string ('+' < '-' < pair labels)."""
    if p < 0 or q < 0 or p + q < 1:
        raise ClanError(f"invalid shape ({p}, {q})")
    n = p + q
    out = []
    for m in range(0, min(p, q) + 1):
        for pair_positions in itertools.combinations(range(1, n + 1), 2 * m):
            rest = [i for i in range(1, n + 1) if i not in pair_positions]
            for matching in _matchings(pair_positions):
                for plus_positions in itertools.combinations(rest, p - m):
                    symbols: list = [MINUS] * n
                    for pos in plus_positions:
                        symbols[pos - 1] = PLUS
                    for label, (a, b) in enumerate(matching, start=1):
                        symbols[a - 1] = label
                        symbols[b - 1] = label
                    out.append(Clan(tuple(symbols), p, q))
    out.sort(key=Clan.sort_key)
    return tuple(out)


# ---------------------------------------------------------------------------
# Symmetry predicates
# ---------------------------------------------------------------------------


def is_symmetric(c: Clan) -> bool:
    """True when the clan equals its own reversal (signs mirror, matching mirrored)."""
    return c.reversed_clan() == c


def is_skew_symmetric(c: Clan) -> bool:
    """True when the reversal equals the sign-negated clan."""
    if c.p != c.q:
        return False
    return c.reversed_clan() == c.negated_clan()


# ---------------------------------------------------------------------------
# Case identifiers and per-case clan families
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CaseId:
    """One of the seven supported symmetric pairs, with its rank parameters.

    For the two GL-subgroup cases (``c-sp-gl``, ``d-so-gl``) the parameters
    satisfy p == q == n.  For all the others n = p + q is the rank of the
    ambient group.
    """

    tag: str
    p: int
    q: int

    def __post_init__(self) -> None:
        if self.tag not in CASE_TAGS:
            raise ClanError(f"unknown case tag {self.tag!r}")
        if self.tag in ("c-sp-gl", "d-so-gl"):
            if self.p != self.q or self.p < 1:
                raise ClanError(f"case {self.tag} needs p == q == n >= 1")
        elif self.tag == "a":
            if self.p < 0 or self.q < 0 or self.p + self.q < 1:
                raise ClanError("case a needs p, q >= 0 with p + q >= 1")
        else:
            if self.p < 1 or self.q < 1:
                raise ClanError(f"case {self.tag} needs p, q >= 1")

    @property
    def grank(self) -> int:
        """Rank of the ambient group (the number of x/y variables)."""
        if self.tag in ("c-sp-gl", "d-so-gl"):
            return self.p
        return self.p + self.q

    @property
    def family(self) -> str:
        """Root-system family of the ambient group: 'A', 'B', 'C', or 'D'."""
        return {
            "a": "A",
            "b-so": "B",
            "c-spxsp": "C",
            "c-sp-gl": "C",
            "d-oxo-even": "D",
            "d-so-gl": "D",
            "d-oxo-odd": "D",
        }[self.tag]

    @property
    def ambient_shape(self) -> tuple[int, int]:
        """The (P, Q) shape of the clans that label this case's orbits."""
        if self.tag == "a":
            return (self.p, self.q)
        if self.tag == "b-so":
            return (2 * self.p, 2 * self.q + 1)
        if self.tag in ("c-spxsp", "d-oxo-even"):
            return (2 * self.p, 2 * self.q)
        if self.tag in ("c-sp-gl", "d-so-gl"):
            return (self.grank, self.grank)
        return (2 * self.p + 1, 2 * self.q - 1)  # d-oxo-odd

    @property
    def ambient_len(self) -> int:
        P, Q = self.ambient_shape
        return P + Q

    def describe(self) -> str:
        n = self.grank
        names = {
            "a": f"(GL({n}), GL({self.p}) x GL({self.q}))",
            "b-so": f"(SO({2 * n + 1}), S(O({2 * self.p}) x O({2 * self.q + 1})))",
            "c-spxsp": f"(Sp({2 * n}), Sp({2 * self.p}) x Sp({2 * self.q}))",
            "c-sp-gl": f"(Sp({2 * n}), GL({n}))",
            "d-oxo-even": f"(SO({2 * n}), S(O({2 * self.p}) x O({2 * self.q})))",
            "d-so-gl": f"(SO({2 * n}), GL({n}))",
            "d-oxo-odd": f"(SO({2 * n}), S(O({2 * self.p + 1}) x O({2 * self.q - 1})))",
        }
        return names[self.tag]


def case_from_params(tag: str, p: int | None = None, q: int | None = None,
                     n: int | None = None) -> CaseId:
    """Build a CaseId from CLI-style parameters (--p/--q or --n)."""
    if tag in ("c-sp-gl", "d-so-gl"):
        if n is None:
            if p is not None and (q is None or q == p):
                n = p
            else:
                raise ClanError(f"case {tag} needs --n")
        return CaseId(tag, n, n)
    if p is None or q is None:
        raise ClanError(f"case {tag} needs --p and --q")
    return CaseId(tag, p, q)


def _has_self_mirror_pair(c: Clan) -> bool:
    n = c.n
    return any(a + b == n + 1 for (a, b) in c.pairs())


def in_case_family(case: CaseId, c: Clan) -> bool:
    """Whether the clan labels an orbit of the given case."""
    P, Q = case.ambient_shape
    if (c.p, c.q) != (P, Q):
        return False
    tag = case.tag
    if tag == "a":
        return True
    if tag in ("b-so", "d-oxo-even", "d-oxo-odd"):
        return is_symmetric(c)
    if tag == "c-spxsp":
        return is_symmetric(c) and not _has_self_mirror_pair(c)
    if tag == "c-sp-gl":
        return is_skew_symmetric(c)
    if tag == "d-so-gl":
        if not is_skew_symmetric(c) or _has_self_mirror_pair(c):
            return False
        return rank_table(c).minus_at(case.grank) % 2 == 0
    raise ClanError(f"unknown case tag {tag!r}")


def enumerate_case_clans(case: CaseId) -> tuple[Clan, ...]:
    """All clans of the case's family, in canonical-string order."""
    P, Q = case.ambient_shape
    return tuple(c for c in enumerate_clans(P, Q) if in_case_family(case, c))


# ---------------------------------------------------------------------------
# Partial order and covering moves
# ---------------------------------------------------------------------------


def leq(a: Clan, b: Clan) -> bool:
    """The rank-table order: a <= b iff a's sign ranks dominate b's and a's
    crossing ranks are dominated by b's."""
    if (a.p, a.q) != (b.p, b.q):
        raise ClanError("clans of different shapes are incomparable")
    ta, tb = rank_table(a), rank_table(b)
    n = a.n
    for i in range(1, n + 1):
        if ta.plus_at(i) < tb.plus_at(i) or ta.minus_at(i) < tb.minus_at(i):
            return False
    for i in range(1, n):
        for j in range(i + 1, n + 1):
            if ta.cross_at(i, j) > tb.cross_at(i, j):
                return False
    return True


def covering_moves(c: Clan) -> tuple[tuple[str, tuple[int, ...], Clan], ...]:
    """All single-step ascents from ``c``: (kind, positions, result) triples.

    The ten kinds, with 1-based positions:

    - ``signs-to-pair``      (a, b): '+','-' or '-','+' at a < b becomes a pair {a, b}.
    - ``pair-plus-right``    (a, b, k): pair (a,b) and '+' at k > b -> pair (a,k), '+' at b.
    - ``pair-minus-right``   likewise for '-'.
    - ``plus-pair-left``     (a, b, cpos): '+' at a < b, pair (b,cpos) -> pair (a,cpos), '+' at b.
    - ``minus-pair-left``    likewise for '-'.
    - ``nested-to-crossing`` (a, b, cpos, d): pairs (a,b),(cpos,d), b < cpos -> (a,cpos),(b,d).
    - ``pairs-to-plusminus`` same support -> pair (a,d), '+' at b, '-' at cpos.
    - ``pairs-to-minusplus`` same support -> pair (a,d), '-' at b, '+' at cpos.
    - ``crossing-to-nesting`` (a, b, cpos, d): pairs (a,cpos),(b,d), a<b<cpos<d -> (a,d),(b,cpos).
    """
    n = c.n
    syms = c.symbols
    pairs = c.pairs()
    out = []

    def build(new_syms: list) -> Clan:
        return make_clan(new_syms, c.p, c.q)

    fresh = n + 1  # label guaranteed unused

    # signs-to-pair
    for a in range(1, n + 1):
        if syms[a - 1] not in (PLUS, MINUS):
            continue
        for b in range(a + 1, n + 1):
            if syms[b - 1] in (PLUS, MINUS) and syms[b - 1] != syms[a - 1]:
                new = list(syms)
                new[a - 1] = fresh
                new[b - 1] = fresh
                out.append(("signs-to-pair", (a, b), build(new)))

    # pair-plus-right / pair-minus-right
    for (a, b) in pairs:
        for k in range(b + 1, n + 1):
            s = syms[k - 1]
            if s in (PLUS, MINUS):
                new = list(syms)
                new[b - 1] = s
                new[k - 1] = new[a - 1]
                kind = "pair-plus-right" if s == PLUS else "pair-minus-right"
                out.append((kind, (a, b, k), build(new)))

    # plus-pair-left / minus-pair-left
    for (b, cpos) in pairs:
        for a in range(1, b):
            s = syms[a - 1]
            if s in (PLUS, MINUS):
                new = list(syms)
                new[a - 1] = new[b - 1]
                new[b - 1] = s
                kind = "plus-pair-left" if s == PLUS else "minus-pair-left"
                out.append((kind, (a, b, cpos), build(new)))

    # two disjoint pairs (a,b), (cpos,d) with b < cpos
    for (a, b) in pairs:
        for (cpos, d) in pairs:
            if b < cpos:
                new = list(syms)
                new[b - 1], new[cpos - 1] = new[cpos - 1], new[b - 1]
                out.append(("nested-to-crossing", (a, b, cpos, d), build(new)))
                new = list(syms)
                label = new[a - 1]
                new[b - 1] = PLUS
                new[cpos - 1] = MINUS
                new[d - 1] = label
                out.append(("pairs-to-plusminus", (a, b, cpos, d), build(new)))
                new = list(syms)
                new[b - 1] = MINUS
                new[cpos - 1] = PLUS
                new[d - 1] = label
                out.append(("pairs-to-minusplus", (a, b, cpos, d), build(new)))

    # crossing-to-nesting: pairs (a,cpos),(b,d) with a < b < cpos < d
    for (a, cpos) in pairs:
        for (b, d) in pairs:
            if a < b < cpos < d:
                new = list(syms)
                new[cpos - 1], new[d - 1] = new[d - 1], new[cpos - 1]
                out.append(("crossing-to-nesting", (a, b, cpos, d), build(new)))

    return tuple(out)


def covering_successors(c: Clan) -> frozenset[Clan]:
    """The clans reached from ``c`` by one covering move."""
    return frozenset(res for (_, _, res) in covering_moves(c))


def underlying_involution(c: Clan) -> tuple[int, ...]:
    """One-line notation of the involution that transposes each matched pair."""
    vals = list(range(1, c.n + 1))
    for (a, b) in c.pairs():
        vals[a - 1], vals[b - 1] = b, a
    return tuple(vals)


def clans_to_json(clans: Sequence[Clan]) -> str:
    return json.dumps([c.to_text() for c in clans], indent=2)
