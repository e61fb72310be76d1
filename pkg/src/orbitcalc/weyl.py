"""Signed permutations, subgroup membership, fixed-point dictionaries,
closed-orbit representatives, statistics, and root data for the seven cases.

A Weyl-group element is a plain tuple of signed integers ``w`` with
``w[i-1] = w(i)`` and ``{|w(i)|} = {1..n}``.  Type A elements have no
negative entries; type D elements have an even number of them.
"""

from __future__ import annotations

import itertools
import re
from collections import Counter
from functools import lru_cache

from .clans import CaseId, Clan, ClanError

Weyl = tuple[int, ...]
Root = tuple[int, ...]


class WeylError(ValueError):
    """Raised on invalid signed permutations or unsupported requests."""


# ---------------------------------------------------------------------------
# Basic signed-permutation calculus
# ---------------------------------------------------------------------------


def validate_weyl(w, lie_type: str | None = None) -> Weyl:
    w = tuple(int(v) for v in w)
    n = len(w)
    if n == 0:
        raise WeylError("empty signed permutation")
    if sorted(abs(v) for v in w) != list(range(1, n + 1)):
        raise WeylError(f"absolute values of {w} are not a permutation of 1..{n}")
    negs = sum(1 for v in w if v < 0)
    if lie_type == "A" and negs:
        raise WeylError("type A elements cannot have negative entries")
    if lie_type == "D" and negs % 2:
        raise WeylError("type D elements need an even number of negative entries")
    return w


def weyl_text(w: Weyl) -> str:
    return ",".join(str(v) for v in w)


_COMPACT_RE = re.compile(r"-?\d")


def parse_weyl(text: str) -> Weyl:
    """Parse '-2,-4,1,3,-5' or the compact single-digit form '-2-413-5'."""
    text = text.strip().replace("−", "-")
    if not text:
        raise WeylError("empty signed-permutation text")
    if "," in text:
        try:
            entries = [int(part) for part in text.split(",")]
        except ValueError as exc:
            raise WeylError(f"bad signed-permutation text {text!r}") from exc
    else:
        entries = []
        pos = 0
        while pos < len(text):
            m = _COMPACT_RE.match(text, pos)
            if not m:
                raise WeylError(f"bad signed-permutation text {text!r}")
            entries.append(int(m.group()))
            pos = m.end()
    return validate_weyl(entries)


def weyl_abs(w: Weyl) -> Weyl:
    return tuple(abs(v) for v in w)


def neg_set(w: Weyl) -> frozenset[int]:
    """1-based positions whose entry is negative."""
    return frozenset(i for i, v in enumerate(w, start=1) if v < 0)


def weyl_inverse(w: Weyl) -> Weyl:
    inv = [0] * len(w)
    for i, v in enumerate(w, start=1):
        if v > 0:
            inv[v - 1] = i
        else:
            inv[-v - 1] = -i
    return tuple(inv)


def weyl_compose(u: Weyl, w: Weyl) -> Weyl:
    """(u o w)(i) = u(w(i)), with u(-k) = -u(k)."""
    if len(u) != len(w):
        raise WeylError("cannot compose signed permutations of different sizes")
    out = []
    for v in w:
        uv = u[abs(v) - 1]
        out.append(uv if v > 0 else -uv)
    return tuple(out)


def identity_weyl(n: int) -> Weyl:
    return tuple(range(1, n + 1))


@lru_cache(maxsize=None)
def weyl_elements(lie_type: str, n: int) -> tuple[Weyl, ...]:
    """All elements of the Weyl group of the given classical type and rank."""
    if lie_type == "A":
        return tuple(itertools.permutations(range(1, n + 1)))
    if lie_type in ("B", "C", "D"):
        out = []
        for perm in itertools.permutations(range(1, n + 1)):
            for signs in itertools.product((1, -1), repeat=n):
                if lie_type == "D" and signs.count(-1) % 2:
                    continue
                out.append(tuple(s * v for s, v in zip(signs, perm)))
        return tuple(sorted(out))
    raise WeylError(f"unknown Lie type {lie_type!r}")


def simple_reflection(lie_type: str, n: int, i: int) -> Weyl:
    """The i-th simple reflection as a signed permutation of 1..n."""
    vals = list(range(1, n + 1))
    if lie_type == "A":
        if not 1 <= i <= n - 1:
            raise WeylError(f"type A rank {n} has simple roots 1..{n - 1}")
        vals[i - 1], vals[i] = vals[i], vals[i - 1]
    elif lie_type in ("B", "C"):
        if not 1 <= i <= n:
            raise WeylError(f"type {lie_type} rank {n} has simple roots 1..{n}")
        if i < n:
            vals[i - 1], vals[i] = vals[i], vals[i - 1]
        else:
            vals[n - 1] = -n
    elif lie_type == "D":
        if not 1 <= i <= n or n < 2:
            raise WeylError(f"type D rank {n} has simple roots 1..{n}")
        if i < n:
            vals[i - 1], vals[i] = vals[i], vals[i - 1]
        else:
            vals[n - 2], vals[n - 1] = -n, -(n - 1)
    else:
        raise WeylError(f"unknown Lie type {lie_type!r}")
    return tuple(vals)


def embed_in_ambient(w: Weyl, parity: str) -> tuple[int, ...]:
    """Embed a signed permutation of n as an honest permutation of
    {1..2n} (parity='even') or {1..2n+1} (parity='odd')."""
    w = validate_weyl(w)
    n = len(w)
    if parity == "even":
        big = 2 * n + 1  # sigma(i) + sigma(2n+1-i) = 2n+1
        total = 2 * n
    elif parity == "odd":
        big = 2 * n + 2
        total = 2 * n + 1
    else:
        raise WeylError("parity must be 'even' or 'odd'")
    sigma = [0] * total
    for i, v in enumerate(w, start=1):
        sigma[i - 1] = v if v > 0 else big - (-v)
        sigma[total - i] = big - sigma[i - 1]
    if parity == "odd":
        sigma[n] = n + 1
    return tuple(sigma)


# ---------------------------------------------------------------------------
# Statistics
# ---------------------------------------------------------------------------


def stat_lp(w: Weyl, p: int) -> int:
    """#{(i, j) : i < j <= n, w(j) <= p < w(i)} for an unsigned permutation."""
    if any(v < 0 for v in w):
        raise WeylError("stat_lp is defined for unsigned permutations")
    n = len(w)
    return sum(
        1
        for i in range(n)
        for j in range(i + 1, n)
        if w[j] <= p < w[i]
    )


def stat_phip(w: Weyl, p: int) -> int:
    """#{i : w(i) < 0 and |w(i)| <= p}."""
    return sum(1 for v in w if v < 0 and -v <= p)


def stat_psi(w: Weyl) -> int:
    return sum(1 for v in w if v < 0)


def stat_sigma(w: Weyl) -> int:
    """Sum of (n - i) over the positions i whose entry is negative."""
    n = len(w)
    return sum(n - i for i, v in enumerate(w, start=1) if v < 0)


def stat_tau(w: Weyl, p: int) -> int:
    """Sum over i <= n-1 with w(i) > p+1 of #{j : i < j <= n-1, w(j) <= p}."""
    n = len(w)
    total = 0
    for i in range(1, n):
        if w[i - 1] > p + 1:
            total += sum(1 for j in range(i + 1, n) if w[j - 1] <= p)
    return total


# ---------------------------------------------------------------------------
# Per-case groups and the fixed-point dictionary
# ---------------------------------------------------------------------------


def ambient_weyl(case: CaseId) -> tuple[Weyl, ...]:
    return weyl_elements(case.family, case.grank)


def _blocks_preserved(w: Weyl, p: int) -> bool:
    return all((abs(v) <= p) == (i <= p) for i, v in enumerate(w, start=1))


def wk_member(case: CaseId, w: Weyl) -> bool:
    """Membership in the symmetric subgroup's Weyl group W_K."""
    w = validate_weyl(w, case.family)
    p, n = case.p, case.grank
    tag = case.tag
    if tag == "a":
        return all(v > 0 for v in w) and _blocks_preserved(w, p)
    if tag == "b-so":
        if not _blocks_preserved(w, p):
            return False
        return sum(1 for v in w[:p] if v < 0) % 2 == 0
    if tag == "c-spxsp":
        return _blocks_preserved(w, p)
    if tag in ("c-sp-gl", "d-so-gl"):
        return all(v > 0 for v in w)
    if tag == "d-oxo-even":
        if not _blocks_preserved(w, p):
            return False
        first = sum(1 for v in w[:p] if v < 0)
        second = sum(1 for v in w[p:] if v < 0)
        return first % 2 == 0 and second % 2 == 0
    # d-oxo-odd: |w| preserves {1..p}, {p+1}, {p+2..n}; total sign parity is
    # already even for type D; the sign at position p+1 carries the parity.
    if abs(w[p]) != p + 1:
        return False
    return all((abs(v) <= p) == (i <= p) for i, v in enumerate(w, start=1) if i != p + 1)


def wk_order(case: CaseId) -> int:
    """Order of W_K (the group tested by wk_member)."""
    import math

    p, q, n = case.p, case.q, case.grank
    tag = case.tag
    if tag == "a":
        return math.factorial(p) * math.factorial(q)
    if tag == "b-so":
        return 2 ** (p - 1) * math.factorial(p) * 2 ** q * math.factorial(q)
    if tag == "c-spxsp":
        return 2 ** p * math.factorial(p) * 2 ** q * math.factorial(q)
    if tag in ("c-sp-gl", "d-so-gl"):
        return math.factorial(n)
    if tag == "d-oxo-even":
        return 2 ** (p - 1) * math.factorial(p) * 2 ** (q - 1) * math.factorial(q)
    return 2 ** (n - 1) * math.factorial(p) * math.factorial(q - 1)


def fixed_point_to_clan(case: CaseId, w: Weyl) -> Clan:
    """The clan of the orbit containing the coordinate-flag fixed point w.

    Supported for the six equal-rank cases; the seventh case has no such
    dictionary for non-closed orbits.
    """
    w = validate_weyl(w, case.family)
    p, n = case.p, case.grank
    if len(w) != n:
        raise WeylError(f"expected a signed permutation of {n}")
    tag = case.tag
    P, Q = case.ambient_shape
    if tag == "a":
        symbols = ["+" if v <= p else "-" for v in w]
        return Clan(tuple(symbols), P, Q)
    if tag in ("b-so", "c-spxsp", "d-oxo-even"):
        half = ["+" if abs(v) <= p else "-" for v in w]
        if tag == "b-so":
            symbols = half + ["-"] + half[::-1]
        else:
            symbols = half + half[::-1]
        return Clan(tuple(symbols), P, Q)
    if tag in ("c-sp-gl", "d-so-gl"):
        half = ["+" if v > 0 else "-" for v in w]
        flipped = ["-" if s == "+" else "+" for s in half]
        return Clan(tuple(half + flipped[::-1]), P, Q)
    raise WeylError(
        "the fixed-point dictionary is not available for case d-oxo-odd"
    )


@lru_cache(maxsize=None)
def fixed_points_by_clan(case: CaseId) -> dict[Clan, tuple[Weyl, ...]]:
    """Group every ambient Weyl element by the clan of its orbit (cases 1-6)."""
    groups: dict[Clan, list[Weyl]] = {}
    for w in ambient_weyl(case):
        c = fixed_point_to_clan(case, w)
        groups.setdefault(c, []).append(w)
    return {c: tuple(ws) for c, ws in groups.items()}


def is_closed_clan(case: CaseId, c: Clan) -> bool:
    """Closed orbits carry sign-only clans; in the seventh case, clans whose
    single pair sits at the two middle positions with signs elsewhere."""
    from .clans import in_case_family

    if not in_case_family(case, c):
        return False
    if case.tag != "d-oxo-odd":
        return not c.pairs()
    n = case.grank
    return c.pairs() == ((n, n + 1),)


def closed_clans(case: CaseId) -> list[Clan]:
    from .clans import enumerate_case_clans

    return [c for c in enumerate_case_clans(case) if is_closed_clan(case, c)]


def closed_orbit_fixed_points(case: CaseId, c: Clan) -> tuple[Weyl, ...]:
    """All coordinate-flag fixed points lying in the given closed orbit."""
    if not is_closed_clan(case, c):
        raise ClanError(f"{c.to_text()} is not a closed-orbit clan for this case")
    if case.tag != "d-oxo-odd":
        return fixed_points_by_clan(case).get(c, ())
    p, n = case.p, case.grank
    out = []
    for w in ambient_weyl(case):
        if abs(w[n - 1]) != p + 1:
            continue
        ok = all(
            (abs(w[i - 1]) <= p) == (c.symbols[i - 1] == "+") for i in range(1, n)
        )
        if ok:
            out.append(w)
    return tuple(out)


def distinguished_representative(case: CaseId, c: Clan) -> Weyl:
    """Deterministic fixed-point representative of a closed orbit.

    Lexicographically least fixed point, except in the seventh case where the
    formulas depend on the choice: there the standard representative has no
    negative entries, w(n) = p+1, and increasing values within the '+'
    positions (1..p) and the '-' positions (p+2..n)."""
    if case.tag != "d-oxo-odd":
        points = closed_orbit_fixed_points(case, c)
        if not points:
            raise ClanError(f"no fixed points found for {c.to_text()}")
        return min(points)
    if not is_closed_clan(case, c):
        raise ClanError(f"{c.to_text()} is not a closed-orbit clan for this case")
    p, n = case.p, case.grank
    vals = [0] * n
    vals[n - 1] = p + 1
    next_plus, next_minus = 1, p + 2
    for i in range(1, n):
        if c.symbols[i - 1] == "+":
            vals[i - 1] = next_plus
            next_plus += 1
        else:
            vals[i - 1] = next_minus
            next_minus += 1
    w = tuple(vals)
    assert w in closed_orbit_fixed_points(case, c)
    return w


# ---------------------------------------------------------------------------
# Root data
# ---------------------------------------------------------------------------


def _unit(n: int, i: int, coeff: int = 1) -> Root:
    vec = [0] * n
    vec[i - 1] = coeff
    return tuple(vec)


def _pair_root(n: int, i: int, j: int, sign: int) -> Root:
    vec = [0] * n
    vec[i - 1] = 1
    vec[j - 1] = sign
    return tuple(vec)


@lru_cache(maxsize=None)
def positive_roots(case: CaseId) -> tuple[Root, ...]:
    """Positive roots of the ambient group, as coefficient vectors."""
    n = case.grank
    fam = case.family
    roots: list[Root] = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            roots.append(_pair_root(n, i, j, -1))
            if fam != "A":
                roots.append(_pair_root(n, i, j, +1))
    if fam == "B":
        roots.extend(_unit(n, i) for i in range(1, n + 1))
    elif fam == "C":
        roots.extend(_unit(n, i, 2) for i in range(1, n + 1))
    return tuple(roots)


def _full_pair_system(n: int, block: range, with_short: bool,
                      short_coeff: int = 1) -> list[Root]:
    """All +/- pair roots within a block, optionally with +/- short roots."""
    roots: list[Root] = []
    members = list(block)
    for a in range(len(members)):
        for b in range(a + 1, len(members)):
            i, j = members[a], members[b]
            for si in (1, -1):
                for sj in (1, -1):
                    vec = [0] * n
                    vec[i - 1] = si
                    vec[j - 1] = sj
                    roots.append(tuple(vec))
    if with_short:
        for i in members:
            roots.append(_unit(n, i, short_coeff))
            roots.append(_unit(n, i, -short_coeff))
    return roots


@lru_cache(maxsize=None)
def subgroup_roots(case: CaseId) -> tuple[Root, ...]:
    """The full (positive and negative) root list of the symmetric subgroup."""
    p, n = case.p, case.grank
    tag = case.tag
    first = range(1, p + 1)
    second = range(p + 1, n + 1)
    roots: list[Root] = []
    if tag == "a":
        for block in (first, second):
            members = list(block)
            for a in range(len(members)):
                for b in range(len(members)):
                    if a != b:
                        i, j = members[a], members[b]
                        vec = [0] * n
                        vec[i - 1] = 1
                        vec[j - 1] = -1
                        roots.append(tuple(vec))
    elif tag == "b-so":
        roots += _full_pair_system(n, first, with_short=False)
        roots += _full_pair_system(n, second, with_short=True)
    elif tag == "c-spxsp":
        roots += _full_pair_system(n, first, with_short=True, short_coeff=2)
        roots += _full_pair_system(n, second, with_short=True, short_coeff=2)
    elif tag in ("c-sp-gl", "d-so-gl"):
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if i != j:
                    vec = [0] * n
                    vec[i - 1] = 1
                    vec[j - 1] = -1
                    roots.append(tuple(vec))
    elif tag == "d-oxo-even":
        roots += _full_pair_system(n, first, with_short=False)
        roots += _full_pair_system(n, second, with_short=False)
    else:  # d-oxo-odd
        roots += _full_pair_system(n, range(1, p + 1), with_short=True)
        roots += _full_pair_system(n, range(p + 2, n + 1), with_short=True)
    return tuple(roots)


def apply_weyl_to_root(w: Weyl, root: Root) -> Root:
    """Push a coefficient vector through X_i -> sign(w(i)) X_|w(i)|."""
    vec = [0] * len(root)
    for i, coeff in enumerate(root, start=1):
        if coeff:
            v = w[i - 1]
            vec[abs(v) - 1] += coeff if v > 0 else -coeff
    return tuple(vec)


def restriction_weights(case: CaseId, w: Weyl) -> tuple[Root, ...]:
    """Multiset of torus weights of the closed orbit's normal-ish directions:
    the images of the positive roots under w (then the coordinate restriction
    for the seventh case), with one occurrence of every subgroup root removed.
    Sorted for determinism."""
    w = validate_weyl(w, case.family)
    images = [apply_weyl_to_root(w, r) for r in positive_roots(case)]
    if case.tag == "d-oxo-odd":
        slot = case.p  # zero out the (p+1)-st coordinate
        images = [r[:slot] + (0,) + r[slot + 1:] for r in images]
    counts = Counter(images)
    for beta in subgroup_roots(case):
        if counts.get(beta, 0) > 0:
            counts[beta] -= 1
    out: list[Root] = []
    for root, k in counts.items():
        out.extend([root] * k)
    return tuple(sorted(out))
