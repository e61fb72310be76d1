"""Equivariant classes of orbit closures and their verification.

Closed orbits get explicit factored formulas built from their distinguished
fixed-point representatives.  Every other orbit's class is propagated along
the weak order: a weak edge of degree d along simple root alpha_i carries
[source] to (1/d) * divided_difference_i([source]), and propagation along
different paths must agree.  Localization then checks the computed classes
pointwise: restriction at each fixed point of each closed orbit must equal
the product of the tangent weights there, and (where the fixed-point
dictionary is available) restrictions must vanish away from the closure.

Determinantal convention used by the GL-type families: ``delta(ring, m, w)``
is the m x m determinant ``det(c_{m+1+j-2i})`` where ``c_k`` is the sum of
the k-th elementary symmetric polynomials of the signed x-variables
``sgn(w^{-1}(i)) * x_{|w^{-1}(i)|}`` and of all y-variables, ``c_0 = 2``,
and ``c_k = 0`` for k < 0 or k > n.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .clans import CaseId, Clan, ClanError, leq
from .orbits import OrbitPoset, full_closure_order, weak_order_graph
from .poly import (
    FactoredPoly,
    PolyError,
    Polynomial,
    Ring,
    chern_substitute,
    determinant,
    divided_difference,
    elem_sym,
)
from .weyl import (
    Weyl,
    closed_clans,
    closed_orbit_fixed_points,
    distinguished_representative,
    fixed_points_by_clan,
    is_closed_clan,
    restriction_weights,
    stat_lp,
    stat_phip,
    stat_psi,
    stat_sigma,
    stat_tau,
    weyl_abs,
    weyl_inverse,
)


class FormulaError(ValueError):
    """Raised when class computation or verification fails."""


def formula_ring(case: CaseId) -> Ring:
    """Polynomial ring for a case: x_1..x_n, y_1..y_n, z_1..z_n."""
    n = case.grank
    return Ring(n, n, n)


# ---------------------------------------------------------------------------
# Closed-orbit classes
# ---------------------------------------------------------------------------


def _sign(k: int) -> Fraction:
    return Fraction(-1 if k % 2 else 1)


def _pair_factors(ring: Ring, a: int, j: int) -> list[Polynomial]:
    """(x_a - y_j)(x_a + y_j) as two factors."""
    return [ring.x(a) - ring.y(j), ring.x(a) + ring.y(j)]


def delta(ring: Ring, m: int, w: Weyl, c_zero: Fraction | int = 2) -> Polynomial:
    """The m x m determinant det(c_{m+1+j-2i}) described in the module doc."""
    n = ring.nx
    if len(w) != n:
        raise FormulaError("group element length does not match the ring")
    winv = weyl_inverse(w)
    xs = [ring.x(abs(v)) * (1 if v > 0 else -1) for v in winv]
    ys = [ring.y(j) for j in range(1, n + 1)]
    c_cache = {
        k: elem_sym(ring, k, xs) + elem_sym(ring, k, ys) for k in range(1, n + 1)
    }

    def c(k: int) -> Polynomial:
        if k == 0:
            return ring.const(c_zero)
        if 0 < k <= n:
            return c_cache[k]
        return ring.zero

    matrix = [[c(m + 1 + j - 2 * i) for j in range(1, m + 1)]
              for i in range(1, m + 1)]
    return determinant(matrix)


def closed_class(case: CaseId, c: Clan) -> FactoredPoly:
    """Factored equivariant class of a closed orbit's closure."""
    if not is_closed_clan(case, c):
        raise ClanError(f"{c.to_text()} is not a closed-orbit clan of {case.tag}")
    ring = formula_ring(case)
    n, p = case.grank, case.p
    w = distinguished_representative(case, c)
    tag = case.tag

    if tag == "a":
        winv = weyl_inverse(w)
        factors = []
        for i in range(1, p + 1):
            for j in range(p + 1, n + 1):
                factors.append(ring.x(winv[i - 1]) - ring.y(j))
        return FactoredPoly(ring, _sign(stat_lp(w, p)), factors)

    if tag == "b-so":
        awinv = weyl_inverse(weyl_abs(w))
        factors = [ring.x(awinv[i - 1]) for i in range(1, p + 1)]
        for i in range(1, p + 1):
            for j in range(p + 1, n + 1):
                factors += _pair_factors(ring, awinv[i - 1], j)
        return FactoredPoly(ring, _sign(stat_lp(weyl_abs(w), p)), factors)

    if tag in ("c-spxsp", "d-oxo-even"):
        awinv = weyl_inverse(weyl_abs(w))
        factors = []
        for i in range(1, p + 1):
            for j in range(p + 1, n + 1):
                factors += _pair_factors(ring, awinv[i - 1], j)
        return FactoredPoly(ring, _sign(stat_lp(weyl_abs(w), p)), factors)

    if tag == "c-sp-gl":
        sign = _sign(stat_psi(w) + stat_sigma(w))
        return FactoredPoly(ring, sign, [delta(ring, n, w)])

    if tag == "d-so-gl":
        scalar = _sign(stat_sigma(w)) * Fraction(1, 2 ** (n - 1))
        return FactoredPoly(ring, scalar, [delta(ring, n - 1, w)])

    # branched orthogonal pair (odd ranks): the standard representative
    winv = weyl_inverse(w)
    factors = [ring.x(i) for i in range(1, n)]
    for i in range(1, p + 1):
        for j in range(p + 2, n + 1):
            factors += _pair_factors(ring, winv[i - 1], j)
    return FactoredPoly(ring, _sign(stat_tau(w, p)), factors)


def component_class(case: CaseId, u: Weyl) -> FactoredPoly:
    """One subgroup-component summand of a closed-orbit class in the odd
    special orthogonal family; the full class is the sum over the two
    components' representatives u and (-1,2,...,n) o u.

    Signed indices act on variables by x_{-k} = -x_k."""
    if case.tag != "b-so":
        raise FormulaError("component classes only arise in the b-so case")
    ring = formula_ring(case)
    n, p = case.grank, case.p
    uinv = weyl_inverse(u)
    sign = _sign(stat_phip(u, p) + stat_lp(weyl_abs(u), p))
    mono_x = ring.one
    for i in range(1, p + 1):
        v = uinv[i - 1]
        mono_x = mono_x * ring.x(abs(v)) * (1 if v > 0 else -1)
    mono_y = ring.one
    for i in range(1, p + 1):
        mono_y = mono_y * ring.y(i)
    factors = [mono_x + mono_y]
    for i in range(1, p + 1):
        a = abs(uinv[i - 1])
        for j in range(p + 1, n + 1):
            factors += _pair_factors(ring, a, j)
    return FactoredPoly(ring, sign * Fraction(1, 2), factors)


# ---------------------------------------------------------------------------
# Propagation along the weak order
# ---------------------------------------------------------------------------


def all_classes(
    case: CaseId, poset: OrbitPoset | None = None
) -> dict[Clan, Polynomial]:
    """Classes of every orbit closure, propagated up the weak order."""
    if poset is None:
        poset = weak_order_graph(case)
    ring = formula_ring(case)
    family, n = case.family, case.grank
    classes: dict[Clan, Polynomial] = {
        c: closed_class(case, c).expand() for c in poset.minima()
    }
    for src, dst, i, deg in sorted(
        poset.weak_edges, key=lambda e: (poset.ranks[e[0]], e[0].sort_key(), e[2])
    ):
        value = divided_difference(classes[src], family, n, i)
        if deg == 2:
            value = value * Fraction(1, 2)
        known = classes.get(dst)
        if known is None:
            classes[dst] = value
        elif known != value:
            raise FormulaError(
                "propagation is path dependent at "
                f"{dst.to_text()} (via root {i} from {src.to_text()})"
            )
    if classes[poset.top] != ring.one:
        raise FormulaError("the dense orbit's class is not 1")
    codim = poset.max_rank
    for c, f in classes.items():
        expected = codim - poset.ranks[c]
        if f.degree() != expected or not f.is_homogeneous():
            raise FormulaError(
                f"class of {c.to_text()} is not homogeneous of degree {expected}"
            )
    return classes


# ---------------------------------------------------------------------------
# Localization
# ---------------------------------------------------------------------------


def restrict_at(case: CaseId, f: Polynomial, w: Weyl) -> Polynomial:
    """Restrict a class to the fixed point w: x_i evaluates to the signed
    y-variable picked out by w(i); in the branched odd case the absolute
    value p+1 evaluates to zero."""
    ring = f.ring
    n = case.grank
    if len(w) != n:
        raise FormulaError("fixed point length does not match the case")
    zero_abs = case.p + 1 if case.tag == "d-oxo-odd" else None
    images = {}
    for i in range(1, n + 1):
        v = w[i - 1]
        a = abs(v)
        if a == zero_abs:
            images[ring.var_index("x", i)] = ring.zero
        else:
            images[ring.var_index("x", i)] = ring.y(a) * (1 if v > 0 else -1)
    return f.substitute(images)


def closed_restriction_product(case: CaseId, w: Weyl) -> Polynomial:
    """Product of the predicted tangent weights at a closed-orbit fixed
    point, as a polynomial in the y-variables."""
    ring = formula_ring(case)
    out = ring.one
    for weights in restriction_weights(case, w):
        lin = ring.zero
        for k, coeff in enumerate(weights, start=1):
            if coeff:
                lin = lin + ring.y(k) * coeff
        out = out * lin
    return out


@dataclass(frozen=True)
class LocalizationReport:
    case: CaseId
    closed_points_checked: int
    support_pairs_checked: int
    support_checked: bool
    dense_ok: bool
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return self.dense_ok and not self.failures


def verify_localization(
    case: CaseId,
    classes: Mapping[Clan, Polynomial] | None = None,
    poset: OrbitPoset | None = None,
    threads: int = 1,
) -> LocalizationReport:
    """Pointwise correctness checks for the computed classes.

    * at every fixed point of every closed orbit, the restriction of the
      closed class equals the product of the tangent weights there;
    * where the fixed-point dictionary is available (every case except the
      branched odd one), the restriction of [closure of Q] vanishes at all
      fixed points of orbits not below Q in the full closure order;
    * the dense orbit's class is the constant 1.
    """
    if poset is None or poset.full_order is None:
        poset = full_closure_order(poset if poset is not None else case)
    if classes is None:
        classes = all_classes(case, poset)
    ring = formula_ring(case)
    failures: list[str] = []

    def check_closed(c: Clan) -> list[str]:
        bad = []
        f = classes[c]
        for w in closed_orbit_fixed_points(case, c):
            lhs = restrict_at(case, f, w)
            rhs = closed_restriction_product(case, w)
            if lhs != rhs:
                bad.append(
                    f"closed restriction mismatch at {c.to_text()}, "
                    f"fixed point {w}"
                )
        return bad

    closed = closed_clans(case)
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            for bad in pool.map(check_closed, closed):
                failures.extend(bad)
    else:
        for c in closed:
            failures.extend(check_closed(c))
    closed_points = sum(len(closed_orbit_fixed_points(case, c)) for c in closed)

    support_pairs = 0
    support_checked = case.tag != "d-oxo-odd"
    if support_checked:
        by_clan = fixed_points_by_clan(case)
        for c in poset.nodes:
            f = classes[c]
            below = poset.full_order[c]
            for other, points in by_clan.items():
                if other in below:
                    continue
                support_pairs += 1
                for w in points:
                    if not restrict_at(case, f, w).is_zero():
                        failures.append(
                            f"nonzero restriction of {c.to_text()} at a fixed "
                            f"point {w} of {other.to_text()}"
                        )
                        break

    dense_ok = classes[poset.top] == ring.one
    return LocalizationReport(
        case, closed_points, support_pairs, support_checked, dense_ok,
        tuple(failures),
    )


# ---------------------------------------------------------------------------
# Chern-class form
# ---------------------------------------------------------------------------


def chern_blocks(case: CaseId) -> tuple[tuple[int, int], ...]:
    """y-variable blocks whose elementary symmetric polynomials become the
    z-variables of the Chern-class form."""
    p, q, n = case.p, case.q, case.grank
    if case.tag in ("c-sp-gl", "d-so-gl"):
        blocks = [(1, n)]
    elif case.tag == "d-oxo-odd":
        blocks = [(1, p), (p + 2, q - 1)]
    else:
        blocks = [(1, p), (p + 1, q)]
    return tuple((start, size) for start, size in blocks if size > 0)


def chern_class(
    case: CaseId,
    c: Clan,
    classes: Mapping[Clan, Polynomial] | None = None,
) -> Polynomial:
    """The class with y-variables rewritten as Chern classes (z-variables)."""
    if classes is None:
        classes = all_classes(case)
    return chern_substitute(classes[c], chern_blocks(case))


def chern_factored(
    case: CaseId,
    c: Clan,
    classes: Mapping[Clan, Polynomial] | None = None,
) -> FactoredPoly:
    """Chern-class form, factored when the closed-orbit factorization
    passes through the rewriting (factors are grouped by their x-variable
    support so each group is symmetric in the y-blocks)."""
    blocks = chern_blocks(case)
    if not is_closed_clan(case, c):
        return FactoredPoly(
            formula_ring(case), 1, [chern_class(case, c, classes)]
        )
    fp = closed_class(case, c)
    nx = fp.ring.nx
    done: list[tuple[tuple[int, ...], int, Polynomial]] = []
    pending: dict[frozenset, Polynomial] = {}
    for pos, fac in enumerate(fp.factors):
        key = frozenset(v for v in fac.used_vars() if v < nx)
        try:
            done.append((tuple(sorted(key)), pos, chern_substitute(fac, blocks)))
        except PolyError:
            pending[key] = pending.get(key, fp.ring.one) * fac
    try:
        for key, prod in pending.items():
            done.append((tuple(sorted(key)), len(fp.factors),
                         chern_substitute(prod, blocks)))
    except PolyError:
        return FactoredPoly(fp.ring, 1, [chern_substitute(fp.expand(), blocks)])
    done.sort(key=lambda t: (t[0], t[1]))
    return FactoredPoly(fp.ring, fp.scalar, [f for *_, f in done])
