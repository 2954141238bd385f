"""Splitting of the presented lower-bound algebra.

For an initial seed on n vertices, the algebra generated by the cluster
variables and their first mutations is presented on 2n polynomial
variables x_1..x_n, y_1..y_n by the ideal with generators
    g_i = x_i * y_i - p_i^+ - p_i^-        (one per vertex),
where p_i^+/- are the exchange monomials of the quiver.  With
f = g_1 * ... * g_n, the map
    psi(r) = basis-split of (f^(p-1) * r)^(1/p)
splits the presentation: psi(1) = 1, and the ideal (f) is carried into
itself.  The basis split keeps exactly the monomials with every exponent
congruent to p-1 mod p, subtracts p-1 from each exponent and divides by p
(the monomial x^(p-1, ..., p-1) is the one the dual basis picks out).

The f^(p-1) expansion is the hot loop of the whole package; it runs on the
kernel backend under the max_raw_products budget.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import budgets
from .errors import BudgetExceededError, FieldMismatchError, NotDivisibleError
from .fields import GF, same_field
from .laurent import LaurentPoly, RationalExpr
from .seed import Seed


@dataclass(eq=False)
class LowerBoundPresentation:
    """Presentation data over the seed's coefficient field.

    Polynomials in the 2n presentation variables use exponent vectors of
    length 2n ordered x_1..x_n, y_1..y_n; `names` matches that order."""

    seed: Seed
    gens: tuple[LaurentPoly, ...]          # g_i, in 2n variables
    f: LaurentPoly                          # product of the g_i
    exchange: tuple[tuple[LaurentPoly, LaurentPoly], ...]  # (p_i^+, p_i^-)
    xprime: tuple[LaurentPoly, ...]         # first mutations, in n variables

    def __post_init__(self):
        self._fpow: dict[int, LaurentPoly] = {}

    @property
    def n(self) -> int:
        return self.seed.n

    @property
    def field(self):
        return self.seed.field

    @property
    def names(self) -> list[str]:
        n = self.n
        return [f"x{i + 1}" for i in range(n)] + [f"y{i + 1}" for i in range(n)]

    def generators(self) -> tuple[RationalExpr, ...]:
        """The algebra generators x_1..x_n, x_1'..x_n' (n variables each)."""
        fld, n = self.field, self.n
        xs = tuple(RationalExpr.variable(fld, n, i) for i in range(n))
        primes = tuple(RationalExpr(v) for v in self.xprime)
        return xs + primes


def lower_bound_generators(seed: Seed) -> LowerBoundPresentation:
    """Build the presentation from an initial seed (identity cluster)."""
    if not seed.is_initial():
        raise ValueError("the lower-bound presentation needs an initial seed")
    fld, n = seed.field, seed.n
    nn = 2 * n
    gens = []
    exchange = []
    xprime = []
    for i in range(n):
        plus = [0] * nn
        minus = [0] * nn
        plus_small = [0] * n
        minus_small = [0] * n
        for j in range(n):
            m = seed.quiver.b[j][i]
            if m > 0:
                plus[j] = m
                plus_small[j] = m
            elif m < 0:
                minus[j] = -m
                minus_small[j] = -m
        xy = [0] * nn
        xy[i] = 1
        xy[n + i] = 1
        g = LaurentPoly.from_terms(fld, nn, [
            (tuple(xy), 1), (tuple(plus), -1), (tuple(minus), -1)])
        gens.append(g)
        p_plus = LaurentPoly.monomial(fld, nn, plus)
        p_minus = LaurentPoly.monomial(fld, nn, minus)
        exchange.append((p_plus, p_minus))
        small = (LaurentPoly.monomial(fld, n, plus_small)
                 + LaurentPoly.monomial(fld, n, minus_small))
        xprime.append(small * LaurentPoly.variable(fld, n, i).inverse())
    f = LaurentPoly.one(fld, nn)
    for g in gens:
        f = f * g
    return LowerBoundPresentation(seed, tuple(gens), f, tuple(exchange),
                                  tuple(xprime))


class _ProductMeter:
    """Raw term-product counter shared by one psi evaluation."""

    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def mul(self, a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
        self.used += len(a.terms) * len(b.terms)
        if self.used > self.limit:
            raise BudgetExceededError(
                "max_raw_products",
                f"psi expansion needs more than {self.limit} term-products")
        return a * b


def _f_power(pres: LowerBoundPresentation, exponent: int,
             meter: _ProductMeter) -> LaurentPoly:
    """f^exponent, factor by factor, cached on the presentation."""
    cached = pres._fpow.get(exponent)
    if cached is not None:
        return cached
    out = LaurentPoly.one(pres.field, 2 * pres.n)
    for _ in range(exponent):
        for g in pres.gens:
            out = meter.mul(out, g)
    pres._fpow[exponent] = out
    return out


def psi_f_apply(pres: LowerBoundPresentation, r: LaurentPoly,
                p: int) -> LaurentPoly:
    """psi(r) = basis-split of (f^(p-1) * r)^(1/p).

    r must be a polynomial (no negative exponents) in the 2n presentation
    variables over GF(p)."""
    if not same_field(pres.field, GF(p)):
        raise FieldMismatchError(
            f"presentation is over {pres.field!r}, expected GF({p})")
    if not same_field(r.field, GF(p)) or r.n != 2 * pres.n:
        raise FieldMismatchError(
            "argument must live in the 2n-variable ring over GF(p)")
    if any(a < 0 for e in r.terms for a in e):
        raise ValueError("psi arguments live in the polynomial ring; "
                         "negative exponents are not allowed")
    meter = _ProductMeter(budgets.current().max_raw_products)
    big = meter.mul(_f_power(pres, p - 1, meter), r)
    out = {}
    for exps, c in big.terms.items():
        if all(a % p == p - 1 for a in exps):
            out[tuple((a - (p - 1)) // p for a in exps)] = c
    return LaurentPoly(r.field, r.n, out)


def verify_lb_splitting(pres: LowerBoundPresentation, p: int) -> bool:
    """The splitting condition itself: psi(1) = 1 exactly."""
    one = LaurentPoly.one(GF(p), 2 * pres.n)
    return psi_f_apply(pres, one, p) == one


@dataclass(frozen=True)
class CompatReport:
    p: int
    checked: int
    failures: tuple[tuple[str, str], ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def compat_check(pres: LowerBoundPresentation, p: int,
                 samples) -> CompatReport:
    """psi(f * g) must land back in the ideal (f): zero or exactly
    divisible by f.  `samples` iterates over polynomials g (or exponent
    tuples, taken as monomials)."""
    failures = []
    checked = 0
    fld = GF(p)
    for g in samples:
        if not isinstance(g, LaurentPoly):
            g = LaurentPoly.monomial(fld, 2 * pres.n, tuple(g))
        checked += 1
        value = psi_f_apply(pres, pres.f * g, p)
        if value.is_zero():
            continue
        try:
            value.exact_divide(pres.f)
        except NotDivisibleError:
            failures.append((g.render(pres.names),
                             value.render(pres.names)))
    return CompatReport(p, checked, tuple(failures))


def degree_bounded_monomials(nvars: int, max_degree: int):
    """All exponent tuples in `nvars` variables with total degree
    <= max_degree, in lexicographic order."""
    out = []

    def rec(prefix, remaining, slots):
        if slots == 0:
            out.append(tuple(prefix))
            return
        for d in range(remaining + 1):
            rec(prefix + [d], remaining - d, slots - 1)

    rec([], max_degree, nvars)
    return sorted(out)


def localization_identity_check(pres: LowerBoundPresentation) -> bool:
    """Substituting y_i = x_i' kills every generator g_i: the presentation
    collapses onto the Laurent ring after inverting the cluster monomial."""
    fld, n = pres.field, pres.n
    for i, g in enumerate(pres.gens):
        total = RationalExpr(LaurentPoly.zero(fld, n))
        for exps, c in g.terms.items():
            term = RationalExpr(LaurentPoly.constant(fld, n, c))
            mono = [0] * n
            for j in range(n):
                if exps[j]:
                    mono[j] = exps[j]
            term = term * RationalExpr(LaurentPoly.monomial(fld, n, mono))
            for j in range(n):
                a = exps[n + j]
                if a:
                    term = term * RationalExpr(pres.xprime[j]) ** a
            total = total + term
        if not total.is_zero():
            return False
    return True
