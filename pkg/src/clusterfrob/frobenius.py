"""The splitting calculus on Laurent rings over GF(p).

Everything is built from one primitive: the standard splitting of the
Laurent ring, which keeps exactly the terms whose exponents are all
divisible by p^e, divides those exponents by p^e, and keeps coefficients
(the Frobenius fixes GF(p) pointwise).  Twisted maps premultiply by a
rational twist and clear denominators through the p^e-th root:
    phi((a/b)^(1/q)) = phi((a * b^(q-1))^(1/q)) / b         with q = p^e.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import (FieldMismatchError, NoMutableVertexError,
                     NotAcyclicError, NotDivisibleError,
                     VerificationFailedError)
from .fields import GF, same_field
from .laurent import LaurentPoly, RationalExpr
from .seed import (Seed, cluster_substitution, express_rational)


def _require_prime_field(obj, p: int):
    if not same_field(obj.field, GF(p)):
        raise FieldMismatchError(
            f"expected coefficients in GF({p}), got {obj.field!r}")


def standard_split(f: LaurentPoly, p: int, e: int = 1) -> LaurentPoly:
    """Apply the standard splitting phi^e to f^(1/p^e): keep terms with all
    exponents divisible by p^e, divide those exponents by p^e."""
    _require_prime_field(f, p)
    if e < 1:
        raise ValueError("e must be at least 1")
    q = p ** e
    out = {}
    for exps, c in f.terms.items():
        if all(a % q == 0 for a in exps):
            out[tuple(a // q for a in exps)] = c
    return LaurentPoly(f.field, f.n, out)


@dataclass(frozen=True)
class SplittingMap:
    """A p^(-e)-linear map r -> phi^e((twist * r)^(1/p^e)) on the fraction
    field of the Laurent ring over GF(p)."""

    p: int
    e: int
    twist: RationalExpr

    def __post_init__(self):
        if self.e < 1:
            raise ValueError("e must be at least 1")
        _require_prime_field(self.twist, self.p)

    @classmethod
    def standard(cls, p: int, e: int, n: int) -> "SplittingMap":
        one = RationalExpr(LaurentPoly.one(GF(p), n))
        return cls(p, e, one)

    @property
    def field(self):
        return self.twist.field

    @property
    def n(self) -> int:
        return self.twist.n


def split_apply(m: SplittingMap, r: RationalExpr | LaurentPoly
                ) -> RationalExpr:
    """Evaluate the splitting map on a fraction by clearing denominators:
    with twist*r = a/b and q = p^e, the value is
    standard_split(a * b^(q-1)) / b, returned with the final division
    attempted (so Laurent values come back with denominator 1)."""
    if isinstance(r, LaurentPoly):
        r = RationalExpr(r)
    _require_prime_field(r, m.p)
    a = m.twist.num * r.num
    b = m.twist.den * r.den
    q = m.p ** m.e
    cleared = standard_split(a * b ** (q - 1), m.p, m.e)
    return RationalExpr(cleared, b).simplify()


def iterate_split(m: SplittingMap, r: RationalExpr | LaurentPoly,
                  rounds: int) -> RationalExpr:
    """Apply m repeatedly (rounds >= 1)."""
    if rounds < 1:
        raise ValueError("rounds must be at least 1")
    out = split_apply(m, r)
    for _ in range(rounds - 1):
        out = split_apply(m, out)
    return out


def verify_test_element(c: LaurentPoly | RationalExpr,
                        m: SplittingMap) -> bool:
    """True exactly when the map sends c^(1/p^e) to 1."""
    value = split_apply(m, c)
    return value.is_one()


# -- generator of the splitting module -----------------------------------------


def hom_generator(p: int, n: int, values: dict) -> LaurentPoly:
    """Reconstruct the unique twist s with phi((s*x^b)^(1/p)) equal to the
    prescribed values on every basis monomial x^b, 0 <= b_i < p.

    `values` maps those exponent tuples to Laurent polynomials over GF(p);
    missing entries mean zero.  The candidate is
        s = sum_b values[b]^p * x^(-b),
    and the construction is verified on all p^n basis monomials before
    returning; a mismatch raises VerificationFailedError."""
    fld = GF(p)
    box = list(itertools.product(range(p), repeat=n))
    allowed = set(box)
    for b, val in values.items():
        if tuple(b) not in allowed:
            raise ValueError(f"basis exponent {b} outside [0, {p})^{n}")
        _require_prime_field(val, p)
        if val.n != n:
            raise FieldMismatchError("value lives in the wrong Laurent ring")
    s = LaurentPoly.zero(fld, n)
    for b, val in values.items():
        mono = LaurentPoly.monomial(fld, n, tuple(-x for x in b))
        s = s + val ** p * mono
    for b in box:
        expected = values.get(b, LaurentPoly.zero(fld, n))
        got = standard_split(s * LaurentPoly.monomial(fld, n, b), p, 1)
        if got != expected:
            raise VerificationFailedError(
                f"generator check failed on basis exponent {b}: "
                f"{got.render()} != {expected.render()}")
    return s


# -- compatibility with mutation ----------------------------------------------


@dataclass(frozen=True)
class InvarianceReport:
    quiver_digest: str
    vertex: int
    p: int
    checked: int
    failures: tuple[tuple[tuple[int, ...], str], ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def splitting_invariance_check(seed: Seed, k: int, p: int,
                               sample) -> InvarianceReport:
    """Verify that the standard splitting looks standard in the mutated
    cluster too: for each exponent vector alpha in `sample`, the image of
    (x'^alpha)^(1/p) under the initial-cluster standard splitting, re-read
    in the cluster mutated at k, equals x'^(alpha/p) when p divides alpha
    componentwise and 0 otherwise."""
    _require_prime_field(seed.vars[0], p)
    fld, n = seed.field, seed.n
    mutated = seed.mutate(k)
    m = SplittingMap.standard(p, 1, n)
    subs = cluster_substitution(seed, (k,))
    power_cache: dict[tuple[int, int], RationalExpr] = {}

    def var_power(i: int, a: int) -> RationalExpr:
        key = (i, a)
        got = power_cache.get(key)
        if got is None:
            got = power_cache[key] = RationalExpr(mutated.vars[i]) ** a
        return got

    failures = []
    checked = 0
    for alpha in sample:
        alpha = tuple(alpha)
        if len(alpha) != n:
            raise ValueError(f"alpha {alpha} has wrong length")
        checked += 1
        expr = RationalExpr(LaurentPoly.one(fld, n))
        for i, a in enumerate(alpha):
            if a:
                expr = expr * var_power(i, a)
        image = split_apply(m, expr)  # in the initial cluster
        moved = express_rational(image, subs)
        if all(a % p == 0 for a in alpha):
            expected = LaurentPoly.monomial(
                fld, n, tuple(a // p for a in alpha))
        else:
            expected = LaurentPoly.zero(fld, n)
        try:
            got = moved.as_laurent()
        except NotDivisibleError:
            failures.append((alpha, "image is not Laurent in the mutated "
                                    "cluster: " + moved.render()))
            continue
        if got != expected:
            failures.append(
                (alpha, f"{got.render()} != {expected.render()}"))
    return InvarianceReport(seed.quiver.digest(), k, p, checked,
                            tuple(failures))


# -- strong F-regularity witnesses at a sink --------------------------------------


@dataclass(frozen=True)
class SinkWitness:
    sink: int
    p: int
    e: int
    map: SplittingMap
    value: RationalExpr
    verified: bool


def freg_witness_sink(seed: Seed, p: int) -> SinkWitness:
    """Build the splitting that witnesses strong F-regularity from a sink
    of an acyclic seed, and verify it sends x_sink^(1/p^e) to 1.

    Working in the seed's own cluster: with x' = (p_plus + p_minus)/x_sink
    and the twist x' / p_minus, the minimal usable e is the one with p^e
    strictly larger than every exponent of p_plus and p_minus."""
    quiver = seed.quiver
    if not quiver.mutable:
        raise NoMutableVertexError("need at least one mutable vertex")
    if not quiver.is_acyclic():
        raise NotAcyclicError("the mutable subquiver has an oriented cycle")
    _require_prime_field(seed.vars[0], p)
    fld, n = seed.field, seed.n
    k = quiver.find_sink()
    plus_exp = [0] * n
    minus_exp = [0] * n
    for j in range(n):
        mlt = quiver.b[j][k]
        if mlt > 0:
            plus_exp[j] = mlt
        elif mlt < 0:
            minus_exp[j] = -mlt
    largest = max(max(plus_exp), max(minus_exp))
    e = 1
    while p ** e <= largest:
        e += 1
    p_plus = LaurentPoly.monomial(fld, n, plus_exp)
    p_minus = LaurentPoly.monomial(fld, n, minus_exp)
    xk = LaurentPoly.variable(fld, n, k)
    x_new = (p_plus + p_minus) * xk.inverse()
    twist = RationalExpr(x_new * p_minus.inverse())
    m = SplittingMap(p, e, twist)
    value = split_apply(m, xk)
    return SinkWitness(k, p, e, m, value, value.is_one())
