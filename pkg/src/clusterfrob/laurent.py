"""Sparse multivariate Laurent polynomials with exact coefficients.

The central representation of the package: a LaurentPoly is an immutable
sparse map from integer exponent vectors (any sign) to nonzero field
elements, over QQ or GF(p).  On top of it sit exact division by descending
leading-term cancellation, termwise partial derivatives, the canonical text
rendering used by the CLI, and unreduced numerator/denominator pairs
(RationalExpr) for fraction-field work.

Term order is lexicographic on exponent tuples throughout; the canonical
rendering lists terms in descending lex order.
"""

from __future__ import annotations

import heapq
import re
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from . import budgets, kernels
from .errors import FieldMismatchError, NotDivisibleError, BudgetExceededError
from .fields import GF, QQ, require_same_field


class LaurentPoly:
    """Immutable sparse Laurent polynomial in n variables.

    `terms` maps exponent tuples of length n to nonzero coefficients
    (Fraction over QQ, canonical residues over GF(p)).  Use the
    classmethod constructors; the raw __init__ trusts its input.
    """

    __slots__ = ("field", "n", "terms", "_hash")

    def __init__(self, field, n: int, terms: dict):
        self.field = field
        self.n = n
        self.terms = terms
        self._hash = None

    # -- construction -----------------------------------------------------

    @classmethod
    def from_terms(cls, field, n: int, items) -> "LaurentPoly":
        """Normalizing constructor: coerces coefficients, drops zeros,
        merges repeated exponent vectors."""
        terms: dict = {}
        pairs = items.items() if isinstance(items, Mapping) else items
        for exps, coeff in pairs:
            e = tuple(exps)
            if len(e) != n:
                raise ValueError(
                    f"exponent vector {e} has length {len(e)}, expected {n}")
            for x in e:
                if not isinstance(x, int):
                    raise ValueError(f"exponent {x!r} is not an int")
            c = field.coerce(coeff)
            old = terms.get(e)
            c = c if old is None else old + c
            if field.char:
                c %= field.char
            if c:
                terms[e] = c
            elif old is not None:
                del terms[e]
        return cls(field, n, terms)

    @classmethod
    def zero(cls, field, n: int) -> "LaurentPoly":
        return cls(field, n, {})

    @classmethod
    def constant(cls, field, n: int, value) -> "LaurentPoly":
        c = field.coerce(value)
        return cls(field, n, {(0,) * n: c} if c else {})

    @classmethod
    def one(cls, field, n: int) -> "LaurentPoly":
        return cls(field, n, {(0,) * n: field.one})

    @classmethod
    def variable(cls, field, n: int, i: int) -> "LaurentPoly":
        if not 0 <= i < n:
            raise IndexError(f"variable index {i} out of range for n={n}")
        e = tuple(1 if j == i else 0 for j in range(n))
        return cls(field, n, {e: field.one})

    @classmethod
    def monomial(cls, field, n: int, exps, coeff=1) -> "LaurentPoly":
        return cls.from_terms(field, n, [(tuple(exps), coeff)])

    # -- predicates and views ---------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {(0,) * self.n: self.field.one}

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[tuple[int, ...], object]]:
        return iter(self.terms.items())

    def leading_term(self) -> tuple[tuple[int, ...], object]:
        """Lexicographically largest exponent vector with its coefficient."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms)
        return e, self.terms[e]

    def coefficient(self, exps) -> object:
        return self.terms.get(tuple(exps), self.field.zero)

    def coordinate_sums(self) -> set[int]:
        """Set of exponent-coordinate sums over the support (grading degrees
        for the all-weights-one grading)."""
        return {sum(e) for e in self.terms}

    def support_box(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Componentwise (min, max) over the support; zero poly rejected."""
        if not self.terms:
            raise ValueError("zero polynomial has empty support")
        keys = list(self.terms)
        lo = tuple(min(e[i] for e in keys) for i in range(self.n))
        hi = tuple(max(e[i] for e in keys) for i in range(self.n))
        return lo, hi

    # -- equality / hashing / ordering ------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return (self.n == other.n and self.field == other.field
                and self.terms == other.terms)

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            key = (self.field.name, self.n, frozenset(self.terms.items()))
            h = self._hash = hash(key)
        return h

    def sort_key(self):
        """Deterministic total order key among polynomials over one field."""
        return tuple(sorted(self.terms.items(), reverse=True))

    # -- arithmetic --------------------------------------------------------

    def _compat(self, other: "LaurentPoly") -> None:
        require_same_field(self.field, other.field)
        if self.n != other.n:
            raise FieldMismatchError(
                f"variable count mismatch: {self.n} vs {other.n}")

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        self._compat(other)
        return LaurentPoly(self.field, self.n,
                           kernels.add_terms(self.terms, other.terms,
                                             self.field.char))

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        self._compat(other)
        return LaurentPoly(self.field, self.n,
                           kernels.sub_terms(self.terms, other.terms,
                                             self.field.char))

    def __neg__(self):
        return LaurentPoly(self.field, self.n,
                           kernels.neg_terms(self.terms, self.field.char))

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        self._compat(other)
        terms = kernels.mul_terms(self.terms, other.terms, self.field.char,
                                  budgets.current().max_terms,
                                  budgets.raw_allowance())
        return LaurentPoly(self.field, self.n, terms)

    def scale(self, coeff) -> "LaurentPoly":
        c = self.field.coerce(coeff)
        if not c:
            return LaurentPoly.zero(self.field, self.n)
        terms = kernels.scale_shift_terms(self.terms, (0,) * self.n, c,
                                          self.field.char)
        return LaurentPoly(self.field, self.n, terms)

    def shift(self, exps) -> "LaurentPoly":
        """Multiply by the monomial x^exps."""
        terms = kernels.scale_shift_terms(self.terms, tuple(exps),
                                          self.field.one, self.field.char)
        return LaurentPoly(self.field, self.n, terms)

    def inverse(self) -> "LaurentPoly":
        """Inverse of a monomial; anything else has no Laurent inverse."""
        if len(self.terms) != 1:
            raise NotDivisibleError(
                "only monomials are invertible in the Laurent ring")
        (e, c), = self.terms.items()
        return LaurentPoly(self.field, self.n,
                           {tuple(-x for x in e): self.field.invert(c)})

    def __pow__(self, k: int) -> "LaurentPoly":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = LaurentPoly.one(self.field, self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- exact division -----------------------------------------------------

    def exact_divide(self, divisor: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient self / divisor, or NotDivisibleError.

        Classical descending division: repeatedly cancel the lex-leading
        remainder term against the divisor's leading term.  Because
        componentwise support extremes are additive under multiplication,
        every true quotient term lies in the box
        [min(self)-min(divisor), max(self)-max(divisor)]; a candidate
        outside that box disproves divisibility immediately, and the box
        also bounds the number of steps.  The configured term and step
        budgets remain as backstops.
        """
        self._compat(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("exact division by the zero polynomial")
        if self.is_zero():
            return self
        field = self.field
        p = field.char
        lo_a, hi_a = self.support_box()
        lo_b, hi_b = divisor.support_box()
        lo = tuple(lo_a[i] - lo_b[i] for i in range(self.n))
        hi = tuple(hi_a[i] - hi_b[i] for i in range(self.n))
        if any(lo[i] > hi[i] for i in range(self.n)):
            raise NotDivisibleError("no quotient: empty support box")

        eb, cb = divisor.leading_term()
        cb_inv = field.invert(cb)
        bres = budgets.current()
        raw = budgets.raw_allowance()
        rem = dict(self.terms)
        # max-heap of candidate leading exponents, realized as a min-heap
        # of negated tuples with lazy deletion
        heap = [tuple(-x for x in e) for e in rem]
        heapq.heapify(heap)
        quotient: dict = {}
        steps = 0
        while rem:
            while True:
                if not heap:
                    raise NotDivisibleError("remainder has no live terms")
                er = tuple(-x for x in heapq.heappop(heap))
                cr = rem.get(er)
                if cr is not None:
                    break
            et = tuple(er[i] - eb[i] for i in range(self.n))
            if any(not lo[i] <= et[i] <= hi[i] for i in range(self.n)):
                raise NotDivisibleError(
                    "no quotient: leading term leaves the support box")
            ct = cr * cb_inv % p if p else cr * cb_inv
            quotient[et] = ct
            touched = kernels.submul_terms(rem, et, ct, divisor.terms, p, raw)
            for e in touched:
                heapq.heappush(heap, tuple(-x for x in e))
            steps += 1
            if steps > bres.max_division_steps:
                raise BudgetExceededError(
                    "max_division_steps", f"after {steps} cancellations")
            if len(rem) > bres.max_terms:
                raise BudgetExceededError(
                    "max_terms", "division remainder grew past the budget")
        return LaurentPoly(field, self.n, quotient)

    def divides(self, other: "LaurentPoly") -> bool:
        try:
            other.exact_divide(self)
            return True
        except NotDivisibleError:
            return False

    # -- calculus ------------------------------------------------------------

    def partial_derivative(self, i: int) -> "LaurentPoly":
        """Termwise d/dx_i; the exponent multiplies as a field scalar, so
        over GF(p) terms with x_i-exponent divisible by p die."""
        if not 0 <= i < self.n:
            raise IndexError(f"variable index {i} out of range for n={self.n}")
        field = self.field
        p = field.char
        out: dict = {}
        for e, c in self.terms.items():
            a = e[i]
            if a == 0:
                continue
            if p:
                v = a % p * c % p
                if not v:
                    continue
            else:
                v = a * c
            e2 = list(e)
            e2[i] = a - 1
            out[tuple(e2)] = v
        return LaurentPoly(field, self.n, out)

    # -- rendering -----------------------------------------------------------

    def render(self, names: list[str] | None = None) -> str:
        """Canonical text form: terms in descending lex exponent order,
        `coeff*x1^a1*...*xn^an` per term, unit exponents and coefficient 1
        omitted, negative coefficients pulled into the separator.

        This string is the byte-exact CLI contract; parse_laurent inverts it.
        """
        if not self.terms:
            return "0"
        if names is None:
            names = [f"x{i + 1}" for i in range(self.n)]
        rational = self.field.char == 0
        pieces: list[tuple[bool, str]] = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            negative = rational and c < 0
            mag = -c if negative else c
            factors = []
            for i, a in enumerate(e):
                if a == 0:
                    continue
                factors.append(names[i] if a == 1 else f"{names[i]}^{a}")
            body = "*".join(factors)
            if not body:
                text = self.field.render(mag)
            elif mag == self.field.one:
                text = body
            else:
                text = f"{self.field.render(mag)}*{body}"
            pieces.append((negative, text))
        first_neg, first = pieces[0]
        out = [f"-{first}" if first_neg else first]
        for negative, text in pieces[1:]:
            out.append(f" - {text}" if negative else f" + {text}")
        return "".join(out)

    def __repr__(self):
        return f"LaurentPoly({self.field!r}, {self.render()!r})"


# -- parsing ------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<var>x(?P<idx>\d+))(?:\^(?P<exp>-?\d+))?"
                    r"|(?P<num>\d+(?:/\d+)?)"
                    r"|(?P<op>[+\-*]))")


def parse_laurent(text: str, n: int, field) -> LaurentPoly:
    """Parse the canonical rendering (and harmless variants) back into a
    LaurentPoly.  Accepts signed integer or a/b coefficients over QQ,
    nonnegative integers over GF(p), `*`-joined factors, and `^` powers."""
    items: list[tuple[tuple[int, ...], object]] = []
    pos = 0
    text = text.strip()
    if not text:
        raise ValueError("empty polynomial text")

    def fail(msg: str) -> ValueError:
        return ValueError(f"bad polynomial at offset {pos}: {msg}")

    # split into sign-separated terms first
    sign = 1
    term_exps: list[int] | None = None
    term_coeff = None
    expecting_factor = True

    def flush():
        nonlocal term_exps, term_coeff, sign
        if term_exps is None:
            raise fail("dangling sign or operator")
        coeff = term_coeff if term_coeff is not None else field.one
        if sign < 0:
            coeff = -coeff  # from_terms re-coerces, so raw negatives are fine
        items.append((tuple(term_exps), coeff))
        term_exps = None
        term_coeff = None
        sign = 1

    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise fail(f"unexpected {text[pos]!r}")
        pos = m.end()
        if m.group("op"):
            op = m.group("op")
            if op == "*":
                if term_exps is None:
                    raise fail("'*' before any factor")
                expecting_factor = True
                continue
            if not expecting_factor and term_exps is not None:
                flush()
            if op == "-":
                sign = -sign
            expecting_factor = True
            continue
        if m.group("num"):
            token = m.group("num")
            if field.char and "/" in token:
                raise fail(f"fractional coefficient {token!r} over {field!r}")
            value = field.coerce(Fraction(token) if field.char == 0
                                 else int(token))
            if term_exps is None:
                term_exps = [0] * n
            if term_coeff is None:
                term_coeff = value
            else:
                term_coeff = (term_coeff * value % field.char
                              if field.char else term_coeff * value)
            expecting_factor = False
            continue
        idx = int(m.group("idx"))
        if not 1 <= idx <= n:
            raise fail(f"variable x{idx} out of range for n={n}")
        a = int(m.group("exp")) if m.group("exp") is not None else 1
        if term_exps is None:
            term_exps = [0] * n
        term_exps[idx - 1] += a
        expecting_factor = False
    if expecting_factor:
        raise fail("dangling operator at end")
    flush()
    poly = LaurentPoly.from_terms(field, n, items)
    return poly


# -- fraction-field elements ---------------------------------------------------


class RationalExpr:
    """Unreduced numerator/denominator pair over the Laurent ring.

    No gcd is ever computed; cancellation only happens through explicit
    exact division (`as_laurent`, `simplify`).  Equality is decided by
    cross-multiplication, which is exact in an integral domain.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly | None = None):
        if den is None:
            den = LaurentPoly.one(num.field, num.n)
        num._compat(den)
        if den.is_zero():
            raise ZeroDivisionError("rational expression with zero denominator")
        self.num = num
        self.den = den

    # -- construction -------------------------------------------------------

    @classmethod
    def from_laurent(cls, poly: LaurentPoly) -> "RationalExpr":
        return cls(poly)

    @classmethod
    def constant(cls, field, n: int, value) -> "RationalExpr":
        return cls(LaurentPoly.constant(field, n, value))

    @classmethod
    def variable(cls, field, n: int, i: int) -> "RationalExpr":
        return cls(LaurentPoly.variable(field, n, i))

    @property
    def field(self):
        return self.num.field

    @property
    def n(self) -> int:
        return self.num.n

    # -- predicates -----------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num == self.den

    def equals(self, other: "RationalExpr") -> bool:
        """Exact equality as fraction-field elements (cross-multiplication)."""
        if not isinstance(other, RationalExpr):
            other = RationalExpr(other)
        return self.num * other.den == other.num * self.den

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            other = RationalExpr(other)
        if not isinstance(other, RationalExpr):
            return NotImplemented
        return self.equals(other)

    def __hash__(self):
        raise TypeError("RationalExpr is unhashable: equality is up to "
                        "cross-multiplication, not representation")

    # -- arithmetic -------------------------------------------------------------

    def _coerce(self, other) -> "RationalExpr":
        if isinstance(other, RationalExpr):
            return other
        if isinstance(other, LaurentPoly):
            return RationalExpr(other)
        raise TypeError(f"cannot combine RationalExpr with {other!r}")

    def __add__(self, other):
        o = self._coerce(other)
        return RationalExpr(self.num * o.den + o.num * self.den,
                            self.den * o.den)

    def __sub__(self, other):
        o = self._coerce(other)
        return RationalExpr(self.num * o.den - o.num * self.den,
                            self.den * o.den)

    def __neg__(self):
        return RationalExpr(-self.num, self.den)

    def __mul__(self, other):
        o = self._coerce(other)
        return RationalExpr(self.num * o.num, self.den * o.den)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.num.is_zero():
            raise ZeroDivisionError("division by zero rational expression")
        return RationalExpr(self.num * o.den, self.den * o.num)

    def __pow__(self, k: int) -> "RationalExpr":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if self.num.is_zero():
                raise ZeroDivisionError("negative power of zero")
            return RationalExpr(self.den ** (-k), self.num ** (-k))
        return RationalExpr(self.num ** k, self.den ** k)

    # -- conversion ----------------------------------------------------------

    def as_laurent(self) -> LaurentPoly:
        """The Laurent polynomial this fraction equals, found by one exact
        division; NotDivisibleError when there is none."""
        return self.num.exact_divide(self.den)

    def simplify(self) -> "RationalExpr":
        """Collapse to denominator 1 when the division happens to be exact;
        otherwise return self unchanged."""
        try:
            return RationalExpr(self.as_laurent())
        except NotDivisibleError:
            return self

    def render(self, names: list[str] | None = None) -> str:
        if self.den.is_one():
            return self.num.render(names)
        return f"({self.num.render(names)}) / ({self.den.render(names)})"

    def __repr__(self):
        return f"RationalExpr({self.render()!r})"
