# cython: language_level=3
# cython: boundscheck=False, wraparound=False
"""Compiled twin of _kernels_py.  Same API, same semantics.

Fast paths: C 64-bit exponent arithmetic with explicit overflow checks, and
C integer coefficient arithmetic for primes below 2^31.  Larger primes and
object coefficients (QQ) take the generic path, still benefiting from the
C-level tuple handling.
"""

from cpython.ref cimport Py_INCREF
from cpython.tuple cimport (PyTuple_GET_ITEM, PyTuple_GET_SIZE, PyTuple_New,
                            PyTuple_SET_ITEM)

from .errors import BudgetExceededError

from . import _kernels_py as _py

cdef long long EXP_MAX = 9223372036854775807
cdef long long EXP_MIN = -9223372036854775807 - 1
cdef long long SMALL_PRIME_BOUND = 2147483648


cdef inline tuple _checked_add(tuple ea, tuple eb):
    cdef Py_ssize_t n = PyTuple_GET_SIZE(ea)
    cdef Py_ssize_t i
    cdef long long x, y
    cdef object item
    cdef tuple out = PyTuple_New(n)
    for i in range(n):
        x = <object>PyTuple_GET_ITEM(ea, i)
        y = <object>PyTuple_GET_ITEM(eb, i)
        if y > 0 and x > EXP_MAX - y:
            raise OverflowError("exponent outside 64-bit range")
        if y < 0 and x < EXP_MIN - y:
            raise OverflowError("exponent outside 64-bit range")
        item = x + y
        Py_INCREF(item)
        PyTuple_SET_ITEM(out, i, item)
    return out


def add_terms(dict a, dict b, p):
    cdef dict out = dict(a)
    cdef long long pc, v
    cdef tuple e
    cdef object c, old
    if p:
        if p >= SMALL_PRIME_BOUND:
            return _py.add_terms(a, b, p)
        pc = p
        for e, c in b.items():
            old = out.get(e)
            if old is None:
                v = <long long> c
            else:
                v = ((<long long> old) + (<long long> c)) % pc
            if v:
                out[e] = v
            elif old is not None:
                del out[e]
    else:
        for e, c in b.items():
            old = out.get(e)
            obj = c if old is None else old + c
            if obj:
                out[e] = obj
            elif old is not None:
                del out[e]
    return out


def sub_terms(dict a, dict b, p):
    cdef dict out = dict(a)
    cdef long long pc, v
    cdef tuple e
    cdef object c, old
    if p:
        if p >= SMALL_PRIME_BOUND:
            return _py.sub_terms(a, b, p)
        pc = p
        for e, c in b.items():
            old = out.get(e)
            if old is None:
                v = (pc - (<long long> c)) % pc
            else:
                v = ((<long long> old) - (<long long> c)) % pc
                if v < 0:
                    v += pc
            if v:
                out[e] = v
            elif old is not None:
                del out[e]
    else:
        for e, c in b.items():
            old = out.get(e)
            obj = -c if old is None else old - c
            if obj:
                out[e] = obj
            elif old is not None:
                del out[e]
    return out


def neg_terms(dict a, p):
    cdef dict out = {}
    cdef tuple e
    cdef object c
    cdef long long pc
    if p:
        if p >= SMALL_PRIME_BOUND:
            return _py.neg_terms(a, p)
        pc = p
        for e, c in a.items():
            out[e] = pc - (<long long> c)
    else:
        for e, c in a.items():
            out[e] = -c
    return out


def mul_terms(dict a, dict b, p, max_terms, list raw):
    cdef dict out = {}
    cdef tuple ea, eb, e
    cdef object ca, cb, old, obj, pair
    cdef long long pc, ci, v
    cdef Py_ssize_t cap = max_terms
    cdef long long remaining = <long long> raw[0]
    cdef list bitems
    cdef Py_ssize_t j, nb
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    bitems = list(b.items())
    nb = len(bitems)
    if p:
        if p >= SMALL_PRIME_BOUND:
            return _py.mul_terms(a, b, p, max_terms, raw)
        pc = p
        for ea, ca in a.items():
            remaining -= nb
            if remaining < 0:
                raw[0] = 0
                raise BudgetExceededError(
                    "max_raw_products", "product work exhausted the raw "
                    "term-product allowance")
            ci = <long long> ca
            for j in range(nb):
                pair = bitems[j]
                eb = <tuple> PyTuple_GET_ITEM(<tuple> pair, 0)
                cb = <object> PyTuple_GET_ITEM(<tuple> pair, 1)
                e = _checked_add(ea, eb)
                old = out.get(e)
                if old is None:
                    v = ci * (<long long> cb) % pc
                else:
                    v = ((<long long> old) + ci * (<long long> cb)) % pc
                if v:
                    out[e] = v
                elif old is not None:
                    del out[e]
            if len(out) > cap:
                raw[0] = remaining
                raise BudgetExceededError(
                    "max_terms", f"product exceeded {max_terms} terms")
    else:
        for ea, ca in a.items():
            remaining -= nb
            if remaining < 0:
                raw[0] = 0
                raise BudgetExceededError(
                    "max_raw_products", "product work exhausted the raw "
                    "term-product allowance")
            for j in range(nb):
                pair = bitems[j]
                eb = <tuple> PyTuple_GET_ITEM(<tuple> pair, 0)
                cb = <object> PyTuple_GET_ITEM(<tuple> pair, 1)
                e = _checked_add(ea, eb)
                old = out.get(e)
                obj = ca * cb if old is None else old + ca * cb
                if obj:
                    out[e] = obj
                elif old is not None:
                    del out[e]
            if len(out) > cap:
                raw[0] = remaining
                raise BudgetExceededError(
                    "max_terms", f"product exceeded {max_terms} terms")
    raw[0] = remaining
    return out


def scale_shift_terms(dict a, tuple e0, c0, p):
    cdef dict out = {}
    cdef tuple e
    cdef object c
    cdef long long pc, c0c, v
    if p:
        if p >= SMALL_PRIME_BOUND:
            return _py.scale_shift_terms(a, e0, c0, p)
        pc = p
        c0c = <long long> c0
        for e, c in a.items():
            v = c0c * (<long long> c) % pc
            if v:
                out[_checked_add(e0, e)] = v
    else:
        for e, c in a.items():
            out[_checked_add(e0, e)] = c0 * c
    return out


def submul_terms(dict rem, tuple e0, c0, dict b, p, list raw):
    cdef list touched = []
    cdef tuple eb, e
    cdef object cb, old, obj
    cdef long long pc, c0c, v
    cdef long long remaining = (<long long> raw[0]) - <long long> len(b)
    if remaining < 0:
        raw[0] = 0
        raise BudgetExceededError(
            "max_raw_products", "division work exhausted the raw "
            "term-product allowance")
    raw[0] = remaining
    if p:
        if p >= SMALL_PRIME_BOUND:
            raw[0] = remaining + len(b)
            return _py.submul_terms(rem, e0, c0, b, p, raw)
        pc = p
        c0c = <long long> c0
        for eb, cb in b.items():
            e = _checked_add(e0, eb)
            old = rem.get(e)
            if old is None:
                v = -(c0c * (<long long> cb)) % pc
                if v < 0:
                    v += pc
            else:
                v = ((<long long> old) - c0c * (<long long> cb)) % pc
                if v < 0:
                    v += pc
            if v:
                rem[e] = v
                touched.append(e)
            elif old is not None:
                del rem[e]
    else:
        for eb, cb in b.items():
            e = _checked_add(e0, eb)
            old = rem.get(e)
            obj = -(c0 * cb) if old is None else old - c0 * cb
            if obj:
                rem[e] = obj
                touched.append(e)
            elif old is not None:
                del rem[e]
    return touched
