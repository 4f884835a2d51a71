# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twins of the kernels in ``_kernels_py``; same signatures and results."""

from libc.stdlib cimport malloc, free

IMPLEMENTATION = "cython"


cpdef tuple mono_mul(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    cdef list out = [0] * n
    for i in range(n):
        out[i] = <long>a[i] + <long>b[i]
    return tuple(out)


cpdef tuple mono_div(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    cdef list out = [0] * n
    for i in range(n):
        out[i] = <long>a[i] - <long>b[i]
    return tuple(out)


cpdef bint mono_divides(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    for i in range(n):
        if <long>a[i] > <long>b[i]:
            return False
    return True


cpdef tuple mono_lcm(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    cdef long x, y
    cdef list out = [0] * n
    for i in range(n):
        x = a[i]
        y = b[i]
        out[i] = x if x > y else y
    return tuple(out)


cpdef bint mono_coprime(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    for i in range(n):
        if <long>a[i] and <long>b[i]:
            return False
    return True


cpdef long find_reducer(tuple m, object val, list leads, list vals):
    cdef Py_ssize_t i, n = len(leads)
    for i in range(n):
        if vals[i] <= val and mono_divides(<tuple>leads[i], m):
            return i
    return -1


cpdef sub_mul(dict p, dict g, object c, tuple shift, long modulus):
    cdef tuple m, k
    cdef object gc, v
    cdef Py_ssize_t i, n = len(shift)
    cdef long* sh = <long*>malloc(n * sizeof(long))
    cdef list buf
    for i in range(n):
        sh[i] = shift[i]
    try:
        for m, gc in g.items():
            buf = [0] * n
            for i in range(n):
                buf[i] = <long>m[i] + sh[i]
            k = tuple(buf)
            if modulus:
                v = (p.get(k, 0) - c * gc) % modulus
            else:
                v = p.get(k, 0) - c * gc
            if v:
                p[k] = v
            elif k in p:
                del p[k]
    finally:
        free(sh)


def count_standard(leads, long nvars, long degree):
    cdef Py_ssize_t nl = len(leads)
    cdef Py_ssize_t i, j
    cdef long* L
    cdef long* e
    cdef long count = 0
    cdef long rem, pos
    cdef bint divisible, ok
    if nvars == 0:
        return 1 if degree == 0 else 0
    for t in leads:
        if sum(t) == 0:
            return 0
    L = <long*>malloc((nl * nvars + 1) * sizeof(long))
    e = <long*>malloc(nvars * sizeof(long))
    try:
        for i in range(nl):
            t = leads[i]
            for j in range(nvars):
                L[i * nvars + j] = t[j]
        # iterate compositions of ``degree`` into ``nvars`` parts in lex-descending order
        for j in range(nvars):
            e[j] = 0
        e[0] = degree
        while True:
            divisible = False
            for i in range(nl):
                ok = True
                for j in range(nvars):
                    if L[i * nvars + j] > e[j]:
                        ok = False
                        break
                if ok:
                    divisible = True
                    break
            if not divisible:
                count += 1
            # next composition: find rightmost position < nvars-1 with e > 0
            if nvars == 1:
                break
            pos = nvars - 2
            while pos >= 0 and e[pos] == 0:
                pos -= 1
            if pos < 0:
                break
            rem = e[nvars - 1]
            e[nvars - 1] = 0
            e[pos] -= 1
            e[pos + 1] = rem + 1
    finally:
        free(L)
        free(e)
    return count
