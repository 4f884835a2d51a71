"""Pure-Python hot kernels: monomial arithmetic, term elimination, standard-monomial counts.

Monomials are tuples of nonnegative ints. Polynomials are dicts mapping
monomials to raw coefficients. ``modulus`` is 0 for exact rational
coefficients, else the prime of the residue field.
"""

IMPLEMENTATION = "python"


def mono_mul(a, b):
    return tuple([x + y for x, y in zip(a, b)])


def mono_div(a, b):
    return tuple([x - y for x, y in zip(a, b)])


def mono_divides(a, b):
    """True when ``a`` divides ``b``."""
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def mono_lcm(a, b):
    return tuple([x if x > y else y for x, y in zip(a, b)])


def mono_coprime(a, b):
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


def find_reducer(m, val, leads, vals):
    """Index of the first lead dividing ``m`` whose valuation is at most ``val``, else -1."""
    for i in range(len(leads)):
        if vals[i] <= val and mono_divides(leads[i], m):
            return i
    return -1


def sub_mul(p, g, c, shift, modulus):
    """In place: ``p -= c * x**shift * g``; zero coefficients are removed."""
    get = p.get
    if modulus:
        for m, gc in g.items():
            k = tuple([x + y for x, y in zip(m, shift)])
            v = (get(k, 0) - c * gc) % modulus
            if v:
                p[k] = v
            elif k in p:
                del p[k]
    else:
        for m, gc in g.items():
            k = tuple([x + y for x, y in zip(m, shift)])
            v = get(k, 0) - c * gc
            if v:
                p[k] = v
            elif k in p:
                del p[k]


def count_standard(leads, nvars, degree):
    """Number of degree-``degree`` monomials in ``nvars`` variables divisible by no lead."""
    leads = [tuple(t) for t in leads]
    if any(sum(t) == 0 for t in leads):
        return 0
    count = 0
    exps = [0] * nvars

    def rec(i, remaining):
        nonlocal count
        if i == nvars - 1:
            exps[i] = remaining
            for t in leads:
                for j in range(nvars):
                    if t[j] > exps[j]:
                        break
                else:
                    return
            count += 1
            return
        for e in range(remaining, -1, -1):
            exps[i] = e
            rec(i + 1, remaining - e)
        exps[i] = 0

    if nvars == 0:
        return 1 if degree == 0 else 0
    rec(0, degree)
    return count
