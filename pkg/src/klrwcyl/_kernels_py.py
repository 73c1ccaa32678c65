"""Pure-Python affine permutation primitives (fallback for the compiled core).

A permutation is given by its window ``(f(0), ..., f(n-1))`` and extended by
``f(j + n) = f(j) + n``.
"""


def length(f):
    """Number of inversion classes (Shi's formula)."""
    n = len(f)
    total = 0
    for i in range(n):
        fi = f[i]
        for j in range(i + 1, n):
            total += abs((f[j] - fi) // n)
    return total


def inverse(f):
    n = len(f)
    inv = [0] * n
    for j in range(n):
        q, r = divmod(f[j], n)
        inv[r] = j - q * n
    return tuple(inv)


def compose(f, g):
    """Window of ``f o g``."""
    n = len(f)
    out = []
    for v in g:
        q, r = divmod(v, n)
        out.append(f[r] + q * n)
    return tuple(out)


def left_mult(k, f):
    """Window of ``s_k o f`` (a crossing added on top between slots k, k+1)."""
    n = len(f)
    k1 = (k + 1) % n
    out = []
    for v in f:
        r = v % n
        if r == k:
            out.append(v + 1)
        elif r == k1:
            out.append(v - 1)
        else:
            out.append(v)
    return tuple(out)


def is_left_descent(f, k):
    n = len(f)
    inv = inverse(f)
    if k < n - 1:
        return inv[k] > inv[k + 1]
    return inv[n - 1] > inv[0] + n


def min_left_descent(f):
    """Smallest k with a left descent, or -1 if f has length 0."""
    n = len(f)
    if n < 2:
        return -1
    inv = inverse(f)
    for k in range(n - 1):
        if inv[k] > inv[k + 1]:
            return k
    if inv[n - 1] > inv[0] + n:
        return n - 1
    return -1


def canonical_word(f):
    """Greedy reduced word (top letter first) and the rotation exponent m.

    Repeatedly strips the smallest left descent; what remains is tau^m with
    tau(j) = j + 1.
    """
    letters = []
    while True:
        k = min_left_descent(f)
        if k < 0:
            break
        letters.append(k)
        f = left_mult(k, f)
    n = len(f)
    m = f[0] if n else 0
    return tuple(letters), m

