# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled versions of the hot loops in ``_pykernels``."""


def dot_profile(str word):
    cdef Py_ssize_t i, n = len(word)
    cdef long d = 0
    out = [0] * n
    for i in range(n):
        if word[i] == "m":
            d += 1
        else:
            d -= 1
        out[i] = d
    return out


def word_width(str word):
    cdef Py_ssize_t i, n = len(word)
    cdef long d = 0
    cdef long total = 0
    for i in range(n - 1):
        if word[i] == "m":
            d += 1
        else:
            d -= 1
        total += d
    return 2 * total


def thick_thin(str word):
    cdef Py_ssize_t i, n = len(word)
    cdef long d = 0
    cdef Py_UCS4 ch, nxt
    thick = []
    thin = []
    for i in range(n - 1):
        ch = word[i]
        if ch == "m":
            d += 1
        else:
            d -= 1
        nxt = word[i + 1]
        if ch == "m" and nxt == "M":
            thick.append(d)
        elif ch == "M" and nxt == "m":
            thin.append(d)
    return thick, thin


def formula_width(thick, thin):
    cdef long total = 0
    cdef long a
    for a in thick:
        total += a * a
    for a in thin:
        total -= a * a
    return 2 * total


def uf_labels(Py_ssize_t n, pairs):
    cdef list parent = list(range(n))
    cdef Py_ssize_t a, b, ra, rb, x, nxt

    for a, b in pairs:
        ra = a
        while parent[ra] != ra:
            ra = parent[ra]
        rb = b
        while parent[rb] != rb:
            rb = parent[rb]
        x = a
        while parent[x] != ra:
            nxt = parent[x]
            parent[x] = ra
            x = nxt
        x = b
        while parent[x] != rb:
            nxt = parent[x]
            parent[x] = rb
            x = nxt
        if ra != rb:
            if ra < rb:
                parent[rb] = ra
            else:
                parent[ra] = rb
    out = [0] * n
    for a in range(n):
        ra = a
        while parent[ra] != ra:
            ra = parent[ra]
        out[a] = ra
    return out
