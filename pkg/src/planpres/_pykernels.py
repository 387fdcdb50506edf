"""Pure-Python versions of the hot loops.  Must agree exactly with ``_ckernels``."""


def dot_profile(word):
    """Strand pairs just above each event of an ``m``/``M`` word."""
    out = []
    d = 0
    for ch in word:
        d += 1 if ch == "m" else -1
        out.append(d)
    return out


def word_width(word):
    d = 0
    total = 0
    for ch in word[:-1]:
        d += 1 if ch == "m" else -1
        total += d
    return 2 * total


def thick_thin(word):
    thick = []
    thin = []
    d = 0
    n = len(word)
    for i in range(n - 1):
        ch = word[i]
        d += 1 if ch == "m" else -1
        nxt = word[i + 1]
        if ch == "m" and nxt == "M":
            thick.append(d)
        elif ch == "M" and nxt == "m":
            thin.append(d)
    return thick, thin


def formula_width(thick, thin):
    return 2 * sum(a * a for a in thick) - 2 * sum(b * b for b in thin)


def uf_labels(n, pairs):
    """Component label (smallest member) of each of ``n`` elements."""
    parent = list(range(n))

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            if ra < rb:
                parent[rb] = ra
            else:
                parent[ra] = rb
    return [find(i) for i in range(n)]
