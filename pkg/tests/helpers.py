"""Random words and a few oracles that do not use the package's algorithms."""
import random

from commensurators.words import Word


def random_letters(rng: random.Random, rank: int, length: int) -> tuple:
    """Reduced word of exactly ``length`` letters."""
    out = []
    while len(out) < length:
        x = rng.choice([i for i in range(1, rank + 1)] + [-i for i in range(1, rank + 1)])
        if out and out[-1] == -x:
            continue
        out.append(x)
    return tuple(out)


def random_element(rng, H, length):
    """Random word of ``H``: a random word closed up through the transversal."""
    w = random_letters(rng, H.group.rank, length)
    back = H.schreier.transversal[H.act(H.base, w)]
    return Word(w + tuple(-x for x in reversed(back)), H.group.generators)


def abelianization(letters, rank):
    v = [0] * rank
    for x in letters:
        v[abs(x) - 1] += 1 if x > 0 else -1
    return tuple(v)


def perm_mul(p, q):
    """First p, then q (right actions)."""
    return tuple(q[p[i]] for i in range(len(p)))


def perm_inv(p):
    q = [0] * len(p)
    for i, j in enumerate(p):
        q[j] = i
    return tuple(q)


def perm_image(letters, gens):
    """Image of a word under generator -> permutation, acting on the right."""
    n = len(gens[0])
    acc = tuple(range(n))
    for x in letters:
        g = gens[abs(x) - 1]
        acc = perm_mul(acc, g if x > 0 else perm_inv(g))
    return acc


def surface_perm_rep(a, b):
    """A -> a, B -> b, C -> b, D -> a kills [A,B][C,D] = [a,b][b,a]."""
    return (a, b, b, a)


def random_perm(rng, n):
    p = list(range(n))
    rng.shuffle(p)
    return tuple(p)


def subgroup_order_closure(gens, moduli):
    """Order of the subgroup of a product of cyclic groups generated by ``gens``."""
    zero = tuple(0 for _ in moduli)
    seen = {zero}
    frontier = [zero]
    while frontier:
        v = frontier.pop()
        for g in gens:
            w = tuple((a + b) % m for a, b, m in zip(v, g, moduli))
            if w not in seen:
                seen.add(w)
                frontier.append(w)
    return len(seen)


def naive_fold_count(words, rank):
    """Vertex count of the folded graph by repeated union-find merging.

    Deliberately simple and quadratic; used only to cross-check folding.
    """
    parent = {}
    edges = []
    nxt = [1]

    def new():
        v = nxt[0]
        nxt[0] += 1
        parent[v] = v
        return v

    parent[0] = 0
    for w in words:
        v = 0
        for i, x in enumerate(w):
            t = 0 if i == len(w) - 1 else new()
            edges.append((v, x, t))
            v = t

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    changed = True
    while changed:
        changed = False
        out = {}
        for v, x, t in edges:
            for a, lab, b in ((v, x, t), (t, -x, v)):
                key = (find(a), lab)
                if key in out and find(out[key]) != find(b):
                    parent[find(b)] = find(out[key])
                    changed = True
                else:
                    out.setdefault(key, b)
    return len({find(v) for v in parent})
