"""Independent reference values for the Rust test-suite.

Re-implements the keyed SplitMix64 fold, the tree weights and the lattice
passage times in plain Python, then derives small-instance optima by brute
force (edge-subset enumeration for trees, heap Dijkstra for the lattice).
Floats are printed as IEEE-754 bit patterns so the tests can compare exactly.
"""

import heapq
import itertools
import math
import struct

M = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
WORD_MULTIPLIER = 0xD1B54A32D192ED03
MIX_INIT = 0x243F6A8885A308D3
C1, C2 = 0xBF58476D1CE4E5B9, 0x94D049BB133111EB
TREE_WEIGHT, TREE_SCALE, PASSAGE_TIME, PASSAGE_PARAM = 1, 2, 3, 4


def mix64(z):
    z = ((z ^ (z >> 30)) * C1) & M
    z = ((z ^ (z >> 27)) * C2) & M
    return z ^ (z >> 31)


def key(domain, *words):
    s = mix64(MIX_INIT ^ domain)
    for w in words:
        s = mix64((s + GOLDEN_GAMMA + (w & M) * WORD_MULTIPLIER) & M)
    return s


def uniform(bits):
    return (bits >> 11) * 2.0 ** -53


def tree_weight(alpha, m_min, het, seed, trial, i, j):
    a, b = min(i, j), max(i, j)
    u = uniform(key(TREE_WEIGHT, seed, trial, a, b))
    scale = m_min + (1.0 - m_min) * uniform(key(TREE_SCALE, a, b)) if het else 1.0
    return scale * u ** alpha


def exp_time(lo, hi, seed, trial, base, axis):
    u = uniform(key(PASSAGE_TIME, seed, trial, *base, axis))
    rate = lo if lo == hi else lo + (hi - lo) * uniform(key(PASSAGE_PARAM, *base, axis))
    return -math.log1p(-u) / rate, rate


def canonical(ws):
    acc = 0.0
    for w in sorted(ws):
        acc += w
    return acc


def is_tree(edges):
    parent = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[ra] = rb
    verts = {v for e in edges for v in e}
    return len(verts) == len(edges) + 1


def brute_min_tree(n, tau, w):
    all_edges = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    best = math.inf
    for sub in itertools.combinations(all_edges, tau):
        if is_tree(sub):
            best = min(best, canonical([w[e] for e in sub]))
    return best


def dijkstra_2d(n, radius, seed, trial, lo, hi):
    def t(u, v):
        axis = 0 if u[0] != v[0] else 1
        base = u if u[axis] < v[axis] else v
        return exp_time(lo, hi, seed, trial, base, axis)[0]

    dist = {(0, 0): 0.0}
    heap = [(0.0, (0, 0))]
    done = set()
    while heap:
        d, u = heapq.heappop(heap)
        if u in done:
            continue
        done.add(u)
        if u == (n, 0):
            return d
        for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1)):
            v = (u[0] + dx, u[1] + dy)
            if max(abs(v[0]), abs(v[1])) > radius or v in done:
                continue
            nd = d + t(u, v)
            if nd < dist.get(v, math.inf):
                dist[v] = nd
                heapq.heappush(heap, (nd, v))


def bits(x):
    return "0x%016X" % struct.unpack("<Q", struct.pack("<d", x))[0]


if __name__ == "__main__":
    print("mix64(gamma)", hex(mix64(GOLDEN_GAMMA)))
    print("tree seed42 edge{1,2} alpha0.5", repr(tree_weight(0.5, 1.0, False, 42, 0, 1, 2)),
          bits(tree_weight(0.5, 1.0, False, 42, 0, 2, 1)))
    print("tree seed5 trial1 edge{3,9} alpha0.3 het0.5", bits(tree_weight(0.3, 0.5, True, 5, 1, 9, 3)))
    t, rate = exp_time(1.0, 2.0, 7, 3, (0, 0), 0)
    print("lattice seed7 trial3 (0,0)-(1,0) rates[1,2] time", repr(t), bits(t), "rate", repr(rate), bits(rate))
    t, _ = exp_time(1.0, 1.0, 7, 3, (-2, 5), 1)
    print("lattice seed7 trial3 (-2,5)-(-2,6) exp1", bits(t))

    n, tau, seed = 5, 2, 11
    w = {(i, j): tree_weight(0.5, 1.0, False, seed, 0, i, j)
         for i in range(1, n + 1) for j in range(i + 1, n + 1)}
    for tau in range(1, n):
        print("brute min tree n5 seed11 tau", tau, bits(brute_min_tree(n, tau, w)))

    w = {(i, j): tree_weight(0.7, 0.5, True, 3, 2, i, j)
         for i in range(1, 7) for j in range(i + 1, 7)}
    print("brute min tree n6 het0.5 alpha0.7 seed3 trial2 tau3", bits(brute_min_tree(6, 3, w)))

    for r in (6, 8):
        print("dijkstra n3 seed9 exp1 radius", r, bits(dijkstra_2d(3, r, 9, 0, 1.0, 1.0)))

    p = 1.0 - math.exp(-1.0) * sum(1.0 / math.factorial(i) for i in range(10))
    print("gamma(10,1) cdf at 1", repr(p))
