"""Shared brute-force oracles for the test suite.

These reimplement the checked quantities from first principles (explicit
vertex sets, full permutation sweeps, Pruefer enumeration) so the fast
library paths are validated against genuinely independent computations.
"""

import itertools
from fractions import Fraction

import numpy as np

from projlin import LinearArrangement, RootedTree, build_tree, random_tree


def all_arrangements(n):
    """Every assignment of positions 1..n to vertices 1..n."""
    for perm in itertools.permutations(range(1, n + 1)):
        yield LinearArrangement(perm)


def subtree_vertex_sets(tree):
    sets = {v: {v} for v in range(1, tree.n + 1)}
    for v in reversed(tree.order):
        p = tree.parent[v]
        if p:
            sets[p] |= sets[v]
    return sets


def oracle_edge_sum(tree, arrangement):
    pos = arrangement.pos
    return sum(abs(pos[v] - pos[tree.parent[v]]) for v in range(1, tree.n + 1) if tree.parent[v])


def oracle_is_projective(tree, arrangement):
    """Contiguity of every subtree's position set, via explicit sets."""
    for vertices in subtree_vertex_sets(tree).values():
        positions = sorted(arrangement.pos[v] for v in vertices)
        if positions != list(range(positions[0], positions[0] + len(positions))):
            return False
    return True


def oracle_is_planar(tree, arrangement):
    """Pairwise crossing test on explicit position-interval sets."""
    spans = []
    for v in tree.order[1:]:
        a, b = arrangement.pos[v], arrangement.pos[tree.parent[v]]
        spans.append((min(a, b), max(a, b)))
    for (a1, b1), (a2, b2) in itertools.combinations(spans, 2):
        if {a1, b1} & {a2, b2}:
            continue
        left = set(range(a1, b1 + 1))
        right = set(range(a2, b2 + 1))
        if (left & right) and not (left <= right or right <= left):
            return False
    return True


def brute_projective_arrangements(tree):
    """All projective arrangements found by filtering the full n! sweep."""
    return [a for a in all_arrangements(tree.n) if oracle_is_projective(tree, a)]


def brute_mean_projective(tree):
    """Exact average edge-length sum over the brute-force projective set."""
    total = 0
    count = 0
    for arrangement in all_arrangements(tree.n):
        if oracle_is_projective(tree, arrangement):
            total += oracle_edge_sum(tree, arrangement)
            count += 1
    return Fraction(total, count)


def tree_from_pruefer(sequence, n, root):
    """Labeled tree decoded from a Pruefer sequence, rooted at ``root``."""
    degree = [1] * (n + 1)
    for x in sequence:
        degree[x] += 1
    adjacency = [[] for _ in range(n + 1)]
    ptr = 1
    while degree[ptr] != 1:
        ptr += 1
    leaf = ptr
    for x in sequence:
        adjacency[leaf].append(x)
        adjacency[x].append(leaf)
        degree[x] -= 1
        if degree[x] == 1 and x < ptr:
            leaf = x
        else:
            ptr += 1
            while degree[ptr] != 1:
                ptr += 1
            leaf = ptr
    adjacency[leaf].append(n)
    adjacency[n].append(leaf)

    links = []
    seen = {root}
    frontier = [root]
    while frontier:
        nxt = []
        for v in frontier:
            for u in adjacency[v]:
                if u not in seen:
                    seen.add(u)
                    links.append((u, v))
                    nxt.append(u)
        frontier = nxt
    return build_tree(n, links, root)


def all_labeled_rooted_trees(n):
    """Every labeled rooted tree on n vertices (n^(n-2) free trees x n roots)."""
    if n == 1:
        yield build_tree(1, [], 1)
        return
    if n == 2:
        yield build_tree(2, [(2, 1)], 1)
        yield build_tree(2, [(1, 2)], 2)
        return
    for sequence in itertools.product(range(1, n + 1), repeat=n - 2):
        for root in range(1, n + 1):
            yield tree_from_pruefer(sequence, n, root)


def random_tree_corpus(count, n_low, n_high, seed):
    """Deterministic list of uniform random labeled rooted trees."""
    rng = np.random.default_rng(seed)
    corpus = []
    for _ in range(count):
        n = int(rng.integers(n_low, n_high + 1))
        corpus.append(random_tree(n, rng))
    return corpus
