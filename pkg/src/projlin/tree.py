"""Rooted trees on vertices 1..n.

A rooted tree is stored as parent links plus per-vertex ordered children
lists, with every edge oriented from the root towards the leaves.  Vertex
ids and arrangement positions share the same 1-based range, so head
vectors and CoNLL-U token ids line up without translation.

The module also provides the named tree classes used by the closed-form
tables (stars, quasi-stars, linear trees), AHU-style canonical codes for
unlabeled-isomorphism tests, and uniform random labeled trees.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BadRoot,
    CycleDetected,
    Disconnected,
    MultipleHeads,
    OutOfRange,
    UnsupportedSize,
)

TREE_CLASSES = (
    "star_hub",
    "star_leaf",
    "qstar_hub",
    "qstar_edge_leaf",
    "qstar_far_leaf",
    "qstar_bridge",
    "linear_k",
)


class RootedTree:
    """Immutable rooted tree over vertices 1..n.

    Instances are produced by :func:`build_tree` (or the constructors built
    on top of it) which validates the three structural conditions: single
    headedness, connectedness, and acyclicity.  All fields are tuples and
    must not be mutated; the object is safe to share between threads.

    Attributes:
        n: number of vertices.
        root: the root vertex id.
        parent: ``parent[v]`` is the parent of ``v`` (0 for the root and
            for the unused index 0).
        children: ``children[v]`` is the tuple of children of ``v`` in
            insertion order.
        order: all vertices in breadth-first order from the root.
        level_starts: indices into ``order`` delimiting the BFS levels;
            level ``i`` is ``order[level_starts[i]:level_starts[i + 1]]``.
    """

    __slots__ = ("n", "root", "parent", "children", "order", "level_starts")

    def __init__(self, n, root, parent, children, order, level_starts):
        self.n = n
        self.root = root
        self.parent = parent
        self.children = children
        self.order = order
        self.level_starts = level_starts

    def head_vector(self) -> str:
        """Serialize as whitespace-separated parent ids, 0 for the root."""
        return " ".join(str(self.parent[v]) for v in range(1, self.n + 1))

    def heads(self) -> tuple[int, ...]:
        """Parent id per vertex (0 for the root), as a tuple."""
        return self.parent[1:]

    def subtree(self, v: int) -> "RootedTree":
        """Extract the subtree rooted at ``v`` as a tree of its own.

        Vertices are relabeled 1..m in breadth-first discovery order, so
        the result's root is vertex 1 and children orders are preserved.
        """
        if not 1 <= v <= self.n:
            raise OutOfRange(f"vertex {v} not in 1..{self.n}")
        relabel = {v: 1}
        frontier = [v]
        links = []
        while frontier:
            nxt = []
            for u in frontier:
                for c in self.children[u]:
                    relabel[c] = len(relabel) + 1
                    links.append((relabel[c], relabel[u]))
                    nxt.append(c)
            frontier = nxt
        return build_tree(len(relabel), links, 1)

    def __eq__(self, other):
        if not isinstance(other, RootedTree):
            return NotImplemented
        return self.root == other.root and self.parent == other.parent

    def __hash__(self):
        return hash((self.root, self.parent))

    def __repr__(self):
        if self.n <= 16:
            return f"RootedTree({self.head_vector()!r})"
        return f"RootedTree(n={self.n}, root={self.root})"


@dataclass(frozen=True)
class SubtreeMetrics:
    """Per-vertex subtree sizes and out-degrees (index 0 unused)."""

    size: tuple[int, ...]
    out_degree: tuple[int, ...]


def build_tree(n: int, links: Iterable[tuple[int, int]], root: int) -> RootedTree:
    """Build and validate a rooted tree from (child, parent) links.

    The children lists keep the order in which links are given.  Raises
    MultipleHeads, CycleDetected, Disconnected, BadRoot, or OutOfRange,
    naming the violated condition.
    """
    if n < 1:
        raise UnsupportedSize(f"a tree needs at least one vertex, got n={n}")
    if not 1 <= root <= n:
        raise BadRoot(f"root {root} not in 1..{n}")

    parent = [0] * (n + 1)
    children: list[list[int]] = [[] for _ in range(n + 1)]
    has_head = bytearray(n + 1)
    n_links = 0
    for child, par in links:
        if not (1 <= child <= n and 1 <= par <= n):
            raise OutOfRange(f"link ({child}, {par}) not within 1..{n}")
        if child == par:
            raise CycleDetected(f"vertex {child} is its own parent")
        if has_head[child]:
            raise MultipleHeads(f"vertex {child} has more than one parent")
        has_head[child] = 1
        parent[child] = par
        children[par].append(child)
        n_links += 1
    if n_links < n - 1:
        raise Disconnected(f"{n - 1} parent links needed to connect {n} vertices, got {n_links}")

    order = [root]
    visited = bytearray(n + 1)
    visited[root] = 1
    level_starts = [0, 1]
    frontier = [root]
    while frontier:
        nxt = []
        for v in frontier:
            for c in children[v]:
                if visited[c]:
                    raise CycleDetected(f"vertex {c} is reached twice from root {root}")
                visited[c] = 1
                nxt.append(c)
        if not nxt:
            break
        order.extend(nxt)
        level_starts.append(len(order))
        frontier = nxt
    if len(order) != n:
        for v in range(1, n + 1):
            if not visited[v] and not has_head[v]:
                raise Disconnected(f"vertex {v} is not reachable from root {root}")
        raise CycleDetected("the unreachable vertices form one or more cycles")

    return RootedTree(
        n,
        root,
        tuple(parent),
        tuple(tuple(c) for c in children),
        tuple(order),
        tuple(level_starts),
    )


def tree_from_heads(heads: Sequence[int]) -> RootedTree:
    """Build a tree from a head vector (``heads[i]`` is the parent of i+1)."""
    n = len(heads)
    root = 0
    links = []
    for v, h in enumerate(heads, start=1):
        if h == 0:
            root = v
        else:
            links.append((v, h))
    if root == 0:
        raise BadRoot("head vector has no 0 entry")
    return build_tree(n, links, root)


def parse_head_vector(text: str) -> RootedTree:
    """Parse a whitespace-separated head vector such as ``"0 1 1 2"``."""
    try:
        heads = [int(tok) for tok in text.split()]
    except ValueError as exc:
        raise OutOfRange(f"head vector must contain integers: {exc}") from None
    if not heads:
        raise UnsupportedSize("empty head vector")
    return tree_from_heads(heads)


def compute_metrics(tree: RootedTree) -> SubtreeMetrics:
    """Subtree size and out-degree per vertex, in one reverse-BFS pass."""
    size = [1] * (tree.n + 1)
    size[0] = 0
    parent = tree.parent
    for v in reversed(tree.order):
        size[parent[v]] += size[v]
    size[0] = 0
    return SubtreeMetrics(tuple(size), tuple(len(c) for c in tree.children))


def canonical_code(tree: RootedTree) -> bytes:
    """AHU-style canonical code of the unlabeled rooted tree.

    Children codes are sorted and concatenated inside parentheses, so two
    trees get equal codes exactly when they are isomorphic as unlabeled
    rooted trees.  The computation is iterative and handles deep chains.
    """
    codes: list[bytes] = [b""] * (tree.n + 1)
    for v in reversed(tree.order):
        kids = tree.children[v]
        if kids:
            codes[v] = b"(" + b"".join(sorted(codes[c] for c in kids)) + b")"
        else:
            codes[v] = b"()"
    return codes[tree.root]


def make_class(tree_class: str, n: int, k: int | None = None) -> RootedTree:
    """Construct one of the named tree classes.

    ``star_hub`` and ``star_leaf`` are the star on n vertices rooted at its
    hub or at a leaf; the four ``qstar_*`` variants are the quasi-star (a
    star with one subdivided edge, n >= 4) rooted at the hub, at a leaf
    adjacent to the hub, at the far leaf of the subdivided edge, or at the
    internal non-hub vertex; ``linear_k`` is the path rooted at distance
    ``k`` from one end.  ``k`` is normalized to ``min(k, n - 1 - k)`` since
    the two rootings are isomorphic.
    """
    if tree_class not in TREE_CLASSES:
        raise ValueError(f"unknown tree class {tree_class!r}")
    if n < 1:
        raise UnsupportedSize(f"n must be positive, got {n}")

    if tree_class == "star_hub":
        return build_tree(n, [(i, 1) for i in range(2, n + 1)], 1)
    if tree_class == "star_leaf":
        if n < 2:
            raise UnsupportedSize("star_leaf needs n >= 2")
        links = [(2, 1)] + [(i, 2) for i in range(3, n + 1)]
        return build_tree(n, links, 1)
    if tree_class == "linear_k":
        k = 0 if k is None else k
        if not 0 <= k <= n - 1:
            raise UnsupportedSize(f"linear_k needs 0 <= k <= {n - 1}, got {k}")
        k = min(k, n - 1 - k)
        root = k + 1
        links = [(i, i + 1) for i in range(root - 1, 0, -1)]
        links += [(i, i - 1) for i in range(root + 1, n + 1)]
        return build_tree(n, links, root)

    if n < 4:
        raise UnsupportedSize(f"quasi-star classes need n >= 4, got {n}")
    if tree_class == "qstar_hub":
        # root 1 = hub, 2 = internal vertex, 3 = far leaf, rest hub leaves
        links = [(2, 1), (3, 2)] + [(i, 1) for i in range(4, n + 1)]
        return build_tree(n, links, 1)
    if tree_class == "qstar_edge_leaf":
        # root 1 = a leaf adjacent to the hub 2; 3 = internal, 4 = far leaf
        links = [(2, 1), (3, 2), (4, 3)] + [(i, 2) for i in range(5, n + 1)]
        return build_tree(n, links, 1)
    if tree_class == "qstar_far_leaf":
        # root 1 = far leaf, 2 = internal vertex, 3 = hub
        links = [(2, 1), (3, 2)] + [(i, 3) for i in range(4, n + 1)]
        return build_tree(n, links, 1)
    # qstar_bridge: root 1 = internal non-hub vertex, 2 = far leaf, 3 = hub
    links = [(2, 1), (3, 1)] + [(i, 3) for i in range(4, n + 1)]
    return build_tree(n, links, 1)


def random_tree(n: int, seed) -> RootedTree:
    """Uniformly random labeled rooted tree on n vertices.

    Draws a uniform labeled free tree from its Pruefer sequence and roots
    it at an independently uniform vertex.  ``seed`` may be an int or a
    ``numpy.random.Generator``; the result is deterministic given both.
    """
    if n < 1:
        raise UnsupportedSize(f"n must be positive, got {n}")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    if n == 1:
        return build_tree(1, [], 1)
    root = int(rng.integers(1, n + 1))
    if n == 2:
        return build_tree(2, [(2, 1)] if root == 1 else [(1, 2)], root)

    seq = rng.integers(1, n + 1, size=n - 2).tolist()
    degree = [1] * (n + 1)
    for x in seq:
        degree[x] += 1
    adjacency: list[list[int]] = [[] for _ in range(n + 1)]

    def connect(a: int, b: int) -> None:
        adjacency[a].append(b)
        adjacency[b].append(a)

    ptr = 1
    while degree[ptr] != 1:
        ptr += 1
    leaf = ptr
    for x in seq:
        connect(leaf, x)
        degree[x] -= 1
        if degree[x] == 1 and x < ptr:
            leaf = x
        else:
            ptr += 1
            while degree[ptr] != 1:
                ptr += 1
            leaf = ptr
    connect(leaf, n)

    links = []
    visited = bytearray(n + 1)
    visited[root] = 1
    frontier = [root]
    while frontier:
        nxt = []
        for v in frontier:
            for u in adjacency[v]:
                if not visited[u]:
                    visited[u] = 1
                    links.append((u, v))
                    nxt.append(u)
        frontier = nxt
    return build_tree(n, links, root)
