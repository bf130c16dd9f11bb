"""Depth-first traversal with optional fan-out of subtrees to worker processes.

Children are always produced in a canonical order, so the serial stream is
deterministic.  In parallel mode the tree is cut at a fixed depth, the
subtrees are solved independently and their outputs are concatenated in the
order of their roots, which reproduces the serial stream exactly.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Any, Iterator, List, Protocol, Tuple

from .config import SearchStats


class Tree(Protocol):
    def root(self) -> Any: ...

    def depth(self, node: Any) -> int: ...

    def is_leaf(self, node: Any) -> bool: ...

    def children(self, node: Any, stats: SearchStats) -> List[Any]: ...

    def emit(self, node: Any) -> Any: ...


def walk(tree: Tree, node: Any, stats: SearchStats) -> Iterator[Any]:
    stack = [node]
    while stack:
        cur = stack.pop()
        stats.nodes[tree.depth(cur)] += 1
        if tree.is_leaf(cur):
            stats.emitted += 1
            yield tree.emit(cur)
            continue
        kids = tree.children(cur, stats)
        if not kids:
            stats.dead[tree.depth(cur)] += 1
        stack.extend(reversed(kids))


def _frontier_at(tree: Tree, depth: int, stats: SearchStats) -> List[Any]:
    """Nodes at ``depth`` (and shallower leaves) in the order the serial walk meets them."""
    layer: List[Tuple[Tuple[int, ...], Any]] = [((), tree.root())]
    done: List[Tuple[Tuple[int, ...], Any]] = []
    while layer:
        nxt = []
        for key, node in layer:
            if tree.depth(node) >= depth or tree.is_leaf(node):
                done.append((key, node))
                continue
            stats.nodes[tree.depth(node)] += 1
            kids = tree.children(node, stats)
            if not kids:
                stats.dead[tree.depth(node)] += 1
            nxt.extend((key + (i,), kid) for i, kid in enumerate(kids))
        layer = nxt
    done.sort(key=lambda item: item[0])
    return [node for _, node in done]


def _solve_subtree(args) -> Tuple[List[Any], SearchStats]:
    tree, node = args
    stats = SearchStats()
    return list(walk(tree, node, stats)), stats


def run(tree: Tree, stats: SearchStats, jobs: int = 1, split_depth: int = 0) -> Iterator[Any]:
    """All leaves of ``tree`` in canonical order, updating ``stats``."""
    if jobs <= 1:
        yield from walk(tree, tree.root(), stats)
        return
    roots = _frontier_at(tree, split_depth, stats)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for leaves, sub in pool.map(_solve_subtree, [(tree, r) for r in roots], chunksize=1):
            stats.merge(sub)
            yield from leaves
