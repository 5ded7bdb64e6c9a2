"""Small shared helpers."""

from __future__ import annotations

__all__ = ["UnionFind"]


class UnionFind:
    """Union-find over hashable items, keeping the smallest item as root."""

    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return rx
        if ry < rx:
            rx, ry = ry, rx
        self.parent[ry] = rx
        return rx

    def classes(self):
        """Equivalence classes as sorted lists, ordered by their minimum."""
        groups = {}
        for x in self.parent:
            groups.setdefault(self.find(x), []).append(x)
        return [sorted(groups[r]) for r in sorted(groups)]
