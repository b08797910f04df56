"""Brute-force reference implementations used only by the tests."""
from __future__ import annotations

import itertools

import numpy as np


def cells_of(s, ids):
    out = set()
    for t in ids:
        out.update(itertools.product(*s.tiles[t].axes))
    return out


def is_box(cells):
    if not cells:
        return False
    proj = [sorted({c[a] for c in cells}) for a in range(len(next(iter(cells))))]
    return len(cells) == int(np.prod([len(p) for p in proj]))


def special_regions(s):
    """Every subset of >= 2 tiles whose union is a combinatorial box."""
    out = []
    for r in range(2, s.ntiles + 1):
        for ids in itertools.combinations(range(s.ntiles), r):
            if is_box(cells_of(s, ids)):
                out.append(ids)
    return sorted(out)


def splits(s, region):
    """All two-part splits of a region where each part is a tile or a box."""
    out = []
    rest = region[1:]
    for r in range(0, len(rest)):
        for extra in itertools.combinations(rest, r):
            a = (region[0],) + extra
            b = tuple(t for t in region if t not in a)
            if is_box(cells_of(s, a)) and is_box(cells_of(s, b)):
                out.append((a, b))
    return out


def u_tile(s):
    if s.ndim == 3 and s.ntiles < 5:
        return False
    return not any(splits(s, r) for r in special_regions(s))


def strictly_maximal(s, group):
    group = set(group)
    others = [t for t in range(s.ntiles) if t not in group]
    for r in range(1, len(others)):
        for extra in itertools.combinations(others, r):
            if is_box(cells_of(s, group | set(extra))):
                return False
    return True


def rectangle_partitions(dims, max_tiles):
    """All partitions of the grid into at most ``max_tiles`` combinatorial rectangles."""
    cells = list(itertools.product(*(range(d) for d in dims)))
    found = set()

    def rec(remaining, blocks):
        if not remaining:
            found.add(frozenset(blocks))
            return
        if len(blocks) == max_tiles:
            return
        first = remaining[0]
        rest = remaining[1:]
        for r in range(len(rest) + 1):
            for extra in itertools.combinations(rest, r):
                block = frozenset((first,) + extra)
                if is_box(block):
                    left = [c for c in rest if c not in block]
                    rec(left, blocks + [block])

    rec(cells, [])
    return found


def structure_cellsets(s):
    return frozenset(frozenset(itertools.product(*t.axes)) for t in s.tiles)
