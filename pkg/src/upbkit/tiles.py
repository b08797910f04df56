"""Tile structures on 2D grids and 3D cubes.

A tile is a combinatorial rectangle (or cuboid): the Cartesian product of one
index set per axis. Index sets need not be contiguous. A tile structure is a
partition of the whole grid into such tiles.

The searches in this module all work on *tile-aligned boxes*: boxes that no
tile straddles. Such boxes are closed under intersection, so every set of cells
has a smallest tile-aligned box containing it (its closure). Special regions,
maximality of groups and U-tile splits are all decided with closures instead of
blind subset enumeration.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

Cell = tuple[int, ...]
Axes = tuple[tuple[int, ...], ...]

DEFAULT_MAX_TILES = 24


class CapExceeded(RuntimeError):
    """Raised when a structure is too large for an exhaustive search."""


class InvalidStructure(ValueError):
    pass


class Bipartition(str, enum.Enum):
    A_BC = "A|BC"
    B_CA = "B|CA"
    C_AB = "C|AB"

    @property
    def parties(self) -> tuple[int, int, int]:
        """(singled-out party, first merged party, second merged party)."""
        return {"A|BC": (0, 1, 2), "B|CA": (1, 2, 0), "C|AB": (2, 0, 1)}[self.value]


@dataclass(frozen=True)
class Tile:
    axes: Axes

    def __post_init__(self):
        object.__setattr__(self, "axes", tuple(tuple(int(i) for i in a) for a in self.axes))

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.axes)

    @property
    def size(self) -> int:
        return int(np.prod(self.shape))

    def cells(self) -> Iterator[Cell]:
        return itertools.product(*self.axes)


@dataclass(frozen=True)
class TileStructure:
    dims: tuple[int, ...]
    tiles: tuple[Tile, ...]
    _owner: np.ndarray | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        object.__setattr__(self, "tiles", tuple(t if isinstance(t, Tile) else Tile(t) for t in self.tiles))

    @classmethod
    def from_axes(cls, dims: Sequence[int], tiles: Iterable[Sequence[Sequence[int]]]) -> "TileStructure":
        return cls(tuple(dims), tuple(Tile(tuple(tuple(a) for a in t)) for t in tiles))

    @property
    def ndim(self) -> int:
        return len(self.dims)

    @property
    def ntiles(self) -> int:
        return len(self.tiles)

    @property
    def ncells(self) -> int:
        return int(np.prod(self.dims))

    def owner(self) -> np.ndarray:
        """Grid of tile ids. Only meaningful for a valid structure."""
        if self._owner is None:
            grid = np.full(self.dims, -1, dtype=np.int64)
            for tid, tile in enumerate(self.tiles):
                grid[np.ix_(*tile.axes)] = tid
            object.__setattr__(self, "_owner", grid)
        return self._owner

    def hull_of(self, tile_ids: Iterable[int]) -> Axes | None:
        cells = [c for t in tile_ids for c in self.tiles[t].cells()]
        return is_combinatorial_rectangle(cells, self.dims)


@dataclass(frozen=True)
class Violation:
    kind: str  # bad_dims | bad_axis | out_of_range | overlap | uncovered
    message: str
    cell: Cell | None = None
    tiles: tuple[int, ...] = ()


def validate_structure(s: TileStructure) -> list[Violation]:
    """Return every violated invariant of ``s``; an empty list means valid."""
    out: list[Violation] = []
    if len(s.dims) not in (2, 3) or any(d <= 0 for d in s.dims):
        return [Violation("bad_dims", f"dims must be 2 or 3 positive integers, got {list(s.dims)}")]
    seen: dict[Cell, int] = {}
    for tid, tile in enumerate(s.tiles):
        if len(tile.axes) != len(s.dims):
            out.append(Violation("bad_axis", f"tile {tid} has {len(tile.axes)} axes, expected {len(s.dims)}", tiles=(tid,)))
            continue
        ok = True
        for ax, (idx, d) in enumerate(zip(tile.axes, s.dims)):
            if not idx or any(b <= a for a, b in zip(idx, idx[1:])):
                out.append(Violation("bad_axis", f"tile {tid} axis {ax} is not a nonempty increasing index list: {list(idx)}", tiles=(tid,)))
                ok = False
            bad = [i for i in idx if i < 0 or i >= d]
            if bad:
                out.append(Violation("out_of_range", f"tile {tid} axis {ax} indices {bad} outside [0,{d})", tiles=(tid,)))
                ok = False
        if not ok:
            continue
        for cell in tile.cells():
            if cell in seen:
                out.append(Violation("overlap", f"cell {cell} in tiles {seen[cell]} and {tid}", cell=cell, tiles=(seen[cell], tid)))
            else:
                seen[cell] = tid
    for cell in itertools.product(*(range(d) for d in s.dims)):
        if cell not in seen:
            out.append(Violation("uncovered", f"cell {cell} is not covered", cell=cell))
    return out


def require_valid(s: TileStructure) -> None:
    problems = validate_structure(s)
    if problems:
        raise InvalidStructure("; ".join(v.message for v in problems[:5]))


def is_combinatorial_rectangle(cells: Iterable[Cell], dims: Sequence[int] | None = None) -> Axes | None:
    """Per-axis hull of ``cells`` if the cells are exactly that product, else None."""
    cells = {tuple(c) for c in cells}
    if not cells:
        return None
    k = len(next(iter(cells)))
    hull = tuple(tuple(sorted({c[a] for c in cells})) for a in range(k))
    if dims is not None and any(h[-1] >= d or h[0] < 0 for h, d in zip(hull, dims)):
        return None
    if int(np.prod([len(h) for h in hull])) != len(cells):
        return None
    return hull


# --- tile-aligned boxes ------------------------------------------------------

def _closure(s: TileStructure, box: list[set[int]]) -> list[set[int]]:
    """Smallest tile-aligned box containing ``box`` (modified in place)."""
    owner = s.owner()
    while True:
        ids = np.unique(owner[np.ix_(*(sorted(a) for a in box))])
        grown = False
        for t in ids:
            for ax, idx in enumerate(s.tiles[t].axes):
                if not box[ax].issuperset(idx):
                    box[ax].update(idx)
                    grown = True
        if not grown:
            return box


def _tiles_in(s: TileStructure, box: Sequence[Iterable[int]]) -> tuple[int, ...]:
    return tuple(int(t) for t in np.unique(s.owner()[np.ix_(*(sorted(a) for a in box))]))


def _is_full(s: TileStructure, box: Sequence[set[int]]) -> bool:
    return all(len(a) == d for a, d in zip(box, s.dims))


def _check_cap(s: TileStructure, max_tiles: int | None) -> None:
    if max_tiles is not None and s.ntiles > max_tiles:
        raise CapExceeded(f"{s.ntiles} tiles exceeds search cap {max_tiles}")


@dataclass(frozen=True)
class SpecialRegion:
    tile_ids: tuple[int, ...]
    hull: Axes


def enumerate_special_regions(s: TileStructure, max_tiles: int | None = DEFAULT_MAX_TILES) -> list[SpecialRegion]:
    """All unions of at least two tiles that form a combinatorial rectangle.

    Breadth-first over tile-aligned boxes: every such box is reached from any
    tile inside it by repeatedly adding one missing index and closing.
    """
    require_valid(s)
    _check_cap(s, max_tiles)
    found: dict[tuple[int, ...], Axes] = {}
    frontier = []
    for tid, tile in enumerate(s.tiles):
        found[(tid,)] = tile.axes
        frontier.append([set(a) for a in tile.axes])
    while frontier:
        nxt = []
        for box in frontier:
            for ax, d in enumerate(s.dims):
                for i in range(d):
                    if i in box[ax]:
                        continue
                    grown = [set(a) for a in box]
                    grown[ax].add(i)
                    grown = _closure(s, grown)
                    key = _tiles_in(s, grown)
                    if key not in found:
                        found[key] = tuple(tuple(sorted(a)) for a in grown)
                        nxt.append(grown)
        frontier = nxt
    return [SpecialRegion(k, h) for k, h in sorted(found.items()) if len(k) >= 2]


def _split(s: TileStructure, region: SpecialRegion) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Two-part split of a region into tiles/special regions, if one exists.

    Two boxes partitioning a box always share all axes but one, so a split
    exists iff, along some axis, the region's indices fall into more than one
    class under "covered by a common tile".
    """
    for ax in range(s.ndim):
        parent = {i: i for i in region.hull[ax]}

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for t in region.tile_ids:
            idx = s.tiles[t].axes[ax]
            for i in idx[1:]:
                parent[find(i)] = find(idx[0])
        roots = {find(i) for i in region.hull[ax]}
        if len(roots) > 1:
            first = find(s.tiles[region.tile_ids[0]].axes[ax][0])
            part = tuple(t for t in region.tile_ids if find(s.tiles[t].axes[ax][0]) == first)
            rest = tuple(t for t in region.tile_ids if t not in part)
            return part, rest
    return None


@dataclass(frozen=True)
class UTileVerdict:
    is_u_tile: bool
    region: tuple[int, ...] = ()
    split: tuple[tuple[int, ...], ...] = ()
    reason: str = ""

    def __bool__(self) -> bool:
        return self.is_u_tile


def is_u_tile(s: TileStructure, max_tiles: int | None = DEFAULT_MAX_TILES) -> UTileVerdict:
    """Decide the U-tile property; the witness is the smallest splittable region.

    For cubes the definition additionally asks for at least five tiles.
    """
    regions = enumerate_special_regions(s, max_tiles)
    if s.ndim == 3 and s.ntiles < 5:
        return UTileVerdict(False, reason=f"3D structures need at least 5 tiles, got {s.ntiles}")
    for region in sorted(regions, key=lambda r: (len(r.tile_ids), r.tile_ids)):
        parts = _split(s, region)
        if parts is not None:
            return UTileVerdict(False, region.tile_ids, parts, reason="special region splits into two parts")
    return UTileVerdict(True)


def group_is_maximal(group: Iterable[int], s: TileStructure,
                     keep_axes: Iterable[int] | None = None) -> bool:
    """True iff no strict superset of ``group`` other than all tiles has a rectangular union.

    With ``keep_axes`` only supersets whose union keeps the group's index set
    on one of those axes are considered.
    """
    group = tuple(sorted(set(group)))
    hull = s.hull_of(group)
    if hull is None:
        raise ValueError(f"union of tiles {group} is not a combinatorial rectangle")
    if len(group) == s.ntiles:
        return True
    keep = None if keep_axes is None else set(keep_axes)
    for ax, d in enumerate(s.dims):
        for i in range(d):
            if i in hull[ax]:
                continue
            box = [set(a) for a in hull]
            box[ax].add(i)
            box = _closure(s, box)
            if _is_full(s, box):
                continue
            if keep is None or any(k != ax and box[k] == set(hull[k]) for k in keep):
                return False
    return True


def _group_keep_axes(s: TileStructure, group: Sequence[int]) -> tuple[int, ...]:
    ax = _shared_axis(s, group)
    if ax is None:
        return tuple(range(s.ndim))
    return () if ax == -1 else (ax,)


def is_maximal_group(group: Sequence[int], s: TileStructure) -> bool:
    """Maximality of a group while its shared index set stays fixed.

    A singleton must not extend with either of its index sets held fixed.
    """
    return group_is_maximal(group, s, _group_keep_axes(s, group))


@dataclass(frozen=True)
class QuasiPartition:
    groups: tuple[tuple[int, ...], ...]
    shared_axis: tuple[int | None, ...]

    @property
    def m(self) -> int:
        return len(self.groups)

    def to_json(self) -> dict:
        return {"groups": [list(g) for g in self.groups], "shared_axis": list(self.shared_axis)}


def _shared_axis(s: TileStructure, group: Sequence[int]) -> int | None:
    if len(group) < 2:
        return None
    for ax in range(s.ndim):
        if len({s.tiles[t].axes[ax] for t in group}) == 1:
            return ax
    return -1


def coarse_structure(s: TileStructure, groups: Sequence[Sequence[int]]) -> TileStructure:
    hulls = []
    for g in groups:
        h = s.hull_of(g)
        if h is None:
            raise ValueError(f"group {tuple(g)} is not a combinatorial rectangle")
        hulls.append(h)
    return TileStructure(s.dims, tuple(Tile(h) for h in hulls))


def check_quasi_partition(s: TileStructure, groups: Sequence[Sequence[int]],
                          max_tiles: int | None = DEFAULT_MAX_TILES) -> list[str]:
    """Failed quasi U-tile conditions for an explicit grouping; empty = accepted."""
    problems: list[str] = []
    groups = [tuple(sorted(g)) for g in groups]
    flat = sorted(t for g in groups for t in g)
    if flat != list(range(s.ntiles)):
        return ["groups do not partition the tile set"]
    if len(groups) < 5:
        problems.append(f"only {len(groups)} groups, at least 5 required")
    rect_ok = True
    for g in groups:
        if s.hull_of(g) is None:
            problems.append(f"group {g}: union is not a combinatorial rectangle")
            rect_ok = False
            continue
        if not is_maximal_group(g, s):
            problems.append(f"group {g}: can be extended to a larger tile (condition i)")
        if _shared_axis(s, g) == -1:
            problems.append(f"group {g}: members share no identical index set (condition ii)")
    if rect_ok:
        verdict = is_u_tile(coarse_structure(s, groups), max_tiles)
        if not verdict:
            problems.append(f"coarse structure is not U-tile, region {verdict.region} splits as {verdict.split} (condition iii)")
    return problems


def _candidate_groups(s: TileStructure, t: int, free: Sequence[int], memo: dict, subset_cap: int = 16):
    cands = {(t,)}
    for ax in range(s.ndim):
        same = [u for u in free if u != t and s.tiles[u].axes[ax] == s.tiles[t].axes[ax]]
        if len(same) > subset_cap:
            raise CapExceeded(f"{len(same)} tiles share an index set with tile {t}")
        for r in range(1, len(same) + 1):
            for extra in itertools.combinations(same, r):
                cands.add(tuple(sorted((t,) + extra)))
    out = []
    for g in sorted(cands):
        if g not in memo:
            memo[g] = s.hull_of(g) is not None and is_maximal_group(g, s)
        if memo[g]:
            out.append(g)
    return out


def find_quasi_u_partition(s: TileStructure, max_tiles: int | None = DEFAULT_MAX_TILES) -> QuasiPartition | None:
    """Lexicographically smallest grouping witnessing the quasi U-tile property."""
    require_valid(s)
    if s.ndim != 2:
        raise ValueError("quasi U-tile partitions are defined for 2D structures")
    _check_cap(s, max_tiles)
    memo: dict = {}
    coarse_memo: dict = {}

    def dfs(free: tuple[int, ...], acc: list[tuple[int, ...]]):
        if not free:
            if len(acc) < 5:
                return None
            key = tuple(acc)
            if key not in coarse_memo:
                coarse_memo[key] = bool(is_u_tile(coarse_structure(s, acc), None))
            return list(acc) if coarse_memo[key] else None
        if len(acc) + len(free) < 5:
            return None
        t = free[0]
        for g in _candidate_groups(s, t, free, memo):
            rest = tuple(u for u in free if u not in g)
            got = dfs(rest, acc + [g])
            if got is not None:
                return got
        return None

    groups = dfs(tuple(range(s.ntiles)), [])
    if groups is None:
        return None
    return QuasiPartition(tuple(groups), tuple(_shared_axis(s, g) for g in groups))


def flatten_to_bipartition(s: TileStructure, b: Bipartition | str) -> TileStructure:
    """View a cube as a grid: rows = one party, columns = composite index of the other two."""
    b = Bipartition(b)
    if s.ndim != 3:
        raise ValueError("flattening needs a 3-axis structure")
    p, q, r = b.parties
    dr = s.dims[r]
    tiles = []
    for tile in s.tiles:
        cols = sorted(i * dr + j for i in tile.axes[q] for j in tile.axes[r])
        tiles.append(Tile((tile.axes[p], tuple(cols))))
    return TileStructure((s.dims[p], s.dims[q] * dr), tuple(tiles))


def relabel(s: TileStructure, perms: Sequence[Sequence[int]]) -> TileStructure:
    """Apply one index permutation per axis (``perms[ax][old] = new``)."""
    tiles = [Tile(tuple(tuple(sorted(perms[ax][i] for i in idx)) for ax, idx in enumerate(t.axes))) for t in s.tiles]
    return TileStructure(s.dims, tuple(tiles))


def enumerate_small_structures(dims: Sequence[int], max_tiles: int) -> Iterator[TileStructure]:
    """Every partition of a small grid into at most ``max_tiles`` combinatorial rectangles."""
    dims = tuple(dims)
    if int(np.prod(dims)) > 12 or max_tiles > 6:
        raise CapExceeded("small-structure sweep limited to area <= 12 and max_tiles <= 6")
    all_cells = list(itertools.product(*(range(d) for d in dims)))
    subsets = []
    for ax, d in enumerate(dims):
        subsets.append([c for r in range(1, d + 1) for c in itertools.combinations(range(d), r)])
    seen: set[frozenset] = set()

    def rec(covered: frozenset, tiles: list[Tile]):
        if len(covered) == len(all_cells):
            key = frozenset(t.axes for t in tiles)
            if key not in seen:
                seen.add(key)
                yield TileStructure(dims, tuple(tiles))
            return
        if len(tiles) == max_tiles:
            return
        first = next(c for c in all_cells if c not in covered)
        options = [[a for a in subsets[ax] if first[ax] in a] for ax in range(len(dims))]
        for axes in itertools.product(*options):
            cells = set(itertools.product(*axes))
            if cells & covered:
                continue
            yield from rec(covered | cells, tiles + [Tile(axes)])

    yield from rec(frozenset(), [])
