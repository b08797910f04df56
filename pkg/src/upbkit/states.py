"""Product states, tile DFT bases, the stopper state and the punctured tile set."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import reduce
from typing import Sequence

import numpy as np

from .tiles import Bipartition, Tile, TileStructure, require_valid

ORTHO_TOL = 1e-9
RANK_RTOL = 1e-8


def root_of_unity(order: int, power: int) -> complex:
    theta = 2 * np.pi * (power % order) / order
    return complex(np.cos(theta), np.sin(theta))


@dataclass
class ProductState:
    locals: tuple[np.ndarray, ...]
    label: str = ""

    def __post_init__(self):
        self.locals = tuple(np.asarray(v, dtype=complex) for v in self.locals)
        if any(not np.any(v) for v in self.locals):
            raise ValueError(f"state {self.label!r} has an all-zero local vector")

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(len(v) for v in self.locals)

    def vector(self) -> np.ndarray:
        return reduce(np.kron, self.locals)

    def norm(self) -> float:
        return float(np.prod([np.linalg.norm(v) for v in self.locals]))

    def normalized(self) -> "ProductState":
        return ProductState(tuple(v / np.linalg.norm(v) for v in self.locals), self.label)

    def support(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(int(i) for i in np.flatnonzero(np.abs(v) > 1e-12)) for v in self.locals)


@dataclass
class StateSet:
    dims: tuple[int, ...]
    states: list[ProductState]
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        self.dims = tuple(int(d) for d in self.dims)
        for x in self.states:
            if x.dims != self.dims:
                raise ValueError(f"state {x.label!r} has dims {x.dims}, set has {self.dims}")
        if len(self.states) > int(np.prod(self.dims)):
            raise ValueError("more states than the dimension of the space")

    def __len__(self) -> int:
        return len(self.states)

    def __iter__(self):
        return iter(self.states)

    def matrix(self) -> np.ndarray:
        """States as rows of an (n, prod(dims)) array."""
        if not self.states:
            return np.zeros((0, int(np.prod(self.dims))), dtype=complex)
        return np.array([x.vector() for x in self.states])


def tile_dft_states(tile: Tile, dims: Sequence[int], tile_id: int | None = None) -> list[ProductState]:
    """The full DFT product basis of one tile, frequencies in row-major order."""
    states = []
    name = "t" if tile_id is None else f"t{tile_id}"
    for freqs in itertools.product(*(range(len(a)) for a in tile.axes)):
        locs = []
        for idx, f, d in zip(tile.axes, freqs, dims):
            v = np.zeros(d, dtype=complex)
            for e, i in enumerate(idx):
                v[i] = root_of_unity(len(idx), f * e)
            locs.append(v)
        states.append(ProductState(tuple(locs), f"{name}{freqs}".replace(" ", "")))
    return states


def stopper_state(dims: Sequence[int]) -> ProductState:
    return ProductState(tuple(np.ones(d, dtype=complex) for d in dims), "S")


def punctured_tile_set(s: TileStructure) -> StateSet:
    """All tile DFT states except each tile's zero-frequency state, plus the stopper."""
    require_valid(s)
    states = []
    for tid, tile in enumerate(s.tiles):
        states.extend(tile_dft_states(tile, s.dims, tid)[1:])
    states.append(stopper_state(s.dims))
    return StateSet(s.dims, states, {"construction": "punctured_tile_set", "structure": s})


def inner_product(x: ProductState, y: ProductState) -> complex:
    if x.dims != y.dims:
        raise ValueError(f"dimension mismatch {x.dims} vs {y.dims}")
    return complex(np.prod([np.vdot(a, b) for a, b in zip(x.locals, y.locals)]))


def gram_matrix(states: Sequence[ProductState]) -> np.ndarray:
    n = len(states)
    if n == 0:
        return np.zeros((0, 0), dtype=complex)
    g = np.ones((n, n), dtype=complex)
    for f in range(len(states[0].locals)):
        loc = np.array([x.locals[f] for x in states])
        g *= loc.conj() @ loc.T
    return g


@dataclass(frozen=True)
class GramReport:
    ok: bool
    worst_pair: tuple[int, int] | None
    worst_value: float

    def __bool__(self) -> bool:
        return self.ok


def gram_check(S: StateSet | Sequence[ProductState], tol: float = ORTHO_TOL) -> GramReport:
    states = S.states if isinstance(S, StateSet) else list(S)
    g = np.abs(gram_matrix(states))
    if len(states) < 2:
        return GramReport(True, None, 0.0)
    np.fill_diagonal(g, -1.0)
    i, j = np.unravel_index(int(np.argmax(g)), g.shape)
    worst = float(g[i, j])
    pair = (int(min(i, j)), int(max(i, j)))
    return GramReport(worst < tol, pair, worst)


def numerical_rank(m: np.ndarray, rtol: float = RANK_RTOL) -> int:
    if m.size == 0:
        return 0
    sv = np.linalg.svd(m, compute_uv=False)
    if sv[0] == 0:
        return 0
    return int(np.sum(sv > rtol * sv[0]))


@dataclass(frozen=True)
class CoeffMatrix:
    entries: np.ndarray
    sum: complex
    rank: int


def state_to_matrix(x: ProductState | np.ndarray, dims: Sequence[int] | None = None) -> CoeffMatrix:
    """Coefficient matrix a_ij of a bipartite state."""
    if isinstance(x, ProductState):
        if len(x.locals) != 2:
            raise ValueError("state_to_matrix needs a bipartite state")
        m = np.outer(x.locals[0], x.locals[1])
    else:
        if dims is None or len(dims) != 2:
            raise ValueError("state_to_matrix needs two local dimensions")
        m = np.asarray(x, dtype=complex).reshape(dims)
    return CoeffMatrix(m, complex(m.sum()), numerical_rank(m))


def flatten_state(x: ProductState, b: Bipartition | str) -> ProductState:
    """Regroup a tripartite product state as a bipartite one (composite index row-major)."""
    p, q, r = Bipartition(b).parties
    return ProductState((x.locals[p], np.kron(x.locals[q], x.locals[r])), x.label)


def flatten_set(S: StateSet, b: Bipartition | str) -> StateSet:
    p, q, r = Bipartition(b).parties
    prov = dict(S.provenance, bipartition=Bipartition(b).value)
    return StateSet((S.dims[p], S.dims[q] * S.dims[r]), [flatten_state(x, b) for x in S.states], prov)


def phase_match(reference: Sequence[ProductState], built: Sequence[ProductState],
                tol: float = 1e-9) -> tuple[bool, list[int], float]:
    """Bijection reference[i] -> built[perm[i]] with normalized overlap >= 1 - tol.

    Returns (ok, perm, worst overlap). Each state is matched to its best
    partner; ok requires the matching to be one-to-one.
    """
    if len(reference) != len(built):
        return False, [], 0.0
    if not reference:
        return True, [], 1.0
    ov = np.abs(gram_matrix(list(reference) + list(built)))[: len(reference), len(reference):]
    norms_r = np.array([x.norm() for x in reference])
    norms_b = np.array([x.norm() for x in built])
    ov = ov / np.outer(norms_r, norms_b)
    perm = [int(j) for j in np.argmax(ov, axis=1)]
    worst = float(min(ov[i, j] for i, j in enumerate(perm)))
    ok = len(set(perm)) == len(perm) and worst >= 1 - tol
    return ok, perm, worst


class NotTileGenerated(ValueError):
    pass


def structure_from_states(S: StateSet) -> tuple[TileStructure, list[int | None]]:
    """Recover the tile structure of a punctured tile set from state supports.

    Non-stopper states with equal supports share a tile; cells covered by no
    state are 1x1 tiles (which contribute no states). The set must contain
    exactly one all-ones stopper and each tile must carry cells-1 states.
    Returns the structure and, per state, its tile id (None for the stopper).
    """
    full = tuple(tuple(range(d)) for d in S.dims)
    stopper_idx = [i for i, x in enumerate(S.states)
                   if all(np.allclose(v, v[0]) for v in x.locals) and x.support() == full]
    if len(stopper_idx) != 1:
        raise NotTileGenerated("expected exactly one stopper state")
    supports: dict[tuple, list[int]] = {}
    for i, x in enumerate(S.states):
        if i != stopper_idx[0]:
            supports.setdefault(x.support(), []).append(i)
    owner = np.full(S.dims, -1, dtype=int)
    tiles: list[Tile] = []
    tile_of: list[int | None] = [None] * len(S.states)
    for sup, members in sorted(supports.items()):
        block = owner[np.ix_(*sup)]
        if np.any(block >= 0):
            raise NotTileGenerated(f"support {sup} overlaps another tile")
        tid = len(tiles)
        owner[np.ix_(*sup)] = tid
        tiles.append(Tile(sup))
        for i in members:
            tile_of[i] = tid
        if len(members) != tiles[-1].size - 1:
            raise NotTileGenerated(f"tile {sup} carries {len(members)} states, expected {tiles[-1].size - 1}")
    for cell in zip(*np.nonzero(owner < 0)):
        owner[cell] = len(tiles)
        tiles.append(Tile(tuple((int(c),) for c in cell)))
    s = TileStructure(S.dims, tuple(tiles))
    require_valid(s)
    return s, tile_of
