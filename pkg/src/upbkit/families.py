"""Concrete product-basis families with their tile structures.

Literal sets (``ex_3x5``, ``tiles_332``, ``v2_422``, ``v3_422``, ``table1``) are
stored as literal vectors; the parametrized generators (``dd2``,
``d22_completable``, ``d22_oneside``, ``ddd``) are built from their closed-form
local vectors. Tile ids in every structure are fixed so that the known
groupings can be written down directly.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .states import ProductState, StateSet, root_of_unity, stopper_state
from .table1 import TABLE1
from .tiles import Bipartition, QuasiPartition, Tile, TileStructure, _shared_axis, flatten_to_bipartition

# family -> minimum d (None: fixed-size literal family)
FAMILIES: dict[str, int | None] = {
    "ex_3x5": None,
    "tiles_332": None,
    "dd2": 3,
    "d22_completable": 4,
    "d22_oneside": 4,
    "v2_422": None,
    "v3_422": None,
    "ddd": 6,
    "table1": None,
}


class OutOfRange(ValueError):
    pass


class NoKnownPartition(LookupError):
    pass


@dataclass(frozen=True)
class FamilySpec:
    family: str
    d: int | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise OutOfRange(f"unknown family {self.family!r}; choose from {sorted(FAMILIES)}")
        lo = FAMILIES[self.family]
        if lo is None:
            if self.d is not None:
                raise OutOfRange(f"family {self.family} takes no d parameter")
        elif self.d is None or self.d < lo:
            raise OutOfRange(f"family {self.family} requires d >= {lo}, got {self.d}")

    @property
    def name(self) -> str:
        return self.family if self.d is None else f"{self.family}_d{self.d}"


@dataclass
class BuiltFamily:
    spec: FamilySpec
    states: StateSet
    structure: TileStructure | None
    tile_of_state: list[int | None]


# --- local vector kit ---------------------------------------------------------

def ket(dim: int, expr: str) -> np.ndarray:
    """Parse ``"0+1-2-3"`` or ``"1+3-2*2"`` (coefficient*index) into a vector."""
    v = np.zeros(dim, dtype=complex)
    terms = re.findall(r"([+-]?)\s*(?:(\d+)\*)?(\d+)", expr.replace(" ", ""))
    if not terms:
        raise ValueError(f"cannot parse ket {expr!r}")
    for sign, coef, idx in terms:
        v[int(idx)] += (-1 if sign == "-" else 1) * (int(coef) if coef else 1)
    return v


def dft_vector(dim: int, support: Sequence[int], freq: int) -> np.ndarray:
    """sum_j w_p^(freq*j) |support[j]> with p = len(support), in the given order."""
    v = np.zeros(dim, dtype=complex)
    p = len(support)
    for j, i in enumerate(support):
        v[i] += root_of_unity(p, freq * j)
    return v


def two_point(dim: int, a: int, b: int, s: int) -> np.ndarray:
    """|a> + (-1)^s |b>."""
    v = np.zeros(dim, dtype=complex)
    v[a] += 1
    v[b] += (-1) ** s
    return v


def basis(dim: int, i: int) -> np.ndarray:
    v = np.zeros(dim, dtype=complex)
    v[i] = 1
    return v


def _ps(label: str, *locs) -> ProductState:
    return ProductState(tuple(locs), label)


# --- the two 3x5 structures ------------------------------------------------

# tiles t1..t6 get ids 0..5
TS_3X5 = TileStructure.from_axes((3, 5), [
    [(1,), (1, 2, 3)],
    [(1, 2), (0,)],
    [(0,), (0, 1, 2, 3)],
    [(0, 1), (4,)],
    [(2,), (3, 4)],
    [(2,), (1, 2)],
])

TU_3X5 = TileStructure.from_axes((3, 5), [
    [(1,), (1, 2, 3)],
    [(1, 2), (0,)],
    [(0,), (0, 1, 2, 3)],
    [(0, 1), (4,)],
    [(2,), (1, 2, 3, 4)],
])

TS_3X5_PARTITION = ((0,), (1,), (2,), (3,), (4, 5))


def _ex_3x5() -> BuiltFamily:
    w = root_of_unity(3, 1)
    row = lambda i: basis(3, i)
    col = lambda coeffs: np.array(coeffs, dtype=complex)
    states = [
        _ps("phi1^(1)", row(1), col([0, 1, w, w**2, 0])),
        _ps("phi1^(2)", row(1), col([0, 1, w**2, w, 0])),
        _ps("phi2^(1)", ket(3, "1-2"), basis(5, 0)),
        _ps("phi3^(1)", row(0), ket(5, "0+1-2-3")),
        _ps("phi3^(2)", row(0), ket(5, "0-1+2-3")),
        _ps("phi3^(3)", row(0), ket(5, "0-1-2+3")),
        _ps("phi4^(1)", ket(3, "0-1"), basis(5, 4)),
        _ps("phi5^(1)", row(2), ket(5, "3-4")),
        _ps("phi6^(1)", row(2), ket(5, "1-2")),
        stopper_state((3, 5)),
    ]
    tile_of = [0, 0, 1, 2, 2, 2, 3, 4, 5, None]
    return BuiltFamily(FamilySpec("ex_3x5"), StateSet((3, 5), states, {"family": "ex_3x5"}), TS_3X5, tile_of)


def lone_complement_state() -> ProductState:
    """The lone product state |2>|1+2-3-4> in the complement of the 3x5 set."""
    return _ps("phi", basis(3, 2), ket(5, "1+2-3-4"))


# --- C^3 x C^3 x C^2 ----------------------------------------------------------

_LIT_332 = [
    ("phi0", "1", "1", "0-1"),
    ("phi1", "0", "0-1", "0"),
    ("phi2", "0-1", "2", "0"),
    ("phi3", "2", "1-2", "0"),
    ("phi4", "1-2", "0", "0"),
    ("phi5", "0-1", "0", "1"),
    ("phi6", "0", "1-2", "1"),
    ("phi7", "1-2", "2", "1"),
    ("phi8", "2", "0-1", "1"),
    ("phi9", "0+1+2", "0+1+2", "0+1"),
]


def _literal(dims, rows) -> list[ProductState]:
    return [_ps(label, *(ket(d, e) for d, e in zip(dims, exprs))) for label, *exprs in rows]


def _structure_from_supports(dims, states: list[ProductState], tile_of: list[int | None]) -> TileStructure:
    tiles: dict[int, Tile] = {}
    for x, t in zip(states, tile_of):
        if t is not None:
            tiles.setdefault(t, Tile(x.support()))
    return TileStructure(dims, tuple(tiles[t] for t in sorted(tiles)))


def _tiles_332() -> BuiltFamily:
    dims = (3, 3, 2)
    states = _literal(dims, _LIT_332)
    tile_of = list(range(9)) + [None]
    s = _structure_from_supports(dims, states, tile_of)
    return BuiltFamily(FamilySpec("tiles_332"), StateSet(dims, states, {"family": "tiles_332"}), s, tile_of)


def _dd2(d: int) -> BuiltFamily:
    """Nested pinwheel layers on both height slices plus a center tile.

    Layer k (1-based) uses index ranges of length d-2k+1; the states of each
    layer tile are the nonzero DFT frequencies on that range.
    """
    dims = (d, d, 2)
    layers = (d - 1) // 2 if d % 2 else (d - 2) // 2
    states: list[ProductState] = []
    tile_of: list[int | None] = []
    tiles: dict[int, Tile] = {}
    for k in range(1, layers + 1):
        n = d - 2 * k + 1
        a_sup = tuple(range(k - 1, d - k))   # alpha support
        b_sup = tuple(range(k, d - k + 1))   # beta support
        lo, hi = k - 1, d - k
        alpha = lambda i: dft_vector(d, a_sup, i)
        beta = lambda i: dft_vector(d, b_sup, i)
        e = lambda i: basis(d, i)
        c0, c1 = basis(2, 0), basis(2, 1)
        base = 8 * (k - 1)
        layout = {
            1: (lambda i: (e(lo), alpha(i), c0), ((lo,), a_sup, (0,))),
            2: (lambda i: (alpha(i), e(hi), c0), (a_sup, (hi,), (0,))),
            3: (lambda i: (e(hi), beta(i), c0), ((hi,), b_sup, (0,))),
            4: (lambda i: (beta(i), e(lo), c0), (b_sup, (lo,), (0,))),
            5: (lambda i: (alpha(i), e(lo), c1), (a_sup, (lo,), (1,))),
            6: (lambda i: (e(lo), beta(i), c1), ((lo,), b_sup, (1,))),
            7: (lambda i: (beta(i), e(hi), c1), (b_sup, (hi,), (1,))),
            8: (lambda i: (e(hi), alpha(i), c1), ((hi,), a_sup, (1,))),
        }
        for j, (make, axes) in layout.items():
            tiles[base + j] = Tile(axes)
            for i in range(1, n):
                states.append(_ps(f"A{j}^{k}[{i}]", *make(i)))
                tile_of.append(base + j)
    if d % 2:
        c = (d - 1) // 2
        tiles[0] = Tile(((c,), (c,), (0, 1)))
        states.append(_ps("A0", basis(d, c), basis(d, c), two_point(2, 0, 1, 1)))
        tile_of.append(0)
    else:
        h = d // 2
        tiles[0] = Tile(((h - 1, h), (h - 1, h), (0, 1)))
        for i, j, k in itertools.product(range(2), repeat=3):
            if (i, j, k) == (0, 0, 0):
                continue
            states.append(_ps(f"A0'[{i}{j}{k}]", two_point(d, h - 1, h, i), two_point(d, h - 1, h, j),
                              two_point(2, 0, 1, k)))
            tile_of.append(0)
    states.append(stopper_state(dims))
    tile_of.append(None)
    s = TileStructure(dims, tuple(tiles[t] for t in sorted(tiles)))
    return BuiltFamily(FamilySpec("dd2", d), StateSet(dims, states, {"family": "dd2", "d": d}), s, tile_of)


# --- C^d x C^2 x C^2 ----------------------------------------------------------

def _d22_completable(d: int) -> BuiltFamily:
    dims = (d, 2, 2)
    xi = lambda s: two_point(d, d - 2, d - 1, s)
    eta = lambda s: two_point(2, 0, 1, s)
    alpha = lambda i: dft_vector(d, range(d), i)
    beta = lambda j: dft_vector(d, range(d - 2), j)
    e2 = lambda i: basis(2, i)
    states, tile_of = [], []

    def add(tid, label, *locs):
        states.append(_ps(label, *locs))
        tile_of.append(tid)

    for i in range(1, d):
        add(0, f"A1[{i}]", alpha(i), e2(0), e2(0))
    for s, k in itertools.product(range(2), range(2)):
        if (s, k) != (0, 0):
            add(1, f"A2[{s}{k}]", xi(s), eta(k), e2(1))
    for j in range(1, d - 2):
        add(2, f"A3[{j}]", beta(j), e2(0), e2(1))
    for j, s in itertools.product(range(d - 2), range(2)):
        if (j, s) != (0, 0):
            add(3, f"A4[{j}{s}]", beta(j), e2(1), eta(s))
    add(4, "A5[1]", xi(1), e2(1), e2(0))
    states.append(stopper_state(dims))
    tile_of.append(None)
    lo = tuple(range(d - 2))
    top = (d - 2, d - 1)
    s = TileStructure.from_axes(dims, [
        [tuple(range(d)), (0,), (0,)],
        [top, (0, 1), (1,)],
        [lo, (0,), (1,)],
        [lo, (1,), (0, 1)],
        [top, (1,), (0,)],
    ])
    return BuiltFamily(FamilySpec("d22_completable", d), StateSet(dims, states, {"family": "d22_completable", "d": d}),
                       s, tile_of)


_LIT_V2 = [
    ("phi1", "0+1-2-3", "0", "0"),
    ("phi2", "0-1-2+3", "0", "0"),
    ("phi3", "0-1+2-3", "0", "0"),
    ("phi4", "2+3", "0-1", "1"),
    ("phi5", "2-3", "0+1", "1"),
    ("phi6", "2-3", "0-1", "1"),
    ("phi7", "0-1", "0", "1"),
    ("phi8", "0+1", "1", "0-1"),
    ("phi9", "0-1", "1", "0+1"),
    ("phi10", "0-1", "1", "0-1"),
    ("phi11", "2-3", "1", "0"),
    ("phi12", "0+1+2+3", "0+1", "0+1"),
]


def _v2_422() -> BuiltFamily:
    dims = (4, 2, 2)
    states = _literal(dims, _LIT_V2)
    tile_of = [0, 0, 0, 1, 1, 1, 2, 3, 3, 3, 4, None]
    s = _d22_completable(4).structure
    return BuiltFamily(FamilySpec("v2_422"), StateSet(dims, states, {"family": "v2_422"}), s, tile_of)


def v2_completion() -> list[ProductState]:
    """The four literal product states completing the 4x2x2 set in the A|BC view (dims 4 x 4)."""
    rows = [
        ("psi1", "2+3", "1+3-2*2"),
        ("psi2", "0+1", "2+3-2*1"),
        ("psi3", "0+1-2-3", "1+2+3"),
        ("psi4", "0+1+2+3", "1+2+3-3*0"),
    ]
    return [_ps(label, ket(4, a), ket(4, bc)) for label, a, bc in rows]


def d22_completion(d: int) -> list[ProductState]:
    """Completing product states for the d x 2 x 2 family in the A|BC view (dims d x 4)."""
    xi0 = two_point(d, d - 2, d - 1, 0)
    beta0 = dft_vector(d, range(d - 2), 0)
    alpha0 = dft_vector(d, range(d), 0)
    return [
        _ps("psi1", xi0, ket(4, "1+3-2*2")),
        _ps("psi2", beta0, ket(4, "2+3-2*1")),
        _ps("psi3", 2 * beta0 - (d - 2) * xi0, ket(4, "1+2+3")),
        _ps("psi4", alpha0, ket(4, "1+2+3-3*0")),
    ]


def _d22_oneside(d: int) -> BuiltFamily:
    dims = (d, 2, 2)
    eta_a = two_point(d, 0, 1, 1)
    eta = lambda s: two_point(2, 0, 1, s)
    xi1 = two_point(d, d - 2, d - 1, 1)
    zeta1 = two_point(d, 0, d - 2, 1)
    eps1 = two_point(d, 1, d - 1, 1)
    alpha = lambda i: dft_vector(d, range(2, d - 1), i)
    beta = lambda j: dft_vector(d, range(1, d - 2), j)
    e = lambda dim, i: basis(dim, i)
    states, tile_of = [], []

    def add(tid, label, *locs):
        states.append(_ps(label, *locs))
        tile_of.append(tid)

    add(0, "A1[1]", eta_a, e(2, 0), e(2, 0))
    for i, s in itertools.product(range(d - 3), range(2)):
        if (i, s) != (0, 0):
            add(1, f"A2[{i}{s}]", alpha(i), eta(s), e(2, 0))
    add(2, "A3[1]", eps1, e(2, 1), e(2, 0))
    add(3, "A4[1]", xi1, e(2, 1), e(2, 1))
    for j, s in itertools.product(range(d - 3), range(2)):
        if (j, s) != (0, 0):
            add(4, f"A5[{j}{s}]", beta(j), eta(s), e(2, 1))
    add(5, "A6[1]", zeta1, e(2, 0), e(2, 1))
    add(6, "A7[1]", e(d, 0), e(2, 1), eta(1))
    add(7, "A8[1]", e(d, d - 1), e(2, 0), eta(1))
    states.append(stopper_state(dims))
    tile_of.append(None)
    s = TileStructure.from_axes(dims, [
        [(0, 1), (0,), (0,)],
        [tuple(range(2, d - 1)), (0, 1), (0,)],
        [(1, d - 1), (1,), (0,)],
        [(d - 2, d - 1), (1,), (1,)],
        [tuple(range(1, d - 2)), (0, 1), (1,)],
        [(0, d - 2), (0,), (1,)],
        [(0,), (1,), (0, 1)],
        [(d - 1,), (0,), (0, 1)],
    ])
    return BuiltFamily(FamilySpec("d22_oneside", d), StateSet(dims, states, {"family": "d22_oneside", "d": d}),
                       s, tile_of)


_LIT_V3 = [
    ("phi1", "0-1", "0", "0"),
    ("phi2", "2", "0-1", "0"),
    ("phi3", "1-3", "1", "0"),
    ("phi4", "2-3", "1", "1"),
    ("phi5", "1", "0-1", "1"),
    ("phi6", "0-2", "0", "1"),
    ("phi7", "0", "1", "0-1"),
    ("phi8", "3", "0", "0-1"),
    ("phi9", "0+1+2+3", "0+1", "0+1"),
]


def _v3_422() -> BuiltFamily:
    dims = (4, 2, 2)
    states = _literal(dims, _LIT_V3)
    tile_of = list(range(8)) + [None]
    s = _d22_oneside(4).structure
    return BuiltFamily(FamilySpec("v3_422"), StateSet(dims, states, {"family": "v3_422"}), s, tile_of)


# --- C^d x C^d x C^d ----------------------------------------------------------

_KIND = {"v": 0, "h": 1, "c": 2}


def ddd_tile_id(kind: str, k: int, i: int, d: int) -> int:
    return 3 * ((k % d) * d + (i % d)) + _KIND[kind]


def _ddd_supports(d: int, k: int, i: int) -> dict[str, tuple[list[int], ...]]:
    fl, ce = d // 2, (d + 1) // 2
    return {
        "v": ([k], [(j + k + 2 + i) % d for j in range(fl - 1)], [i]),
        "h": ([(j + k + 1 - i) % d for j in range(ce - 1)], [k], [i]),
        "c": ([k], [i], [(i - k - 1) % d, (i - k) % d]),
    }


def ddd_structure(d: int) -> TileStructure:
    tiles = []
    for k, i in itertools.product(range(d), repeat=2):
        sup = _ddd_supports(d, k, i)
        for kind in "vhc":
            tiles.append(Tile(tuple(tuple(sorted(a)) for a in sup[kind])))
    return TileStructure((d, d, d), tuple(tiles))


def _ddd(d: int) -> BuiltFamily:
    dims = (d, d, d)
    fl, ce = d // 2, (d + 1) // 2
    states, tile_of = [], []
    for k, i in itertools.product(range(d), repeat=2):
        sup = _ddd_supports(d, k, i)
        for m in range(1, fl - 1):
            states.append(_ps(f"V{k},{i}^{m}", basis(d, k), dft_vector(d, sup["v"][1], m), basis(d, i)))
            tile_of.append(ddd_tile_id("v", k, i, d))
        for n in range(1, ce - 1):
            states.append(_ps(f"H{k},{i}^{n}", dft_vector(d, sup["h"][0], n), basis(d, k), basis(d, i)))
            tile_of.append(ddd_tile_id("h", k, i, d))
        states.append(_ps(f"C{k},{i}^1", basis(d, k), basis(d, i), two_point(d, *sup["c"][2], 1)))
        tile_of.append(ddd_tile_id("c", k, i, d))
    states.append(stopper_state(dims))
    tile_of.append(None)
    return BuiltFamily(FamilySpec("ddd", d), StateSet(dims, states, {"family": "ddd", "d": d}), ddd_structure(d),
                       tile_of)


def _table1() -> BuiltFamily:
    dims = (6, 6, 6)
    states = _literal(dims, TABLE1)
    tile_of = [ddd_tile_id(lab[0].lower(), int(lab[1]), int(lab[2]), 6) for lab, *_ in TABLE1]
    states.append(stopper_state(dims))
    tile_of.append(None)
    return BuiltFamily(FamilySpec("table1"), StateSet(dims, states, {"family": "table1"}), ddd_structure(6), tile_of)


_BUILDERS = {
    "ex_3x5": lambda d: _ex_3x5(),
    "tiles_332": lambda d: _tiles_332(),
    "dd2": _dd2,
    "d22_completable": _d22_completable,
    "d22_oneside": _d22_oneside,
    "v2_422": lambda d: _v2_422(),
    "v3_422": lambda d: _v3_422(),
    "ddd": _ddd,
    "table1": lambda d: _table1(),
}


def build(spec: FamilySpec | str, d: int | None = None) -> BuiltFamily:
    if isinstance(spec, str):
        spec = FamilySpec(spec, d)
    out = _BUILDERS[spec.family](spec.d)
    out.spec = spec
    return out


def size_formula(spec: FamilySpec | str, d: int | None = None) -> int:
    if isinstance(spec, str):
        spec = FamilySpec(spec, d)
    d = spec.d
    return {
        "ex_3x5": lambda: 10,
        "tiles_332": lambda: 10,
        "dd2": lambda: 2 * d * d - 4 * d + (4 if d % 2 else 8),
        "d22_completable": lambda: 4 * d - 4,
        "d22_oneside": lambda: 4 * d - 7,
        "v2_422": lambda: 12,
        "v3_422": lambda: 9,
        "ddd": lambda: d ** 3 - 3 * d * d + 1,
        "table1": lambda: 109,
    }[spec.family]()


def _ddd_groups(d: int, b: Bipartition) -> list[tuple[int, ...]]:
    t = lambda kind, k, i: ddd_tile_id(kind, k, i, d)
    groups = []
    for k in range(d):
        if b is Bipartition.A_BC:
            groups.append([t("v", k, i) for i in range(d)] + [t("c", k, i) for i in range(d)])
        elif b is Bipartition.B_CA:
            groups.append([t("h", k, i) for i in range(d)] + [t("c", i, k) for i in range(d)])
        else:
            groups.append([t("v", i, k) for i in range(d)] + [t("h", i, k) for i in range(d)])
    for k in range(d):
        if b is Bipartition.A_BC:
            groups.append([t("h", i, (i + k) % d) for i in range(d)])
        elif b is Bipartition.B_CA:
            groups.append([t("v", i, (d - k - i) % d) for i in range(d)])
        else:
            groups.append([t("c", i, (i + k) % d) for i in range(d)])
    return [tuple(sorted(g)) for g in groups]


def known_partition(spec: FamilySpec | str, b: Bipartition | str | None = None, d: int | None = None) -> QuasiPartition:
    """The known quasi U-tile grouping, in tile ids of the (flattened) structure."""
    if isinstance(spec, str):
        spec = FamilySpec(spec, d)
    b = Bipartition(b) if b is not None else None
    fam = spec.family
    if fam == "ex_3x5" and b is None:
        groups = list(TS_3X5_PARTITION)
    elif fam == "tiles_332" and b is Bipartition.A_BC:
        groups = [(0,), (1, 6), (2, 5), (3, 8), (4, 7)]
    elif fam == "tiles_332" and b is Bipartition.B_CA:
        groups = [(0,), (1, 8), (2, 7), (3, 6), (4, 5)]
    elif fam == "dd2" and b in (Bipartition.A_BC, Bipartition.B_CA):
        layers = (spec.d - 1) // 2 if spec.d % 2 else (spec.d - 2) // 2
        pairs = [(1, 6), (2, 5), (3, 8), (4, 7)] if b is Bipartition.A_BC else [(1, 8), (2, 7), (3, 6), (4, 5)]
        groups = [(0,)] + [(8 * (k - 1) + p, 8 * (k - 1) + q) for k in range(1, layers + 1) for p, q in pairs]
    elif fam in ("ddd", "table1") and b is not None:
        groups = _ddd_groups(spec.d or 6, b)
    else:
        raise NoKnownPartition(f"no known partition for {spec.name} in {b.value if b else '2D'}")
    s = build(spec).structure
    if s.ndim == 3:
        s = flatten_to_bipartition(s, b)
    return QuasiPartition(tuple(groups), tuple(_shared_axis(s, g) for g in groups))
