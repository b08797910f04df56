"""Complements, product-state search and per-bipartition classification."""
from __future__ import annotations

import itertools
from functools import reduce
from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np
from scipy.linalg import null_space

from .states import (ProductState, StateSet, NotTileGenerated, flatten_set, gram_check,
                     numerical_rank, structure_from_states)
from .tiles import (DEFAULT_MAX_TILES, Bipartition, CapExceeded, QuasiPartition, TileStructure,
                    _split, check_quasi_partition, enumerate_special_regions, find_quasi_u_partition,
                    flatten_to_bipartition, is_u_tile)

VERDICTS = ("Completable", "UCPB", "SUCPB-certified", "UPB", "Undetermined")
CLASSES = {
    "UPB": ["UPB", "SUCPB", "UCPB"],
    "SUCPB-certified": ["SUCPB", "UCPB"],
    "UCPB": ["UCPB"],
    "Completable": [],
    "Undetermined": [],
}


class NotOrthogonal(ValueError):
    pass


@dataclass
class Subspace:
    dims: tuple[int, ...]
    basis: np.ndarray  # (prod(dims), dim), orthonormal columns

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def project(self, x: np.ndarray) -> np.ndarray:
        return self.basis @ (self.basis.conj().T @ x)

    @classmethod
    def full(cls, dims: Sequence[int]) -> "Subspace":
        n = int(np.prod(dims))
        return cls(tuple(dims), np.eye(n, dtype=complex))


def complement_basis(S: StateSet) -> Subspace:
    """Orthonormal basis of the orthogonal complement of an orthogonal set."""
    rep = gram_check(S)
    if not rep:
        raise NotOrthogonal(f"states {rep.worst_pair} overlap by {rep.worst_value:.3g}")
    n = int(np.prod(S.dims))
    if len(S) == 0:
        return Subspace.full(S.dims)
    m = S.matrix()
    m = m / np.linalg.norm(m, axis=1, keepdims=True)
    basis = null_space(m.conj())
    return Subspace(S.dims, basis.reshape(n, -1).astype(complex))


@dataclass(frozen=True)
class SeesawConfig:
    restarts: int = 200
    max_iter: int = 500
    tol: float = 1e-10
    threshold: float = 1 - 1e-6
    seed: int = 42
    polish_tol: float = 1e-12
    polish_iter: int = 2000
    max_finds: int | None = None

    def __post_init__(self):
        if self.restarts < 1 or self.max_iter < 1 or self.tol <= 0:
            raise ValueError("restarts, max_iter and tol must be positive")
        if not 0 < self.threshold < 1:
            raise ValueError("threshold must lie in (0, 1)")


@dataclass
class SeesawResult:
    found: list[ProductState]
    best_overlap: float
    rounds: int
    overlaps: list[float] = field(default_factory=list)


def _random_locals(rng: np.random.Generator, dims: Sequence[int], r: int) -> list[np.ndarray]:
    out = []
    for d in dims:
        v = rng.standard_normal((r, d)) + 1j * rng.standard_normal((r, d))
        out.append(v / np.linalg.norm(v, axis=1, keepdims=True))
    return out


def _contract(tq: np.ndarray, locs: list[np.ndarray], skip: int) -> np.ndarray:
    """Contract conj(Q) with every local factor except ``skip``; returns (R, c, d_skip)."""
    nf = len(locs)
    letters = "abcdefgh"[:nf]
    operands = ["k" + letters]
    args = [tq]
    for j in range(nf):
        if j != skip:
            operands.append("r" + letters[j])
            args.append(locs[j])
    expr = ",".join(operands) + "->rk" + letters[skip]
    return np.einsum(expr, *args, optimize=True)


def _local_forms(op, locs: list[np.ndarray], j: int) -> np.ndarray:
    """Per restart, the Hermitian form on factor j with the other factors fixed."""
    if isinstance(op, tuple):
        # two parties: op = (P as (d0, d1, d0, d1), P as (d1, d0, d1, d0))
        p = op[j]
        v = locs[1 - j]
        d, e = p.shape[0], p.shape[1]
        pv = (p.reshape(d * e * d, e) @ v.T).reshape(d, e, d, -1)
        return np.einsum("rb,abcr->rac", v.conj(), pv, optimize=True)
    g = _contract(op, locs, j)
    return np.einsum("rki,rkj->rij", g.conj(), g, optimize=True)


def _sweep(op, locs: list[np.ndarray]) -> np.ndarray:
    """One pass over all factors; returns the overlap after the last update."""
    val = None
    for j in range(len(locs)):
        w, v = np.linalg.eigh(_local_forms(op, locs, j))
        locs[j] = v[:, :, -1]
        val = w[:, -1]
    return np.clip(val.real, 0.0, 1.0)


def _operator(W: "Subspace"):
    c = W.dim
    if len(W.dims) == 2:
        d0, d1 = W.dims
        p = (W.basis @ W.basis.conj().T).reshape(d0, d1, d0, d1)
        return (np.ascontiguousarray(p), np.ascontiguousarray(p.transpose(1, 0, 3, 2)))
    return W.basis.conj().T.reshape((c, *W.dims))


def _canonical(v: np.ndarray) -> np.ndarray:
    """Unit vector with its first large entry made real positive."""
    v = v / np.linalg.norm(v)
    k = int(np.flatnonzero(np.abs(v) > 1e-8 * np.abs(v).max())[0])
    return v * (abs(v[k]) / v[k])


def _search_round(W: Subspace, cfg: SeesawConfig, round_no: int) -> tuple[ProductState | None, float]:
    dims = W.dims
    op = _operator(W)
    rng = np.random.default_rng([cfg.seed, round_no])
    locs = _random_locals(rng, dims, cfg.restarts)
    prev = np.zeros(cfg.restarts)
    for _ in range(cfg.max_iter):
        val = _sweep(op, locs)
        done = np.abs(val - prev) < cfg.tol
        prev = val
        if done.all():
            break
    best = int(np.argmax(prev))  # first index wins ties
    best_val = float(prev[best])
    if best_val < cfg.threshold:
        return None, best_val
    one = [l[best:best + 1].copy() for l in locs]
    for _ in range(cfg.polish_iter):
        _sweep(op, one)
        x = reduce(np.kron, [l[0] for l in one])
        if np.linalg.norm(x - W.project(x)) <= cfg.polish_tol:
            break
    x = ProductState(tuple(_canonical(l[0]) for l in one), f"p{round_no}")
    return x, best_val


def seesaw_product_search(W: Subspace, cfg: SeesawConfig = SeesawConfig()) -> SeesawResult:
    """Product states in ``W`` by alternating eigenvector updates, with deflation.

    Each accepted state is removed from ``W`` and the full restart schedule is
    run again on the remainder, so the finds are mutually orthogonal.
    """
    if W.dim == 0:
        raise ValueError("search space is zero-dimensional")
    found: list[ProductState] = []
    overlaps: list[float] = []
    basis = W.basis
    best_first = None
    rounds = 0
    while basis.shape[1] > 0:
        if cfg.max_finds is not None and len(found) >= cfg.max_finds:
            break
        sub = Subspace(W.dims, basis)
        x, val = _search_round(sub, cfg, rounds)
        rounds += 1
        if best_first is None:
            best_first = val
        overlaps.append(val)
        if x is None:
            break
        found.append(x)
        a = basis.conj().T @ x.vector()
        basis = basis @ null_space(a.conj()[None, :])
    return SeesawResult(found, float(best_first if best_first is not None else 0.0), rounds, overlaps)


@dataclass(frozen=True)
class SpanDim:
    dim: int
    method: str  # "exact" or "numerical"


def product_span_dim(S: StateSet, structure: TileStructure | None = None,
                     partition: QuasiPartition | Sequence[Sequence[int]] | None = None,
                     cfg: SeesawConfig | None = None, method: str = "structural") -> SpanDim:
    """Dimension of the span of product states in the complement of ``S``.

    The structural path needs a quasi U-tile partition and returns n - m.
    The numerical path stacks deflated seesaw finds, which gives a lower bound.
    """
    if method == "structural":
        if partition is None:
            raise ValueError("structural span needs a quasi U-tile partition")
        if structure is None:
            structure, _ = structure_from_states(S)
        groups = partition.groups if isinstance(partition, QuasiPartition) else partition
        return SpanDim(structure.ntiles - len(groups), "exact")
    if method != "numerical":
        raise ValueError(f"unknown method {method!r}")
    W = complement_basis(S)
    if W.dim == 0:
        return SpanDim(0, "numerical")
    res = seesaw_product_search(W, cfg or SeesawConfig())
    if not res.found:
        return SpanDim(0, "numerical")
    return SpanDim(numerical_rank(np.array([x.vector() for x in res.found])), "numerical")


def _uniform(s: TileStructure, t: int) -> np.ndarray:
    v = np.zeros(s.dims)
    v[np.ix_(*s.tiles[t].axes)] = 1.0
    return v.ravel()


def merged_group_subspaces(s: TileStructure, groups: Sequence[Sequence[int]]) -> list[Subspace]:
    """Per group: tile-uniform vectors of its tiles with zero total sum."""
    out = []
    for g in groups:
        u = np.array([_uniform(s, t) for t in g]).T
        coeff = null_space(u.sum(axis=0)[None, :])
        b = u @ coeff
        q = np.linalg.qr(b)[0] if b.shape[1] else b
        out.append(Subspace(s.dims, q.astype(complex)))
    return out


def region_product_span(s: TileStructure, max_tiles: int | None = DEFAULT_MAX_TILES) -> int:
    """Exact span dimension of product states in the complement of the punctured set.

    A product state there has a tile-aligned support box; on that box it is
    constant on each block of (row class) x (column class) and sums to zero.
    So the span is the sum over splittable special regions of those spaces.
    """
    if s.ndim != 2:
        raise ValueError("region span is computed for 2D structures")
    cols = []
    for region in enumerate_special_regions(s, max_tiles):
        if _split(s, region) is None:
            continue
        classes = []
        for ax in range(2):
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
            groups: dict[int, list[int]] = {}
            for i in region.hull[ax]:
                groups.setdefault(find(i), []).append(i)
            classes.append(list(groups.values()))
        blocks = []
        for rows, cs in itertools.product(*classes):
            v = np.zeros(s.dims)
            v[np.ix_(rows, cs)] = 1.0 / (len(rows) * len(cs))
            blocks.append(v.ravel())
        cols.extend(b - blocks[0] for b in blocks[1:])
    if not cols:
        return 0
    return numerical_rank(np.array(cols))


@dataclass
class Completion:
    states: list[ProductState]
    success: bool
    attempts: int
    seed: int


def try_complete(S: StateSet, budget: int = 3, cfg: SeesawConfig = SeesawConfig()) -> Completion:
    """Greedy orthogonal completion from deflated seesaw finds.

    ``budget`` is the number of seeds tried (cfg.seed, cfg.seed + 1, ...).
    """
    W = complement_basis(S)
    if W.dim == 0:
        return Completion([], True, 0, cfg.seed)
    best: list[ProductState] = []
    seed = cfg.seed
    for attempt in range(budget):
        seed = cfg.seed + attempt
        res = seesaw_product_search(W, SeesawConfig(**{**asdict(cfg), "seed": seed, "max_finds": None}))
        if len(res.found) > len(best) or attempt == 0:
            best = res.found
        if len(res.found) == W.dim:
            full = StateSet(S.dims, list(S.states) + res.found)
            if gram_check(full) and len(full) == int(np.prod(S.dims)):
                return Completion(res.found, True, attempt + 1, seed)
    return Completion(best, False, budget, seed)


@dataclass
class Classification:
    bipartition: str | None
    verdict: str
    confidence: str
    evidence: dict
    seed: int
    config: dict
    diagnostics: list[str] = field(default_factory=list)

    @property
    def classes(self) -> list[str]:
        return list(CLASSES[self.verdict])

    def to_json(self) -> dict:
        return {
            "bipartition": self.bipartition,
            "verdict": self.verdict,
            "confidence": self.confidence,
            "classes": self.classes,
            "evidence": self.evidence,
            "seed": self.seed,
            "config": self.config,
            "diagnostics": list(self.diagnostics),
        }


def _state_json(x: ProductState) -> dict:
    return {"label": x.label, "locals": [[[float(z.real), float(z.imag)] for z in v] for v in x.locals]}


def _structural(structure: TileStructure, partition, max_tiles, ev: dict, diag: list[str]):
    """Exact verdict from the tile structure, or None."""
    try:
        ut = is_u_tile(structure, max_tiles)
    except CapExceeded as e:
        ut = None
        diag.append(f"U-tile check skipped: {e}")
    if ut is not None:
        ev["u_tile"] = {"is_u_tile": ut.is_u_tile,
                        "region": list(ut.region) if ut.region else None,
                        "split": [list(p) for p in ut.split] if ut.split else None}
        if ut:
            return "UPB"
    qp = None
    if partition is not None:
        groups = partition.groups if isinstance(partition, QuasiPartition) else [tuple(g) for g in partition]
        problems = check_quasi_partition(structure, groups, max_tiles=None)
        if problems:
            diag.append("supplied partition rejected: " + "; ".join(problems))
        else:
            qp = groups
    elif structure.ndim == 2:
        try:
            found = find_quasi_u_partition(structure, max_tiles)
            qp = found.groups if found else None
        except CapExceeded as e:
            diag.append(f"partition search skipped: {e}")
    n = structure.ntiles
    if qp is not None:
        if all(len(g) == 1 for g in qp):
            return "UPB"
        ev["partition"] = [list(g) for g in qp]
        ev["product_span"] = {"dim": n - len(qp), "method": "exact"}
        return "SUCPB-certified"
    try:
        span = region_product_span(structure, max_tiles)
    except CapExceeded as e:
        diag.append(f"region span skipped: {e}")
        return None
    ev["product_span"] = {"dim": span, "method": "exact"}
    if span < n - 1:
        return "SUCPB-certified"
    return None


def classify_bipartite(S: StateSet, structure: TileStructure | None = None,
                       partition: QuasiPartition | Sequence[Sequence[int]] | None = None,
                       cfg: SeesawConfig = SeesawConfig(), cross_check: bool = True,
                       uncompletable: bool = False, max_tiles: int | None = DEFAULT_MAX_TILES,
                       bipartition: str | None = None, budget: int = 3) -> Classification:
    """Classify an orthogonal product set in a two-party space.

    Exact structural evidence is preferred; the seesaw oracle fills in where
    the structure is unknown and cross-checks otherwise.
    """
    if len(S.dims) != 2:
        raise ValueError("classify_bipartite needs a two-party state set")
    W = complement_basis(S)
    conf = asdict(cfg)
    ev: dict = {"n_states": len(S), "complement_dim": W.dim}
    diag: list[str] = []

    def done(verdict, confidence):
        if uncompletable and verdict in ("Undetermined",):
            verdict, confidence = "UCPB", "exact"
            ev["uncompletable"] = "externally supplied"
        return Classification(bipartition, verdict, confidence, ev, cfg.seed, conf, diag)

    if W.dim == 0:
        ev["extension"] = []
        return done("Completable", "exact")

    if structure is None:
        try:
            structure, _ = structure_from_states(S)
        except NotTileGenerated as e:
            diag.append(f"no tile structure: {e}")
    verdict = None
    if structure is not None:
        ev["tiles"] = structure.ntiles
        verdict = _structural(structure, partition, max_tiles, ev, diag)

    if verdict is not None:
        if cross_check:
            res = seesaw_product_search(W, SeesawConfig(**{**conf, "max_finds": 1}))
            ev["seesaw_best_overlap"] = res.best_overlap
            if verdict == "UPB" and res.found:
                diag.append("CONFLICT: structure says UPB but the seesaw found a product state")
            if verdict == "SUCPB-certified" and not res.found:
                diag.append("CONFLICT: structure implies product states but the seesaw found none")
        return done(verdict, "exact")

    comp = try_complete(S, budget, cfg)
    ev["seesaw_finds"] = len(comp.states)
    if comp.success:
        ev["extension"] = [_state_json(x) for x in comp.states]
        ev["completion_seed"] = comp.seed
        return done("Completable", "exact")
    if not comp.states:
        return done("UPB", "numerical")
    span = numerical_rank(np.array([x.vector() for x in comp.states]))
    ev.setdefault("product_span", {"dim": span, "method": "numerical"})
    if span < W.dim:
        return done("SUCPB-certified", "numerical")
    diag.append("product states span the complement but greedy completion failed")
    return done("Undetermined", "numerical")


@dataclass
class TripartiteReport:
    classifications: dict[str, Classification]
    u_tile_3d: bool | None

    def to_json(self) -> dict:
        return {"u_tile_3d": self.u_tile_3d,
                "bipartitions": {k: v.to_json() for k, v in self.classifications.items()}}


def classify_tripartite(S: StateSet, structure: TileStructure | None = None,
                        partitions: dict | None = None, cfg: SeesawConfig = SeesawConfig(),
                        cross_check: bool = True, max_tiles: int | None = DEFAULT_MAX_TILES) -> TripartiteReport:
    if len(S.dims) != 3:
        raise ValueError("classify_tripartite needs a three-party state set")
    if structure is None:
        try:
            structure, _ = structure_from_states(S)
        except NotTileGenerated:
            structure = None
    u3 = None
    if structure is not None:
        try:
            u3 = bool(is_u_tile(structure, max_tiles))
        except CapExceeded:
            u3 = None
    partitions = {Bipartition(k): v for k, v in (partitions or {}).items()}
    out = {}
    for b in Bipartition:
        flat = flatten_set(S, b)
        fs = flatten_to_bipartition(structure, b) if structure is not None else None
        out[b.value] = classify_bipartite(flat, fs, partitions.get(b), cfg, cross_check,
                                          max_tiles=max_tiles, bipartition=b.value)
    return TripartiteReport(out, u3)
