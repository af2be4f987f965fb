"""
Enumeration Service
Exhaustive scans over edge subsets of a complete bipartite digraph, vectorised
with numpy, split into chunks for a worker pool and merged by canonical form.
"""

import multiprocessing
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple
import numpy as np
from loguru import logger

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent))

from config import BMG_WORKERS, CHUNK_BITS, CLASSIFY_CONVENTION, PAIR_BUDGET, SWAP_CONVENTION
from models import CanonicalForm, ClassificationRow, ColoredDigraph, EnumerationResult, FilterSet
from exceptions import BudgetExceededError, PreconditionError
from services.axiom_service import check_n1, check_n2, check_n3, check_n4
from services.canonical_service import CanonicalKey, canonical_key, form_from_key
from services.graph_service import is_weakly_connected
from services.structure_service import equivalence_classes

# (connected, no equivalent vertices, sink-free)
Flags = Tuple[bool, bool, bool]


class MaskSpace:
    """
    Edge subsets of the complete bipartite digraph on fixed colors that
    contain a base edge set. Bit k of a mask is the k-th cross pair (u, v).
    """

    def __init__(self, colors: Sequence[int], base_edges: Iterable[Tuple[int, int]] = ()):
        self.colors = tuple(colors)
        self.n = len(self.colors)
        self.pairs = tuple(
            (u, v)
            for u in range(1, self.n + 1)
            for v in range(1, self.n + 1)
            if self.colors[u - 1] != self.colors[v - 1]
        )
        position = {pair: k for k, pair in enumerate(self.pairs)}
        self.base_mask = 0
        for edge in base_edges:
            if tuple(edge) not in position:
                raise PreconditionError(f"base edge {list(edge)} is not a cross-colored pair")
            self.base_mask |= 1 << position[tuple(edge)]
        self.free_positions = tuple(k for k in range(len(self.pairs)) if not self.base_mask >> k & 1)

    @property
    def size(self) -> int:
        return 1 << len(self.free_positions)

    def expand(self, local: np.ndarray) -> np.ndarray:
        """Full masks for local indices over the free bits."""
        masks = np.full(local.shape, self.base_mask, dtype=np.int64)
        for k, p in enumerate(self.free_positions):
            masks |= ((local >> k) & 1) << p
        return masks

    def rows(self, masks: np.ndarray) -> Tuple[List[np.ndarray], List[np.ndarray]]:
        """Out- and in-neighbor bitmasks per vertex (bit w is vertex w+1)."""
        out = [np.zeros(masks.shape, dtype=np.int64) for _ in range(self.n)]
        inc = [np.zeros(masks.shape, dtype=np.int64) for _ in range(self.n)]
        for p, (u, v) in enumerate(self.pairs):
            bit = (masks >> p) & 1
            out[u - 1] |= bit << (v - 1)
            inc[v - 1] |= bit << (u - 1)
        return out, inc

    def graph_of(self, mask: int) -> ColoredDigraph:
        edges = [pair for p, pair in enumerate(self.pairs) if mask >> p & 1]
        return ColoredDigraph(n=self.n, colors=self.colors, edges=edges)


def _image(rows: List[np.ndarray], vertex_sets: np.ndarray) -> np.ndarray:
    result = np.zeros(vertex_sets.shape, dtype=np.int64)
    for v, row in enumerate(rows):
        result |= row * ((vertex_sets >> v) & 1)
    return result


def graph_flags(colors: Sequence[int], out: List[np.ndarray], inc: List[np.ndarray]) -> Dict[str, np.ndarray]:
    """Vectorised N1, N2, N3, twin, sink and connectivity flags for a batch of graphs."""
    n = len(colors)
    shape = out[0].shape if n else (0,)
    second = [_image(out, out[u]) for u in range(n)]

    n2 = np.ones(shape, dtype=bool)
    for u in range(n):
        n2 &= (_image(out, second[u]) & ~out[u]) == 0

    n1 = np.ones(shape, dtype=bool)
    n3 = np.ones(shape, dtype=bool)
    twins = np.zeros(shape, dtype=bool)
    for u in range(n):
        for v in range(u + 1, n):
            twins |= (out[u] == out[v]) & (inc[u] == inc[v])
            if colors[u] != colors[v]:
                independent = (((out[u] >> v) & 1) == 0) & (((out[v] >> u) & 1) == 0)
                overlap = ((out[u] & second[v]) != 0) | ((out[v] & second[u]) != 0)
                n1 &= ~(independent & overlap)
            else:
                premise = (
                    ((out[u] & out[v]) != 0)
                    & (((second[v] >> u) & 1) == 0)
                    & (((second[u] >> v) & 1) == 0)
                )
                nested = ((out[u] & ~out[v]) == 0) | ((out[v] & ~out[u]) == 0)
                n3 &= ~(premise & ~((inc[u] == inc[v]) & nested))

    sink_free = np.ones(shape, dtype=bool)
    for u in range(n):
        sink_free &= out[u] != 0

    shadow = [out[u] | inc[u] for u in range(n)]
    reach = np.ones(shape, dtype=np.int64)
    for _ in range(n):
        reach = reach | _image(shadow, reach)
    connected = reach == (1 << n) - 1 if n else np.ones(shape, dtype=bool)

    return {"n1": n1, "n2": n2, "n3": n3, "no_equivalent": ~twins, "sink_free": sink_free, "connected": connected}


class ScanJob(NamedTuple):
    colors: Tuple[int, ...]
    base_edges: Tuple[Tuple[int, int], ...]
    start: int
    stop: int
    filters: FilterSet
    prune: bool
    convention: str


def scan_chunk(job: ScanJob) -> Dict[CanonicalKey, Flags]:
    """Certificates and flags of every graph in one contiguous range of local indices."""
    space = MaskSpace(job.colors, job.base_edges)
    masks = space.expand(np.arange(job.start, job.stop, dtype=np.int64))
    out, inc = space.rows(masks)
    flags = graph_flags(space.colors, out, inc)

    keep = np.ones(masks.shape, dtype=bool)
    f = job.filters
    for name, wanted in (("n1", f.require_n1), ("n2", f.require_n2), ("n3", f.require_n3)):
        if wanted:
            keep &= flags[name]
    if job.prune:
        for name, wanted in (("connected", f.require_connected), ("no_equivalent", f.require_no_equivalent),
                             ("sink_free", f.require_sink_free)):
            if wanted:
                keep &= flags[name]

    found: Dict[CanonicalKey, Flags] = {}
    for idx in np.nonzero(keep)[0]:
        rows = [int(out[v][idx]) for v in range(space.n)]
        key = canonical_key(space.colors, rows, job.convention)
        if key not in found:
            found[key] = (bool(flags["connected"][idx]), bool(flags["no_equivalent"][idx]),
                          bool(flags["sink_free"][idx]))
    return found


def merge_uncolored(classes: Dict[CanonicalKey, Flags]) -> Dict[CanonicalKey, Flags]:
    """Re-key colored classes by plain digraph isomorphism; the flags do not depend on colors."""
    merged: Dict[CanonicalKey, Flags] = {}
    for (sizes, rows), flags in classes.items():
        colors = [0] * sizes[0] + [1] * sizes[1]
        merged.setdefault(canonical_key(colors, rows, "uncolored"), flags)
    return merged


def select(classes: Dict[CanonicalForm, Flags], filters: FilterSet) -> List[CanonicalForm]:
    """Certificates whose flags satisfy the structural filters, sorted."""
    chosen = []
    for form, (connected, no_equivalent, sink_free) in classes.items():
        if filters.require_connected and not connected:
            continue
        if filters.require_no_equivalent and not no_equivalent:
            continue
        if filters.require_sink_free and not sink_free:
            continue
        chosen.append(form)
    return sorted(chosen)


class EnumerationService:
    """
    Runs mask scans in chunks, optionally across a multiprocessing pool.

    An explicit convention applies to every scan; otherwise forms and extensions
    use SWAP_CONVENTION and classification rows use CLASSIFY_CONVENTION.
    """

    def __init__(self, workers: Optional[int] = None, chunk_bits: Optional[int] = None,
                 pair_budget: Optional[int] = None, convention: Optional[str] = None):
        self.workers = workers or BMG_WORKERS
        self.chunk_bits = chunk_bits or CHUNK_BITS
        self.pair_budget = pair_budget or PAIR_BUDGET
        self.convention = convention or SWAP_CONVENTION
        self.classify_convention = convention or CLASSIFY_CONVENTION

    def _jobs(self, space: MaskSpace, base_edges, filters: FilterSet, prune: bool,
              convention: str) -> List[ScanJob]:
        step = 1 << self.chunk_bits
        return [
            ScanJob(space.colors, tuple(base_edges), start, min(start + step, space.size), filters, prune,
                    convention)
            for start in range(0, space.size, step)
        ]

    def scan(self, colors: Sequence[int], base_edges: Iterable[Tuple[int, int]] = (),
             filters: Optional[FilterSet] = None, prune: bool = False,
             convention: Optional[str] = None) -> Dict[CanonicalForm, Flags]:
        """
        Classes of all masks passing the axiom filters, with their structural flags.

        With prune, graphs failing the structural filters are dropped inside the workers.
        Under the uncolored convention the workers key by colored class and the
        classes are merged afterwards.
        """
        filters = filters or FilterSet.preset("A")
        convention = convention or self.convention
        worker_convention = "always" if convention == "uncolored" else convention
        base_edges = tuple(sorted(tuple(e) for e in base_edges))
        space = MaskSpace(colors, base_edges)
        jobs = self._jobs(space, base_edges, filters, prune, worker_convention)
        logger.info(f"Scanning {space.size} masks for colors {space.colors} in {len(jobs)} chunks "
                    f"with {self.workers} workers")

        if self.workers > 1 and len(jobs) > 1:
            with multiprocessing.Pool(processes=min(self.workers, len(jobs))) as pool:
                parts = pool.map(scan_chunk, jobs)
        else:
            parts = [scan_chunk(job) for job in jobs]

        merged: Dict[CanonicalKey, Flags] = {}
        for k, part in enumerate(parts):
            logger.debug(f"Chunk {k}: {len(part)} classes")
            for key, flags in part.items():
                merged.setdefault(key, flags)
        if convention == "uncolored":
            merged = merge_uncolored(merged)
        logger.info(f"Scan finished: {len(merged)} classes")
        return {form_from_key(key): flags for key, flags in sorted(merged.items())}

    def check_budget(self, i: int, j: int, force: bool) -> None:
        if i * j > self.pair_budget and not force:
            raise BudgetExceededError(
                f"classes ({i}, {j}) need 2^{2 * i * j} masks; i*j = {i * j} exceeds the budget "
                f"{self.pair_budget} (use --force)"
            )

    def enumerate_class(self, i: int, j: int, filters: FilterSet, force: bool = False) -> EnumerationResult:
        """All classes of subgraphs of the complete bipartite digraph K(i, j) passing the filters."""
        if i < 1 or j < 1:
            raise PreconditionError(f"class sizes must be positive, got ({i}, {j})")
        self.check_budget(i, j, force)
        colors = tuple([0] * i + [1] * j)
        classes = self.scan(colors, (), filters, prune=True)
        return EnumerationResult(colors=colors, filters=filters, certificates=select(classes, filters),
                                 masks_scanned=1 << (2 * i * j))

    def enumerate_extensions(self, base: ColoredDigraph, filters: FilterSet) -> EnumerationResult:
        """All classes of edge supersets of base on the same colors passing the filters."""
        classes = self.scan(base.colors, base.edges, filters, prune=True)
        space_bits = len(MaskSpace(base.colors, base.edges).free_positions)
        return EnumerationResult(colors=base.colors, filters=filters, certificates=select(classes, filters),
                                 masks_scanned=1 << space_bits)

    def classify(self, n: int, i: int, force: bool = False) -> Tuple[ClassificationRow, Dict[str, List[CanonicalForm]]]:
        """Counts and members of the sets A..E for class sizes i and n - i."""
        j = n - i
        if i < 1 or j < 1:
            raise PreconditionError(f"class sizes must be positive, got ({i}, {j})")
        self.check_budget(i, j, force)
        classes = self.scan(tuple([0] * i + [1] * j), (), FilterSet.preset("A"), convention=self.classify_convention)
        members = {name: select(classes, FilterSet.preset(name)) for name in "ABCDE"}
        row = ClassificationRow(n=n, i=i, **{name.lower(): len(members[name]) for name in "ABCDE"})
        logger.info(f"Row n={n} i={i} ({self.classify_convention}): {row.counts}")
        return row, members

    def classification_table(self, n_values: Iterable[int], force: bool = False) -> List[ClassificationRow]:
        rows = []
        for n in n_values:
            for i in splits_for(n):
                rows.append(self.classify(n, i, force=force)[0])
        return rows


def splits_for(n: int) -> List[int]:
    """Smaller class sizes i reported for n: 2 <= i <= n/2, and i = 1 for n = 3."""
    if n < 2:
        raise PreconditionError(f"classification needs n >= 2, got {n}")
    if n <= 3:
        return [1]
    return list(range(2, n // 2 + 1))


def naive_scan(colors: Sequence[int], filters: FilterSet, convention: Optional[str] = None) -> Dict[CanonicalForm, Flags]:
    """Reference scan through the graph-level checkers, one mask at a time."""
    space = MaskSpace(colors)
    found: Dict[CanonicalForm, Flags] = {}
    for mask in range(space.size):
        g = space.graph_of(mask)
        if filters.require_n1 and check_n1(g) is not None:
            continue
        if filters.require_n2 and check_n2(g) is not None:
            continue
        if filters.require_n3 and check_n3(g) is not None:
            continue
        rows = [sum(1 << (w - 1) for w in g.out_neighbors(v)) for v in g.vertices]
        form = form_from_key(canonical_key(g.colors, rows, convention))
        if form not in found:
            found[form] = (is_weakly_connected(g), equivalence_classes(g).all_singletons, not check_n4(g))
    return found
