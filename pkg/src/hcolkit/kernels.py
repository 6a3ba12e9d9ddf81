"""The two kernelization algorithms for vertex-cover-parameterized
homomorphism instances, plus size accounting and equivalence checks.

Combinatorial kernel: keep the cover-induced subgraph and, for every
nonempty subset S of the cover of size at most q realized as the
neighborhood trace of some outside vertex, one fresh vertex adjacent
exactly to S.  Correct whenever q is at least the non-adjacency witness
number of the target.

Algebraic kernel: run the combinatorial kernel at q = d, then attach to
every retained size-d trace the symbolic determinant of the unit-first-
row matrix of its cover variables, keep a greedy basis of these
polynomials, and drop the vertices of the discarded ones.  Correct for
targets carrying a faithful d-dimensional independent representation
with unit first entries over the working field; the representation
itself never enters the computation, only its field does.

Exact closed-form size bounds are recorded with every run and asserted,
never treated asymptotically.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Mapping, Optional

from .config import Ceilings, DEFAULT_CEILINGS
from .errors import CeilingError, InvariantViolation
from .graphs import Graph, parse_graph_lines, vertex_set, write_graph
from .hom import find_homomorphism
from .polys import BasisSelection, SparsePoly, det_poly, poly_basis_select
from .reps import Representation


@dataclass(frozen=True)
class VertexCoverInstance:
    """A graph together with a (validated) vertex cover."""

    graph: Graph
    cover: tuple[int, ...]

    def __post_init__(self):
        cov = vertex_set(self.cover, self.graph.n)
        object.__setattr__(self, "cover", cov)
        if not self.graph.is_vertex_cover(cov):
            raise ValueError("the given set is not a vertex cover")

    @property
    def k(self) -> int:
        return len(self.cover)


def greedy_cover_2approx(g: Graph) -> tuple[int, ...]:
    """Vertex cover of at most twice the optimum via maximal matching."""
    cover: set[int] = set()
    for u, v in g.edges():
        if u not in cover and v not in cover:
            cover.add(u)
            cover.add(v)
    return tuple(sorted(cover))


@dataclass
class KernelResult:
    """Output graph, the cover inside it, and the provenance of every
    added vertex (the cover subset it realizes, in output ids)."""

    graph: Graph
    cover: tuple[int, ...]
    provenance: dict[int, tuple[int, ...]]
    cover_original: tuple[int, ...]
    stats: dict
    basis: Optional[BasisSelection] = None
    polys: Optional[list[SparsePoly]] = None

    def validate(self) -> None:
        if not self.graph.is_vertex_cover(self.cover):
            raise InvariantViolation("cover lost on the kernel output")
        for v, trace in self.provenance.items():
            if self.graph.neighbors(v) != trace:
                raise InvariantViolation(
                    f"added vertex {v} has neighborhood {self.graph.neighbors(v)}, "
                    f"provenance says {trace}"
                )


def _subset_budget(k: int, q: int) -> int:
    return sum(comb(k, i) for i in range(1, min(q, k) + 1))


def combinatorial_kernel(
    inst: VertexCoverInstance,
    q: int,
    *,
    ceilings: Ceilings = DEFAULT_CEILINGS,
) -> KernelResult:
    """Subset-trace kernel at parameter q.

    Enumerates, per outside vertex, the subsets of its neighborhood of
    size at most q, deduplicating globally; one vertex per realized
    subset regardless of how many outside vertices realize it.
    """
    if q < 1:
        raise ValueError("q must be at least 1")
    started = time.perf_counter()
    g = inst.graph
    k = inst.k
    if _subset_budget(k, q) > ceilings.subset_budget:
        raise CeilingError(
            f"kernel would enumerate more than {ceilings.subset_budget} cover subsets"
        )
    x_index = {v: i for i, v in enumerate(inst.cover)}
    outside = [v for v in range(g.n) if v not in x_index]

    realized: set[tuple[int, ...]] = set()
    for v in outside:
        neigh = [x_index[u] for u in g.neighbors(v)]
        neigh.sort()
        for size in range(1, min(q, len(neigh)) + 1):
            for sub in combinations(neigh, size):
                realized.add(sub)
    ordered = sorted(realized)

    edges = [
        (x_index[u], x_index[v])
        for u, v in g.edges()
        if u in x_index and v in x_index
    ]
    provenance: dict[int, tuple[int, ...]] = {}
    for offset, trace in enumerate(ordered):
        vid = k + offset
        provenance[vid] = trace
        edges.extend((vid, u) for u in trace)
    out = Graph(k + len(ordered), edges)

    vertex_bound = k + _subset_budget(k, q)
    stats = {
        "mode": "combinatorial",
        "q": q,
        "k": k,
        "vertices": out.n,
        "edges": out.m,
        "vertex_bound": vertex_bound,
        "bit_size_estimate": comb(k, 2) + _full_subset_count(k, q),
        "elapsed": time.perf_counter() - started,
    }
    result = KernelResult(
        graph=out,
        cover=tuple(range(k)),
        provenance=provenance,
        cover_original=inst.cover,
        stats=stats,
    )
    result.validate()
    if out.n > vertex_bound:
        raise InvariantViolation("vertex bound violated by construction")
    return result


def _full_subset_count(k: int, q: int) -> int:
    # the encoding reserves one bit per candidate subset, whether realized or not
    return sum(comb(k, i) for i in range(1, q + 1))


def algebraic_kernel(
    inst: VertexCoverInstance,
    target: Graph,
    rep: Representation,
    d: int,
    *,
    ceilings: Ceilings = DEFAULT_CEILINGS,
) -> KernelResult:
    """Determinant-sparsified kernel of dimension parameter d.

    Requires a faithful independent representation of the target with
    all first entries 1 over a field larger than the target (produce it
    via `normalize_first_entry`); only its field drives the algorithm,
    the vectors certify correctness.
    """
    if d < 3:
        raise ValueError(
            "algebraic kernel needs d >= 3; targets with a 2-dimensional "
            "representation are bipartite and the problem is polynomial"
        )
    if rep.d != d:
        raise ValueError(f"representation has dimension {rep.d}, expected {d}")
    if rep.kind != "independent":
        raise ValueError("algebraic kernel expects an independent representation")
    if rep.graph.rows != target.rows:
        raise ValueError("representation is not over the given target graph")
    if not rep.has_unit_first_entries():
        raise ValueError(
            "representation must have unit first entries; apply normalize_first_entry"
        )
    if rep.spec.order <= target.n:
        raise ValueError("working field must be larger than the target graph")

    started = time.perf_counter()
    base = combinatorial_kernel(inst, d, ceilings=ceilings)
    k = inst.k
    spec = rep.spec

    size_d_traces = [
        trace for _, trace in sorted(base.provenance.items()) if len(trace) == d
    ]
    polys = [det_poly(trace, d, spec) for trace in size_d_traces]
    selection = poly_basis_select(polys)
    kept_traces = {size_d_traces[i] for i in selection.kept}

    keep_order = [
        trace
        for _, trace in sorted(base.provenance.items())
        if len(trace) < d or trace in kept_traces
    ]
    edges = [
        (u, v) for u, v in base.graph.edges() if u < k and v < k
    ]
    provenance: dict[int, tuple[int, ...]] = {}
    for offset, trace in enumerate(keep_order):
        vid = k + offset
        provenance[vid] = trace
        edges.extend((vid, u) for u in trace)
    out = Graph(k + len(keep_order), edges)

    span_bound = comb(k * (d - 1), d - 1)
    vertex_bound = k + sum(comb(k, i) for i in range(1, d)) + span_bound
    bits_per_set = d * max(1, (k - 1).bit_length() if k > 1 else 1)
    stats = {
        "mode": "algebraic",
        "d": d,
        "k": k,
        "vertices": out.n,
        "edges": out.m,
        "vertex_bound": vertex_bound,
        "bit_size_estimate": comb(k, 2) + (out.n - k) * bits_per_set,
        "basis_kept": len(selection.kept),
        "basis_dropped": len(selection.certificates),
        "span_bound": span_bound,
        "field_order": spec.order,
        "field": {"p": spec.p, "m": spec.m, "irreducible": list(spec.irreducible)},
        "elapsed": time.perf_counter() - started,
    }
    result = KernelResult(
        graph=out,
        cover=tuple(range(k)),
        provenance=provenance,
        cover_original=inst.cover,
        stats=stats,
        basis=selection,
        polys=polys,
    )
    result.validate()
    if len(selection.kept) > span_bound:
        raise InvariantViolation("basis larger than the ambient polynomial space")
    if out.n > vertex_bound:
        raise InvariantViolation("vertex bound violated by construction")
    return result


def verify_kernel_equivalence(
    original: VertexCoverInstance,
    result: KernelResult,
    target: Graph,
    *,
    ceilings: Ceilings = DEFAULT_CEILINGS,
) -> bool:
    """Oracle check that kernelization preserved target-colorability.

    Runs the exhaustive homomorphism search on both graphs; True when
    the two answers agree.  Test-suite machinery, never on the kernel
    path itself.
    """
    before = find_homomorphism(original.graph, target, ceilings=ceilings) is not None
    after = find_homomorphism(result.graph, target, ceilings=ceilings) is not None
    return before == after


def kernel_size_report(result: KernelResult, k: int, exponent: int) -> dict:
    """Closed-form size accounting for a kernel run.

    Emits actual vertex/edge counts, the exact vertex bound, the
    bit-size estimate of the canonical encoding, and asserts the
    vertices/bound ratio is at most 1.
    """
    mode = result.stats["mode"]
    if mode == "combinatorial":
        vertex_bound = k + sum(comb(k, i) for i in range(1, exponent + 1))
        bit_size = comb(k, 2) + _full_subset_count(k, exponent)
    else:
        span_bound = comb(k * (exponent - 1), exponent - 1)
        vertex_bound = k + sum(comb(k, i) for i in range(1, exponent)) + span_bound
        bits_per_set = exponent * max(1, (k - 1).bit_length() if k > 1 else 1)
        bit_size = comb(k, 2) + (result.graph.n - k) * bits_per_set
    vertices = result.graph.n
    ratio = vertices / vertex_bound if vertex_bound else 0.0
    if vertices > vertex_bound:
        raise InvariantViolation(
            f"kernel has {vertices} vertices, bound is {vertex_bound}"
        )
    return {
        "mode": mode,
        "k": k,
        "exponent": exponent,
        "vertices": vertices,
        "edges": result.graph.m,
        "vertex_bound": vertex_bound,
        "bit_size_estimate": bit_size,
        "ratio": ratio,
        "within_bound": True,
    }


# ---------------------------------------------------------------------------
# Instance / kernel-result files
# ---------------------------------------------------------------------------

# Stats keys that vary between otherwise identical runs stay in memory
# only; serialized output must be byte-identical for identical inputs.
_VOLATILE_STATS = ("elapsed",)


def write_instance(inst: VertexCoverInstance) -> str:
    text = write_graph(inst.graph)
    return text + " ".join(["X", *map(str, inst.cover)]) + "\n"


def read_instance(text: str) -> VertexCoverInstance:
    g, extras = parse_graph_lines(text.splitlines())
    cover = None
    for tokens in extras:
        if tokens[0] == "X":
            cover = tuple(int(t) for t in tokens[1:])
        else:
            raise ValueError(f"unexpected line in instance file: {tokens[0]!r}")
    if cover is None:
        raise ValueError("instance file is missing its X cover line")
    return VertexCoverInstance(g, cover)


def serializable_stats(stats: Mapping) -> dict:
    return {key: val for key, val in stats.items() if key not in _VOLATILE_STATS}


def write_kernel_result(result: KernelResult) -> str:
    lines = [write_graph(result.graph).rstrip("\n")]
    lines.append(" ".join(["X", *map(str, result.cover)]))
    for v in sorted(result.provenance):
        lines.append(f"S {v} " + " ".join(map(str, result.provenance[v])))
    lines.append(
        "STATS "
        + json.dumps(serializable_stats(result.stats), sort_keys=True, separators=(",", ":"))
    )
    return "\n".join(lines) + "\n"


def read_kernel_result(text: str) -> KernelResult:
    g, extras = parse_graph_lines(text.splitlines())
    cover: tuple[int, ...] = ()
    provenance: dict[int, tuple[int, ...]] = {}
    stats: dict = {}
    for tokens in extras:
        if tokens[0] == "X":
            cover = tuple(int(t) for t in tokens[1:])
        elif tokens[0] == "S":
            provenance[int(tokens[1])] = tuple(int(t) for t in tokens[2:])
        elif tokens[0] == "STATS":
            stats = json.loads(" ".join(tokens[1:]))
        else:
            raise ValueError(f"unexpected line in kernel file: {tokens[0]!r}")
    result = KernelResult(
        graph=g,
        cover=cover,
        provenance=provenance,
        cover_original=cover,
        stats=stats,
    )
    result.validate()
    return result
