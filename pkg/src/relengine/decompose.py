"""Slice a network into sequential stages along a chain of minimum cuts.

One cut is found per arc of a hop-count shortest path, each cut pinned
so it contains exactly that path arc. The nested source sides of the
cuts partition the nodes into source-to-sink regions; cut arcs are then
assigned to an adjacent stage to balance stage sizes, and consecutive
stages share an ordered boundary node list that the matrix convolution
engine folds over.

Two repairs keep the stage chain sound on arbitrary inputs:

* an arc whose endpoints lie in non-adjacent regions would belong to
  several cuts at once, so the regions it spans are merged first;
* a boundary wider than two nodes is collapsed by merging its two
  stages, because the fold carries only boundary reach sets and those
  are exact precisely when every boundary has at most two nodes.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from . import graphops
from .network import Network


@dataclass(frozen=True)
class CutInfo:
    """One pinned minimum cut and the state the search held when it was found."""

    index: int
    path_arc: int
    arc_ids: frozenset[int]
    source_side: frozenset[int]
    separated_sources: tuple[int, ...]


@dataclass(frozen=True)
class Stage:
    index: int
    arc_ids: tuple[int, ...]
    source_nodes: tuple[int, ...]
    target_nodes: tuple[int, ...]
    node_ids: tuple[int, ...]


@dataclass(frozen=True)
class Decomposition:
    """Progressively filled by the three pipeline operations below."""

    path_arcs: tuple[int, ...]
    cuts: tuple[CutInfo, ...]
    regions: tuple[tuple[int, ...], ...]
    stage_arcs: tuple[tuple[int, ...], ...] | None = None
    stages: tuple[Stage, ...] | None = None


def _path_nodes(network: Network, path_arcs: tuple[int, ...]) -> list[int]:
    nodes = [network.source]
    at = network.source
    for arc_id in path_arcs:
        a = network.arcs[arc_id - 1]
        at = a.v if a.u == at else a.u
        nodes.append(at)
    return nodes


def find_shortest_mcs(network: Network) -> Decomposition:
    """Chain of pinned minimum cuts along a hop-count shortest path.

    The cut for path arc i is a minimum cut (arc count, with the pinned
    arc free) separating everything known to sit on the source side from
    the rest of the path and the sink. Pinning the earlier path nodes to
    the source and the later ones to the sink makes "exactly one path arc
    per cut" structural and keeps the cut source sides nested.
    """
    path = graphops.shortest_path(network, graphops.unit_weights(network))
    nodes_on_path = _path_nodes(network, path)
    n = network.node_count

    cuts: list[CutInfo] = []
    acc_side: frozenset[int] = frozenset()
    sep_sources: tuple[int, ...] = (network.source,)
    for i, arc_id in enumerate(path, start=1):
        sources = set(acc_side) | set(sep_sources) | set(nodes_on_path[: i])
        sinks = set(nodes_on_path[i:]) | {n}
        if sources & sinks:
            continue  # no cut can hold exactly this path arc; stages merge here
        caps = [0 if a.id == arc_id else 1 for a in network.arcs]
        side, cut = graphops.min_cut_partition(network, caps, sources, sinks)
        cuts.append(CutInfo(i, arc_id, cut, side, sep_sources))
        acc_side = side
        sep_sources = tuple(
            sorted(
                {
                    node
                    for cut_arc in cut
                    for node in (
                        network.arcs[cut_arc - 1].u,
                        network.arcs[cut_arc - 1].v,
                    )
                    if node not in side
                }
            )
        )

    regions = _regions_from_cuts(network, cuts)
    regions = _merge_spanned_regions(network, regions)
    return Decomposition(path, tuple(cuts), regions)


def _regions_from_cuts(
    network: Network, cuts: list[CutInfo]
) -> tuple[tuple[int, ...], ...]:
    all_nodes = set(range(1, network.node_count + 1))
    regions = []
    previous: frozenset[int] = frozenset()
    for cut in cuts:
        regions.append(tuple(sorted(cut.source_side - previous)))
        previous = cut.source_side
    regions.append(tuple(sorted(all_nodes - previous)))
    return tuple(r for r in regions if r)


def _merge_spanned_regions(
    network: Network, regions: tuple[tuple[int, ...], ...]
) -> tuple[tuple[int, ...], ...]:
    """Merge region runs so no arc spans more than one region boundary."""
    region_of = {}
    for idx, nodes in enumerate(regions):
        for node in nodes:
            region_of[node] = idx
    boundaries = set(range(1, len(regions)))  # boundary b sits after region b-1
    changed = True
    while changed:
        changed = False
        for a in network.arcs:
            j, k = sorted((region_of[a.u], region_of[a.v]))
            if k - j < 2:
                continue
            crossing = sorted(b for b in boundaries if j < b <= k)
            if len(crossing) > 1:
                for b in crossing[1:]:
                    boundaries.discard(b)
                changed = True
    if len(boundaries) == len(regions) - 1:
        return regions
    merged = []
    current: list[int] = []
    for idx, nodes in enumerate(regions):
        if idx in boundaries and current:
            merged.append(tuple(sorted(current)))
            current = []
        current.extend(nodes)
    merged.append(tuple(sorted(current)))
    return tuple(merged)


def self_adjust(network: Network, decomposition: Decomposition) -> Decomposition:
    """Assign every boundary-crossing arc to one of its two adjacent stages.

    Crossing arcs go to whichever side currently holds fewer arcs; ties go
    to the stage nearer an end of the chain, and a still-standing tie goes
    left. Stages that end up empty are dropped.
    """
    regions = decomposition.regions
    count = len(regions)
    region_of = {}
    for idx, nodes in enumerate(regions):
        for node in nodes:
            region_of[node] = idx

    assigned: list[list[int]] = [[] for _ in range(count)]
    crossing: dict[int, list[int]] = {b: [] for b in range(1, count)}
    for a in network.arcs:
        j, k = sorted((region_of[a.u], region_of[a.v]))
        if j == k:
            assigned[j].append(a.id)
        elif k == j + 1:
            crossing[k].append(a.id)
        else:
            raise AssertionError(
                f"arc {a.id} spans non-adjacent regions after merging"
            )

    for b in range(1, count):
        left, right = b - 1, b
        if len(assigned[left]) < len(assigned[right]):
            pick = left
        elif len(assigned[right]) < len(assigned[left]):
            pick = right
        else:
            end_distance_left = min(left, count - 1 - left)
            end_distance_right = min(right, count - 1 - right)
            pick = left if end_distance_left <= end_distance_right else right
        assigned[pick].extend(crossing[b])

    stage_arcs = tuple(tuple(sorted(arcs)) for arcs in assigned if arcs)
    return replace(decomposition, stage_arcs=stage_arcs)


def _incident_nodes(network: Network, arc_ids) -> set[int]:
    nodes = set()
    for arc_id in arc_ids:
        a = network.arcs[arc_id - 1]
        nodes.add(a.u)
        nodes.add(a.v)
    return nodes


def _boundaries(
    network: Network, arcsets: list[list[int]]
) -> list[tuple[int, ...]]:
    """Boundary s is every node incident to stages <= s and to stages > s.

    Using full prefix and suffix incidence (rather than just the two
    neighbouring stages) keeps a node that skips a stage present in every
    boundary it must ride through.
    """
    incidences = [_incident_nodes(network, arcs) for arcs in arcsets]
    prefixes = []
    seen: set[int] = set()
    for inc in incidences:
        seen = seen | inc
        prefixes.append(seen)
    suffixes = [set()] * len(incidences)
    seen = set()
    for idx in range(len(incidences) - 1, -1, -1):
        seen = seen | incidences[idx]
        suffixes[idx] = seen
    return [
        tuple(sorted(prefixes[s] & suffixes[s + 1]))
        for s in range(len(arcsets) - 1)
    ]


def stage_sources_targets(
    network: Network, decomposition: Decomposition
) -> Decomposition:
    """Finalize stages with their ordered source and target boundary lists.

    Merges neighbouring stages until the chain is sound: the first stage
    must touch the source, the last must touch the sink, and no boundary
    may hold more than two nodes.
    """
    if decomposition.stage_arcs is None:
        raise ValueError("self_adjust must run before stage_sources_targets")
    arcsets = [list(arcs) for arcs in decomposition.stage_arcs]

    def merge(at: int) -> None:
        arcsets[at] = sorted(arcsets[at] + arcsets[at + 1])
        del arcsets[at + 1]

    while len(arcsets) > 1:
        if network.source not in _incident_nodes(network, arcsets[0]):
            merge(0)
            continue
        if network.sink not in _incident_nodes(network, arcsets[-1]):
            merge(len(arcsets) - 2)
            continue
        boundaries = _boundaries(network, arcsets)
        widths = [len(b) for b in boundaries]
        if max(widths) <= 2:
            break
        merge(widths.index(max(widths)))

    boundaries = _boundaries(network, arcsets) if len(arcsets) > 1 else []
    stages = []
    for idx, arcs in enumerate(arcsets):
        source_nodes = (network.source,) if idx == 0 else boundaries[idx - 1]
        target_nodes = (
            (network.sink,) if idx == len(arcsets) - 1 else boundaries[idx]
        )
        node_ids = tuple(
            sorted(_incident_nodes(network, arcs) | set(source_nodes) | set(target_nodes))
        )
        stages.append(
            Stage(idx + 1, tuple(arcs), source_nodes, target_nodes, node_ids)
        )
    return replace(
        decomposition,
        stage_arcs=tuple(tuple(arcs) for arcs in arcsets),
        stages=tuple(stages),
    )


def decompose(network: Network) -> Decomposition:
    return stage_sources_targets(network, self_adjust(network, find_shortest_mcs(network)))


def explain_decomposition(network: Network) -> str:
    """Human-readable dump of the cut chain and the final stages."""
    d = decompose(network)
    lines = []
    if d.path_arcs:
        lines.append(
            "shortest path: " + " ".join(f"a{i}" for i in d.path_arcs)
        )
    else:
        lines.append("shortest path: (source equals sink)")
    for cut in d.cuts:
        arcs = " ".join(f"a{i}" for i in sorted(cut.arc_ids))
        side = " ".join(str(v) for v in sorted(cut.source_side))
        grown = " ".join(str(v) for v in cut.separated_sources)
        lines.append(
            f"cut {cut.index}: pins a{cut.path_arc}, arcs {{{arcs}}}, "
            f"source side {{{side}}}, grown sources {{{grown}}}"
        )
    lines.append(
        "regions: " + " | ".join("{" + " ".join(map(str, r)) + "}" for r in d.regions)
    )
    for stage in d.stages or ():
        arcs = " ".join(f"a{i}" for i in stage.arc_ids)
        lines.append(
            f"stage {stage.index}: arcs {{{arcs}}}"
            f"  S={{{' '.join(map(str, stage.source_nodes))}}}"
            f"  T={{{' '.join(map(str, stage.target_nodes))}}}"
            f"  nodes {{{' '.join(map(str, stage.node_ids))}}}"
        )
    return "\n".join(lines)
