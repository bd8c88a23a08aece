"""Beam search for consistent entity mappings, plus rendering.

A mapping is a partial assignment of base clusters to target clusters that is
injective in both directions; unmapped clusters contribute nothing.  The
search keeps a beam of partial mappings, each step extending every frontier
state with every admissible pair (positive cell total, both sides unused) and
pruning to the highest-scoring ``beam_width`` states.  A state is identified
by its pair *set* -- two construction orders of the same mapping occupy one
beam slot.  States with no admissible extension are complete; since every
extension has strictly positive total, complete states are exactly the
maximal ones.
"""

from __future__ import annotations

from dataclasses import dataclass

from .entity_clustering import ClusteredDocument
from .similarity import SimilarityCell, SimilarityMatrix

Pair = tuple[int, int]


@dataclass(frozen=True)
class BeamConfig:
    beam_width: int = 7
    top_k: int = 3

    def __post_init__(self):
        if self.beam_width < 1:
            raise ValueError("beam_width must be a positive integer")
        if self.top_k < 1:
            raise ValueError("top_k must be a positive integer")
        if self.top_k > self.beam_width:
            raise ValueError("top_k must not exceed beam_width")


@dataclass(frozen=True)
class Mapping:
    """An injective partial assignment with its score and justifications.

    ``cells`` holds the similarity cell of each pair, aligned with ``pairs``.
    """

    pairs: tuple[Pair, ...]
    score: float
    cells: tuple[SimilarityCell, ...] = ()

    def __len__(self) -> int:
        return len(self.pairs)


def find_mappings(matrix: SimilarityMatrix, cfg: BeamConfig) -> list[Mapping]:
    """Return up to ``top_k`` maximal mappings, best first.

    Ties in score (both in beam pruning and in the final ranking) are broken
    toward the lexicographically smallest sorted pair tuple, so the result is
    a pure function of the matrix.  An all-zero matrix yields one empty
    mapping with score 0.
    """
    candidates: list[tuple[Pair, float]] = [
        ((cell.base_cluster, cell.target_cluster), cell.total)
        for cell in matrix.iter_cells() if cell.total > 0
    ]
    candidates.sort(key=lambda item: (-item[1], item[0]))
    total_of = dict(candidates)

    def canonical_score(pairs: frozenset[Pair]) -> float:
        return sum(total_of[p] for p in sorted(pairs))

    frontier: dict[frozenset[Pair], float] = {frozenset(): 0.0}
    completed: dict[frozenset[Pair], float] = {}

    while frontier:
        next_states: dict[frozenset[Pair], float] = {}
        for state, score in sorted(frontier.items(), key=lambda kv: (-kv[1], sorted(kv[0]))):
            used_base = {b for b, _ in state}
            used_target = {t for _, t in state}
            extended = False
            for pair, total in candidates:
                if pair[0] in used_base or pair[1] in used_target:
                    continue
                extended = True
                successor = state | {pair}
                if successor not in next_states:
                    next_states[successor] = score + total
            if not extended and state not in completed:
                completed[state] = canonical_score(state)
        ranked = sorted(next_states.items(), key=lambda kv: (-kv[1], sorted(kv[0])))
        frontier = dict(ranked[:cfg.beam_width])

    results = sorted(completed.items(), key=lambda kv: (-kv[1], sorted(kv[0])))
    mappings = []
    for state, score in results[:cfg.top_k]:
        pairs = tuple(sorted(state))
        mappings.append(Mapping(
            pairs=pairs,
            score=score,
            cells=tuple(matrix.cell(b, t) for b, t in pairs),
        ))
    return mappings


def _display_spans(spans: tuple[str, ...], limit: int) -> list[str]:
    return sorted(spans, key=lambda s: (len(s), s))[:limit]


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def render_mapping(mapping: Mapping, base: ClusteredDocument, target: ClusteredDocument,
                   limit_spans: int = 2) -> str:
    """Render a mapping as a bipartite graph in DOT format.

    Node labels carry up to ``limit_spans`` spans per cluster; edge width
    scales with the cell total and the edge tooltip-style label lists the
    matched question pairs.
    """
    lines = [
        "graph mapping {",
        "  rankdir=LR;",
        "  node [shape=box, style=rounded];",
    ]
    try:
        for b_id, t_id in mapping.pairs:
            base.cluster(b_id)
            target.cluster(t_id)
    except KeyError as exc:
        raise ValueError(f"dangling cluster reference: {exc.args[0]}") from None

    for side, clustered, ids in (("b", base, [b for b, _ in mapping.pairs]),
                                 ("t", target, [t for _, t in mapping.pairs])):
        for cluster_id in ids:
            cluster = clustered.cluster(cluster_id)
            label = "\\n".join(_dot_escape(s) for s in _display_spans(cluster.spans, limit_spans))
            lines.append(f'  {side}{cluster_id} [label="{label}"];')

    for (b_id, t_id), cell in zip(mapping.pairs, mapping.cells):
        notes = []
        for match in cell.matches:
            b_q = base.record_at(match.base_ref).question
            t_q = target.record_at(match.target_ref).question
            notes.append(f"{b_q} ~ {t_q} ({match.score:.2f})")
        label = "\\n".join(_dot_escape(note) for note in notes)
        width = 1.0 + cell.total
        lines.append(f'  b{b_id} -- t{t_id} [penwidth={width:.2f}, label="{label}"];')

    lines.append("}")
    return "\n".join(lines) + "\n"


def mapping_to_dict(mapping: Mapping, base: ClusteredDocument,
                    target: ClusteredDocument) -> dict:
    """JSON form of a mapping, spans and matched questions inlined."""
    pairs = []
    for (b_id, t_id), cell in zip(mapping.pairs, mapping.cells):
        b_cluster = base.cluster(b_id)
        t_cluster = target.cluster(t_id)
        pairs.append({
            "base": {"id": b_id, "spans": list(b_cluster.spans)},
            "target": {"id": t_id, "spans": list(t_cluster.spans)},
            "total": cell.total,
            "matches": [
                {
                    "base_question": base.record_at(m.base_ref).question,
                    "target_question": target.record_at(m.target_ref).question,
                    "score": m.score,
                }
                for m in cell.matches
            ],
        })
    return {"score": mapping.score, "pairs": pairs}
