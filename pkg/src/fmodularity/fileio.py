"""On-disk formats: matrix CSV, edge-list TSV, partition and group files."""

import json
from typing import List, Tuple

import numpy as np

from .network import BipartiteMultigraph

__all__ = [
    "write_matrix_csv",
    "read_matrix_csv",
    "write_edge_list",
    "read_edge_list",
    "read_partition",
    "read_groups",
    "write_groups",
]


def write_matrix_csv(path, M):
    """Headerless CSV, one row per line, floats in shortest repr form.

    repr round-trips float64 exactly, so read_matrix_csv restores the
    matrix bit for bit.
    """
    M = np.asarray(M, dtype=float)
    if M.ndim != 2:
        raise ValueError("matrix CSV needs a 2-d array")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for row in M:
            fh.write(",".join(repr(float(x)) for x in row) + "\n")


def read_matrix_csv(path) -> np.ndarray:
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                rows.append([float(tok) for tok in line.split(",")])
            except ValueError:
                raise ValueError(f"{path}:{lineno}: malformed CSV row") from None
    if not rows:
        raise ValueError(f"{path}: no matrix rows found")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValueError(f"{path}: rows have inconsistent lengths")
    return np.asarray(rows, dtype=float)


def write_edge_list(path, g: BipartiteMultigraph, u_labels=None, v_labels=None):
    """TSV edges `u<TAB>v<TAB>count`, sorted by index pair."""
    if u_labels is None:
        u_labels = [str(i) for i in range(g.u_count)]
    if v_labels is None:
        v_labels = [str(i) for i in range(g.v_count)]
    if len(u_labels) != g.u_count or len(v_labels) != g.v_count:
        raise ValueError("label lists must match the vertex counts")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for u, v, mult in sorted(g.edges):
            fh.write(f"{u_labels[u]}\t{v_labels[v]}\t{mult}\n")


def read_edge_list(path) -> Tuple[BipartiteMultigraph, List[str], List[str]]:
    """Parse a TSV edge list; labels are indexed in first-appearance order.

    Lines are `u<TAB>v[<TAB>count]`; missing count means 1; `#` lines and
    blanks are skipped.  Repeated (u, v) lines accumulate multiplicity.
    Returns the graph together with the u- and v-side label lists.
    """
    u_index, v_index = {}, {}
    counts = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) not in (2, 3):
                raise ValueError(
                    f"{path}:{lineno}: expected `u<TAB>v[<TAB>count]`"
                )
            u_lab, v_lab = parts[0], parts[1]
            if len(parts) == 3:
                try:
                    mult = int(parts[2])
                except ValueError:
                    raise ValueError(
                        f"{path}:{lineno}: count {parts[2]!r} is not an integer"
                    ) from None
            else:
                mult = 1
            if mult < 1:
                raise ValueError(f"{path}:{lineno}: count must be >= 1")
            u = u_index.setdefault(u_lab, len(u_index))
            v = v_index.setdefault(v_lab, len(v_index))
            counts[(u, v)] = counts.get((u, v), 0) + mult
    if not counts:
        raise ValueError(f"{path}: no edges found")
    edges = [(u, v, m) for (u, v), m in sorted(counts.items())]
    g = BipartiteMultigraph(len(u_index), len(v_index), edges)
    return g, list(u_index), list(v_index)


def read_partition(path) -> np.ndarray:
    """One integer community id per line."""
    ids = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                ids.append(int(line))
            except ValueError:
                raise ValueError(
                    f"{path}:{lineno}: community id {line!r} is not an integer"
                ) from None
    if not ids:
        raise ValueError(f"{path}: empty partition file")
    return np.asarray(ids, dtype=int)


def read_groups(path) -> List[List[int]]:
    """JSON list of vertex-index groups."""
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, list) or not data:
        raise ValueError(f"{path}: expected a nonempty JSON list of groups")
    groups = []
    for g in data:
        if not isinstance(g, list) or not all(isinstance(i, int) for i in g):
            raise ValueError(f"{path}: each group must be a list of integers")
        groups.append(list(g))
    return groups


def write_groups(path, groups):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump([list(g) for g in groups], fh)
        fh.write("\n")
