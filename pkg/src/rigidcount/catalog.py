"""Named graphs used by the tests, demos and the CLI.

Edge lists were transcribed from the drawings. Where a drawing leaves the
labels 1 and 2 unprinted, the orientation is the one forced by the drawn
gluing: the edge added for L runs from 0 to 1, the one added for R from 0 to 2.
"""

from __future__ import annotations

from typing import Dict, List, Tuple

from .graph import MarkedGraph

Edges = List[Tuple[int, int]]

EDGES: Dict[str, Edges] = {
    "edge": [(1, 2)],
    "triangle": [(0, 1), (0, 2), (1, 2)],
    "L": [(0, 1), (1, 2)],
    "R": [(0, 2), (1, 2)],
    "C3": [(0, 3), (1, 2), (1, 3), (2, 3)],
    "C3L": [(0, 1), (0, 3), (1, 2), (1, 3), (2, 3)],
    "M": [(0, 1), (1, 2), (1, 3), (2, 3)],
    "Q": [(0, 1), (0, 3), (1, 2), (2, 3)],
    # a degree-2 vertex 7 hangs off 1 and 3 in U; V is U without it
    "U": [(0, 3), (0, 4), (0, 5), (0, 6), (1, 2), (1, 3), (1, 5), (1, 7),
          (2, 4), (2, 6), (3, 4), (3, 7), (5, 6)],
    "V": [(0, 3), (0, 4), (0, 5), (0, 6), (1, 2), (1, 3), (1, 5), (2, 4),
          (2, 6), (3, 4), (5, 6)],
    "H": [(0, 3), (0, 4), (1, 2), (1, 3), (2, 4), (3, 4)],
    "I": [(0, 5), (0, 6), (1, 2), (1, 5), (2, 6), (5, 6)],
    "F": [(0, 8), (0, 9), (1, 2), (1, 3), (1, 4), (1, 7), (2, 3), (2, 4),
          (3, 5), (4, 6), (5, 6), (5, 7), (6, 8), (6, 9), (7, 8), (8, 9)],
    # the 17-vertex regression graph and the calligraphs of its execution tree
    "G": [(0, 3), (0, 4), (0, 7), (0, 10), (0, 11), (0, 14), (1, 2), (1, 3),
          (1, 5), (1, 6), (1, 12), (2, 5), (2, 12), (2, 14), (2, 16), (3, 4),
          (3, 8), (4, 8), (5, 9), (6, 7), (6, 9), (7, 10), (7, 13), (8, 16),
          (9, 13), (10, 13), (11, 15), (11, 16), (12, 13), (14, 15), (15, 16)],
    "G1": [(0, 3), (0, 4), (0, 6), (0, 7), (1, 2), (1, 3), (2, 7), (2, 9),
           (3, 4), (3, 5), (4, 5), (5, 9), (6, 8), (6, 9), (7, 8), (8, 9)],
    "G2": [(0, 5), (0, 7), (1, 2), (1, 3), (1, 4), (1, 8), (2, 3), (2, 8),
           (3, 6), (4, 5), (4, 6), (5, 7), (5, 9), (6, 9), (7, 9), (8, 9)],
    "G1L1": [(0, 6), (0, 7), (1, 2), (1, 3), (1, 4), (1, 5), (2, 7), (3, 4),
             (3, 7), (4, 5), (4, 6), (5, 6)],
    "G1R1": [(0, 6), (0, 7), (1, 2), (1, 4), (1, 5), (1, 7), (2, 7), (3, 4),
             (3, 7), (4, 5), (4, 6), (5, 6)],
    "G1C1": [(0, 7), (0, 8), (1, 2), (1, 4), (1, 5), (1, 6), (2, 8), (3, 4),
             (3, 6), (3, 8), (4, 5), (4, 7), (5, 7), (6, 8)],
    "G2L1": [(0, 3), (0, 5), (1, 2), (1, 3), (2, 4), (2, 6), (3, 4), (4, 5),
             (4, 6), (5, 6)],
    "G2L2": [(0, 3), (0, 4), (0, 5), (1, 2), (1, 3), (2, 4), (3, 5), (4, 5)],
    "G2R1": [(0, 3), (0, 4), (0, 7), (1, 2), (1, 5), (2, 6), (2, 7), (3, 4),
             (3, 5), (3, 7), (4, 6), (5, 6)],
    "G2C1": [(0, 3), (0, 8), (1, 2), (1, 5), (2, 6), (2, 7), (3, 4), (3, 5),
             (3, 7), (3, 8), (4, 6), (4, 8), (5, 6), (7, 8)],
    # calligraph with a sign labeling, used for the walk calculus
    "W": [(0, 3), (0, 6), (1, 2), (1, 4), (2, 3), (3, 4), (3, 6), (4, 5),
          (4, 6), (5, 6)],
}

# signs of the drawn labeling of "W" (edges through 0 are positive)
W_SIGNS: Dict[Tuple[int, int], int] = {
    (0, 3): 1, (0, 6): 1, (2, 3): -1, (3, 4): -1, (3, 6): 1,
    (1, 4): -1, (4, 5): 1, (4, 6): -1, (5, 6): 1,
}


def get(name: str) -> MarkedGraph:
    try:
        return MarkedGraph(EDGES[name])
    except KeyError:
        raise KeyError(f"unknown graph {name!r}; known: {', '.join(sorted(EDGES))}") from None


def names() -> List[str]:
    return sorted(EDGES)
