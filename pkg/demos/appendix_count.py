"""The 17-vertex regression graph. Needs oracle bound 10 and a few minutes."""

import sys

from rigidcount import catalog
from rigidcount.classes import Engine

engine = Engine(max_oracle_vertices=10, trace=True, jobs=int(sys.argv[1]) if len(sys.argv) > 1 else 1)
res = engine.get_nor(catalog.get("G"))
print("c(G) =", res.count, "oracle calls:", engine.oracle_calls)


def show(node, depth=0, limit=3):
    print("  " * depth + f"{node.method} {tuple(node.value) if isinstance(node.value, tuple) else node.value}")
    if depth < limit:
        for child in node.children:
            show(child, depth + 1, limit)


show(res.trace)
