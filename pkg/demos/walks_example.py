"""Walk sets along a route of W, their tau polynomials and the b0 ideal."""

from rigidcount import catalog
from rigidcount.walks import apply_route, edge_set, parse_walk, tau_poly, verify_labeling, walk_str

W = catalog.get("W")
start = frozenset(map(parse_walk, "03 06 32 34 36 41 45 46 56".split()))
for v, walks in apply_route(start, (0, 3, 4, 5, 6), edge_set(W)):
    print(v, " ".join(sorted(walk_str(w) for w in walks)))

for w in ("032", "03456430"):
    print(f"tau_{w} =", tau_poly(parse_walk(w), catalog.W_SIGNS))

rep = verify_labeling(W, dict(catalog.W_SIGNS), start)
print("ideal:", rep["ideal"], "ok:", rep["ok"])
