"""Counts and classes for the small worked example (graphs U, V, H, I)."""

from rigidcount import catalog
from rigidcount.classes import Engine, class_product, glue

engine = Engine()
for name in ("U", "V"):
    print(f"c({name}) = {engine.get_nor(catalog.get(name)).count}")

h, i = catalog.get("H"), catalog.get("I")
ch, ci = engine.get_class(h), engine.get_class(i)
print(f"[H] = {tuple(ch)}  [I] = {tuple(ci)}")
print(f"c(V) from the split (H, I): {class_product(ch, ci)}")
for kind in ("L", "R", "C"):
    print(f"c(H + {kind}) = {engine.get_nor(glue(h, kind)).count}")
