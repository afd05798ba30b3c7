"""Run the centricity conditions on the triangle calligraph C3 and on L."""

from rigidcount import catalog
from rigidcount.basepoints import check_centric, series_report

for name in ("C3", "L"):
    g = catalog.get(name)
    verdict = check_centric(g)
    print(f"{name}: {verdict.status}")
    for cond in verdict.conditions:
        mark = "ok" if cond.holds else "FAILS"
        print(f"  condition {cond.number} c={cond.c}: {mark} {cond.witness or ''}")
    print("  chart analysis says centric:", series_report(g).centric)
