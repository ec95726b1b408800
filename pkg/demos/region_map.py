"""Where the chaos expansion has finite second moments, on a d = 1 grid.

Run with ``python demos/region_map.py``; cells are separated by ``# %%`` so
an editor can step through them.
"""
# %% classify a few profiles by hand
from pamlab import make_profile, regions

for h0, h in [(0.6, 0.1), (0.55, 0.1), (0.62, 0.02), (0.9, 0.4)]:
    profile = make_profile(h0, [h])
    chaos = regions.classify_chaos(profile)
    series = regions.classify_series(profile)
    print(f"h0={h0:<5} h={h:<5} chaos finite={chaos.finite!s:<5} series={series.label}")

# %% scan the unit cell and count verdicts
from collections import Counter

rows = regions.region_scan(regions.axis_nodes(0.5, 1, 0.02), regions.axis_nodes(0.0, 0.5, 0.02), "series")
print(Counter(row.verdict for row in rows))

# %% the finite-moment boundary is the line h + 2 h0 = 5/4
for h in (0.05, 0.15, 0.25):
    h0s = [r.h0 for r in regions.region_scan(regions.axis_nodes(0.5, 1, 0.005), [h], "chaos")
           if r.verdict == "Finite"]
    print(f"h={h}: smallest finite h0 {min(h0s)} (finite strictly above {(1.25 - h) / 2})")

# %% write the picture
import tempfile
from pathlib import Path

from pamlab import cli

out = Path(tempfile.mkdtemp()) / "series.svg"
cli.main(["region-scan", "--grid", "0.5:1:0.01,0:0.5:0.01", "-o", str(out.with_suffix(".csv")),
          "--svg", str(out)])
print("wrote", out)
