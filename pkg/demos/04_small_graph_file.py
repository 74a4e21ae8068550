"""Compare variants 0 and 3 with the shortest basis on an edge-list file.

Pass a path to an ``n m`` edge list, or run without arguments to use the
Petersen graph written to a temporary file.
"""

import sys
import tempfile
from pathlib import Path

from cyclebasis import MultiGraph, cheeger_exact, write_edge_list
from cyclebasis.experiments import ingest_graph, run_on_file

if len(sys.argv) > 1:
    path = Path(sys.argv[1])
else:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    path = Path(tempfile.mkdtemp()) / "petersen.txt"
    write_edge_list(MultiGraph.from_edges(10, outer + spokes + inner), path)

g = ingest_graph(path)
if g.n <= 26:
    h = cheeger_exact(g)
    print(f"Cheeger constant {h} = {float(h):.3f}")
for row in run_on_file(path, variants=(0, 3), trials=50, seed=1):
    print(f"{str(row.variant):>9}: median mu {row.median:g} (Q1 {row.q1:g}, Q3 {row.q3:g})")
