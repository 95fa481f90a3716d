"""Direction fields on the two coordinate planes, written as CSV.

Run with an output directory argument to keep the files; otherwise a temporary
directory is used and only the summary is printed.
"""
import sys
import tempfile
from pathlib import Path

from grflab import GridSpec, Plane, make_params, portrait, sink_check
from grflab import io as gio

out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(tempfile.mkdtemp())
out.mkdir(parents=True, exist_ok=True)

for c1, plane in (("10/7", Plane.X3_FIXED), (2, Plane.X1_PROP_X2), ("10/7", Plane.X1_PROP_X2)):
    p = make_params(c1, 0.25, 0.5)
    pg = portrait(p, plane, GridSpec(resolution=12))
    tag = f"{plane.value}_c1_{float(p.c1):.3f}"
    gio.write_portrait(out / f"{tag}.csv", pg)
    gio.write_streamlines(out / f"{tag}_lines.csv", pg)
    meta = pg.metadata(p)
    chk = sink_check(pg)
    print(f"{tag:28s} invariant={meta['tangency']['invariant']!s:5} "
          f"sink={chk.passed} ({chk.checked} seeds)")
print("written to", out)
