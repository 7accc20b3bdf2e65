#!/usr/bin/env python3
"""Download the bottlenose dolphin social network (62 nodes, 159 edges) and
write it as fixtures/dolphins.edges in the edge-list format read by `pinning`.

GML node ids (0..61) are kept as-is; add 1 to get the 1-based labels used in
most printed tables.
"""
import io
import pathlib
import re
import sys
import urllib.request
import zipfile

URL = "http://www-personal.umich.edu/~mejn/netdata/dolphins.zip"
OUT = pathlib.Path(__file__).resolve().parent.parent / "fixtures" / "dolphins.edges"


def parse_gml(text):
    ids = [int(x) for x in re.findall(r"node\s*\[\s*id\s+(\d+)", text)]
    edges = re.findall(r"edge\s*\[\s*source\s+(\d+)\s+target\s+(\d+)", text)
    return ids, [(int(a), int(b)) for a, b in edges]


def main():
    url = sys.argv[1] if len(sys.argv) > 1 else URL
    raw = urllib.request.urlopen(url, timeout=60).read()
    if url.endswith(".zip"):
        with zipfile.ZipFile(io.BytesIO(raw)) as z:
            name = next(n for n in z.namelist() if n.endswith(".gml"))
            text = z.read(name).decode()
    else:
        text = raw.decode()
    ids, edges = parse_gml(text)
    if sorted(ids) != list(range(len(ids))):
        sys.exit("unexpected node ids in GML")
    pairs = sorted({(min(a, b), max(a, b)) for a, b in edges})
    if (len(ids), len(pairs)) != (62, 159):
        sys.exit(f"expected 62 nodes / 159 edges, got {len(ids)} / {len(pairs)}")
    lines = ["# bottlenose dolphins, 0-based (label = id + 1)", str(len(ids))]
    lines += [f"{a} {b}" for a, b in pairs]
    OUT.write_text("\n".join(lines) + "\n")
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
