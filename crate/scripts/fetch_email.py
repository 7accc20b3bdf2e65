#!/usr/bin/env python3
"""Optional: download the university e-mail network (1,133 nodes, 5,451-5,453
edges depending on the copy) and write fixtures/email.edges.

Pass a URL to a Pajek .net or plain "u v" edge list (1-based ids) to override
the default source.
"""
import io
import pathlib
import sys
import urllib.request
import zipfile

URL = "http://deim.urv.cat/~alexandre.arenas/data/xarxes/email.zip"
OUT = pathlib.Path(__file__).resolve().parent.parent / "fixtures" / "email.edges"


def main():
    url = sys.argv[1] if len(sys.argv) > 1 else URL
    raw = urllib.request.urlopen(url, timeout=60).read()
    if url.endswith(".zip"):
        with zipfile.ZipFile(io.BytesIO(raw)) as z:
            name = next(n for n in z.namelist() if not n.endswith("/"))
            text = z.read(name).decode()
    else:
        text = raw.decode()
    pairs = set()
    nodes = 0
    for line in text.splitlines():
        parts = line.split()
        if len(parts) < 2 or not parts[0].isdigit() or not parts[1].isdigit():
            continue
        a, b = int(parts[0]) - 1, int(parts[1]) - 1
        if a == b:
            continue
        pairs.add((min(a, b), max(a, b)))
        nodes = max(nodes, a + 1, b + 1)
    lines = ["# university e-mail network, 0-based (label = id + 1)", str(nodes)]
    lines += [f"{a} {b}" for a, b in sorted(pairs)]
    OUT.write_text("\n".join(lines) + "\n")
    print(f"wrote {OUT}: {nodes} nodes, {len(pairs)} edges")


if __name__ == "__main__":
    main()
