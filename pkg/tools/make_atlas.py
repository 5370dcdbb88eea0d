"""Regenerate src/cycleturan/data/atlas7.g6: every graph on at most 7 vertices
up to isomorphism (the networkx graph atlas, 1253 graphs), one graph6 per line."""

from pathlib import Path

import networkx as nx

OUT = Path(__file__).resolve().parents[1] / "src" / "cycleturan" / "data" / "atlas7.g6"


def main() -> None:
    lines = [nx.to_graph6_bytes(g, header=False).decode().strip() for g in nx.graph_atlas_g()]
    OUT.write_text("\n".join(lines) + "\n")
    print(f"wrote {len(lines)} graphs to {OUT}")


if __name__ == "__main__":
    main()
