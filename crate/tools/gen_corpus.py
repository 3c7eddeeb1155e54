#!/usr/bin/env python3
"""Generate every connected graph of order n with minimum degree >= 3, one
graph6 line per isomorphism class.

Classes are enumerated level by level (adding one edge at a time) and
deduplicated with nauty certificates via pynauty.

    python3 tools/gen_corpus.py 8 > crates/core/tests/data/conn_mindeg3_n8.g6
"""
import sys

import networkx as nx
import pynauty


def certificate(n, edges):
    adj = {v: [] for v in range(n)}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    return pynauty.certificate(pynauty.Graph(n, adjacency_dict=adj))


def all_classes(n):
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    level = {certificate(n, ()): frozenset()}
    yield frozenset()
    for _ in pairs:
        nxt = {}
        for edges in level.values():
            for p in pairs:
                if p in edges:
                    continue
                e2 = edges | {p}
                c = certificate(n, e2)
                if c not in nxt:
                    nxt[c] = e2
        level = nxt
        yield from level.values()


def main():
    n = int(sys.argv[1])
    out = []
    for edges in all_classes(n):
        g = nx.Graph()
        g.add_nodes_from(range(n))
        g.add_edges_from(edges)
        if min(d for _, d in g.degree()) >= 3 and nx.is_connected(g):
            out.append(nx.to_graph6_bytes(g, header=False).decode().strip())
    out.sort()
    sys.stdout.write("\n".join(out) + "\n")


if __name__ == "__main__":
    main()
