"""Independent oracles shared by the tests."""

import networkx as nx


def _split_all(g: nx.Graph):
    ok, emb = nx.check_planarity(g)
    assert ok
    new = max(g) + 1
    for x in list(g):
        ring = list(emb.neighbors_cw_order(x))
        k = len(ring)
        for i in range(k):
            for j in range(i + 1, k):
                # x keeps ring[j..i], the new vertex takes ring[i..j]
                arc = [ring[(i + s) % k] for s in range(1, j - i)]
                h = g.copy()
                h.add_node(new)
                for u in arc:
                    h.remove_edge(x, u)
                    h.add_edge(new, u)
                h.add_edges_from([(new, x), (new, ring[i]), (new, ring[j])])
                if min(d for _, d in h.degree()) >= 3:
                    yield h


def oracle_counts(max_v: int) -> list[int]:
    level = [nx.complete_graph(4)]
    counts = [1]
    for _ in range(4, max_v):
        nxt_level = []
        for g in level:
            for h in _split_all(g):
                if h.number_of_edges() != 3 * h.number_of_nodes() - 6:
                    continue
                if not nx.check_planarity(h)[0]:
                    continue
                if any(nx.is_isomorphic(h, o) for o in nxt_level):
                    continue
                nxt_level.append(h)
        level = nxt_level
        counts.append(len(level))
    return counts
