import networkx as nx
T = nx.tutte_graph()
def expand(G, v):
    H = G.copy(); nb = list(G[v]); H.remove_node(v)
    base = max(G) + 1; t = [base, base+1, base+2]
    H.add_edges_from([(t[0], t[1]), (t[1], t[2]), (t[0], t[2])])
    H.add_edges_from((t[i], nb[i]) for i in range(3))
    return H
G = T
for v in sorted(T)[:24]: G = expand(G, v)
G = nx.convert_node_labels_to_integers(G, ordering="sorted")
with open("g94.edges", "w") as fh:
    for u, v in sorted(tuple(sorted(e)) for e in G.edges()): fh.write(f"{u} {v}\n")
for f in ["g44.edges", "g94.edges"]:
    H = nx.read_edgelist(f, nodetype=int)
    print(f, H.number_of_nodes(), H.number_of_edges(), set(d for _, d in H.degree()),
          nx.check_planarity(H)[0], nx.node_connectivity(H), min(H), max(H))
