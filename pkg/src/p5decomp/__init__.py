"""Constructive decompositions of bipartite graphs into paths of length five."""
