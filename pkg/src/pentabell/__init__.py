"""Graph-theoretic analysis of the pentagonal bipartite Bell inequalities."""

__version__ = "0.1.0"
