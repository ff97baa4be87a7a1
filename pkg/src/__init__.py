"""hyc - free hypergraph C*-algebra toolkit."""

__version__ = "1.0.0"
