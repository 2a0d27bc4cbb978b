"""Compressed cylinder Tseitin formulas, cop-robber games, Weisfeiler-Leman
refinement, and CNF gadget lifting, with exhaustive desk-scale oracles."""

__version__ = "0.1.0"
