"""Branch-and-prune enumeration of lattice-coefficient prefixes."""
