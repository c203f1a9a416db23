"""Exact arithmetic core: rationals, power series, Grunsky matrices and pruning criteria."""
