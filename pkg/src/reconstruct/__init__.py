"""Rational reconstruction, catalog matching and candidate verification."""
