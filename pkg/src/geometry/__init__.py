"""Floating-point boundary geometry, margins and figures for catalog functions."""
