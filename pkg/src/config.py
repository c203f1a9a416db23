"""Configuration settings for the lattice-schlicht search and verification toolkit."""
import os
from fractions import Fraction
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

# Parallelism
MAX_WORKERS = int(os.getenv("MAX_WORKERS", "1"))

# Logging Configuration
LOG_LEVEL = os.getenv("LATTICE_SCHLICHT_LOG", "WARNING").upper()
ENABLE_TRACING = os.getenv("ENABLE_TRACING", "false").lower() == "true"

# Search defaults
SEARCH_DEFAULTS = {
    "max_depth": 18,
    "grunsky_orders": [2, 3, 4],
    "prawitz_alphas": [Fraction(2, 3), Fraction(1)],
    "prawitz_from_depth": 16,  # first Prawitz test uses M=15
    "strict_debranges": True,
    "reconstruct_dmax": 4,
}

# Candidate verification defaults
VERIFY_DEFAULTS = {
    "membership_depth": 40,
    "n_cert": 8,
    "prawitz_alphas": [Fraction(2, 3), Fraction(1)],
    "prawitz_depth": 30,
    "root_margin": 1e-6,
    "root_residual": 1e-12,
}

# Geometry defaults
GEOMETRY_DEFAULTS = {
    "samples": 4096,
    "radius": 0.999,
    "pole_exclusion": 1e-9,
    "quad_epsabs": 1e-8,
    "quad_limit": 1000,
    "svg_clip_radius": 6.0,
    "svg_margin": 0.05,
    "float_digits": 6,
}
