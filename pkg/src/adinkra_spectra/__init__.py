"""Adinkra chromotopologies, their dessin and origami surfaces, and
Selberg trace-formula spectral actions."""

__version__ = "0.1.0"
