"""distantline - projective lines over finite rings and their distant geometry."""

__version__ = "0.1.0"
