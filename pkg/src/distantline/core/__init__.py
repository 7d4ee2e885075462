"""Core library: rings, projective lines, Grassmann models and morphisms."""
