"""Textual ring specifications."""

from distantline.spec.parser import RingSpec, build_ring, parse_ring, parse_ring_spec

__all__ = ["RingSpec", "build_ring", "parse_ring", "parse_ring_spec"]
