"""Tests for distantline."""
