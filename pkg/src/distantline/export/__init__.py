"""JSON documents and graph files."""
