"""Commonsense subgraph extraction and analytics for Wikidata KGTK files."""

__version__ = "0.1.0"
