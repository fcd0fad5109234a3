"""Digraph corpora: program skeletons and enumerated small families."""
