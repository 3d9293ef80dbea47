"""Shared helpers: synthetic labelled datasets."""
