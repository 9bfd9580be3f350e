"""Ext computation: minimal resolutions, cobar cochains, Massey products,
the May-filtration route, and chain-level connecting homomorphisms."""
