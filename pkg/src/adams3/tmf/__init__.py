"""The staged pipeline from the homology of tmf to its homotopy table."""
