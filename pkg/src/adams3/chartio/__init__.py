"""Chart interchange, SVG rendering, the CLI and the HTTP serve mode."""
