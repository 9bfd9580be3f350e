"""adams3: exact Ext and Adams spectral sequence workbench at the prime 3."""

__version__ = "0.1.0"
