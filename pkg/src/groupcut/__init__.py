"""Grid-free extremality analysis for one-row Gomory-Johnson cut-generating functions."""

__version__ = "0.1.0"
