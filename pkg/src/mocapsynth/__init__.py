"""Motion-capture transport analysis and synthesis toolkit."""

__version__ = "0.1.0"
