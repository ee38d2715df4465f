"""crowdoc: seven-section API documents distilled from Stack Exchange posts."""

__version__ = "0.1.0"
