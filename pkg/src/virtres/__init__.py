"""Virtual resolutions of toric subvarieties via normalization."""

__version__ = "0.1.0"
