"""Super Lie groups from super Harish-Chandra pairs, computed exactly."""

__version__ = "0.1.0"
