"""Spatial attention maps for source code and their agreement with gaze."""

__version__ = "0.1.0"
