"""Core library for polyhedral-volume."""
