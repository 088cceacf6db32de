"""Tests for polyhedral-volume."""
