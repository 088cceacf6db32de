"""Fixture and report generators."""
