"""Unit tests related to the spectrum module."""
