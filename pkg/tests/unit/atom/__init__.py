"""Unit tests related to the atom module."""
