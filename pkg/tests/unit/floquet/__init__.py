"""Unit tests related to the floquet module."""
