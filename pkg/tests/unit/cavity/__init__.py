"""Unit tests related to the cavity module."""
