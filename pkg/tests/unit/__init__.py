"""Unit testing suite."""
