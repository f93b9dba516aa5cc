"""cavity-hhg test suite."""
