"""Command-line interface for the covering systems toolkit."""
