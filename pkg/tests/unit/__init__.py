"""Unit tests for the covering systems toolkit."""
