"""Tests for gwvirasoro."""
