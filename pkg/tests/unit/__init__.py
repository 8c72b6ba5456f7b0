"""
Unit tests for the alphalab packages.
"""
