"""
Test suite for alphalab.
"""

__version__ = "1.0.0"
