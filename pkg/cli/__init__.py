"""
Command-line surface for the minimal cut set toolkit.
"""

__version__ = "1.0.0"
