"""
Minimal Cut Set Toolkit
Path-set enumeration, cut-set engines and a benchmark harness for network topologies.
"""

__version__ = "1.0.0"
