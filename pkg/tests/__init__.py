"""
Tests for the cut set toolkit
"""
