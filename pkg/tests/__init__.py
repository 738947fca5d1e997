"""
Unit test package for rcspaces.
"""
