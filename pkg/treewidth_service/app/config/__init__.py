"""
Configuration package for the treewidth permanent service
"""

from .settings import Settings, settings

__all__ = ["Settings", "settings"]
