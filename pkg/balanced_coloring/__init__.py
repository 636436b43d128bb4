"""
Balanced Coloring - closed-neighborhood-balanced k-colorings of simple graphs
"""

__version__ = "0.1.0"
__author__ = "Balanced Coloring Development Team"
