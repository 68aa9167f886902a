"""
Arc Character Toolkit - arcs, Hom/Ext calculus and cluster characters for the
completed discrete cluster category of type A
"""

__version__ = "0.1.0"
