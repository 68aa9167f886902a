"""Thin modules, finitely presented submodules, presentations and indices"""
