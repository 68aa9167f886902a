"""Tilting subcategories in fountain normal form and their validation"""
