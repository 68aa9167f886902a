"""Render module for text and JSON reports"""
