"""Utility modules: settings, logging, file management"""
