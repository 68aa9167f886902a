"""Brute-force truncation oracle built as a LangGraph workflow"""
