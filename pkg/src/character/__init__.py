"""Formal series and cluster characters"""
