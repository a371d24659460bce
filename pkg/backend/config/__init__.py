"""
Configuration package for the fibred coincidence calculator
"""
from . import settings

__all__ = ['settings']
