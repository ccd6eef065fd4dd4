"""
User Interface components for the q-deformed modular group toolkit.
"""

from .interface import UserInterface

__all__ = ['UserInterface']
