"""
Utility functions for RidgeRunner.
"""

__all__ = ['errors', 'geometry', 'validators']
