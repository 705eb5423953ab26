"""
Linearization tests for quasi-linear ODEs by point transformations
"""
__version__ = '0.3'
