# This file makes src/ a Python package
__version__ = "1.0.0"
