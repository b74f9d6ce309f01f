"""Restoration scheduling for interdependent power and gas distribution systems."""
__version__ = "0.1.0"
