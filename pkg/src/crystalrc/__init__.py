"""Kirillov-Reshetikhin crystals, rigged configurations and the X = M bijection."""

__version__ = "0.1.0"
