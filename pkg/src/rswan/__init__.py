"""Refined Swan conductors of p-adic Brauer classes and disc-sweep
experiments measuring their evaluation behaviour."""

__version__ = "0.1.0"
