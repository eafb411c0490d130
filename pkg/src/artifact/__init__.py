"""Finite free nuclear preimages of ordered monoids and the laws around them."""

__version__ = "0.1.0"
