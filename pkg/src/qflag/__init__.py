"""Exact computer algebra for quantized flag convolution and its Drinfeld generators."""

__version__ = "0.1.0"
