"""Frame analysis toolkit: topic discovery, frame classification, job service."""

__version__ = "0.1.0"
