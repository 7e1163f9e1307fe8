"""
Cluster Editing API

This package exposes pair weights, read clustering and FDR selection over HTTP.
"""

from .main import app

__all__ = ["app"]
